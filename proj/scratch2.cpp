/* Forensics: which const4-reachable arrangement claims nci >= 2, is its swap
   path verified, and does the solver agree the offending pairs are themes? */
#include "fresco/swap_search.hpp"
#include "fresco/hom.hpp"

#include <deque>
#include <iostream>
#include <set>

using namespace fresco;

namespace {
FrescoPresentation make(std::vector<Rat> lambda, std::vector<std::string> series, int trunc) {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda = std::move(lambda);
    for (const auto& txt : series) p.s.push_back(series_parse(txt, trunc));
    return p;
}

std::string key(const FrescoPresentation& p) { return presentation_str(p); }

void examine(const std::string& name, const FrescoPresentation& q) {
    std::cout << name << ": " << presentation_str(q) << "\n";
    std::cout << "  windows:";
    for (const auto& s : q.s) std::cout << " " << s.window();
    std::cout << "\n  nci_list:";
    for (int j : nci_list(q)) std::cout << " " << j;
    std::cout << "\n";
    for (int j = 1; j < q.rank(); ++j) {
        Rat d = q.delta(j);
        std::cout << "  pair " << j << ": delta = " << rat_str(d);
        auto dn = as_long(d);
        if (dn && *dn >= 1 && *dn <= q.S(j).window())
            std::cout << "  S_j[delta] = " << rat_str(q.S(j)[static_cast<int>(*dn)]);
        /* rank-2 sub-quotient as its own presentation, full-solver verdict */
        FrescoPresentation r2;
        r2.trunc = q.trunc;
        r2.lambda = {q.lambda[static_cast<std::size_t>(j - 1)],
                     q.lambda[static_cast<std::size_t>(j)]};
        r2.s = {q.S(j)};
        std::cout << "  is_theme(F_{j+1}/F_{j-1}) = " << is_theme(r2)
                  << "  depth = " << depth(r2) << "\n";
    }
    std::cout << "  depth(node) = " << depth(q) << "\n";
}
} // namespace

int main() {
    std::cout.setf(std::ios::unitbuf);
    std::cout << std::boolalpha;
    const int N = 40;
    FrescoPresentation root = make({rat(5), rat(5), rat(5), rat(5)}, {"1", "1+b^2", "1"}, N);

    /* replicate the BFS with per-edge verification */
    struct Node {
        FrescoPresentation p;
        std::string path;
    };
    std::vector<Node> nodes{{root, "root"}};
    std::set<std::string> seen{key(root)};
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int at = queue.front();
        queue.pop_front();
        const FrescoPresentation cur = nodes[static_cast<std::size_t>(at)].p;
        const std::string path = nodes[static_cast<std::size_t>(at)].path;
        for (int j = 1; j < cur.rank(); ++j) {
            SwapCertificate cert;
            FrescoPresentation child;
            try {
                child = swap_adjacent(cur, j, Rat(0), &cert);
            } catch (const FrescoError& e) {
                continue;
            }
            bool ok = verify_swap(cur, child, cert);
            if (!seen.insert(key(child)).second) continue;
            nodes.push_back({child, path + " -s" + std::to_string(j)});
            std::cout << "edge " << path << " -s" << j << " verified=" << ok << "\n";
            queue.push_back(static_cast<int>(nodes.size()) - 1);
        }
    }
    std::cout << "total nodes " << nodes.size() << "\n\n";
    for (const auto& n : nodes) {
        int c = static_cast<int>(nci_list(n.p).size());
        if (c >= 2) examine("VIOLATOR [" + n.path + "]", n.p);
    }
    std::cout << "\n";
    /* also show the whole graph's nci counts */
    for (const auto& n : nodes)
        std::cout << n.path << "  lambda=(" << [&] {
            std::string s;
            for (std::size_t i = 0; i < n.p.lambda.size(); ++i)
                s += (i ? "," : "") + rat_str(n.p.lambda[i]);
            return s;
        }() << ")  nci=" << nci_list(n.p).size() << "\n";
    return 0;
}
/* appended: doubled-truncation confirmation entry point is main2 via define */
