#include "fresco/swap_search.hpp"

#include "fresco/errors.hpp"

#include <deque>
#include <set>
#include <string>

namespace fresco {

namespace {

std::string node_key(const FrescoPresentation& p) {
    std::string key;
    for (const auto& l : p.lambda) {
        key += rat_str(l);
        key += ',';
    }
    key += '|';
    for (const auto& s : p.s) {
        key += series_str(s);
        key += ';';
    }
    return key;
}

bool strictly_descending(const FrescoPresentation& p) {
    for (int j = 1; j < p.rank(); ++j)
        if (p.delta(j) >= 0) return false;
    return true;
}

int nci_count(const FrescoPresentation& p) {
    return static_cast<int>(nci_list(p).size());
}

struct Node {
    FrescoPresentation pres;
    int parent = -1;
    int move_index = 0;
    Rat move_rho;
};

/* Replay the move list from the root, certificate on, verifying every
   exchange against the expanded chains. */
bool replay_verified(const FrescoPresentation& root, const std::vector<Node>& nodes,
                     int leaf) {
    std::vector<std::pair<int, Rat>> moves;
    for (int at = leaf; nodes[static_cast<std::size_t>(at)].parent >= 0;
         at = nodes[static_cast<std::size_t>(at)].parent)
        moves.emplace_back(nodes[static_cast<std::size_t>(at)].move_index,
                           nodes[static_cast<std::size_t>(at)].move_rho);
    FrescoPresentation cur = root;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
        SwapCertificate cert;
        FrescoPresentation next = swap_adjacent(cur, it->first, it->second, &cert);
        if (!verify_swap(cur, next, cert)) return false;
        cur = std::move(next);
    }
    return true;
}

SwapSearch bfs(const FrescoPresentation& p, int budget, bool stop_on_descending,
               bool verify_edges) {
    SwapSearch out;
    out.edges_verified = verify_edges;
    std::vector<Node> nodes;
    nodes.push_back({p, -1, 0, Rat(0)});
    std::set<std::string> seen{node_key(p)};
    std::deque<int> queue{0};

    out.min_nci = nci_count(p);
    out.max_nci = out.min_nci;
    int best = 0; // node index attaining min_nci
    auto take = [&](int idx) {
        const FrescoPresentation& q = nodes[static_cast<std::size_t>(idx)].pres;
        int c = nci_count(q);
        if (c < out.min_nci) {
            out.min_nci = c;
            best = idx;
        }
        if (c > out.max_nci) out.max_nci = c;
        if (stop_on_descending && strictly_descending(q)) {
            out.found = true;
            best = idx;
            return true;
        }
        return false;
    };
    if (take(0)) {
        out.visited = 1;
        out.witness = nodes[0].pres;
        out.witness_verified = true; // empty path
        out.explored.push_back(nodes[0].pres);
        return out;
    }

    auto enqueue = [&](FrescoPresentation&& q, int parent, int j, const Rat& rho) {
        std::string key = node_key(q);
        if (!seen.insert(key).second) return;
        nodes.push_back({std::move(q), parent, j, rho});
        queue.push_back(static_cast<int>(nodes.size()) - 1);
    };

    bool hit = false;
    while (!queue.empty() && !hit) {
        if (out.visited >= budget) {
            out.exhausted = false;
            break;
        }
        int at = queue.front();
        queue.pop_front();
        ++out.visited;
        const int k = nodes[static_cast<std::size_t>(at)].pres.rank();

        for (int j = 1; j < k && !hit; ++j) {
            /* Copy: nodes may reallocate inside enqueue. */
            const FrescoPresentation cur = nodes[static_cast<std::size_t>(at)].pres;
            Rat delta = cur.delta(j);
            auto dn = as_long(delta);
            auto swap_checked = [&](const Rat& rho) {
                SwapCertificate cert;
                FrescoPresentation q = swap_adjacent(cur, j, rho, &cert);
                if (verify_edges && !verify_swap(cur, q, cert))
                    throw PrecisionInsufficientError(
                        "exchange verification failed at index " + std::to_string(j));
                return q;
            };
            FrescoPresentation c0{};
            try {
                c0 = swap_checked(Rat(0));
            } catch (const NonCommutingIndexError&) {
                continue; // obstructed pair, no edge
            } catch (const PrecisionInsufficientError&) {
                out.exhausted = false; // edge exists but cannot be computed
                continue;
            }

            /* Targeted rho values, only meaningful in the resonant case. */
            std::vector<Rat> extra;
            if (dn.has_value() && *dn >= 1) {
                FrescoPresentation c1{};
                bool have_c1 = true;
                try {
                    c1 = swap_checked(Rat(1));
                } catch (const FrescoError&) {
                    have_c1 = false;
                }
                if (have_c1) {
                    for (int i : {j - 1, j + 1}) {
                        if (i < 1 || i >= k) continue;
                        auto di = as_long(c0.delta(i));
                        if (!di || *di < 1 || *di > c0.S(i).window()) continue;
                        Rat A = c0.S(i)[static_cast<int>(*di)];
                        Rat B = c1.S(i)[static_cast<int>(*di)] - A;
                        if (A != 0 && B != 0) extra.push_back(-A / B);
                    }
                }
            }

            int before = static_cast<int>(nodes.size());
            enqueue(std::move(c0), at, j, Rat(0));
            for (const Rat& r : extra) {
                try {
                    enqueue(swap_checked(r), at, j, r);
                } catch (const FrescoError&) {
                    out.exhausted = false;
                }
            }
            /* New nodes may already satisfy the target. */
            for (int idx = before; idx < static_cast<int>(nodes.size()); ++idx)
                if (take(idx)) {
                    hit = true;
                    break;
                }
        }
    }

    out.witness = nodes[static_cast<std::size_t>(best)].pres;
    out.witness_verified = replay_verified(p, nodes, best);
    out.explored.reserve(nodes.size());
    for (const Node& n : nodes) out.explored.push_back(n.pres);
    return out;
}

} // namespace

SwapSearch descending_certificate(const FrescoPresentation& p, int budget,
                                  bool verify_edges) {
    return bfs(p, budget, true, verify_edges);
}

SwapSearch min_nci_search(const FrescoPresentation& p, int budget, bool verify_edges) {
    SwapSearch out = bfs(p, budget, false, verify_edges);
    out.found = (out.min_nci == 0);
    return out;
}

} // namespace fresco
