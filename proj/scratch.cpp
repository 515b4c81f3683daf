/* Oracle probe for swap_search on the menagerie. */
#include "fresco/swap_search.hpp"
#include "fresco/hom.hpp"

#include <iostream>

using namespace fresco;

namespace {
FrescoPresentation make(std::vector<Rat> lambda, std::vector<std::string> series, int trunc) {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda = std::move(lambda);
    for (const auto& txt : series) p.s.push_back(series_parse(txt, trunc));
    return p;
}
const int N = 40;

void dump(const std::string& name, const FrescoPresentation& p, int budget) {
    std::cout << "== " << name << " d=" << depth(p) << "\n";
    SwapSearch dc = descending_certificate(p, budget);
    std::cout << "  desc: found=" << dc.found << " exhausted=" << dc.exhausted
              << " visited=" << dc.visited << " min_nci=" << dc.min_nci << " max_nci=" << dc.max_nci
              << " verified=" << dc.witness_verified
              << " explored=" << dc.explored.size() << "\n";
    if (dc.found) std::cout << "  desc witness: " << presentation_str(*dc.witness) << "\n";
    SwapSearch mn = min_nci_search(p, budget);
    std::cout << "  min : found=" << mn.found << " exhausted=" << mn.exhausted
              << " visited=" << mn.visited << " min_nci=" << mn.min_nci << " max_nci=" << mn.max_nci
              << " verified=" << mn.witness_verified
              << " explored=" << mn.explored.size() << "\n";
    std::cout << "  min witness: " << presentation_str(*mn.witness) << "\n";
    /* every explored node shares the invariant multiset and d >= nci+1 */
    auto inv0 = p.invariants_sorted();
    const int d = depth(p);
    bool inv_ok = true, lemma_ok = true;
    for (const auto& q : mn.explored) {
        if (q.invariants_sorted() != inv0) inv_ok = false;
        if (d < static_cast<int>(nci_list(q).size()) + 1) lemma_ok = false;
    }
    std::cout << "  explored inv_ok=" << inv_ok << " lemma_ok=" << lemma_ok << "\n";
}
} // namespace

int main() {
    std::cout.setf(std::ios::unitbuf);
    std::cout << std::boolalpha;
    dump("rank1", make({rat(7, 2)}, {}, N), 2000);
    dump("ss22", make({rat(3, 2), rat(5, 2)}, {"1"}, N), 2000);
    dump("theme22", make({rat(5, 2), rat(5, 2)}, {"1+b"}, N), 2000);
    dump("sec53", make({rat(4), rat(4), rat(5)}, {"1", "1+b^2"}, N), 2000);
    dump("theme333", make({rat(3), rat(3), rat(3)}, {"1+b", "1+b"}, N), 2000);
    dump("const4", make({rat(5), rat(5), rat(5), rat(5)}, {"1", "1+b^2", "1"}, N), 300);
    dump("ex1suite", make({rat(4), rat(4), rat(5), rat(7)}, {"1+b", "1", "1+2b^3+3b^5"}, N), 300);
    dump("ss3", make({rat(17, 2), rat(13, 2), rat(9, 2)}, {"1", "1"}, N), 2000);
    /* ascending ss: needs actual swaps to reach descending */
    dump("ss3up", make({rat(9, 2), rat(13, 2), rat(17, 2)}, {"1", "1"}, N), 2000);
    return 0;
}
