#include "fresco/random_gen.hpp"

#include <algorithm>
#include <set>

namespace fresco {

FrescoPresentation RandomChain::at(int trunc) const {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda = lambda;
    for (const auto& sparse : s) {
        TruncSeries t(trunc);
        t.set(0, Rat(1));
        for (const auto& [order, coeff] : sparse)
            if (order <= trunc) t.set(order, coeff);
        p.s.push_back(t);
    }
    p.validate();
    return p;
}

long RandomFrescoGen::pick(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
}

Rat RandomFrescoGen::pick_class() {
    long den = pick(1, 4);
    return Rat(pick(1, den), den);
}

std::vector<std::pair<int, Rat>> RandomFrescoGen::sparse_unit(int max_order) {
    std::vector<std::pair<int, Rat>> out;
    for (int n = 1; n <= max_order; ++n) {
        if (pick(0, 1) == 0) continue; // keep the series sparse
        long c = pick(-3, 3);
        if (c != 0) out.emplace_back(n, Rat(c));
    }
    return out;
}

RandomChain RandomFrescoGen::geometric_primitive(int min_rank, int max_rank) {
    const int k = static_cast<int>(pick(min_rank, max_rank));
    const Rat c = pick_class();
    RandomChain chain;
    for (int j = 1; j <= k; ++j) {
        /* v_j = c + n_j - 1 > k since c > 0 and n_j >= k + 1. */
        Rat v = c + pick(k + 1, k + 8) - 1;
        chain.lambda.push_back(v - j);
    }
    for (int j = 1; j < k; ++j) chain.s.push_back(sparse_unit(6));
    return chain;
}

RandomChain RandomFrescoGen::descending(int min_rank, int max_rank) {
    const int k = static_cast<int>(pick(min_rank, max_rank));
    const Rat c = pick_class();
    std::set<long> offsets;
    while (static_cast<int>(offsets.size()) < k) offsets.insert(pick(k + 1, 4 * k + 6));
    RandomChain chain;
    int j = 1;
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it, ++j)
        chain.lambda.push_back(c + *it - 1 - j);
    for (int i = 1; i < k; ++i) chain.s.push_back(sparse_unit(6));
    return chain;
}

RandomChain RandomFrescoGen::first_obstructed(int min_rank, int max_rank) {
    const int k = static_cast<int>(pick(std::max(min_rank, 2), max_rank));
    const Rat c = pick_class();
    std::vector<long> gaps; // v_{j+1} - v_j, first may be 0
    gaps.push_back(pick(0, 3));
    for (int j = 2; j < k; ++j) gaps.push_back(pick(1, 3));

    RandomChain chain;
    Rat v = c + k; // v_1 > k
    chain.lambda.push_back(v - 1);
    for (int j = 1; j < k; ++j) {
        v += gaps[static_cast<std::size_t>(j - 1)];
        chain.lambda.push_back(v - (j + 1));
    }
    for (int j = 1; j < k; ++j) {
        auto sparse = sparse_unit(6);
        const int gap = static_cast<int>(gaps[static_cast<std::size_t>(j - 1)]);
        std::erase_if(sparse, [&](const auto& e) { return e.first == gap; });
        if (j == 1 && gap >= 1) {
            long a = pick(1, 3) * (pick(0, 1) == 0 ? 1 : -1);
            sparse.emplace_back(gap, Rat(a)); // the planted obstruction
        }
        chain.s.push_back(std::move(sparse));
    }
    return chain;
}

} // namespace fresco
