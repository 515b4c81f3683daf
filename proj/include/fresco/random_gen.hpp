#pragma once

#include "fresco/presentation.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fresco {

/* A drawn chain kept as exact data independent of any truncation, so the
   same draw can be instantiated at N and re-checked at 2N. */
struct RandomChain {
    std::vector<Rat> lambda;
    /* Sparse S series: (order, coefficient) with order >= 1; the constant
       term 1 is implicit. */
    std::vector<std::vector<std::pair<int, Rat>>> s;

    FrescoPresentation at(int trunc) const;
};

/* Deterministic families of geometric primitive presentations for stress
   runs. Every family validates on construction; properties asserted by the
   callers hold for all draws, the seed only fixes which draws come out. */
class RandomFrescoGen {
public:
    explicit RandomFrescoGen(std::uint64_t seed) : rng_(seed) {}

    /* Arbitrary chain order, invariants anywhere above the rank. */
    RandomChain geometric_primitive(int min_rank, int max_rank);

    /* Strictly decreasing lambda_j + j: semi-simple by the order criterion,
       and directly embeddable. */
    RandomChain descending(int min_rank, int max_rank);

    /* Principal chain whose only obstructed pair is the first: gap p1 = 0,
       or p1 >= 1 with a nonzero coefficient planted at S_1[p1]; all later
       gaps are >= 1 with the resonant coefficient forced to zero. Candidates
       for the depth-2 single-index bookkeeping; callers filter on the
       computed depth. */
    RandomChain first_obstructed(int min_rank, int max_rank);

    long pick(long lo, long hi); // uniform on [lo, hi]
    Rat pick_class();            // random representative in (0, 1]

private:
    std::mt19937_64 rng_;

    std::vector<std::pair<int, Rat>> sparse_unit(int max_order);
};

} // namespace fresco
