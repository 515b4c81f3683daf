#pragma once

#include "fresco/ab_algebra.hpp"

#include <optional>
#include <vector>

namespace fresco {

/* Breadth-first walk of the exchange graph: nodes are chain presentations,
   edges are legal adjacent swaps. The invariant multiset is preserved by
   every edge (a swap exchanges v_j and v_{j+1}), but the unit factors keep
   rewriting the S series, so the node set is not finite a priori; `budget`
   caps the number of expanded nodes and `exhausted` says whether the walk
   drained the whole reachable set within it.

   For a resonant swap (delta >= 1) the solution family has one free
   coefficient rho. The walk takes rho = 0 and, per neighbouring index that
   would next be obstructed, the single targeted value that cancels the
   obstructing coefficient, which is affine-linear in rho. */
struct SwapSearch {
    bool found = false;     // target reached (see the entry points)
    bool exhausted = true;  // reachable set fully drained within budget
    int visited = 0;        // nodes expanded
    int min_nci = 0;        // smallest non-commuting index count seen
    int max_nci = 0;        // largest count seen; can exceed depth - 1
    std::optional<FrescoPresentation> witness; // node attaining the target
    bool witness_verified = false; // swap path to the witness re-checked
    bool edges_verified = false;   // every accepted edge re-expanded and compared
    std::vector<FrescoPresentation> explored;  // every distinct node seen
};

/* Target: an arrangement with strictly decreasing lambda_j + j. Reaching
   one certifies semi-simplicity constructively (every pair then commutes),
   and the path to it is replayed with full verification of each exchange.
   Not finding one within an exhausted walk is strong evidence, not proof,
   of depth > 1; the solver's depth computation stays the authority.

   With verify_edges every accepted edge is re-expanded and compared, not
   just the witness path, so the whole explored set is certified; a failed
   comparison throws. Costs one chain expansion per edge.

   Caution on reading min_nci / max_nci against the depth: the count of
   non-commuting indices is NOT monotone evidence. Arrangements of the
   same module can have counts below depth - 1 (a depth-2 chain can show
   zero) and, on constant-exponent chains, above it: the rank-4 chain
   (5,5,5,5 | 1, 1+b^2, 1) of depth 2 reaches, in one verified exchange,
   an arrangement with two theme pairs, so even the bound
   depth >= nci + 1 fails there for non-principal arrangements. */
SwapSearch descending_certificate(const FrescoPresentation& p, int budget = 2000,
                                  bool verify_edges = false);

/* Target: minimize the number of non-commuting indices over reachable
   arrangements. found means an arrangement with none was reached; the
   witness attains min_nci and its path is verified. */
SwapSearch min_nci_search(const FrescoPresentation& p, int budget = 2000,
                          bool verify_edges = false);

} // namespace fresco
