#pragma once

#include "fresco/series.hpp"

#include <string>
#include <vector>

namespace fresco {

/* A monogenic geometric module presented by the left-factor chain

       P = (a - lambda_1 b) S_1^{-1} (a - lambda_2 b) ... S_{k-1}^{-1} (a - lambda_k b)

   over the algebra generated by a, b with a*b - b*a = b^2. The basis
   relations are (a - lambda_j b) e_j = S_{j-1} e_{j-1}, with e_0 = 0 and
   e_k the class of 1 (the generator). All S_j have constant term 1. */
struct FrescoPresentation {
    std::vector<Rat> lambda;     // size k, chain order
    std::vector<TruncSeries> s;  // size k-1; s[j-1] is S_j
    int trunc = 0;

    int rank() const { return static_cast<int>(lambda.size()); }

    const TruncSeries& S(int j) const { return s[static_cast<std::size_t>(j - 1)]; } // 1-based
    TruncSeries& S(int j) { return s[static_cast<std::size_t>(j - 1)]; }

    Rat invariant(int j) const { return lambda[static_cast<std::size_t>(j - 1)] + j; }

    /* lambda_{j+1} + 1 - lambda_j = invariant(j+1) - invariant(j), the gap
       controlling whether factors j and j+1 commute. */
    Rat delta(int j) const { return invariant(j + 1) - invariant(j); }

    /* Multiset {lambda_j + j}: chain order and ascending copies. */
    std::vector<Rat> invariants() const;
    std::vector<Rat> invariants_sorted() const;

    Rat class_rep() const; // representative of [lambda_1] in (0,1]

    bool is_primitive() const; // all lambda_j in one class mod 1
    bool is_geometric() const; // lambda_j + j > k for all j

    /* Throws ValidationError naming the first violated invariant. */
    void validate() const;

    /* Roots of the Bernstein polynomial, { -(lambda_j + j - k) }, ascending.
       Built by peeling one rank off the top and shifting, from the rank-1
       base case. */
    std::vector<Rat> bernstein_roots() const;

    /* Chain prefix e_1..e_m (a normal submodule) and the complementary
       quotient chain e_{m+1}..e_k; the connecting series S_m is dropped. */
    FrescoPresentation prefix(int m) const;
    FrescoPresentation suffix_quotient(int m) const;

    /* Same data re-truncated (only downward). */
    FrescoPresentation truncated(int new_trunc) const;

    int window() const; // min over series windows
};

std::string presentation_str(const FrescoPresentation& p);

} // namespace fresco
