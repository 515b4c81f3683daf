#pragma once

#include "fresco/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fresco {

/* Element of the noncommutative algebra in normal form

       sum_nu b^nu * P_nu(a),   b stored on the left,

   truncated in b at `trunc`. Degrees in a are unbounded (they stay below
   the rank in practice). Reordering uses a * b^nu = b^nu * a + nu * b^(nu+1). */
struct AbElement {
    int trunc = 0;
    int window = 0;
    /* parts[nu] = coefficients of P_nu, ascending powers of a. */
    std::vector<std::vector<Rat>> parts;

    static AbElement zero(int trunc);
    static AbElement one(int trunc);
    static AbElement gen_a(int trunc);
    static AbElement gen_b(int trunc);
    static AbElement from_series(const TruncSeries& s);
    /* a - lambda*b */
    static AbElement linear_factor(const Rat& lambda, int trunc);

    bool is_zero(int limit = -1) const; // b-orders above limit ignored (default window)
    void trim();
};

AbElement ab_add(const AbElement& x, const AbElement& y);
AbElement ab_sub(const AbElement& x, const AbElement& y);
AbElement ab_mul(const AbElement& x, const AbElement& y);
bool ab_equals_within(const AbElement& x, const AbElement& y, int limit);
std::string ab_str(const AbElement& x);

/* Expanded chain product of the presentation. */
AbElement from_presentation(const FrescoPresentation& p);

/* Terms with nu + deg_a == degree (a and b both weight 1). For the chain of
   a rank-k presentation the degree-k part is the homogeneous Bernstein
   element, independent of the chosen chain. */
AbElement homogeneous_part(const AbElement& x, int degree);

/* One adjacent exchange of factors j, j+1 (1-based).

   Solves b*U' = delta_j (U - S_j) with free coefficient rho when
   delta_j >= 1; requires delta_j <= -1, or delta_j >= 1 with S_j[delta_j]=0.
   The new chain has lambda'_j = lambda_{j+1}+1, lambda'_{j+1} = lambda_j - 1,
   S'_j = S_j U^{-2}, and U spreads to the neighbours: S'_{j-1} = U S_{j-1},
   S'_{j+1} = S_{j+1} U. At the chain ends the factor U^{-1} cannot be
   spread; it is absorbed (left: unit left-multiple of the chain; right:
   generator change) and recorded in the certificate. */
struct SwapCertificate {
    int index = 0;
    Rat delta;
    Rat rho;
    TruncSeries u{0};
    bool absorbed_left = false;
    bool absorbed_right = false;
};

FrescoPresentation swap_adjacent(const FrescoPresentation& p, int j, const Rat& rho,
                                 SwapCertificate* cert = nullptr);

/* Expands both chains, re-attaching the absorbed unit factors, and compares
   coefficients through the common window. */
bool verify_swap(const FrescoPresentation& before, const FrescoPresentation& after,
                 const SwapCertificate& cert);

/* Indices j where the pair (j, j+1) cannot commute: delta_j >= 0 and
   (delta_j = 0 or S_j[delta_j] != 0). */
std::vector<int> nci_list(const FrescoPresentation& p);

/* Stable exchange sort to nondecreasing lambda_j + j. Every required
   exchange has delta_j <= -1, hence always succeeds with rho ignored. */
struct PrincipalForm {
    FrescoPresentation pres;
    std::vector<SwapCertificate> path;
    int swap_count = 0;
};
PrincipalForm principal_form(const FrescoPresentation& p);

/* Invariant multisets of E tensor E_N and of the twisted dual: {v + N} and
   {-v + k + N}. */
std::vector<Rat> invariants_tensor_shift(const std::vector<Rat>& inv, const Rat& N);
std::vector<Rat> invariants_dual_twist(const std::vector<Rat>& inv, int k, const Rat& N);

} // namespace fresco
