#pragma once

#include "fresco/linalg.hpp"
#include "fresco/presentation.hpp"

#include <vector>

namespace fresco {

/* The module underlying a presentation, as a free C[[b]]-module of rank k
   with the a-action stored as a k x k series matrix:

       a . (sum_i X_i e_i) = sum_j [ (C X)_j + b^2 X_j' ] e_j

   For a chain basis the matrix is C_{jj} = lambda_j b and C_{j-1,j} = S_{j-1}.
   Quotients by a rank-1 line produce general matrices, so nothing here
   assumes the chain shape. */
class AModule {
public:
    AModule(int rank, int trunc);
    static AModule from_presentation(const FrescoPresentation& p);

    int rank() const { return rank_; }
    int trunc() const { return trunc_; }
    int window() const; // min over matrix entries

    TruncSeries& entry(int row, int col);
    const TruncSeries& entry(int row, int col) const;

    SeriesVec act_a(const SeriesVec& x) const;
    SeriesVec act_b(const SeriesVec& x) const;
    SeriesVec act_linear(const Rat& mu, const SeriesVec& x) const; // (a - mu b) x

    /* Basis of { x : (a - mu b) x = 0 }, solved coefficientwise as one
       rational linear system up to the window. Solutions whose valuation
       crowds the truncation boundary are junk created by cutting the module
       off at b^window and are filtered; `margin` is the safety gap
       (default rank + 2). */
    std::vector<SeriesVec> kernel_basis(const Rat& mu, int margin = -1) const;

private:
    int rank_;
    int trunc_;
    std::vector<std::vector<TruncSeries>> c_;
};

/* Kernel of (a - mu b) on the module of a presentation, by descending the
   chain: component k solves b X' = (mu - lambda_k) X, and each lower
   component is an ode_solve instance whose resonant orders add conditions
   or fresh basis vectors. Exact within the window; empty means trivial. */
std::vector<SeriesVec> kernel(const FrescoPresentation& p, const Rat& mu);
int kernel_dimension(const FrescoPresentation& p, const Rat& mu);

/* One exponent with a nontrivial kernel. A line of Ker(a - mu b) through a
   vector outside bE is a normal rank-1 submodule isomorphic to E_mu;
   line_count is the number of such lines: 0, 1, or -1 for infinitely many
   (kernel dimension >= 2 with a primitive vector). */
struct Rank1Line {
    Rat mu;
    std::vector<SeriesVec> kernel_basis;
    bool has_primitive = false;
    int line_count = 0;
};

/* Surveys all candidate exponents mu = class_rep + t in (0, max_j invariant(j)]
   and keeps those with nontrivial kernel. */
std::vector<Rank1Line> rank1_normal_submodules(const FrescoPresentation& p);

/* A fresco is a theme exactly when it has a unique normal rank-1 submodule. */
bool is_theme(const FrescoPresentation& p);

/* Order criterion: in principal form (invariants ascending) every interior
   index is non-commuting. Agrees with is_theme; kept separate so the two
   can cross-check each other. */
bool theme_order_criterion(const FrescoPresentation& p);

/* A chain basis found inside a module: chain[j] holds the coordinates of
   e_{j+1} over the module's free basis, satisfying the relations of pres. */
struct ExtractedChain {
    FrescoPresentation pres;
    std::vector<SeriesVec> chain;
};

/* Rebuilds a Jordan-Hoelder chain inside an arbitrary module: peels one
   normal rank-1 submodule (a primitive kernel line), recurses on the
   quotient matrix, then lifts the quotient chain with C[[b]]G corrections
   solved top-down against the unit series S_j. Backtracks over candidate
   exponents and kernel lines; throws NoCyclicGeneratorError when every
   candidate fails and PrecisionInsufficientError when the window is too
   small to decide. */
ExtractedChain extract_chain(const AModule& m, const std::vector<Rat>& mu_candidates);

/* Exact re-check: chain relations hold within the window and the chain is a
   C[[b]]-basis of full rank. */
bool verify_chain(const AModule& m, const ExtractedChain& ec);

struct SubmoduleResult {
    FrescoPresentation pres;
    std::vector<SeriesVec> chain; // e_j of the sub-chain, ambient coordinates
    EchelonBasis basis;           // saturated adapted basis of the span
};

/* Presentation of the submodule generated by the given elements: closes the
   span under a (unless the caller asserts it is already closed), saturates,
   reads off the restricted a-matrix and extracts a chain. The result's
   invariants must embed into the ambient multiset (the Bernstein product
   rule for the inclusion); anything unverifiable is an error, never a
   guess. */
SubmoduleResult submodule_presentation(const FrescoPresentation& p,
                                       const std::vector<SeriesVec>& generators,
                                       bool close_under_a = true);

} // namespace fresco
