#pragma once

#include "fresco/fresco_basis.hpp"
#include "fresco/xi.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace fresco {

/* Basis of the space of module maps E -> Xi^(k-1), encoded by the image of
   the generator e_k. The space is a Q-vector space of dimension exactly
   rank(E); anything else is reported as a precision failure, never padded
   or trimmed silently.

   Rows are stratified: coordinates are ordered by (log degree descending,
   b-order ascending) and the basis is the reduced echelon form in that
   order. So basis[0] has the highest log degree, and the rows whose pivot
   sits in the log-0 block are exactly the rank-1 quotient maps. */
struct HomBasis {
    Rat mu0;
    int window = 0;                          // trusted coefficient window
    std::vector<XiElement> basis;
    std::vector<std::pair<int, int>> pivots; // (log degree, b-order) per row

    int dimension() const { return static_cast<int>(basis.size()); }
    int max_log_degree() const { return basis.empty() ? -1 : pivots.front().first; }
};

HomBasis solve_annihilator(const FrescoPresentation& p);

/* Images of the whole chain under the map sending e_k to x: walk the
   relations downward, e_{j-1} = S_{j-1}^{-1} (a - lambda_j b) e_j. */
std::vector<XiElement> hom_images(const FrescoPresentation& p, const XiElement& x);

/* Value of that map on sum_l y_l e_l. */
XiElement hom_value(const std::vector<XiElement>& images, const SeriesVec& y);

/* Kernel of the C[[b]]-linear map with the given rows: all y with
   sum_l y_l rows[r][l] = 0 for every r. Solved coefficientwise over Q,
   echelonized, stripped of truncation junk and saturated, so the result
   generates a normal submodule. */
std::vector<SeriesVec> series_kernel_module(const std::vector<SeriesVec>& rows, int comps,
                                            int trunc);

/* Semi-simple depth: 1 + the largest log degree reached by any map to the
   log tower. Depth 1 means semi-simple. */
int depth(const FrescoPresentation& p);
bool is_semisimple(const FrescoPresentation& p);

/* The canonical increasing filtration S_1 c S_2 c ... c S_d = E where S_j
   collects everything every map sends into log degree < j. The identities
   rk S_1 + d = k + 1 and rank-one steps are checked and reported. */
struct SsFiltration {
    int depth = 0;
    std::vector<int> ranks; // rk S_1 .. rk S_d
    /* Verification outcomes, reported rather than thrown: the first is
       rk S_1 + d = k + 1 (with S_d = E), the second is rank-one steps
       S_j/S_{j-1} for j >= 2. Both can genuinely fail; see the
       constant-exponent rank-4 example. */
    bool rank_identity = true;
    bool unit_steps = true;
};
SsFiltration ss_filtration(const FrescoPresentation& p);
SsFiltration ss_filtration(const FrescoPresentation& p, const HomBasis& hb);

/* rank of S_j(E) /\ (span of e_1..e_m): the same condition rows restricted
   to the first m coordinates. For a chain prefix F this computes rk S_j(F)
   inside E. */
int ss_trace_rank(const FrescoPresentation& p, const HomBasis& hb, int j, int m);

/* Generators of S_j(E) as a normal submodule, in chain coordinates. */
std::vector<SeriesVec> ss_layer_generators(const FrescoPresentation& p, int j);
std::vector<SeriesVec> ss_layer_generators(const FrescoPresentation& p, const HomBasis& hb,
                                           int j);

/* Joint kernel of the rank-1 quotient maps (the log-0 stratum). Its rank
   must be depth - 1; anything else is a rank mismatch. */
struct Sigma1 {
    int rank = 0;
    std::vector<SeriesVec> generators;
};
Sigma1 sigma1(const FrescoPresentation& p);
Sigma1 sigma1(const FrescoPresentation& p, const HomBasis& hb);

/* Decreasing filtration by iterated Sigma^1: Sigma^{j+1} = Sigma^1(Sigma^j).
   ranks starts at k and must strictly decrease to 0 in exactly depth steps,
   with d(Sigma^j) = d - j and Sigma^{j+1} inside S_{d-j-1}(E); every check
   is performed on the computed presentations. A failed chain extraction
   truncates the iteration and is reported, not hidden. */
struct CoSsFiltration {
    std::vector<int> ranks;                   // rk Sigma^0 = k, rk Sigma^1, ...
    std::vector<FrescoPresentation> stages;   // Sigma^1, Sigma^2, ...
    bool complete = true;
    std::string note;
};
CoSsFiltration co_ss_filtration(const FrescoPresentation& p);

/* Classes of the rank-1 quotients E -> E_mu, read off the log-0 stratum:
   mu = mu0 + pivot order. There must be exactly k - d + 1 of them. */
std::vector<Rat> rank1_quotients(const FrescoPresentation& p);
std::vector<Rat> rank1_quotients(const FrescoPresentation& p, const HomBasis& hb);

/* Quotient themes, one stratum per rank r = 1..d: a witness map of log
   degree r-1 plus the Jordan-Hoelder data of its image. Perturbing the
   witness by lower strata walks through the family; for r = d the quotient
   of the image by its bottom must look like E/S_1(E), checked at the level
   of invariants. */
struct ThemeStratum {
    int rank = 0;
    bool exists = false;
    XiElement witness;
    ThemeData data;
    std::vector<ThemeData> family;
    bool top_quotient_ok = true; // only meaningful for rank == depth
};
std::vector<ThemeStratum> quotient_theme_survey(const FrescoPresentation& p);

/* Jordan-Hoelder data of Sigma^1(E) plus the lemma bookkeeping for
   principal chains: h is the first non-commuting index of the principal
   form (0 if none), and for depth-2 chains with a single such index the
   first exponent of Sigma^1 is checked against lambda_h + h - 1 and the
   principal prefix F_{h+1}/F_{h-1}-style sub-theme against the chain
   prefix. */
struct LSeries {
    std::optional<FrescoPresentation> sigma;  // absent when depth == 1
    bool sigma_is_theme = false;
    bool sigma_rank_expected = true; // rk Sigma^1 == depth - 1
    int h = 0;
    bool first_term_checked = false;
    bool first_term_holds = false;
    bool prefix_subtheme_holds = false;
};
LSeries L_series(const FrescoPresentation& p);

/* Embedding of a semi-simple chain in descending order (v_1 > ... > v_k)
   into k copies of the log-free part of the tower. Image r is
   T_r(b) s^{lambda_{k-r+1} - r} where T_r solves the suffix division
   problem; every image is annihilated by the full relation operator and
   the joint kernel is checked to be trivial. */
struct Embedding {
    Rat mu0;
    std::vector<XiElement> images;    // image of e_k under each map, rank 1 first
    std::vector<TruncSeries> t_chain; // T_r for r = 1..k (T_1 = 1)
};
Embedding embed_semisimple(const FrescoPresentation& p);

/* Minimal number of copies of the log tower E embeds into: the rank of
   S_1(E), which equals k - d + 1 whenever the rank identity holds.
   Constructive witness: re-extract S_1(E) on a strictly descending chain,
   embed it, then extend each map to E through the solution space of the
   annihilator; injectivity is re-checked on the joint kernel. */
struct EmbeddingDimension {
    int dimension = 0;
    Embedding witness; // images of the ambient generator e_k
};
EmbeddingDimension embedding_dimension(const FrescoPresentation& p);

/* One-stop summary used by the command line front end. */
struct FiltrationReport {
    int depth = 0;
    std::vector<int> ss_ranks;
    bool ss_rank_identity = true;
    bool ss_unit_steps = true;
    std::vector<int> sigma_ranks;
    bool sigma_complete = true;
    std::string sigma_note;
    std::vector<int> nci_principal;
    std::vector<Rat> L_invariants;
    std::vector<Rat> rank1_quotient_classes;
    std::string rank1_note; // empty when the count matches k - d + 1
};
FiltrationReport filtration_report(const FrescoPresentation& p);

} // namespace fresco
