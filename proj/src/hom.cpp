#include "fresco/hom.hpp"

#include "fresco/ab_algebra.hpp"
#include "fresco/errors.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace fresco {

namespace {

Rat min_invariant(const FrescoPresentation& p) {
    Rat v = p.invariant(1);
    for (int j = 2; j <= p.rank(); ++j) v = std::min(v, p.invariant(j));
    return v;
}

Rat max_invariant(const FrescoPresentation& p) {
    Rat v = p.invariant(1);
    for (int j = 2; j <= p.rank(); ++j) v = std::max(v, p.invariant(j));
    return v;
}

/* Flat coordinates for maps into the tower: log degree descending is the
   major key so that the reduced echelon form stratifies by log degree and,
   inside a stratum, by b-order. */
int flat_col(int J, int T, int j, int n) { return (J - j) * (T + 1) + n; }

std::pair<int, int> col_to_log_order(int J, int T, int col) {
    return {J - col / (T + 1), col % (T + 1)};
}

} // namespace

HomBasis solve_annihilator(const FrescoPresentation& p) {
    p.validate();
    const int k = p.rank();
    const int J = k - 1;
    const int T = p.trunc;
    const Rat mu0 = min_invariant(p) - k;

    /* Apply the relation operator to every monomial b^n xi_j. Each factor
       raises the b-order by one and the S^{-1} multiplications preserve it,
       so the outputs are exact to the full truncation. */
    const int cols = (J + 1) * (T + 1);
    std::vector<XiElement> out;
    out.reserve(static_cast<std::size_t>(cols));
    int weq = T;
    for (int j = 0; j <= J; ++j)
        for (int n = 0; n <= T; ++n) {
            out.push_back(xi_apply(p, xi_monomial(mu0, J, T, j, n)));
            weq = std::min(weq, out.back().window());
        }

    QMatrix a((J + 1) * (weq + 1), cols);
    for (int j = 0; j <= J; ++j)
        for (int n = 0; n <= T; ++n) {
            const XiElement& y = out[static_cast<std::size_t>(j * (T + 1) + n)];
            const int c = flat_col(J, T, j, n);
            for (int i = 0; i <= J; ++i)
                for (int q = 0; q <= weq; ++q) a.at(i * (weq + 1) + q, c) = y.parts[static_cast<std::size_t>(i)][q];
        }

    std::vector<std::vector<Rat>> null = nullspace(a);

    /* Coefficients of a solution beyond order weq - k never enter an
       equation (k factors each raise the order), so everything pivoting
       there is an artifact of the cutoff. */
    const int wcap = weq - (k + 2);
    if (wcap < 0)
        throw PrecisionInsufficientError("truncation " + std::to_string(T) +
                                         " too small for rank " + std::to_string(k));

    QMatrix sol(static_cast<int>(null.size()), cols);
    for (int r = 0; r < sol.rows; ++r)
        for (int c = 0; c < cols; ++c) sol.at(r, c) = null[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    std::vector<int> piv;
    const int nsol = rref(sol, &piv);

    HomBasis hb;
    hb.mu0 = mu0;
    hb.window = wcap;
    for (int r = 0; r < nsol; ++r) {
        auto [lg, order] = col_to_log_order(J, T, piv[static_cast<std::size_t>(r)]);
        if (order > wcap) continue;
        XiElement w(mu0, J, T);
        for (int j = 0; j <= J; ++j) {
            TruncSeries part = TruncSeries::constant(Rat(0), T);
            for (int n = 0; n <= wcap; ++n) part.set(n, sol.at(r, flat_col(J, T, j, n)));
            w.parts[static_cast<std::size_t>(j)] = part.with_window(wcap);
        }
        hb.basis.push_back(std::move(w));
        hb.pivots.emplace_back(lg, order);
    }

    if (static_cast<int>(hb.basis.size()) != k)
        throw PrecisionInsufficientError(
            "solution space of the annihilator has dimension " +
            std::to_string(hb.basis.size()) + " after junk removal, expected " +
            std::to_string(k) + "; raise the truncation");

    for (const XiElement& w : hb.basis)
        if (!xi_apply(p, w).is_zero())
            throw PrecisionInsufficientError("annihilator solution fails its own relation");
    return hb;
}

std::vector<XiElement> hom_images(const FrescoPresentation& p, const XiElement& x) {
    const int k = p.rank();
    std::vector<XiElement> img(static_cast<std::size_t>(k), x);
    for (int j = k; j >= 2; --j) {
        const XiElement& cur = img[static_cast<std::size_t>(j - 1)];
        XiElement w = xi_sub(xi_act_a(cur),
                             xi_scale_rat(xi_act_b(cur), p.lambda[static_cast<std::size_t>(j - 1)]));
        img[static_cast<std::size_t>(j - 2)] = xi_scale(w, p.S(j - 1).invert_unit());
    }
    return img;
}

XiElement hom_value(const std::vector<XiElement>& images, const SeriesVec& y) {
    if (images.empty() || images.size() != y.size())
        throw RankMismatchError("hom value needs one coordinate per image");
    XiElement acc = xi_scale(images[0], y[0]);
    for (std::size_t l = 1; l < images.size(); ++l)
        acc = xi_add(acc, xi_scale(images[l], y[l]));
    return acc;
}

namespace {

/* Determinant of the square submatrix rows x comp_sel, by Laplace expansion
   on the first row; the sizes in play are tiny. */
TruncSeries series_minor(const std::vector<SeriesVec>& rows, std::vector<int> comp_sel,
                         std::size_t from, int trunc) {
    if (comp_sel.empty()) return TruncSeries::constant(Rat(1), trunc);
    TruncSeries acc = TruncSeries::constant(Rat(0), trunc);
    for (std::size_t i = 0; i < comp_sel.size(); ++i) {
        const TruncSeries& entry = rows[from][static_cast<std::size_t>(comp_sel[i])];
        if (entry.is_zero()) continue;
        std::vector<int> rest;
        for (std::size_t t = 0; t < comp_sel.size(); ++t)
            if (t != i) rest.push_back(comp_sel[t]);
        TruncSeries sub = series_minor(rows, std::move(rest), from + 1, trunc);
        TruncSeries term = entry * sub;
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/* Valuation of the Fitting ideal of the module generated by the echelon
   rows: the smallest valuation among the rank x rank minors. Minors that
   vanish inside the window cannot be the smallest, so they are skipped;
   when every minor hides, the window carries no bound at all. */
int fitting_valuation(const EchelonBasis& rowmod, int comps, int w) {
    const int rho = rowmod.rank();
    if (rho == 0) return 0;
    int vmin = -1;
    std::vector<int> sel;
    auto walk = [&](auto&& self, int next) -> void {
        if (static_cast<int>(sel.size()) == rho) {
            TruncSeries det = series_minor(rowmod.rows, sel, 0, rowmod.rows[0][0].trunc());
            int v = det.valuation();
            if (v >= 0 && (vmin < 0 || v < vmin)) vmin = v;
            return;
        }
        for (int c = next; c < comps; ++c) {
            sel.push_back(c);
            self(self, c + 1);
            sel.pop_back();
        }
    };
    walk(walk, 0);
    if (vmin < 0)
        throw PrecisionInsufficientError("row module minors all vanish within window " +
                                         std::to_string(w));
    return vmin;
}

} // namespace

std::vector<SeriesVec> series_kernel_module(const std::vector<SeriesVec>& rows, int comps,
                                            int trunc) {
    int w = trunc;
    for (const auto& r : rows) w = std::min(w, sv_window(r));
    bool all_zero = true;
    for (const auto& r : rows)
        if (!sv_is_zero(r)) all_zero = false;
    if (all_zero) {
        std::vector<SeriesVec> full;
        for (int l = 0; l < comps; ++l) full.push_back(sv_unit(comps, l, trunc));
        return full;
    }

    /* Coefficient of b^q in sum_l y_l G_l is sum_n y_l[n] G_l[q-n]. */
    const int cols = comps * (w + 1);
    QMatrix a(static_cast<int>(rows.size()) * (w + 1), cols);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (int q = 0; q <= w; ++q)
            for (int l = 0; l < comps; ++l)
                for (int n = 0; n <= q; ++n)
                    a.at(r * (w + 1) + q, l * (w + 1) + n) =
                        rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)][q - n];

    std::vector<std::vector<Rat>> null = nullspace(a);
    std::vector<SeriesVec> cand;
    for (const auto& v : null) {
        SeriesVec sv = sv_zero(comps, trunc);
        for (int l = 0; l < comps; ++l) {
            TruncSeries part = TruncSeries::constant(Rat(0), trunc);
            for (int n = 0; n <= w; ++n) part.set(n, v[static_cast<std::size_t>(l * (w + 1) + n)]);
            sv[static_cast<std::size_t>(l)] = part.with_window(w);
        }
        cand.push_back(std::move(sv));
    }

    /* Truncation junk sits within D of the boundary, where D is the largest
       elementary divisor of the row module: a vector whose image vanishes
       through b^w lies in b^{w+1-D} times the saturated kernel. D is read
       off the Fitting valuation, the smallest valuation among the full-rank
       minors of any generating matrix, so the margin scales with the actual
       divisor structure instead of a constant that deep divisors overrun. */
    EchelonBasis rowmod = echelonize(rows, comps);
    const int fit = fitting_valuation(rowmod, comps, w);
    const int margin = comps + 2 + fit;
    if (w < margin)
        throw PrecisionInsufficientError("kernel window " + std::to_string(w) +
                                         " below junk margin " + std::to_string(margin));

    EchelonBasis e = echelonize(cand, comps);
    std::vector<SeriesVec> kept;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
        if (e.pivots[i].second <= w - margin) kept.push_back(e.rows[i]);
    if (kept.empty()) return {};
    EchelonBasis sat = saturate(kept, comps);
    return sat.rows;
}

namespace {

/* Images of the whole chain under every basis map, computed once. */
std::vector<std::vector<XiElement>> all_images(const FrescoPresentation& p, const HomBasis& hb) {
    std::vector<std::vector<XiElement>> img;
    img.reserve(hb.basis.size());
    for (const XiElement& w : hb.basis) img.push_back(hom_images(p, w));
    return img;
}

/* Rows of the condition "every map lands in log degree < j", restricted to
   the first m chain coordinates. */
std::vector<SeriesVec> log_condition_rows(const std::vector<std::vector<XiElement>>& img, int j,
                                          int m, int trunc) {
    std::vector<SeriesVec> rows;
    for (const auto& chain : img) {
        const int cap = chain.empty() ? -1 : chain[0].log_cap();
        for (int t = j; t <= cap; ++t) {
            SeriesVec row(static_cast<std::size_t>(m), TruncSeries::constant(Rat(0), trunc));
            bool nz = false;
            for (int l = 0; l < m; ++l) {
                row[static_cast<std::size_t>(l)] = chain[static_cast<std::size_t>(l)].parts[static_cast<std::size_t>(t)];
                if (!row[static_cast<std::size_t>(l)].is_zero()) nz = true;
            }
            if (nz) rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

int depth(const FrescoPresentation& p) { return 1 + solve_annihilator(p).max_log_degree(); }

bool is_semisimple(const FrescoPresentation& p) { return depth(p) == 1; }

SsFiltration ss_filtration(const FrescoPresentation& p) {
    return ss_filtration(p, solve_annihilator(p));
}

SsFiltration ss_filtration(const FrescoPresentation& p, const HomBasis& hb) {
    const int k = p.rank();
    const int d = 1 + hb.max_log_degree();
    auto img = all_images(p, hb);

    SsFiltration out;
    out.depth = d;
    for (int j = 1; j <= d; ++j) {
        auto rows = log_condition_rows(img, j, k, p.trunc);
        out.ranks.push_back(k - echelonize(rows, k).rank());
    }
    /* Both structure checks are honest verifications, not invariants of the
       computation: the constant-exponent rank-4 example fails them with a
       perfectly stable hom basis. */
    out.rank_identity = out.ranks.front() == k - d + 1 && out.ranks.back() == k;
    out.unit_steps = true;
    for (int j = 1; j < d; ++j)
        if (out.ranks[static_cast<std::size_t>(j)] != out.ranks[static_cast<std::size_t>(j - 1)] + 1)
            out.unit_steps = false;
    return out;
}

int ss_trace_rank(const FrescoPresentation& p, const HomBasis& hb, int j, int m) {
    if (m < 1 || m > p.rank()) throw RankMismatchError("trace rank needs 1 <= m <= k");
    auto img = all_images(p, hb);
    auto rows = log_condition_rows(img, j, m, p.trunc);
    return m - echelonize(rows, m).rank();
}

std::vector<SeriesVec> ss_layer_generators(const FrescoPresentation& p, int j) {
    return ss_layer_generators(p, solve_annihilator(p), j);
}

std::vector<SeriesVec> ss_layer_generators(const FrescoPresentation& p, const HomBasis& hb,
                                           int j) {
    auto img = all_images(p, hb);
    auto rows = log_condition_rows(img, j, p.rank(), p.trunc);
    return series_kernel_module(rows, p.rank(), p.trunc);
}

Sigma1 sigma1(const FrescoPresentation& p) { return sigma1(p, solve_annihilator(p)); }

/* Joint kernel of the log-0 stratum, no rank check. This is the minimal
   normal submodule with semi-simple quotient whatever the depth profile
   looks like: the quotient embeds into a product of rank-1 modules, and
   semi-simple quotients separate points through their rank-1 quotients. */
static Sigma1 sigma1_unchecked(const FrescoPresentation& p, const HomBasis& hb) {
    const int k = p.rank();

    /* The log-0 stratum spans every rank-1 quotient map: joint kernel rows
       are their values on the chain basis. */
    std::vector<SeriesVec> rows;
    for (std::size_t i = 0; i < hb.basis.size(); ++i) {
        if (hb.pivots[i].first != 0) continue;
        auto chain = hom_images(p, hb.basis[i]);
        SeriesVec row(static_cast<std::size_t>(k), TruncSeries::constant(Rat(0), p.trunc));
        for (int l = 0; l < k; ++l) row[static_cast<std::size_t>(l)] = chain[static_cast<std::size_t>(l)].parts[0];
        rows.push_back(std::move(row));
    }

    Sigma1 out;
    out.generators = series_kernel_module(rows, k, p.trunc);
    out.rank = static_cast<int>(out.generators.size());
    return out;
}

Sigma1 sigma1(const FrescoPresentation& p, const HomBasis& hb) {
    const int d = 1 + hb.max_log_degree();
    Sigma1 out = sigma1_unchecked(p, hb);
    if (out.rank != d - 1)
        throw RankMismatchError("joint kernel of the rank-1 quotients has rank " +
                                std::to_string(out.rank) + ", depth predicts " +
                                std::to_string(d - 1));
    return out;
}

CoSsFiltration co_ss_filtration(const FrescoPresentation& p) {
    CoSsFiltration out;
    const HomBasis top = solve_annihilator(p);
    const int d = 1 + top.max_log_degree();
    const auto top_img = all_images(p, top);

    out.ranks.push_back(p.rank());
    FrescoPresentation cur = p;
    /* Ambient coordinates of the current stage's chain basis. */
    std::vector<SeriesVec> amb;
    for (int l = 0; l < p.rank(); ++l) amb.push_back(sv_unit(p.rank(), l, p.trunc));

    try {
        for (int j = 1; j <= d; ++j) {
            HomBasis hb = solve_annihilator(cur);
            Sigma1 s1 = sigma1(cur, hb);
            if (s1.rank == 0) {
                out.ranks.push_back(0);
                if (j != d)
                    throw HypothesisViolatedError("Sigma chain died after " + std::to_string(j) +
                                                  " steps, depth predicts " + std::to_string(d));
                return out;
            }
            SubmoduleResult sub = submodule_presentation(cur, s1.generators);

            std::vector<SeriesVec> amb_next;
            for (const auto& cvec : sub.chain) {
                SeriesVec g = sv_zero(p.rank(), p.trunc);
                for (std::size_t t = 0; t < amb.size(); ++t)
                    g = sv_add(g, sv_scale(amb[t], cvec[t]));
                amb_next.push_back(std::move(g));
            }

            /* Sigma^j must sit inside S_{d-j}(E): every top-level map sends
               its generators into log degree < d - j. */
            for (const auto& g : amb_next)
                for (const auto& chain : top_img)
                    if (hom_value(chain, g).log_degree() > d - j - 1)
                        throw HypothesisViolatedError("Sigma^" + std::to_string(j) + " leaves S_" +
                                                      std::to_string(d - j));

            const int dj = depth(sub.pres);
            if (dj != d - j)
                throw HypothesisViolatedError("Sigma^" + std::to_string(j) + " has depth " +
                                              std::to_string(dj) + ", expected " +
                                              std::to_string(d - j));
            if (sub.pres.rank() >= out.ranks.back())
                throw HypothesisViolatedError("Sigma chain failed to drop in rank");

            out.ranks.push_back(sub.pres.rank());
            out.stages.push_back(sub.pres);
            cur = sub.pres;
            amb = std::move(amb_next);
        }
        if (out.ranks.back() != 0)
            throw HypothesisViolatedError("Sigma^depth is nonzero");
    } catch (const NoCyclicGeneratorError& e) {
        out.complete = false;
        out.note = e.what();
    } catch (const RankMismatchError& e) {
        /* sigma1's count check failed: the iteration is truncated and the
           violation travels with the result instead of killing the caller. */
        out.complete = false;
        out.note = e.what();
    } catch (const HypothesisViolatedError& e) {
        out.complete = false;
        out.note = e.what();
    }
    return out;
}

std::vector<Rat> rank1_quotients(const FrescoPresentation& p) {
    return rank1_quotients(p, solve_annihilator(p));
}

std::vector<Rat> rank1_quotients(const FrescoPresentation& p, const HomBasis& hb) {
    const int k = p.rank();
    const int d = 1 + hb.max_log_degree();
    std::vector<Rat> classes;
    for (std::size_t i = 0; i < hb.basis.size(); ++i)
        if (hb.pivots[i].first == 0) classes.push_back(hb.mu0 + hb.pivots[i].second);
    std::sort(classes.begin(), classes.end());
    if (static_cast<int>(classes.size()) != k - d + 1)
        throw CountMismatchError("found " + std::to_string(classes.size()) +
                                 " rank-1 quotient classes, expected " + std::to_string(k - d + 1));
    return classes;
}

namespace {

std::vector<Rat> multiset_minus(std::vector<Rat> big, const std::vector<Rat>& small) {
    for (const Rat& v : small) {
        auto it = std::find(big.begin(), big.end(), v);
        if (it == big.end())
            throw ValidationError("invariant " + rat_str(v) + " missing from the ambient multiset");
        big.erase(it);
    }
    return big;
}

/* Invariants of E/N for a normal submodule N: remove v(N) from v(E) and
   shift each survivor down by the rank of N. */
std::vector<Rat> quotient_invariants(const FrescoPresentation& amb,
                                     const FrescoPresentation& sub) {
    std::vector<Rat> rest = multiset_minus(amb.invariants_sorted(), sub.invariants_sorted());
    for (Rat& v : rest) v -= sub.rank();
    return rest;
}

} // namespace

std::vector<ThemeStratum> quotient_theme_survey(const FrescoPresentation& p) {
    const HomBasis hb = solve_annihilator(p);
    const int d = 1 + hb.max_log_degree();

    /* Invariants of E/S_1(E), the common top quotient of every rank-d
       quotient theme. Only needed when d >= 2. */
    std::vector<Rat> top_quotient_inv;
    if (d >= 2) {
        auto gens = ss_layer_generators(p, hb, 1);
        SubmoduleResult s1 = submodule_presentation(p, gens);
        top_quotient_inv = quotient_invariants(p, s1.pres);
        std::sort(top_quotient_inv.begin(), top_quotient_inv.end());
    }

    std::vector<ThemeStratum> out;
    for (int r = 1; r <= d; ++r) {
        ThemeStratum st;
        st.rank = r;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < hb.basis.size(); ++i)
            if (hb.pivots[i].first == r - 1) idx.push_back(i);
        st.exists = !idx.empty();
        if (st.exists) {
            st.witness = hb.basis[idx.front()];
            st.data = theme_data(st.witness);
            if (st.data.rank() != r)
                throw PrecisionInsufficientError("witness of log degree " + std::to_string(r - 1) +
                                                 " produced a rank-" + std::to_string(st.data.rank()) +
                                                 " theme");

            /* Lower-stratum perturbations keep the log degree, so they stay
               inside the rank-r family. */
            int samples = 0;
            for (std::size_t i = 0; i < hb.basis.size() && samples < 3; ++i) {
                if (hb.pivots[i].first >= r - 1) continue;
                st.family.push_back(theme_data(xi_add(st.witness, hb.basis[i])));
                ++samples;
            }

            if (r == d && d >= 2) {
                for (std::size_t i : idx) {
                    ThemeData td = theme_data(hb.basis[i]);
                    std::vector<Rat> q =
                        td.as_presentation().suffix_quotient(1).invariants_sorted();
                    if (q != top_quotient_inv) st.top_quotient_ok = false;
                }
            }
        }
        out.push_back(std::move(st));
    }
    return out;
}

LSeries L_series(const FrescoPresentation& p) {
    const HomBasis hb = solve_annihilator(p);
    const int d = 1 + hb.max_log_degree();

    LSeries out;
    PrincipalForm pf = principal_form(p);
    std::vector<int> nci = nci_list(pf.pres);
    out.h = nci.empty() ? 0 : nci.front();
    if (d == 1) return out;

    /* The joint kernel is Sigma^1 whether or not its rank matches d - 1;
       the mismatch is recorded, not fatal, so the series stays readable on
       presentations that break the rank prediction. */
    Sigma1 s1 = sigma1_unchecked(p, hb);
    out.sigma_rank_expected = s1.rank == d - 1;
    SubmoduleResult sub = submodule_presentation(p, s1.generators);
    out.sigma = sub.pres;
    out.sigma_is_theme = sub.pres.rank() <= 1 || is_theme(sub.pres);

    /* For a depth-2 chain with a single non-commuting index h the kernel of
       the rank-1 quotients is E_{lambda_h + h - 1}; for h = 1 the chain
       prefix of rank 2 is itself the witnessing sub-theme. Other shapes are
       reported without these two flags. */
    if (d == 2 && nci.size() == 1 && out.h >= 1) {
        out.first_term_checked = true;
        Rat expected = pf.pres.lambda[static_cast<std::size_t>(out.h - 1)] + (out.h - 1);
        out.first_term_holds = sub.pres.lambda.front() == expected;
        if (out.h == 1) out.prefix_subtheme_holds = is_theme(pf.pres.prefix(2));
    }
    return out;
}

namespace {

/* Solves Q (T(b) s^{lambda_1 - k}) = S_1 s^{lambda_1 - 1} where Q is the
   chain operator with the leading factor removed. Peeling that factor is a
   non-resonant first order equation b T' - p_1 T = (lambda_1 - 1) R; the
   rest renames (lambda_1 - 1, S_2 U, lambda_3, ...) and recurses. */
TruncSeries t_chain(const std::vector<Rat>& lam, const std::vector<TruncSeries>& ser, int trunc) {
    const std::size_t k = lam.size();
    if (k < 2) throw RankMismatchError("division chain needs rank >= 2");
    const Rat p1 = lam[1] + 1 - lam[0];
    if (is_natural(p1))
        throw NotSemisimpleOrderError("resonant exponent gap " + rat_str(p1) +
                                      " in a descending chain");
    TruncSeries u = ode_solve(p1, ser[0].scaled(lam[0] - Rat(1)), Rat(0));
    if (k == 2) return u;
    std::vector<Rat> lam2;
    lam2.push_back(lam[0] - 1);
    for (std::size_t j = 2; j < k; ++j) lam2.push_back(lam[j]);
    std::vector<TruncSeries> ser2;
    ser2.push_back(ser[1] * u);
    for (std::size_t j = 2; j + 1 < k; ++j) ser2.push_back(ser[j]);
    return t_chain(lam2, ser2, trunc);
}

} // namespace

Embedding embed_semisimple(const FrescoPresentation& p) {
    p.validate();
    const int k = p.rank();
    if (!p.is_primitive() || !p.is_geometric())
        throw HypothesisViolatedError("embedding requires a primitive geometric chain");
    for (int j = 1; j < k; ++j)
        if (!(p.invariant(j) > p.invariant(j + 1)))
            throw NotSemisimpleOrderError("invariants not strictly decreasing at position " +
                                          std::to_string(j));

    Embedding out;
    out.mu0 = p.invariant(k) - k;

    for (int r = 1; r <= k; ++r) {
        std::vector<Rat> lam;
        std::vector<TruncSeries> ser;
        for (int j = k - r + 1; j <= k; ++j) lam.push_back(p.lambda[static_cast<std::size_t>(j - 1)]);
        for (int j = k - r + 1; j <= k - 1; ++j) ser.push_back(p.S(j));

        TruncSeries t = r == 1 ? TruncSeries::one(p.trunc) : t_chain(lam, ser, p.trunc);
        XiElement psi = xi_scale(xi_power(out.mu0, 0, p.trunc, lam.front() - r), t);

        if (!xi_apply(p, psi).is_zero())
            throw PrecisionInsufficientError("embedding image " + std::to_string(r) +
                                             " is not annihilated by the relations");
        if (r >= 2) {
            /* The defining division identity: the suffix operator without
               its leading factor sends psi to S_1 s^{lambda_1 - 1}. */
            std::vector<Rat> qlam(lam.begin() + 1, lam.end());
            std::vector<TruncSeries> qser(ser.begin() + 1, ser.end());
            FrescoPresentation q;
            q.lambda = qlam;
            q.s = qser;
            q.trunc = p.trunc;
            XiElement lhs = xi_apply(q, psi);
            XiElement rhs = xi_scale(xi_power(out.mu0, 0, p.trunc, lam.front() - 1), ser.front());
            if (!xi_equal(lhs, rhs))
                throw PrecisionInsufficientError("division identity fails at rank " +
                                                 std::to_string(r));
        }
        out.images.push_back(std::move(psi));
        out.t_chain.push_back(std::move(t));
    }

    /* Joint injectivity: the only chain combination every map kills is 0. */
    std::vector<SeriesVec> rows;
    for (const XiElement& psi : out.images) {
        auto chain = hom_images(p, psi);
        SeriesVec row(static_cast<std::size_t>(k), TruncSeries::constant(Rat(0), p.trunc));
        for (int l = 0; l < k; ++l) row[static_cast<std::size_t>(l)] = chain[static_cast<std::size_t>(l)].parts[0];
        rows.push_back(std::move(row));
    }
    if (!series_kernel_module(rows, k, p.trunc).empty())
        throw PrecisionInsufficientError("embedding of a semi-simple chain has a joint kernel");
    return out;
}

EmbeddingDimension embedding_dimension(const FrescoPresentation& p) {
    const HomBasis hb = solve_annihilator(p);
    const int k = p.rank();
    const int d = 1 + hb.max_log_degree();

    /* Chain basis of S_1(E) in ambient coordinates. */
    std::vector<SeriesVec> chain_amb;
    FrescoPresentation s1_pres = p;
    if (d == 1) {
        for (int t = 0; t < k; ++t) chain_amb.push_back(sv_unit(k, t, p.trunc));
    } else {
        auto gens = ss_layer_generators(p, hb, 1);
        SubmoduleResult sub = submodule_presentation(p, gens);
        s1_pres = sub.pres;
        chain_amb = sub.chain;
    }

    /* Re-extract the same module on a strictly descending chain: candidates
       are offered largest first, so the greedy peel takes the largest
       invariant at every level, which a semi-simple module always admits. */
    AModule m = AModule::from_presentation(s1_pres);
    std::vector<Rat> cands;
    for (Rat mu = s1_pres.class_rep(); mu <= max_invariant(s1_pres); mu += 1) cands.push_back(mu);
    std::reverse(cands.begin(), cands.end());
    ExtractedChain ec = extract_chain(m, cands);

    std::vector<SeriesVec> desc_amb;
    for (const auto& cvec : ec.chain) {
        SeriesVec g = sv_zero(k, p.trunc);
        for (std::size_t t = 0; t < chain_amb.size(); ++t)
            g = sv_add(g, sv_scale(chain_amb[t], cvec[t]));
        desc_amb.push_back(std::move(g));
    }

    Embedding sub_emb = embed_semisimple(ec.pres);
    /* One map per copy needed for S_1(E) itself; the count is rk S_1, which
       matches k - d + 1 whenever the rank identity holds but stays honest
       when it does not. */
    const int l = static_cast<int>(sub_emb.images.size());
    const SeriesVec& eps = desc_amb.back(); // generator of S_1(E), ambient coordinates

    /* Extend each map through the solution space: the value on the ambient
       generator is a rational combination of the basis values on eps. The
       embedding images live over the sub-chain's own base exponent, so move
       them down to the ambient one before comparing coefficients. */
    auto img = all_images(p, hb);
    std::vector<XiElement> vals;
    for (const auto& chain : img) vals.push_back(hom_value(chain, eps));
    std::vector<XiElement> targets;
    for (const auto& x : sub_emb.images) targets.push_back(xi_rebase(x, hb.mu0));

    const int J = k - 1;
    int weq = hb.window;
    for (const auto& v : vals) weq = std::min(weq, v.window());
    for (const auto& x : targets) weq = std::min(weq, x.window());

    EmbeddingDimension out;
    out.dimension = l;
    out.witness.mu0 = hb.mu0;
    out.witness.t_chain = sub_emb.t_chain;
    for (int i = 0; i < l; ++i) {
        const XiElement& target = targets[static_cast<std::size_t>(i)];
        QMatrix a((J + 1) * (weq + 1), k + 1);
        for (int c = 0; c < k; ++c)
            for (int t = 0; t <= J; ++t)
                for (int q = 0; q <= weq; ++q)
                    a.at(t * (weq + 1) + q, c) = vals[static_cast<std::size_t>(c)].parts[static_cast<std::size_t>(t)][q];
        for (int q = 0; q <= weq; ++q) a.at(q, k) = target.parts[0][q];

        std::vector<int> piv;
        rref(a, &piv);
        std::vector<Rat> coef(static_cast<std::size_t>(k), Rat(0));
        for (std::size_t r = 0; r < piv.size(); ++r) {
            if (piv[r] == k)
                throw PrecisionInsufficientError("extension system for map " + std::to_string(i) +
                                                 " is inconsistent");
            coef[static_cast<std::size_t>(piv[r])] = a.at(static_cast<int>(r), k);
        }

        XiElement y(hb.mu0, J, p.trunc);
        for (int c = 0; c < k; ++c)
            if (coef[static_cast<std::size_t>(c)] != 0)
                y = xi_add(y, xi_scale_rat(hb.basis[static_cast<std::size_t>(c)], coef[static_cast<std::size_t>(c)]));
        if (!xi_apply(p, y).is_zero())
            throw PrecisionInsufficientError("extended map fails the relations");
        if (!xi_equal(hom_value(hom_images(p, y), eps), target.with_log_cap(J), weq))
            throw PrecisionInsufficientError("extended map does not restrict to the embedding");
        out.witness.images.push_back(std::move(y));
    }

    /* Injectivity of the joint map. */
    std::vector<SeriesVec> rows;
    for (const XiElement& y : out.witness.images) {
        auto chain = hom_images(p, y);
        for (int t = 0; t <= J; ++t) {
            SeriesVec row(static_cast<std::size_t>(k), TruncSeries::constant(Rat(0), p.trunc));
            bool nz = false;
            for (int c = 0; c < k; ++c) {
                row[static_cast<std::size_t>(c)] = chain[static_cast<std::size_t>(c)].parts[static_cast<std::size_t>(t)];
                if (!row[static_cast<std::size_t>(c)].is_zero()) nz = true;
            }
            if (nz) rows.push_back(std::move(row));
        }
    }
    if (!series_kernel_module(rows, k, p.trunc).empty())
        throw PrecisionInsufficientError("joint kernel of the extended maps is nontrivial");
    return out;
}

FiltrationReport filtration_report(const FrescoPresentation& p) {
    FiltrationReport out;
    const HomBasis hb = solve_annihilator(p);
    out.depth = 1 + hb.max_log_degree();

    SsFiltration ss = ss_filtration(p, hb);
    out.ss_ranks = ss.ranks;
    out.ss_rank_identity = ss.rank_identity;
    out.ss_unit_steps = ss.unit_steps;

    CoSsFiltration co = co_ss_filtration(p);
    out.sigma_ranks = co.ranks;
    out.sigma_complete = co.complete;
    out.sigma_note = co.note;

    PrincipalForm pf = principal_form(p);
    out.nci_principal = nci_list(pf.pres);

    LSeries ls = L_series(p);
    if (ls.sigma) out.L_invariants = ls.sigma->invariants();
    try {
        out.rank1_quotient_classes = rank1_quotients(p, hb);
    } catch (const CountMismatchError& e) {
        /* Report the witnessed classes anyway; the count check outcome rides
           along so the caller can surface it. */
        for (std::size_t i = 0; i < hb.basis.size(); ++i)
            if (hb.pivots[i].first == 0)
                out.rank1_quotient_classes.push_back(hb.mu0 + hb.pivots[i].second);
        std::sort(out.rank1_quotient_classes.begin(), out.rank1_quotient_classes.end());
        out.rank1_note = e.what();
    }
    return out;
}

} // namespace fresco
