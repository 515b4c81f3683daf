#include "fresco/fresco_basis.hpp"

#include "fresco/ab_algebra.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace fresco {

AModule::AModule(int rank, int trunc) : rank_(rank), trunc_(trunc) {
    c_.assign(static_cast<std::size_t>(rank),
              std::vector<TruncSeries>(static_cast<std::size_t>(rank), TruncSeries(trunc)));
}

AModule AModule::from_presentation(const FrescoPresentation& p) {
    AModule m(p.rank(), p.trunc);
    for (int i = 0; i < p.rank(); ++i)
        m.entry(i, i) = TruncSeries::monomial(p.lambda[static_cast<std::size_t>(i)], 1, p.trunc);
    for (int i = 1; i < p.rank(); ++i)
        m.entry(i - 1, i) = p.S(i);
    return m;
}

TruncSeries& AModule::entry(int row, int col) {
    return c_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

const TruncSeries& AModule::entry(int row, int col) const {
    return c_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

int AModule::window() const {
    int w = trunc_;
    for (const auto& row : c_)
        for (const auto& s : row) w = std::min(w, s.window());
    return w;
}

SeriesVec AModule::act_a(const SeriesVec& x) const {
    SeriesVec y = sv_zero(rank_, trunc_);
    for (int j = 0; j < rank_; ++j) {
        TruncSeries acc = x[static_cast<std::size_t>(j)].derivative().shifted_up(2);
        for (int i = 0; i < rank_; ++i) {
            const TruncSeries& cji = entry(j, i);
            if (cji.is_zero()) continue;
            acc = acc + cji * x[static_cast<std::size_t>(i)];
        }
        y[static_cast<std::size_t>(j)] = acc;
    }
    return y;
}

SeriesVec AModule::act_b(const SeriesVec& x) const { return sv_shift(x, 1); }

SeriesVec AModule::act_linear(const Rat& mu, const SeriesVec& x) const {
    return sv_sub(act_a(x), sv_scale_rat(sv_shift(x, 1), mu));
}

/* (a - mu b)x = 0 coefficientwise: for each component j and order n,
   sum_i (C_{ji} X_i)[n] + (n - 1 - mu) X_j[n-1] = 0. Unknowns are laid out
   order-major so the system stays close to triangular. */
std::vector<SeriesVec> AModule::kernel_basis(const Rat& mu, int margin) const {
    const int r = rank_;
    if (margin < 0) margin = r + 2;
    const int W = window();
    if (W - margin < 0)
        throw PrecisionInsufficientError("kernel window " + std::to_string(W) +
                                         " below junk margin " + std::to_string(margin));
    const int nu = r * (W + 1);
    QMatrix a(nu, nu);
    auto idx = [r](int i, int m) { return m * r + i; };
    for (int j = 0; j < r; ++j)
        for (int n = 0; n <= W; ++n) {
            const int row = idx(j, n);
            for (int i = 0; i < r; ++i) {
                const TruncSeries& cji = entry(j, i);
                if (cji.is_zero()) continue;
                for (int m = 0; m <= n; ++m) {
                    const Rat& co = cji[n - m];
                    if (co != 0) a.at(row, idx(i, m)) += co;
                }
            }
            if (n >= 1) a.at(row, idx(j, n - 1)) += Rat(n - 1) - mu;
        }

    auto sols = nullspace(a);
    std::vector<SeriesVec> vecs;
    for (const auto& s : sols) {
        SeriesVec v = sv_zero(r, trunc_);
        for (int i = 0; i < r; ++i) {
            TruncSeries comp(trunc_);
            for (int m = 0; m <= W; ++m) comp.set(m, s[static_cast<std::size_t>(idx(i, m))]);
            v[static_cast<std::size_t>(i)] = comp.with_window(W);
        }
        vecs.push_back(std::move(v));
    }

    /* Solutions hugging the truncation boundary only exist because the
       system was cut at order W; a pivot valuation deep inside the window
       certifies a genuine solution. */
    EchelonBasis e = echelonize(vecs, r);
    std::vector<SeriesVec> out;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i].second > W - margin) continue;
        SeriesVec v;
        for (const auto& s : e.rows[i]) v.push_back(s.with_window(W - margin));
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

/* Restrict a list of partial solutions to the kernel of one rational
   functional: eliminate against a pivot with nonzero value and drop it. */
void eliminate_functional(std::vector<SeriesVec>& basis, const std::vector<Rat>& vals) {
    int piv = -1;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] != 0) { piv = static_cast<int>(i); break; }
    if (piv < 0) return;
    std::vector<SeriesVec> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (static_cast<int>(i) == piv) continue;
        if (vals[i] == 0)
            out.push_back(std::move(basis[i]));
        else
            out.push_back(sv_sub(basis[i], sv_scale_rat(basis[static_cast<std::size_t>(piv)],
                                                        vals[i] / vals[static_cast<std::size_t>(piv)])));
    }
    basis = std::move(out);
}

} // namespace

std::vector<SeriesVec> kernel(const FrescoPresentation& p, const Rat& mu) {
    const int k = p.rank();
    const int T = p.trunc;
    /* Homogeneous monomials b^q stay certifiable through the remaining
       ode passes only this far below the window. */
    const int budget = std::max(0, p.window() - k);

    std::vector<SeriesVec> basis;
    for (int j = k; j >= 1; --j) {
        const std::size_t comp = static_cast<std::size_t>(j - 1);
        if (j < k) {
            /* Component j of (a - mu b)x reads b^2 X_j' + (lambda_j - mu) b X_j
               + S_j X_{j+1} = 0, so S_j X_{j+1} must vanish at order 0. */
            std::vector<Rat> vals;
            for (const auto& v : basis) vals.push_back(p.S(j)[0] * v[comp + 1][0]);
            eliminate_functional(basis, vals);
        }
        const Rat delta = mu - p.lambda[comp];
        auto rhs = [&](const SeriesVec& v) {
            if (j == k) return TruncSeries(T);
            return (-(p.S(j) * v[comp + 1])).shifted_down(1);
        };
        long res_order = -1;
        if (is_natural(delta))
            if (auto n = as_long(delta)) res_order = *n;
        if (res_order >= 0) {
            std::vector<Rat> vals;
            for (const auto& v : basis) vals.push_back(rhs(v)[static_cast<int>(res_order)]);
            eliminate_functional(basis, vals);
        }
        for (auto& v : basis) v[comp] = ode_solve(delta, rhs(v), Rat(0));
        if (res_order >= 0 && res_order <= budget) {
            SeriesVec h = sv_zero(k, T);
            h[comp] = TruncSeries::monomial(Rat(1), static_cast<int>(res_order), T);
            basis.push_back(std::move(h));
        }
    }
    return basis;
}

int kernel_dimension(const FrescoPresentation& p, const Rat& mu) {
    return static_cast<int>(kernel(p, mu).size());
}

std::vector<Rank1Line> rank1_normal_submodules(const FrescoPresentation& p) {
    Rat vmax = p.invariant(1);
    for (int j = 2; j <= p.rank(); ++j)
        if (vmax < p.invariant(j)) vmax = p.invariant(j);

    std::vector<Rank1Line> out;
    for (Rat mu = p.class_rep(); mu <= vmax; mu += 1) {
        auto ker = kernel(p, mu);
        if (ker.empty()) continue;
        Rank1Line line;
        line.mu = mu;
        for (const auto& v : ker)
            if (sv_valuation(v) == 0) { line.has_primitive = true; break; }
        line.line_count = line.has_primitive ? (ker.size() == 1 ? 1 : -1) : 0;
        line.kernel_basis = std::move(ker);
        out.push_back(std::move(line));
    }
    return out;
}

bool is_theme(const FrescoPresentation& p) {
    int total = 0;
    for (const auto& line : rank1_normal_submodules(p)) {
        if (line.line_count < 0) return false;
        total += line.line_count;
    }
    return total == 1;
}

bool theme_order_criterion(const FrescoPresentation& p) {
    PrincipalForm pf = principal_form(p);
    return static_cast<int>(nci_list(pf.pres).size()) == p.rank() - 1;
}

namespace {

/* Quotient by the line through G, whose component t is a unit: drop
   component t and twist the matrix, Cbar_{li} = C_{li} - C_{ti} G_l / G_t. */
AModule quotient_module(const AModule& m, const SeriesVec& g, int t) {
    const int r = m.rank();
    AModule q(r - 1, m.trunc());
    std::vector<int> keep;
    for (int i = 0; i < r; ++i)
        if (i != t) keep.push_back(i);
    const TruncSeries& gt = g[static_cast<std::size_t>(t)];
    for (int l = 0; l < r - 1; ++l) {
        TruncSeries ratio = series_div(g[static_cast<std::size_t>(keep[static_cast<std::size_t>(l)])], gt);
        for (int i = 0; i < r - 1; ++i) {
            const TruncSeries& top = m.entry(t, keep[static_cast<std::size_t>(i)]);
            TruncSeries val = m.entry(keep[static_cast<std::size_t>(l)], keep[static_cast<std::size_t>(i)]);
            if (!top.is_zero()) val = val - top * ratio;
            q.entry(l, i) = val;
        }
    }
    return q;
}

std::optional<ExtractedChain> extract_rec(const AModule& m, const std::vector<Rat>& cands,
                                          int& attempts_left);

/* Lift a quotient chain along the peeled line G (unit component t) and
   repair the relations. The corrections e_{j+1} += h_j G solve
   S_j h_{j-1} = g_j + (mu - lambda_j) b h_j + b^2 h_j', top index free,
   so the only way a candidate fails is S_1(0) = g_1(0) = 0. */
std::optional<ExtractedChain> lift_through(const AModule& m, const SeriesVec& g, int t,
                                           const Rat& mu, const ExtractedChain& sub) {
    const int r = m.rank();
    const int q = r - 1;
    const int T = m.trunc();
    std::vector<int> keep;
    for (int i = 0; i < r; ++i)
        if (i != t) keep.push_back(i);

    std::vector<SeriesVec> lifts(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j) {
        SeriesVec L = sv_zero(r, T);
        for (int l = 0; l < q; ++l)
            L[static_cast<std::size_t>(keep[static_cast<std::size_t>(l)])] =
                sub.chain[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
        lifts[static_cast<std::size_t>(j)] = std::move(L);
    }

    /* Residuals of the lifted relations all sit on the line C[[b]]G. */
    std::vector<TruncSeries> gres;
    for (int j = 1; j <= q; ++j) {
        SeriesVec res = m.act_linear(sub.pres.lambda[static_cast<std::size_t>(j - 1)],
                                     lifts[static_cast<std::size_t>(j - 1)]);
        if (j >= 2)
            res = sv_sub(res, sv_scale(lifts[static_cast<std::size_t>(j - 2)], sub.pres.S(j - 1)));
        TruncSeries gj = series_div(res[static_cast<std::size_t>(t)], g[static_cast<std::size_t>(t)]);
        if (!sv_is_zero(sv_sub(res, sv_scale(g, gj)))) return std::nullopt; // not on the line: junk input
        gres.push_back(std::move(gj));
    }
    if (gres[0][0] == 0) return std::nullopt; // this line cannot start the chain

    std::vector<TruncSeries> h(static_cast<std::size_t>(q), TruncSeries(T));
    for (int j = q; j >= 2; --j) {
        const TruncSeries& hj = h[static_cast<std::size_t>(j - 1)];
        TruncSeries num = gres[static_cast<std::size_t>(j - 1)] + hj.derivative().shifted_up(2) +
                          hj.shifted_up(1).scaled(mu - sub.pres.lambda[static_cast<std::size_t>(j - 1)]);
        h[static_cast<std::size_t>(j - 2)] = num * sub.pres.S(j - 1).invert_unit();
    }
    TruncSeries s1 = gres[0] + h[0].derivative().shifted_up(2) +
                     h[0].shifted_up(1).scaled(mu - sub.pres.lambda[0]);

    ExtractedChain out;
    out.pres.trunc = T;
    out.pres.lambda.push_back(mu);
    for (const Rat& l : sub.pres.lambda) out.pres.lambda.push_back(l);
    out.pres.s.push_back(s1.scaled(1 / s1[0]));
    for (const auto& s : sub.pres.s) out.pres.s.push_back(s);

    out.chain.push_back(sv_scale_rat(g, s1[0]));
    for (int j = 0; j < q; ++j)
        out.chain.push_back(sv_add(lifts[static_cast<std::size_t>(j)],
                                   sv_scale(g, h[static_cast<std::size_t>(j)])));
    return out;
}

std::optional<ExtractedChain> extract_rec(const AModule& m, const std::vector<Rat>& cands,
                                          int& attempts_left) {
    const int r = m.rank();
    const int T = m.trunc();
    if (r == 1) {
        const TruncSeries& c = m.entry(0, 0);
        if (c[0] != 0) return std::nullopt; // a E must sit inside b E on a rank-1 module
        const Rat lam = c[1];
        TruncSeries gap = TruncSeries::monomial(lam, 1, T) - c;
        if (!gap.is_zero() && gap.valuation() < 2) return std::nullopt;
        TruncSeries hs = gap.shifted_down(2);
        /* u with b^2 u' = (lam b - c) u renormalizes the basis: n u_n = (u hs)_{n-1}. */
        const int w = std::min(T, hs.window() + 1);
        TruncSeries u(T);
        u.set(0, Rat(1));
        for (int n = 1; n <= w; ++n) {
            Rat acc(0);
            for (int i = 0; i < n; ++i) {
                const Rat& hv = hs[n - 1 - i];
                if (hv != 0) acc += u[i] * hv;
            }
            u.set(n, acc / n);
        }
        ExtractedChain out;
        out.pres.trunc = T;
        out.pres.lambda.push_back(lam);
        out.chain.push_back(SeriesVec{u.with_window(w)});
        return out;
    }

    for (const Rat& mu : cands) {
        std::vector<SeriesVec> ker = m.kernel_basis(mu);
        std::vector<SeriesVec> lines;
        for (const auto& v : ker)
            if (sv_valuation(v) == 0) lines.push_back(v);
        if (ker.size() >= 2) {
            const std::size_t n = ker.size();
            for (std::size_t i = 0; i < n && lines.size() < 10; ++i)
                for (std::size_t j = i + 1; j < n && lines.size() < 10; ++j) {
                    SeriesVec sum = sv_add(ker[i], ker[j]);
                    if (sv_valuation(sum) == 0) lines.push_back(std::move(sum));
                    SeriesVec dif = sv_sub(ker[i], ker[j]);
                    if (sv_valuation(dif) == 0) lines.push_back(std::move(dif));
                }
        }
        for (const auto& g : lines) {
            if (--attempts_left < 0)
                throw NoCyclicGeneratorError("search bound exceeded");
            int t = -1;
            for (int i = 0; i < r; ++i)
                if (g[static_cast<std::size_t>(i)].valuation() == 0) { t = i; break; }
            if (t < 0) continue;
            AModule q = quotient_module(m, g, t);
            auto sub = extract_rec(q, cands, attempts_left);
            if (!sub) continue;
            auto full = lift_through(m, g, t, mu, *sub);
            if (!full) continue;
            if (!verify_chain(m, *full)) continue;
            return full;
        }
    }
    return std::nullopt;
}

} // namespace

ExtractedChain extract_chain(const AModule& m, const std::vector<Rat>& mu_candidates) {
    int attempts_left = 600;
    auto out = extract_rec(m, mu_candidates, attempts_left);
    if (!out)
        throw NoCyclicGeneratorError("every candidate exponent and kernel line failed at rank " +
                                     std::to_string(m.rank()));
    return *out;
}

bool verify_chain(const AModule& m, const ExtractedChain& ec) {
    const int r = m.rank();
    if (ec.pres.rank() != r || static_cast<int>(ec.chain.size()) != r) return false;
    for (int j = 1; j <= r; ++j) {
        SeriesVec res = m.act_linear(ec.pres.lambda[static_cast<std::size_t>(j - 1)],
                                     ec.chain[static_cast<std::size_t>(j - 1)]);
        if (j >= 2)
            res = sv_sub(res, sv_scale(ec.chain[static_cast<std::size_t>(j - 2)], ec.pres.S(j - 1)));
        if (!sv_is_zero(res)) return false;
    }
    return echelonize(ec.chain, r).rank() == r;
}

namespace {

/* Rank plus pivot data; the closure loops run until this stops moving. */
std::vector<std::pair<int, int>> basis_signature(const EchelonBasis& e) {
    std::vector<std::pair<int, int>> sig = e.pivots;
    std::sort(sig.begin(), sig.end());
    return sig;
}

void close_under_action(const AModule& m, EchelonBasis& e) {
    for (int pass = 0; pass < 8 * m.rank() + 8; ++pass) {
        auto before = basis_signature(e);
        std::vector<SeriesVec> snapshot = e.rows;
        for (const auto& row : snapshot) e.insert(m.act_a(row));
        if (basis_signature(e) == before) return;
    }
}

} // namespace

SubmoduleResult submodule_presentation(const FrescoPresentation& p,
                                       const std::vector<SeriesVec>& generators,
                                       bool close_under_a) {
    if (generators.empty()) throw ValidationError("no submodule generators given");
    const int k = p.rank();
    for (const auto& gvec : generators) {
        if (static_cast<int>(gvec.size()) != k)
            throw RankMismatchError("generator has " + std::to_string(gvec.size()) +
                                    " components, ambient rank is " + std::to_string(k));
        for (const auto& s : gvec)
            if (s.trunc() != p.trunc)
                throw ValidationError("generator truncation differs from the presentation's");
    }
    AModule m = AModule::from_presentation(p);

    EchelonBasis e = echelonize(generators, k);
    if (close_under_a) close_under_action(m, e);
    for (int pass = 0; pass < 8 * k + 8; ++pass) {
        auto before = basis_signature(e);
        e = saturate(e.rows, k);
        if (close_under_a) close_under_action(m, e);
        if (basis_signature(e) == before) break;
    }

    const int r = e.rank();
    {
        /* Saturation must have ended with rows independent mod b; if the
           window died first the basis cannot be trusted. */
        QMatrix m0(k, r);
        for (int i = 0; i < r; ++i)
            for (int c = 0; c < k; ++c)
                m0.at(c, i) = e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)][0];
        QMatrix w = m0;
        if (rref(w) != r)
            throw PrecisionInsufficientError("saturation stopped before the basis was reduced mod b");
    }

    AModule sub(r, p.trunc);
    for (int i = 0; i < r; ++i) {
        SeriesVec w = m.act_a(e.rows[static_cast<std::size_t>(i)]);
        std::vector<TruncSeries> coeffs;
        if (!e.reduce(w, &coeffs))
            throw NotAStableError("a-image of basis row " + std::to_string(i) +
                                  " leaves the span, residual " + sv_str(w));
        for (int l = 0; l < r; ++l) sub.entry(l, i) = coeffs[static_cast<std::size_t>(l)];
    }

    Rat vmax = p.invariant(1);
    for (int j = 2; j <= k; ++j)
        if (vmax < p.invariant(j)) vmax = p.invariant(j);
    std::vector<Rat> cands;
    for (Rat mu = p.class_rep(); mu <= vmax; mu += 1) cands.push_back(mu);

    ExtractedChain ec = extract_chain(sub, cands);
    ec.pres.validate();

    /* Invariants of a normal submodule embed into the ambient multiset
       (the Bernstein product rule for the inclusion, in exponent form). */
    {
        std::vector<Rat> sub_inv = ec.pres.invariants_sorted();
        std::vector<Rat> amb_inv = p.invariants_sorted();
        std::size_t pos = 0;
        for (const Rat& v : sub_inv) {
            while (pos < amb_inv.size() && amb_inv[pos] != v) ++pos;
            if (pos == amb_inv.size())
                throw ValidationError("submodule invariant " + rat_str(v) +
                                      " does not embed into the ambient invariants");
            ++pos;
        }
    }

    SubmoduleResult out;
    out.pres = ec.pres;
    for (const auto& cvec : ec.chain) {
        SeriesVec amb = sv_zero(k, p.trunc);
        for (int l = 0; l < r; ++l)
            amb = sv_add(amb, sv_scale(e.rows[static_cast<std::size_t>(l)],
                                       cvec[static_cast<std::size_t>(l)]));
        out.chain.push_back(std::move(amb));
    }
    out.basis = std::move(e);
    return out;
}

} // namespace fresco
