#include "fresco/ab_algebra.hpp"

#include <algorithm>

namespace fresco {

AbElement AbElement::zero(int trunc) {
    AbElement x;
    x.trunc = trunc;
    x.window = trunc;
    x.parts.assign(static_cast<std::size_t>(trunc) + 1, {});
    return x;
}

AbElement AbElement::one(int trunc) {
    AbElement x = zero(trunc);
    x.parts[0] = {Rat(1)};
    return x;
}

AbElement AbElement::gen_a(int trunc) {
    AbElement x = zero(trunc);
    x.parts[0] = {Rat(0), Rat(1)};
    return x;
}

AbElement AbElement::gen_b(int trunc) {
    AbElement x = zero(trunc);
    if (trunc >= 1) x.parts[1] = {Rat(1)};
    return x;
}

AbElement AbElement::from_series(const TruncSeries& s) {
    AbElement x = zero(s.trunc());
    x.window = s.window();
    for (int n = 0; n <= s.trunc(); ++n)
        if (s[n] != 0) x.parts[static_cast<std::size_t>(n)] = {s[n]};
    return x;
}

AbElement AbElement::linear_factor(const Rat& lambda, int trunc) {
    AbElement x = AbElement::gen_a(trunc);
    if (trunc >= 1 && lambda != 0) x.parts[1] = {-lambda};
    return x;
}

void AbElement::trim() {
    for (auto& p : parts)
        while (!p.empty() && p.back() == 0) p.pop_back();
}

bool AbElement::is_zero(int limit) const {
    if (limit < 0) limit = window;
    limit = std::min(limit, trunc);
    for (int nu = 0; nu <= limit; ++nu)
        for (const auto& c : parts[static_cast<std::size_t>(nu)])
            if (c != 0) return false;
    return true;
}

AbElement ab_add(const AbElement& x, const AbElement& y) {
    AbElement z = AbElement::zero(std::min(x.trunc, y.trunc));
    z.window = std::min(x.window, y.window);
    for (int nu = 0; nu <= z.trunc; ++nu) {
        const auto& p = x.parts[static_cast<std::size_t>(nu)];
        const auto& q = y.parts[static_cast<std::size_t>(nu)];
        auto& r = z.parts[static_cast<std::size_t>(nu)];
        r.assign(std::max(p.size(), q.size()), Rat(0));
        for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
        for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
    }
    z.trim();
    return z;
}

AbElement ab_sub(const AbElement& x, const AbElement& y) {
    AbElement z = AbElement::zero(std::min(x.trunc, y.trunc));
    z.window = std::min(x.window, y.window);
    for (int nu = 0; nu <= z.trunc; ++nu) {
        const auto& p = x.parts[static_cast<std::size_t>(nu)];
        const auto& q = y.parts[static_cast<std::size_t>(nu)];
        auto& r = z.parts[static_cast<std::size_t>(nu)];
        r.assign(std::max(p.size(), q.size()), Rat(0));
        for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
        for (std::size_t i = 0; i < q.size(); ++i) r[i] -= q[i];
    }
    z.trim();
    return z;
}

namespace {

/* a * X in normal form: a * b^nu P(a) = b^nu (a P(a)) + nu b^(nu+1) P(a). */
AbElement left_mul_a(const AbElement& x) {
    AbElement z = AbElement::zero(x.trunc);
    z.window = x.window;
    for (int nu = 0; nu <= x.trunc; ++nu) {
        const auto& p = x.parts[static_cast<std::size_t>(nu)];
        if (p.empty()) continue;
        auto& r = z.parts[static_cast<std::size_t>(nu)];
        if (r.size() < p.size() + 1) r.resize(p.size() + 1, Rat(0));
        for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] += p[i];
        if (nu > 0 && nu + 1 <= x.trunc) {
            auto& r1 = z.parts[static_cast<std::size_t>(nu + 1)];
            if (r1.size() < p.size()) r1.resize(p.size(), Rat(0));
            for (std::size_t i = 0; i < p.size(); ++i) r1[i] += Rat(nu) * p[i];
        }
    }
    return z;
}

} // namespace

AbElement ab_mul(const AbElement& x, const AbElement& y) {
    AbElement z = AbElement::zero(std::min(x.trunc, y.trunc));
    z.window = std::min(x.window, y.window);
    /* x = sum_nu b^nu P_nu(a): apply P_nu(a) to y by Horner in left_mul_a,
       then shift the b-grading up by nu. */
    for (int nu = 0; nu <= x.trunc; ++nu) {
        const auto& p = x.parts[static_cast<std::size_t>(nu)];
        if (p.empty()) continue;
        AbElement acc = AbElement::zero(z.trunc);
        acc.window = z.window;
        for (std::size_t i = p.size(); i-- > 0;) {
            acc = left_mul_a(acc);
            if (p[i] != 0) {
                for (int mu = 0; mu <= y.trunc && mu <= z.trunc; ++mu) {
                    const auto& q = y.parts[static_cast<std::size_t>(mu)];
                    if (q.empty()) continue;
                    auto& r = acc.parts[static_cast<std::size_t>(mu)];
                    if (r.size() < q.size()) r.resize(q.size(), Rat(0));
                    for (std::size_t t = 0; t < q.size(); ++t) r[t] += p[i] * q[t];
                }
            }
        }
        /* b^nu * acc */
        for (int mu = z.trunc - nu; mu >= 0; --mu) {
            const auto& q = acc.parts[static_cast<std::size_t>(mu)];
            if (q.empty()) continue;
            auto& r = z.parts[static_cast<std::size_t>(mu + nu)];
            if (r.size() < q.size()) r.resize(q.size(), Rat(0));
            for (std::size_t t = 0; t < q.size(); ++t) r[t] += q[t];
        }
    }
    z.trim();
    return z;
}

bool ab_equals_within(const AbElement& x, const AbElement& y, int limit) {
    AbElement d = ab_sub(x, y);
    return d.is_zero(std::min(limit, d.window));
}

std::string ab_str(const AbElement& x) {
    std::string out;
    for (int nu = 0; nu <= std::min(x.window, x.trunc); ++nu) {
        const auto& p = x.parts[static_cast<std::size_t>(nu)];
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            Rat c = p[i];
            if (out.empty()) {
                if (c < 0) { out += "-"; c = -c; }
            } else {
                out += (c < 0) ? " - " : " + ";
                if (c < 0) c = -c;
            }
            std::string term;
            if (nu > 0) term += "b" + (nu > 1 ? "^" + std::to_string(nu) : "");
            if (i > 0) {
                if (!term.empty()) term += "*";
                term += "a" + (i > 1 ? "^" + std::to_string(i) : "");
            }
            if (term.empty()) term = rat_str(c);
            else if (c != 1) term = rat_str(c) + "*" + term;
            out += term;
        }
    }
    if (out.empty()) out = "0";
    return out;
}

AbElement from_presentation(const FrescoPresentation& p) {
    AbElement acc = AbElement::linear_factor(p.lambda[0], p.trunc);
    for (int j = 1; j < p.rank(); ++j) {
        acc = ab_mul(acc, AbElement::from_series(p.S(j).invert_unit()));
        acc = ab_mul(acc, AbElement::linear_factor(p.lambda[static_cast<std::size_t>(j)], p.trunc));
    }
    return acc;
}

AbElement homogeneous_part(const AbElement& x, int degree) {
    AbElement z = AbElement::zero(x.trunc);
    z.window = x.window;
    for (int nu = 0; nu <= x.trunc; ++nu) {
        const auto& p = x.parts[static_cast<std::size_t>(nu)];
        int i = degree - nu;
        if (i < 0 || i >= static_cast<int>(p.size())) continue;
        if (p[static_cast<std::size_t>(i)] == 0) continue;
        auto& r = z.parts[static_cast<std::size_t>(nu)];
        r.assign(static_cast<std::size_t>(i) + 1, Rat(0));
        r[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    }
    return z;
}

FrescoPresentation swap_adjacent(const FrescoPresentation& p, int j, const Rat& rho,
                                 SwapCertificate* cert) {
    const int k = p.rank();
    if (j < 1 || j >= k) throw FrescoError("swap index out of range");
    Rat delta = p.delta(j);
    auto dn = as_long(delta);
    if (dn.has_value() && *dn >= 0) {
        if (*dn == 0) throw NonCommutingIndexError(j);
        if (*dn <= p.S(j).window() && p.S(j)[static_cast<int>(*dn)] != 0)
            throw NonCommutingIndexError(j);
    }

    TruncSeries U{p.trunc};
    try {
        U = ode_solve(delta, p.S(j).scaled(-delta), rho);
    } catch (const ObstructedError&) {
        /* Resonant coefficient hiding past the window; same condition. */
        throw NonCommutingIndexError(j);
    }
    /* U(0) = 1 because S_j(0) = 1 and the order-0 recurrence gives
       -delta*u_0 = -delta. */

    FrescoPresentation q = p;
    q.lambda[static_cast<std::size_t>(j - 1)] = p.lambda[static_cast<std::size_t>(j)] + 1;
    q.lambda[static_cast<std::size_t>(j)] = p.lambda[static_cast<std::size_t>(j - 1)] - 1;
    TruncSeries Uinv = U.invert_unit();
    q.S(j) = p.S(j) * Uinv * Uinv;
    if (j > 1) q.S(j - 1) = U * p.S(j - 1);
    if (j + 1 < k) q.S(j + 1) = p.S(j + 1) * U;

    if (cert) {
        cert->index = j;
        cert->delta = delta;
        cert->rho = rho;
        cert->u = U;
        cert->absorbed_left = (j == 1);
        cert->absorbed_right = (j + 1 == k);
    }
    return q;
}

bool verify_swap(const FrescoPresentation& before, const FrescoPresentation& after,
                 const SwapCertificate& cert) {
    AbElement lhs = from_presentation(before);
    AbElement rhs = from_presentation(after);
    TruncSeries uinv = cert.u.invert_unit();
    if (cert.absorbed_left) rhs = ab_mul(AbElement::from_series(uinv), rhs);
    if (cert.absorbed_right) rhs = ab_mul(rhs, AbElement::from_series(uinv));
    int limit = std::min(lhs.window, rhs.window);
    return ab_equals_within(lhs, rhs, limit);
}

std::vector<int> nci_list(const FrescoPresentation& p) {
    std::vector<int> out;
    for (int j = 1; j < p.rank(); ++j) {
        Rat delta = p.delta(j);
        auto dn = as_long(delta);
        if (!dn.has_value() || *dn < 0) continue;
        if (*dn == 0 || (*dn <= p.S(j).window() && p.S(j)[static_cast<int>(*dn)] != 0))
            out.push_back(j);
    }
    return out;
}

PrincipalForm principal_form(const FrescoPresentation& p) {
    PrincipalForm out;
    out.pres = p;
    const int k = p.rank();
    bool moved = true;
    while (moved) {
        moved = false;
        for (int j = 1; j < k; ++j) {
            if (out.pres.invariant(j) > out.pres.invariant(j + 1)) {
                SwapCertificate cert;
                out.pres = swap_adjacent(out.pres, j, 0, &cert);
                out.path.push_back(cert);
                ++out.swap_count;
                moved = true;
            }
        }
    }
    return out;
}

std::vector<Rat> invariants_tensor_shift(const std::vector<Rat>& inv, const Rat& N) {
    std::vector<Rat> out;
    out.reserve(inv.size());
    for (const auto& v : inv) out.push_back(v + N);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rat> invariants_dual_twist(const std::vector<Rat>& inv, int k, const Rat& N) {
    std::vector<Rat> out;
    out.reserve(inv.size());
    for (const auto& v : inv) out.push_back(-v + k + N);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fresco
