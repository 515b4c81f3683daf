#include "fresco/xi.hpp"

#include "fresco/errors.hpp"

#include <sstream>

namespace fresco {

XiElement::XiElement(const Rat& mu0_, int log_cap, int trunc_) : mu0(mu0_), trunc(trunc_) {
    if (log_cap < 0) throw ValidationError("negative log cap");
    parts.assign(static_cast<std::size_t>(log_cap) + 1, TruncSeries(trunc_));
}

int XiElement::log_degree(int limit) const {
    for (int j = log_cap(); j >= 0; --j)
        if (!parts[static_cast<std::size_t>(j)].is_zero(limit)) return j;
    return -1;
}

bool XiElement::is_zero(int limit) const { return log_degree(limit) < 0; }

int XiElement::window() const {
    int w = trunc;
    for (const auto& f : parts) w = std::min(w, f.window());
    return w;
}

int XiElement::valuation(int limit) const {
    int v = -1;
    for (const auto& f : parts) {
        int fv = f.valuation(limit);
        if (fv >= 0 && (v < 0 || fv < v)) v = fv;
    }
    return v;
}

XiElement XiElement::with_log_cap(int cap) const {
    XiElement out(mu0, cap, trunc);
    for (int j = 0; j <= std::min(cap, log_cap()); ++j)
        out.parts[static_cast<std::size_t>(j)] = parts[static_cast<std::size_t>(j)];
    for (int j = cap + 1; j <= log_cap(); ++j)
        if (!parts[static_cast<std::size_t>(j)].is_zero())
            throw ValidationError("log cap shrink would drop a nonzero part");
    return out;
}

XiElement xi_monomial(const Rat& mu0, int log_cap, int trunc, int j, int m) {
    XiElement x(mu0, log_cap, trunc);
    x.parts[static_cast<std::size_t>(j)] = TruncSeries::monomial(Rat(1), m, trunc);
    return x;
}

XiElement xi_power(const Rat& mu0, int log_cap, int trunc, const Rat& beta) {
    Rat mr = beta + 1 - mu0;
    if (!is_natural(mr)) throw ValidationError("s^beta needs beta+1-mu0 natural");
    long m = as_long(mr).value();
    Rat c(1);
    for (long i = 0; i < m; ++i) c *= mu0 + Rat(i);
    XiElement x(mu0, log_cap, trunc);
    x.parts[0] = TruncSeries::monomial(c, static_cast<int>(m), trunc);
    return x;
}

static void check_compatible(const XiElement& x, const XiElement& y) {
    if (x.mu0 != y.mu0 || x.trunc != y.trunc || x.parts.size() != y.parts.size())
        throw ValidationError("mixed xi shapes");
}

XiElement xi_rebase(const XiElement& x, const Rat& new_mu0) {
    auto m = as_long(x.mu0 - new_mu0);
    if (!m || *m < 0) throw ValidationError("rebase gap must be a natural number");
    XiElement out = x;
    out.mu0 = new_mu0;
    for (auto& f : out.parts) f = f.shifted_up(static_cast<int>(*m));
    return out;
}

XiElement xi_add(const XiElement& x, const XiElement& y) {
    check_compatible(x, y);
    XiElement out = x;
    for (std::size_t j = 0; j < out.parts.size(); ++j) out.parts[j] = x.parts[j] + y.parts[j];
    return out;
}

XiElement xi_sub(const XiElement& x, const XiElement& y) {
    check_compatible(x, y);
    XiElement out = x;
    for (std::size_t j = 0; j < out.parts.size(); ++j) out.parts[j] = x.parts[j] - y.parts[j];
    return out;
}

XiElement xi_scale(const XiElement& x, const TruncSeries& c) {
    XiElement out = x;
    for (auto& f : out.parts) f = f * c;
    return out;
}

XiElement xi_scale_rat(const XiElement& x, const Rat& c) {
    XiElement out = x;
    for (auto& f : out.parts) f = f.scaled(c);
    return out;
}

XiElement xi_act_a(const XiElement& x) {
    XiElement out(x.mu0, x.log_cap(), x.trunc);
    for (int j = 0; j <= x.log_cap(); ++j) {
        const TruncSeries& f = x.parts[static_cast<std::size_t>(j)];
        TruncSeries r = f.scaled(x.mu0).shifted_up(1) + f.derivative().shifted_up(2);
        if (j + 1 <= x.log_cap())
            r = r + x.parts[static_cast<std::size_t>(j) + 1].shifted_up(1);
        out.parts[static_cast<std::size_t>(j)] = r;
    }
    return out;
}

XiElement xi_act_b(const XiElement& x) {
    XiElement out = x;
    for (auto& f : out.parts) f = f.shifted_up(1);
    return out;
}

bool xi_equal(const XiElement& x, const XiElement& y, int limit) {
    return xi_sub(x, y).is_zero(limit);
}

XiElement xi_apply(const FrescoPresentation& p, const XiElement& x) {
    if (!same_class(x.mu0, p.lambda[0]))
        throw ValidationError("xi base class differs from the chain class");
    XiElement y = x;
    for (int j = p.rank(); j >= 1; --j) {
        Rat lj = p.lambda[static_cast<std::size_t>(j - 1)];
        y = xi_sub(xi_act_a(y), xi_scale_rat(xi_act_b(y), lj));
        if (j >= 2) y = xi_scale(y, p.S(j - 1).invert_unit());
    }
    return y;
}

std::string xi_str(const XiElement& x) {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j <= x.log_cap(); ++j) {
        const TruncSeries& f = x.parts[static_cast<std::size_t>(j)];
        if (f.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << series_str(f) << ") * s^(" << rat_str(x.mu0 - 1) << ")";
        if (j >= 1) os << " * Log(s)^" << j << " / " << j << "!";
    }
    if (first) os << "0";
    return os.str();
}

FrescoPresentation ThemeData::as_presentation() const {
    FrescoPresentation p;
    p.lambda = mu;
    p.s = s;
    p.trunc = trunc;
    return p;
}

ThemeData theme_data(const XiElement& x) {
    int deg = x.log_degree();
    if (deg < 0) throw NotNormalizableError("zero element has no theme data");
    const TruncSeries& top = x.parts[static_cast<std::size_t>(deg)];
    int m = top.valuation();
    Rat mu_r = x.mu0 + m;
    if (deg == 0) {
        ThemeData d;
        d.mu.push_back(mu_r);
        d.trunc = x.trunc;
        return d;
    }
    /* e_r := unit^{-1} x has top coefficient exactly b^m. */
    TruncSeries unit = top.shifted_down(m);
    XiElement xn = xi_scale(x, unit.invert_unit());
    XiElement z = xi_sub(xi_act_a(xn), xi_scale_rat(xi_act_b(xn), mu_r));
    if (z.log_degree() != deg - 1)
        throw NotNormalizableError("log degree did not drop by one at exponent " + rat_str(mu_r));
    ThemeData d = theme_data(z);
    const TruncSeries& ztop = z.parts[static_cast<std::size_t>(deg - 1)];
    TruncSeries conn = ztop.shifted_down(ztop.valuation());
    d.s.push_back(conn.scaled(Rat(1) / conn[0]));
    d.mu.push_back(mu_r);
    return d;
}

} // namespace fresco
