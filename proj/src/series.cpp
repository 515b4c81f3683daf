#include "fresco/series.hpp"

#include <algorithm>
#include <cctype>

namespace fresco {

namespace {
const Rat kZero = 0;
}

TruncSeries::TruncSeries(int trunc)
    : trunc_(trunc), window_(trunc), c_(static_cast<std::size_t>(trunc) + 1) {}

TruncSeries TruncSeries::constant(const Rat& c, int trunc) {
    TruncSeries s(trunc);
    s.c_[0] = c;
    return s;
}

TruncSeries TruncSeries::one(int trunc) { return constant(1, trunc); }

TruncSeries TruncSeries::monomial(const Rat& c, int order, int trunc) {
    TruncSeries s(trunc);
    if (order <= trunc) s.c_[static_cast<std::size_t>(order)] = c;
    return s;
}

const Rat& TruncSeries::operator[](int n) const {
    if (n < 0 || n > trunc_) return kZero;
    return c_[static_cast<std::size_t>(n)];
}

void TruncSeries::set(int n, const Rat& v) {
    if (n >= 0 && n <= trunc_) c_[static_cast<std::size_t>(n)] = v;
}

int TruncSeries::valuation(int limit) const {
    if (limit < 0 || limit > trunc_) limit = window_;
    limit = std::min(limit, window_);
    for (int n = 0; n <= limit; ++n)
        if (c_[static_cast<std::size_t>(n)] != 0) return n;
    return -1;
}

bool TruncSeries::is_zero(int limit) const { return valuation(limit) < 0; }

TruncSeries TruncSeries::with_window(int w) const {
    TruncSeries s = *this;
    s.window_ = std::min(w, trunc_);
    return s;
}

TruncSeries TruncSeries::truncated(int new_trunc) const {
    TruncSeries s(new_trunc);
    int upto = std::min(new_trunc, trunc_);
    for (int n = 0; n <= upto; ++n) s.c_[static_cast<std::size_t>(n)] = (*this)[n];
    s.window_ = std::min(window_, new_trunc);
    return s;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries s = *this;
    for (auto& v : s.c_)
        if (v != 0) v = -v;
    return s;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    TruncSeries s(std::min(trunc_, o.trunc_));
    s.window_ = std::min(window_, o.window_);
    for (int n = 0; n <= s.trunc_; ++n) s.c_[static_cast<std::size_t>(n)] = (*this)[n] + o[n];
    return s;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    TruncSeries s(std::min(trunc_, o.trunc_));
    s.window_ = std::min(window_, o.window_);
    for (int n = 0; n <= s.trunc_; ++n) s.c_[static_cast<std::size_t>(n)] = (*this)[n] - o[n];
    return s;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    TruncSeries s(std::min(trunc_, o.trunc_));
    s.window_ = std::min(window_, o.window_);
    for (int i = 0; i <= std::min(trunc_, s.trunc_); ++i) {
        const Rat& a = (*this)[i];
        if (a == 0) continue;
        for (int j = 0; i + j <= s.trunc_ && j <= o.trunc_; ++j) {
            const Rat& b = o[j];
            if (b == 0) continue;
            s.c_[static_cast<std::size_t>(i + j)] += a * b;
        }
    }
    return s;
}

TruncSeries TruncSeries::scaled(const Rat& c) const {
    TruncSeries s = *this;
    for (auto& v : s.c_)
        if (v != 0) v *= c;
    return s;
}

TruncSeries TruncSeries::shifted_up(int m) const {
    TruncSeries s(trunc_);
    for (int n = trunc_; n >= m; --n) s.c_[static_cast<std::size_t>(n)] = (*this)[n - m];
    s.window_ = std::min(window_ + m, trunc_);
    return s;
}

TruncSeries TruncSeries::shifted_down(int m) const {
    TruncSeries s(trunc_);
    for (int n = 0; n < m; ++n)
        if (n <= window_ && (*this)[n] != 0)
            throw FrescoError("shifted_down: nonzero coefficient below the shift");
    for (int n = 0; n + m <= trunc_; ++n) s.c_[static_cast<std::size_t>(n)] = (*this)[n + m];
    s.window_ = std::max(window_ - m, -1);
    return s;
}

TruncSeries TruncSeries::derivative() const {
    TruncSeries s(trunc_);
    for (int n = 0; n < trunc_; ++n)
        s.c_[static_cast<std::size_t>(n)] = Rat(n + 1) * (*this)[n + 1];
    s.window_ = std::max(window_ - 1, -1);
    return s;
}

TruncSeries TruncSeries::invert_unit() const {
    const Rat& u = (*this)[0];
    if (u == 0) throw FrescoError("invert_unit: constant term is zero");
    TruncSeries s(trunc_);
    s.window_ = window_;
    s.c_[0] = 1 / u;
    for (int n = 1; n <= trunc_; ++n) {
        Rat acc = 0;
        for (int i = 1; i <= n; ++i) {
            const Rat& a = (*this)[i];
            if (a == 0) continue;
            acc += a * s.c_[static_cast<std::size_t>(n - i)];
        }
        if (acc != 0) acc /= -u; else acc = 0;
        s.c_[static_cast<std::size_t>(n)] = acc;
    }
    return s;
}

bool TruncSeries::equals_within(const TruncSeries& o, int limit) const {
    for (int n = 0; n <= limit; ++n)
        if ((*this)[n] != o[n]) return false;
    return true;
}

TruncSeries ode_solve(const Rat& delta, const TruncSeries& R, const Rat& rho) {
    TruncSeries t(R.trunc());
    auto p = as_long(delta);
    bool resonant = p.has_value() && *p >= 0 && *p <= R.trunc();
    for (int n = 0; n <= R.trunc(); ++n) {
        if (resonant && n == *p) {
            if (n <= R.window() && R[n] != 0) throw ObstructedError(*p);
            t.set(n, rho);
            continue;
        }
        if (R[n] != 0) t.set(n, R[n] / (Rat(n) - delta));
    }
    return t.with_window(R.window());
}

TruncSeries series_div(const TruncSeries& p, const TruncSeries& q) {
    int vq = q.valuation();
    if (vq < 0) throw FrescoError("series_div: divisor is zero within its window");
    int vp = (vq == 0) ? -1 : p.valuation(vq - 1);
    if (vp >= 0) throw FrescoError("series_div: dividend valuation below divisor valuation");
    return p.shifted_down(vq) * q.shifted_down(vq).invert_unit();
}

std::string series_str(const TruncSeries& s) {
    std::string out;
    int limit = std::min(s.window(), s.trunc());
    for (int n = 0; n <= limit; ++n) {
        const Rat& c = s[n];
        if (c == 0) continue;
        Rat a = c;
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        bool unit = (a == 1);
        if (n == 0) {
            out += rat_str(a);
        } else {
            if (!unit) { out += rat_str(a); out += "*"; }
            out += "b";
            if (n > 1) { out += "^"; out += std::to_string(n); }
        }
    }
    if (out.empty()) out = "0";
    return out;
}

TruncSeries series_parse(const std::string& text, int trunc) {
    TruncSeries s(trunc);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty series");
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (!first) {
            if (text[i] == '+') { ++i; }
            else if (text[i] == '-') { sign = -1; ++i; }
            else throw ParseError("expected '+' or '-' in series near \"" + text.substr(i, 8) + "\"");
            skip_ws();
        } else if (text[i] == '-') {
            sign = -1; ++i; skip_ws();
        } else if (text[i] == '+') {
            ++i; skip_ws();
        }
        if (i >= text.size()) throw ParseError("dangling sign in series");

        Rat coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            std::string num = text.substr(i, j - i);
            i = j;
            skip_ws();
            if (i < text.size() && text[i] == '/') {
                ++i; skip_ws();
                std::size_t k = i;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                if (k == i) throw ParseError("expected denominator");
                num += "/" + text.substr(i, k - i);
                i = k;
            }
            auto q = rat_parse(num);
            if (!q) throw ParseError("bad coefficient \"" + num + "\"");
            coeff = *q;
            saw_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        }

        int order = 0;
        if (i < text.size() && text[i] == 'b') {
            ++i;
            order = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i; skip_ws();
                std::size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                if (j == i) throw ParseError("expected exponent after '^'");
                order = std::stoi(text.substr(i, j - i));
                i = j;
            }
        } else if (!saw_coeff) {
            throw ParseError("expected term near \"" + text.substr(i, 8) + "\"");
        }

        if (order <= trunc) s.set(order, s[order] + Rat(sign) * coeff);
        first = false;
        skip_ws();
    }
    return s;
}

} // namespace fresco
