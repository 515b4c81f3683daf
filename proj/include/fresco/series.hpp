#pragma once

#include "fresco/errors.hpp"
#include "fresco/rational.hpp"

#include <string>
#include <vector>

namespace fresco {

/* Formal power series in b over Q, truncated at order `trunc`.

   `window` marks the last coefficient that is still exact: operations that
   consume an order (derivative) shrink it, operations that shift up extend
   it, everything else takes the minimum of its inputs. All verdicts drawn
   from a series must restrict themselves to orders <= window. */
class TruncSeries {
public:
    explicit TruncSeries(int trunc);
    static TruncSeries constant(const Rat& c, int trunc);
    static TruncSeries one(int trunc);
    static TruncSeries monomial(const Rat& c, int order, int trunc);

    int trunc() const { return trunc_; }
    int window() const { return window_; }

    const Rat& operator[](int n) const; // 0 for n > trunc
    void set(int n, const Rat& v);      // n <= trunc

    /* Smallest n <= limit with nonzero coefficient, or -1 if none.
       limit defaults to window. */
    int valuation(int limit = -1) const;
    bool is_zero(int limit = -1) const;

    TruncSeries with_window(int w) const;
    /* Copy at lower truncation (window clamped). */
    TruncSeries truncated(int new_trunc) const;

    TruncSeries operator-() const;
    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries scaled(const Rat& c) const;
    TruncSeries shifted_up(int m) const;   // multiply by b^m
    TruncSeries shifted_down(int m) const; // divide by b^m; the low orders must vanish
    TruncSeries derivative() const;        // d/db, window shrinks by 1
    TruncSeries invert_unit() const;       // requires nonzero constant term

    bool equals_within(const TruncSeries& o, int limit) const;

private:
    int trunc_;
    int window_;
    std::vector<Rat> c_;
};

/* Unique solution T of b*T' = delta*T + R with T truncated like R.
   When delta is a natural number p <= window(R): requires R[p] = 0
   (ObstructedError otherwise) and the free coefficient T[p] is set to rho.
   Otherwise rho is ignored. */
TruncSeries ode_solve(const Rat& delta, const TruncSeries& R, const Rat& rho);

/* p / q with val(q) <= val(p), both measured inside the windows. */
TruncSeries series_div(const TruncSeries& p, const TruncSeries& q);

/* Text form: terms "c*b^n" ascending, zero terms omitted, "0" for the zero
   series; unit coefficients render as "b^n". Parsing accepts the same
   grammar plus whitespace and optional "*". Coefficients beyond the window
   are not rendered. */
std::string series_str(const TruncSeries& s);
TruncSeries series_parse(const std::string& text, int trunc); // throws ParseError

} // namespace fresco
