#pragma once

#include "fresco/presentation.hpp"

#include <string>
#include <vector>

namespace fresco {

/* Element of the asymptotic-expansion module for one class: a finite sum

       x = sum_j Phi_j(b) * xi_j,    xi_j = s^{mu0-1} (Log s)^j / j!,

   with the action (calculus convention a = multiply by s, b = primitive
   vanishing at 0)

       a * xi_j = mu0 * b * xi_j + b * xi_{j-1},
       a * (S(b) y) = S(b) (a y) + b^2 S'(b) y.

   parts[j] is Phi_j; parts.size() = log_cap + 1. The base exponent mu0 is
   recorded per element, not normalized into (0,1]. */
struct XiElement {
    Rat mu0;
    int trunc = 0;
    std::vector<TruncSeries> parts;

    XiElement() = default;
    XiElement(const Rat& mu0_, int log_cap, int trunc_);

    int log_cap() const { return static_cast<int>(parts.size()) - 1; }

    /* Largest j with parts[j] nonzero within limit; -1 when the element is
       zero as far as the windows can tell. */
    int log_degree(int limit = -1) const;
    bool is_zero(int limit = -1) const;
    int window() const;             // min over parts
    int valuation(int limit = -1) const; // min over nonzero parts, -1 when zero

    XiElement with_log_cap(int cap) const; // pad with zeros; shrink only past zero parts
};

/* Same element over a lower base exponent: mu0 - new_mu0 must be a natural
   number m, and every part picks up the factor b^m. */
XiElement xi_rebase(const XiElement& x, const Rat& new_mu0);

/* b^m * xi_j */
XiElement xi_monomial(const Rat& mu0, int log_cap, int trunc, int j, int m);

/* s^beta expressed exactly over the base: b^m xi_0 = s^{mu0-1+m} / prod,
   so s^beta = (mu0)(mu0+1)...(mu0+m-1) * b^m * xi_0 with m = beta+1-mu0,
   which must be a natural number. */
XiElement xi_power(const Rat& mu0, int log_cap, int trunc, const Rat& beta);

XiElement xi_add(const XiElement& x, const XiElement& y);
XiElement xi_sub(const XiElement& x, const XiElement& y);
XiElement xi_scale(const XiElement& x, const TruncSeries& c);
XiElement xi_scale_rat(const XiElement& x, const Rat& c);
XiElement xi_act_a(const XiElement& x);
XiElement xi_act_b(const XiElement& x);

bool xi_equal(const XiElement& x, const XiElement& y, int limit = -1);

/* The chain operator applied factor by factor: first the rightmost
   (a - lambda_k b), then multiplication by S_{k-1}^{-1}, and so on to the
   left. Requires x.mu0 = lambda_1 mod 1. The log degree never increases. */
XiElement xi_apply(const FrescoPresentation& p, const XiElement& x);

std::string xi_str(const XiElement& x);

/* J-H data of the theme generated by x inside the module: chain exponents
   mu_1..mu_r with r = log_degree(x)+1 and connecting series s_1..s_{r-1}
   normalized to constant term 1. */
struct ThemeData {
    std::vector<Rat> mu;
    std::vector<TruncSeries> s;
    int trunc = 0;

    int rank() const { return static_cast<int>(mu.size()); }
    FrescoPresentation as_presentation() const;
};

/* Recursive extraction: normalize the top-log coefficient to a monomial
   b^m (the unit is absorbed into the generator), read off the top exponent
   mu_r = mu0 + m, and recurse on z = (a - mu_r b) x, whose log degree is
   one less. The connecting series between consecutive levels is the top
   coefficient of z divided by b^valuation and scaled to constant term 1. */
ThemeData theme_data(const XiElement& x);

} // namespace fresco
