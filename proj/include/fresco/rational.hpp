#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace fresco {

/* Exact rational scalar. mpq_class keeps the canonical form the domain
   requires (denominator > 0, gcd(num, den) = 1, zero stored as 0/1) as long
   as values are built through the helpers below. */
using Rat = mpq_class;
using Int = mpz_class;

Rat rat(long num, long den = 1);

/* "p", "-p", "p/q" with optional surrounding whitespace. */
std::optional<Rat> rat_parse(const std::string& text);

/* Canonical text: "p" when integral, else "p/q". */
std::string rat_str(const Rat& q);

bool is_integer(const Rat& q);

/* Integer and >= 0. */
bool is_natural(const Rat& q);

/* Exact conversion when the value is an integer fitting in long. */
std::optional<long> as_long(const Rat& q);

/* floor(q) as an exact integer rational. */
Rat rat_floor(const Rat& q);

/* The unique r in (0, 1] with q - r an integer. */
Rat class_representative(const Rat& q);

/* True when a - b is an integer. */
bool same_class(const Rat& a, const Rat& b);

std::string rat_list_str(const std::vector<Rat>& v);

} // namespace fresco
