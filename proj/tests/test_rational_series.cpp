#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fresco/rational.hpp"
#include "fresco/series.hpp"

#include <random>

using namespace fresco;

TEST_CASE("rational parse and render") {
    CHECK(rat(5, 10) == rat(1, 2));
    CHECK(rat_str(rat(1, 2)) == "1/2");
    CHECK(rat_str(rat(-3)) == "-3");
    CHECK(rat_str(rat(7, 2)) == "7/2");

    CHECK(*rat_parse("7/2") == rat(7, 2));
    CHECK(*rat_parse(" -3 / 6 ") == rat(-1, 2));
    CHECK(*rat_parse("+5") == rat(5));
    CHECK(*rat_parse("4") == rat(4));
    CHECK(!rat_parse("1/0").has_value());
    CHECK(!rat_parse("abc").has_value());
    CHECK(!rat_parse("").has_value());
    CHECK(!rat_parse("2/").has_value());
    CHECK(!rat_parse("/3").has_value());
    CHECK(!rat_parse("1.5").has_value());
    CHECK(!rat_parse("3/-2").has_value());
}

TEST_CASE("rational predicates") {
    CHECK(is_integer(rat(6, 3)));
    CHECK(!is_integer(rat(7, 2)));
    CHECK(is_natural(rat(0)));
    CHECK(!is_natural(rat(-2)));
    CHECK(*as_long(rat(42)) == 42);
    CHECK(!as_long(rat(1, 2)).has_value());

    CHECK(rat_floor(rat(7, 2)) == rat(3));
    CHECK(rat_floor(rat(-7, 2)) == rat(-4));
    CHECK(rat_floor(rat(-3)) == rat(-3));
}

TEST_CASE("class representative lies in (0,1]") {
    CHECK(class_representative(rat(7, 2)) == rat(1, 2));
    CHECK(class_representative(rat(3)) == rat(1));
    CHECK(class_representative(rat(-1, 2)) == rat(1, 2));
    CHECK(class_representative(rat(-2)) == rat(1));
    CHECK(class_representative(rat(5, 3)) == rat(2, 3));

    CHECK(same_class(rat(7, 2), rat(3, 2)));
    CHECK(same_class(rat(-1, 2), rat(5, 2)));
    CHECK(!same_class(rat(7, 2), rat(1, 3)));

    CHECK(rat_list_str({rat(1), rat(7, 2)}) == "1, 7/2");
}

TEST_CASE("series arithmetic") {
    const int N = 12;
    TruncSeries u = TruncSeries::one(N) + TruncSeries::monomial(1, 1, N);  // 1 + b
    TruncSeries v = TruncSeries::one(N) - TruncSeries::monomial(1, 1, N);  // 1 - b
    TruncSeries p = u * v;
    CHECK(p[0] == 1);
    CHECK(p[1] == 0);
    CHECK(p[2] == -1);
    CHECK(p.valuation() == 0);
    CHECK((p - TruncSeries::one(N))[2] == -1);

    TruncSeries z(N);
    CHECK(z.is_zero());
    CHECK(z.valuation() == -1);

    TruncSeries m = TruncSeries::monomial(rat(3, 2), 5, N);
    CHECK(m.valuation() == 5);
    CHECK(m.shifted_up(2)[7] == rat(3, 2));
    CHECK(m.scaled(rat(2))[5] == 3);
}

TEST_CASE("series derivative and inverse") {
    const int N = 10;
    TruncSeries s(N);
    s.set(0, 1);
    s.set(1, 2);
    s.set(2, 3);
    TruncSeries d = s.derivative();
    CHECK(d[0] == 2);
    CHECK(d[1] == 6);
    CHECK(d.window() == N - 1);

    TruncSeries g = TruncSeries::one(N) - TruncSeries::monomial(1, 1, N);
    TruncSeries ginv = g.invert_unit();
    for (int n = 0; n <= N; ++n) CHECK(ginv[n] == 1);  // geometric series
    CHECK((g * ginv).equals_within(TruncSeries::one(N), N));

    TruncSeries h = TruncSeries::one(N) + TruncSeries::monomial(rat(1, 3), 2, N);
    CHECK((h * h.invert_unit()).equals_within(TruncSeries::one(N), N));

    CHECK_THROWS_AS(TruncSeries(N).invert_unit(), FrescoError);
}

TEST_CASE("window propagation") {
    const int N = 10;
    TruncSeries a = TruncSeries::one(N).with_window(4);
    TruncSeries b = TruncSeries::one(N);
    CHECK((a * b).window() == 4);
    CHECK((a + b).window() == 4);
    CHECK(a.shifted_up(3).window() == 7);
    CHECK(a.derivative().window() == 3);
    CHECK(a.invert_unit().window() == 4);
    CHECK(a.truncated(6).trunc() == 6);
    CHECK(a.truncated(6).window() == 4);
    CHECK(a.truncated(2).window() == 2);
}

/* b T' = delta T + R, coefficientwise t_n (n - delta) = r_n. */
TEST_CASE("ode solver pinned solutions") {
    const int N = 8;

    // delta = -1, R = 1: T = 1.
    TruncSeries t1 = ode_solve(rat(-1), TruncSeries::one(N), 0);
    CHECK(t1.equals_within(TruncSeries::one(N), N));

    // delta = -1, R = 5/2: T = 5/2.
    TruncSeries t2 = ode_solve(rat(-1), TruncSeries::constant(rat(5, 2), N), 0);
    CHECK(t2.equals_within(TruncSeries::constant(rat(5, 2), N), N));

    // delta = 2, R = b: T = -b + rho b^2.
    TruncSeries t3 = ode_solve(rat(2), TruncSeries::monomial(1, 1, N), rat(5));
    CHECK(t3[0] == 0);
    CHECK(t3[1] == -1);
    CHECK(t3[2] == 5);
    CHECK(t3[3] == 0);

    // delta = 2, R = b^2: coefficient at the resonant order obstructs.
    CHECK_THROWS_AS(ode_solve(rat(2), TruncSeries::monomial(1, 2, N), 0), ObstructedError);
    try {
        ode_solve(rat(2), TruncSeries::monomial(1, 2, N), 0);
    } catch (const ObstructedError& e) {
        CHECK(e.order == 2);
    }

    // delta = 0 resonates at order 0.
    CHECK_THROWS_AS(ode_solve(rat(0), TruncSeries::one(N), 0), ObstructedError);
    TruncSeries t4 = ode_solve(rat(0), TruncSeries::monomial(1, 1, N), rat(3));
    CHECK(t4[0] == 3);
    CHECK(t4[1] == 1);

    // Non-integer delta: no resonance anywhere.
    TruncSeries r5 = TruncSeries::one(N) + TruncSeries::monomial(1, 1, N);
    TruncSeries t5 = ode_solve(rat(1, 2), r5, 0);
    CHECK(t5[0] == -2);
    CHECK(t5[1] == 2);
}

TEST_CASE("ode solver satisfies its equation on random input") {
    const int N = 16;
    std::mt19937_64 rng(20260819);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        TruncSeries R(N);
        for (int n = 0; n <= N; ++n) R.set(n, rat(coeff(rng), 1 + (trial % 3)));
        // Pick delta with no resonance risk: negative, or a non-integer.
        Rat delta = (trial % 2 == 0) ? Rat(-(1 + trial % 5)) : rat(2 * (trial % 5) + 1, 2);
        TruncSeries T = ode_solve(delta, R, 0);
        TruncSeries lhs = T.derivative().shifted_up(1);
        TruncSeries rhs = T.scaled(delta) + R;
        CHECK(lhs.equals_within(rhs, N));
    }
}

TEST_CASE("series grammar round trip") {
    const int N = 10;
    TruncSeries s = series_parse("1 - b^2 + 3/2*b^5", N);
    CHECK(s[0] == 1);
    CHECK(s[2] == -1);
    CHECK(s[5] == rat(3, 2));
    CHECK(series_str(s) == "1 - b^2 + 3/2*b^5");

    CHECK(series_str(TruncSeries(N)) == "0");
    TruncSeries t(N);
    t.set(0, 2);
    t.set(1, -1);
    CHECK(series_str(t) == "2 - b");
    CHECK(series_str(TruncSeries::monomial(1, 3, N)) == "b^3");

    CHECK(series_parse("b + b", N)[1] == 2);
    CHECK(series_parse("-b", N)[1] == -1);
    CHECK(series_parse("3b", N)[1] == 3);
    CHECK(series_parse("0", N).is_zero());

    for (const char* bad : {"", "b^", "1 +", "x", "2**b", "1 2"}) {
        CHECK_THROWS_AS(series_parse(bad, N), ParseError);
    }

    // Orders past the truncation are dropped rather than wrapped.
    CHECK(series_parse("1 + b^99", N).equals_within(TruncSeries::one(N), N));
}
