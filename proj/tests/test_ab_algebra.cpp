#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fresco/ab_algebra.hpp"

#include <random>

using namespace fresco;

namespace {

FrescoPresentation make(std::vector<Rat> lambda, std::vector<std::string> series, int trunc) {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda = std::move(lambda);
    for (const auto& txt : series) p.s.push_back(series_parse(txt, trunc));
    return p;
}

TruncSeries random_unit(std::mt19937_64& rng, int trunc) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    TruncSeries s = TruncSeries::one(trunc);
    for (int n = 1; n <= trunc; ++n) s.set(n, rat(coeff(rng), 1 + n % 2));
    return s;
}

} // namespace

TEST_CASE("normal ordering") {
    const int N = 8;
    AbElement a = AbElement::gen_a(N);
    AbElement b = AbElement::gen_b(N);

    // a*b - b*a = b^2
    AbElement comm = ab_sub(ab_mul(a, b), ab_mul(b, a));
    AbElement b2 = ab_mul(b, b);
    CHECK(ab_equals_within(comm, b2, N));

    // (a - b)^2 = a^2 - 2ba
    AbElement f = AbElement::linear_factor(1, N);
    AbElement sq = ab_mul(f, f);
    CHECK(sq.parts[0] == std::vector<Rat>{0, 0, 1});
    CHECK(sq.parts[1] == std::vector<Rat>{0, -2});
    for (int nu = 2; nu <= N; ++nu) CHECK(sq.parts[static_cast<std::size_t>(nu)].empty());
    CHECK(ab_str(sq) == "a^2 - 2*b*a");
}

TEST_CASE("a commutes past a series by the derivation rule") {
    // a S(b) = S(b) a + b^2 S'(b)
    const int N = 12;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        TruncSeries s = random_unit(rng, N);
        AbElement lhs = ab_mul(AbElement::gen_a(N), AbElement::from_series(s));
        AbElement rhs = ab_add(ab_mul(AbElement::from_series(s), AbElement::gen_a(N)),
                               AbElement::from_series(s.derivative().shifted_up(2)));
        CHECK(ab_equals_within(lhs, rhs, N - 1));
    }
}

TEST_CASE("presentation validation") {
    const int N = 8;
    FrescoPresentation p = make({rat(4), rat(4), rat(5)}, {"1", "1 + b^2"}, N);
    p.validate();
    CHECK(p.rank() == 3);
    CHECK(p.invariant(1) == 5);
    CHECK(p.invariant(3) == 8);
    CHECK(p.delta(1) == 1);
    CHECK(p.class_rep() == 1);
    CHECK(p.is_primitive());
    CHECK(p.is_geometric());

    CHECK_THROWS_AS(make({rat(5, 2), rat(3)}, {"1"}, N).validate(), ValidationError);   // mixed classes
    CHECK_THROWS_AS(make({rat(1, 2), rat(3, 2)}, {"1"}, N).validate(), ValidationError); // not geometric
    CHECK_THROWS_AS(make({rat(3), rat(3)}, {"2"}, N).validate(), ValidationError);      // S(0) != 1
    CHECK_THROWS_AS(make({rat(3), rat(3)}, {}, N).validate(), ValidationError);         // missing series
}

TEST_CASE("bernstein roots") {
    const int N = 6;
    FrescoPresentation p2 = make({rat(2), rat(3)}, {"1"}, N);
    CHECK(p2.bernstein_roots() == std::vector<Rat>{rat(-3), rat(-1)});

    FrescoPresentation p1 = make({rat(5, 2)}, {}, N);
    CHECK(p1.bernstein_roots() == std::vector<Rat>{rat(-5, 2)});

    // Closed form k - j - lambda_j against the peel.
    FrescoPresentation p3 = make({rat(4), rat(7, 2) + 1, rat(5)}, {"1", "1"}, N);
    auto roots = p3.bernstein_roots();
    std::vector<Rat> expect;
    for (int j = 1; j <= 3; ++j) expect.push_back(Rat(3 - j) - p3.lambda[static_cast<std::size_t>(j - 1)]);
    std::sort(expect.begin(), expect.end());
    CHECK(roots == expect);
}

TEST_CASE("invariant twists") {
    std::vector<Rat> inv{rat(3), rat(5)};
    CHECK(invariants_dual_twist(inv, 2, 10) == std::vector<Rat>{rat(7), rat(9)});
    CHECK(invariants_tensor_shift(inv, 10) == std::vector<Rat>{rat(13), rat(15)});
}

TEST_CASE("adjacent swap, resonant with zero coefficient") {
    const int N = 16;
    // lambda = (5/2, 5/2), S = 1 + b^2: delta = 1 and S[1] = 0, so the swap
    // exists; with rho = 0 the unit is U = 1 - b^2.
    FrescoPresentation p = make({rat(5, 2), rat(5, 2)}, {"1 + b^2"}, N);
    p.validate();

    SwapCertificate cert;
    FrescoPresentation q = swap_adjacent(p, 1, 0, &cert);
    CHECK(q.lambda == std::vector<Rat>{rat(7, 2), rat(3, 2)});
    CHECK(cert.u[0] == 1);
    CHECK(cert.u[1] == 0);
    CHECK(cert.u[2] == -1);
    CHECK(cert.u.valuation(N) == 0);
    CHECK(cert.absorbed_left);
    CHECK(cert.absorbed_right);
    CHECK(q.S(1)[0] == 1);
    CHECK(q.invariants_sorted() == p.invariants_sorted());
    CHECK(verify_swap(p, q, cert));

    // Free resonant coefficient: a different rho still verifies.
    SwapCertificate cert3;
    FrescoPresentation q3 = swap_adjacent(p, 1, rat(3), &cert3);
    CHECK(cert3.u[1] == 3);
    CHECK(verify_swap(p, q3, cert3));

    // A perturbed result must not verify.
    FrescoPresentation bad = q;
    bad.S(1) = bad.S(1) + TruncSeries::monomial(1, 3, N);
    CHECK(!verify_swap(p, bad, cert));
}

TEST_CASE("swap refusals") {
    const int N = 8;
    // delta = 0: never allowed.
    FrescoPresentation p0 = make({rat(7, 2), rat(5, 2)}, {"1"}, N);
    CHECK_THROWS_AS(swap_adjacent(p0, 1, 0, nullptr), NonCommutingIndexError);

    // delta = 1 with S[1] != 0: obstructed.
    FrescoPresentation p1 = make({rat(5, 2), rat(5, 2)}, {"1 + b"}, N);
    CHECK_THROWS_AS(swap_adjacent(p1, 1, 0, nullptr), NonCommutingIndexError);
    CHECK(nci_list(p1) == std::vector<int>{1});
    CHECK(nci_list(p0) == std::vector<int>{1});

    FrescoPresentation p2 = make({rat(5, 2), rat(5, 2)}, {"1 + b^2"}, N);
    CHECK(nci_list(p2).empty());

    FrescoPresentation p3 = make({rat(3, 2), rat(5, 2)}, {"1 + b^2"}, N);
    CHECK(nci_list(p3) == std::vector<int>{1});  // delta = 2, S[2] = 1
    FrescoPresentation p4 = make({rat(3, 2), rat(5, 2)}, {"1 + b^3"}, N);
    CHECK(nci_list(p4).empty());
}

TEST_CASE("swap with a strictly negative gap always exists") {
    const int N = 16;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        TruncSeries s = random_unit(rng, N);
        // delta = lambda_2 + 1 - lambda_1 = -2
        FrescoPresentation p;
        p.trunc = N;
        p.lambda = {rat(9, 2), rat(3, 2)};
        p.s = {s};
        p.validate();
        SwapCertificate cert;
        FrescoPresentation q = swap_adjacent(p, 1, 0, &cert);
        CHECK(q.invariants_sorted() == p.invariants_sorted());
        CHECK(verify_swap(p, q, cert));
    }
}

TEST_CASE("interior swap spreads the unit to both neighbours") {
    const int N = 20;
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        FrescoPresentation p;
        p.trunc = N;
        p.lambda = {rat(6), rat(8), rat(5), rat(7)};  // deltas: 3, -2, 3
        p.s = {random_unit(rng, N), random_unit(rng, N), random_unit(rng, N)};
        /* Indices 1 and 3 resonate at order 3; clear those coefficients so
           both directions of the interior machinery get exercised. */
        p.s[0].set(3, 0);
        p.s[2].set(3, 0);
        p.validate();
        for (int j : {1, 2, 3}) {
            SwapCertificate cert;
            FrescoPresentation q = swap_adjacent(p, j, 0, &cert);
            CHECK(q.invariants_sorted() == p.invariants_sorted());
            CHECK(verify_swap(p, q, cert));
            CHECK(cert.absorbed_left == (j == 1));
            CHECK(cert.absorbed_right == (j == 3));
        }
    }
}

TEST_CASE("double swap moves the left factor to the end") {
    // Chain with S_1 = 1 and S_2 = 1 + alpha b^{p2}, gaps delta_1 = p1,
    // delta_2 = p2. Swapping at 1 gives U = 1 exactly; swapping at 2 then
    // solves b V' = (p1+p2)(V - S_2), whose order-p2 coefficient is
    // (p1+p2) alpha / p1.
    const int N = 24;
    struct Case { long p1, p2; Rat alpha; Rat vp2; };
    const Case cases[] = {
        {1, 2, rat(1), rat(3)},
        {2, 3, rat(5, 7), rat(25, 14)},
        {3, 1, rat(-2), rat(-8, 3)},
    };
    for (const auto& c : cases) {
        Rat l1 = rat(7);
        Rat l2 = l1 + c.p1 - 1;
        Rat l3 = l2 + c.p2 - 1;
        FrescoPresentation p;
        p.trunc = N;
        p.lambda = {l1, l2, l3};
        TruncSeries s2 = TruncSeries::one(N) + TruncSeries::monomial(c.alpha, static_cast<int>(c.p2), N);
        p.s = {TruncSeries::one(N), s2};
        p.validate();
        CHECK(p.delta(1) == c.p1);
        CHECK(p.delta(2) == c.p2);

        SwapCertificate c1;
        FrescoPresentation q1 = swap_adjacent(p, 1, 0, &c1);
        CHECK(c1.u.equals_within(TruncSeries::one(N), N));
        CHECK(verify_swap(p, q1, c1));

        CHECK(q1.delta(2) == c.p1 + c.p2);
        SwapCertificate c2;
        FrescoPresentation q2 = swap_adjacent(q1, 2, 0, &c2);
        CHECK(c2.u[static_cast<int>(c.p2)] == c.vp2);
        CHECK(verify_swap(q1, q2, c2));
        CHECK(q2.invariants_sorted() == p.invariants_sorted());
    }
}

TEST_CASE("swap at the top of a constant-exponent chain") {
    const int N = 16;
    FrescoPresentation p = make({rat(5), rat(5), rat(5), rat(5)}, {"1", "1 + b^2", "1"}, N);
    p.validate();
    CHECK(nci_list(p).empty());

    SwapCertificate cert;
    FrescoPresentation q = swap_adjacent(p, 3, 0, &cert);
    CHECK(cert.u.equals_within(TruncSeries::one(N), N));
    CHECK(verify_swap(p, q, cert));
    CHECK(q.lambda == std::vector<Rat>{rat(5), rat(5), rat(6), rat(4)});
    CHECK(nci_list(q) == std::vector<int>{2});
}

TEST_CASE("principal form sorts the invariants") {
    const int N = 16;
    FrescoPresentation p = make({rat(4), rat(2), rat(3)}, {"1 + b", "1 - b + b^2"}, N);
    p.validate();
    CHECK(p.invariants() == std::vector<Rat>{rat(5), rat(4), rat(6)});

    PrincipalForm pf = principal_form(p);
    CHECK(pf.swap_count == 1);
    CHECK(pf.pres.invariants() == std::vector<Rat>{rat(4), rat(5), rat(6)});
    CHECK(pf.pres.invariants_sorted() == p.invariants_sorted());
    for (int j = 1; j < pf.pres.rank(); ++j) CHECK(pf.pres.S(j)[0] == 1);

    // Already sorted: nothing to do.
    PrincipalForm pf2 = principal_form(pf.pres);
    CHECK(pf2.swap_count == 0);

    // Fully reversed invariants, rank 4.
    FrescoPresentation r = make({rat(8), rat(6), rat(4), rat(2)}, {"1 + b", "1", "1 - b^3"}, N);
    r.validate();
    PrincipalForm pfr = principal_form(r);
    CHECK(pfr.swap_count == 6);
    CHECK(pfr.pres.invariants() == std::vector<Rat>{rat(6), rat(7), rat(8), rat(9)});
    // Each recorded exchange verifies against a re-run of the step.
    FrescoPresentation cur = r;
    for (const auto& cert : pfr.path) {
        FrescoPresentation next = swap_adjacent(cur, cert.index, cert.rho, nullptr);
        CHECK(verify_swap(cur, next, cert));
        cur = next;
    }
    CHECK(presentation_str(cur) == presentation_str(pfr.pres));
}

TEST_CASE("degree-k homogeneous part of the chain is swap invariant") {
    const int N = 16;
    std::mt19937_64 rng(31);
    FrescoPresentation p;
    p.trunc = N;
    p.lambda = {rat(6), rat(8), rat(5)};
    p.s = {random_unit(rng, N), random_unit(rng, N)};
    p.s[0].set(3, 0);  // delta_1 = 3
    p.validate();

    AbElement before = homogeneous_part(from_presentation(p), 3);
    for (int j : {1, 2}) {
        FrescoPresentation q = swap_adjacent(p, j, 0, nullptr);
        AbElement after = homogeneous_part(from_presentation(q), 3);
        CHECK(ab_equals_within(before, after, N));
    }
    // And it equals the plain product of the linear factors.
    AbElement plain = AbElement::linear_factor(p.lambda[0], N);
    plain = ab_mul(plain, AbElement::linear_factor(p.lambda[1], N));
    plain = ab_mul(plain, AbElement::linear_factor(p.lambda[2], N));
    CHECK(ab_equals_within(before, plain, N));
}

TEST_CASE("prefix and quotient chains") {
    const int N = 8;
    FrescoPresentation p = make({rat(4), rat(4), rat(5)}, {"1 + b", "1 + b^2"}, N);
    FrescoPresentation f = p.prefix(2);
    CHECK(f.rank() == 2);
    CHECK(f.lambda == std::vector<Rat>{rat(4), rat(4)});
    CHECK(series_str(f.S(1)) == "1 + b");
    FrescoPresentation g = p.suffix_quotient(2);
    CHECK(g.rank() == 1);
    CHECK(g.lambda == std::vector<Rat>{rat(5)});
    CHECK(g.s.empty());
}
