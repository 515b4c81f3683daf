#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fresco/fresco_basis.hpp"

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

SeriesVec random_vec(std::mt19937_64& rng, int comps, int trunc, int max_order) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    SeriesVec v = sv_zero(comps, trunc);
    for (int c = 0; c < comps; ++c)
        for (int n = 0; n <= max_order; ++n) v[static_cast<std::size_t>(c)].set(n, coeff(rng));
    return v;
}

bool vec_equals(const SeriesVec& x, const SeriesVec& y, int limit) {
    return sv_is_zero(sv_sub(x, y), limit);
}

} // namespace

TEST_CASE("a-action on the chain basis") {
    const int N = 16;
    // rank 2: a e2 = lambda_2 b e2 + S1 e1, a e1 = lambda_1 b e1
    FrescoPresentation p = make({rat(3, 2), rat(5, 2)}, {"1 + b"}, N);
    AModule m = AModule::from_presentation(p);

    SeriesVec e1 = sv_unit(2, 0, N);
    SeriesVec e2 = sv_unit(2, 1, N);

    SeriesVec ae1 = m.act_a(e1);
    CHECK(ae1[0].equals_within(TruncSeries::monomial(rat(3, 2), 1, N), N));
    CHECK(ae1[1].is_zero());

    SeriesVec ae2 = m.act_a(e2);
    CHECK(ae2[0].equals_within(series_parse("1 + b", N), N));
    CHECK(ae2[1].equals_within(TruncSeries::monomial(rat(5, 2), 1, N), N));

    // rank 1: a e1 = lambda b e1
    FrescoPresentation q = make({rat(7, 2)}, {}, N);
    AModule m1 = AModule::from_presentation(q);
    SeriesVec f = m1.act_a(sv_unit(1, 0, N));
    CHECK(f[0].equals_within(TruncSeries::monomial(rat(7, 2), 1, N), N));

    // b shifts every coordinate up once
    SeriesVec be2 = m.act_b(e2);
    CHECK(be2[0].is_zero());
    CHECK(be2[1].equals_within(TruncSeries::monomial(Rat(1), 1, N), N));
}

TEST_CASE("commutation a b - b a = b^2 on random elements") {
    const int N = 14;
    std::mt19937_64 rng(47);
    FrescoPresentation p = make({Rat(4), Rat(4), Rat(5)}, {"1 + b", "1 - b + b^2"}, N);
    AModule m = AModule::from_presentation(p);
    for (int trial = 0; trial < 20; ++trial) {
        SeriesVec x = random_vec(rng, 3, N, 6);
        SeriesVec lhs = sv_sub(m.act_a(m.act_b(x)), m.act_b(m.act_a(x)));
        SeriesVec rhs = m.act_b(m.act_b(x));
        CHECK(vec_equals(lhs, rhs, N - 2));
    }
}

TEST_CASE("kernel of (a - mu b): rank-2 chain with trivial S") {
    const int N = 24;
    // p1 = lambda_2 + 1 - lambda_1 = 2, S1 = 1: the kernel at lambda_1 is C e1.
    FrescoPresentation p = make({rat(3, 2), rat(5, 2)}, {"1"}, N);

    auto k1 = kernel(p, rat(3, 2));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0][0].equals_within(TruncSeries::one(N), k1[0][0].window()));
    CHECK(k1[0][1].is_zero());

    // class mismatch: trivial kernel
    CHECK(kernel(p, rat(1, 3)).empty());
    CHECK(kernel_dimension(p, rat(3, 2)) == 1);

    // at mu = lambda_2 + 1 the kernel jumps to dimension 2 (alpha = 0 case)
    auto k2 = kernel(p, rat(7, 2));
    CHECK(k2.size() == 2);

    // every kernel vector is annihilated by (a - mu b), exactly
    AModule m = AModule::from_presentation(p);
    for (const auto& v : k1) CHECK(sv_is_zero(m.act_linear(rat(3, 2), v)));
    for (const auto& v : k2) CHECK(sv_is_zero(m.act_linear(rat(7, 2), v)));
}

TEST_CASE("kernel of (a - mu b): rank-3 resonant configuration") {
    const int N = 24;
    // lambda = (2,3,4): p1 = p2 = 2, S1 = S2 = 1, so the coefficient of b^{p1}
    // in S1 vanishes and Ker(a - (lambda_2 + 1) b) has dimension 2.
    FrescoPresentation p = make({Rat(2), Rat(3), Rat(4)}, {"1", "1"}, N);
    AModule m = AModule::from_presentation(p);

    auto k4 = kernel(p, Rat(4));
    REQUIRE(k4.size() == 2);
    for (const auto& v : k4) CHECK(sv_is_zero(m.act_linear(Rat(4), v)));
    // shape: one vector hits e2 with exactly b, the other is b^2 e1
    CHECK(k4[0][1].equals_within(TruncSeries::monomial(Rat(1), 1, N), k4[0][1].window()));
    CHECK(k4[0][2].is_zero());
    CHECK(k4[0][0][0] == rat(1, 2));
    CHECK(k4[1][0].equals_within(TruncSeries::monomial(Rat(1), 2, N), k4[1][0].window()));
    CHECK(k4[1][1].is_zero());

    // mu = lambda_1: just the first basis line
    auto k2 = kernel(p, Rat(2));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0][0].equals_within(TruncSeries::one(N), k2[0][0].window()));
    CHECK(k2[0][1].is_zero());
    CHECK(k2[0][2].is_zero());

    // mu = 5 only carries b-shifted copies of the mu = 4 kernel
    auto k5 = kernel(p, Rat(5));
    CHECK(k5.size() == 2);
    for (const auto& v : k5) CHECK(sv_valuation(v) >= 1);

    // rank 1 sanity: kernel at lambda_1 is the generator line
    FrescoPresentation r1 = make({rat(5, 2)}, {}, N);
    auto kr = kernel(r1, rat(5, 2));
    REQUIRE(kr.size() == 1);
    CHECK(kr[0][0].equals_within(TruncSeries::one(N), kr[0][0].window()));
}

TEST_CASE("kernel dimensions are stable under doubling the truncation") {
    for (int T : {24, 48}) {
        FrescoPresentation p = make({Rat(2), Rat(3), Rat(4)}, {"1", "1"}, T);
        CHECK(kernel_dimension(p, Rat(2)) == 1);
        CHECK(kernel_dimension(p, Rat(4)) == 2);
        CHECK(kernel_dimension(p, Rat(5)) == 2);
        CHECK(kernel_dimension(p, Rat(6)) == 3);
        FrescoPresentation q = make({rat(5, 2), rat(5, 2)}, {"1 + b"}, T);
        CHECK(kernel_dimension(q, rat(5, 2)) == 1);
        CHECK(kernel_dimension(q, rat(7, 2)) == 1);
        CHECK(kernel_dimension(q, rat(9, 2)) == 1);
    }
}

TEST_CASE("rank-1 normal submodule survey and the theme test") {
    const int N = 24;

    // alpha = 1 != 0: a theme with its unique normal rank-1 submodule at lambda_1
    FrescoPresentation theme = make({rat(5, 2), rat(5, 2)}, {"1 + b"}, N);
    auto lines = rank1_normal_submodules(theme);
    REQUIRE(lines.size() >= 1);
    int total = 0;
    for (const auto& l : lines) total += (l.line_count < 0 ? 100 : l.line_count);
    CHECK(total == 1);
    CHECK(lines[0].mu == rat(5, 2));
    CHECK(lines[0].has_primitive);
    CHECK(is_theme(theme));
    CHECK(theme_order_criterion(theme));

    // alpha = 0, delta = 1: semi-simple, infinitely many submodules at lambda_2 + 1
    FrescoPresentation ss = make({rat(5, 2), rat(5, 2)}, {"1"}, N);
    auto ss_lines = rank1_normal_submodules(ss);
    bool found_infinite = false;
    for (const auto& l : ss_lines)
        if (l.mu == rat(7, 2)) {
            CHECK(l.kernel_basis.size() == 2);
            CHECK(l.line_count == -1);
            found_infinite = true;
        }
    CHECK(found_infinite);
    CHECK_FALSE(is_theme(ss));
    CHECK_FALSE(theme_order_criterion(ss));

    // rank 1 is always a theme
    FrescoPresentation r1 = make({rat(7, 2)}, {}, N);
    CHECK(is_theme(r1));
    CHECK(theme_order_criterion(r1));

    // the rank-3 chain with trivial S is far from a theme
    FrescoPresentation p3 = make({Rat(2), Rat(3), Rat(4)}, {"1", "1"}, N);
    CHECK_FALSE(is_theme(p3));
    CHECK_FALSE(theme_order_criterion(p3));
}

TEST_CASE("is_theme agrees with the order criterion on random presentations") {
    const int N = 20;
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> gap(-2, 2);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 2);
        std::vector<Rat> lambda{rat(2 * k + 1, 2)};
        for (int j = 1; j < k; ++j) lambda.push_back(lambda.back() + gap(rng));
        // keep it geometric
        FrescoPresentation p;
        p.trunc = N;
        p.lambda = lambda;
        bool ok = true;
        for (int j = 1; j <= k; ++j)
            if (!(p.invariant(j) > k)) ok = false;
        if (!ok) continue;
        for (int j = 1; j < k; ++j) {
            TruncSeries s = TruncSeries::one(N);
            for (int n = 1; n <= 4; ++n) s.set(n, coeff(rng));
            p.s.push_back(s);
        }
        CHECK(is_theme(p) == theme_order_criterion(p));
    }
}

TEST_CASE("submodule presentation: chain prefixes") {
    const int N = 20;
    // rank-3 theme: both prefixes are the unique J-H terms
    FrescoPresentation p = make({rat(5, 2), rat(5, 2), rat(7, 2)}, {"1 + b", "1 + b^2"}, N);
    REQUIRE(is_theme(p));

    SeriesVec e1 = sv_unit(3, 0, N);
    SeriesVec e2 = sv_unit(3, 1, N);

    auto sub1 = submodule_presentation(p, {e1});
    CHECK(sub1.pres.rank() == 1);
    CHECK(sub1.pres.lambda[0] == rat(5, 2));

    auto sub2 = submodule_presentation(p, {e1, e2});
    CHECK(sub2.pres.rank() == 2);
    CHECK(sub2.pres.invariants_sorted() == std::vector<Rat>{rat(7, 2), rat(9, 2)});
    // the classification coefficient alpha (order delta_1 = 1 in S1) survives
    CHECK(sub2.pres.S(1)[0] == 1);
    CHECK(sub2.pres.S(1)[1] == 1);
    CHECK(is_theme(sub2.pres));

    // relations of the returned chain hold in ambient coordinates
    AModule m = AModule::from_presentation(p);
    for (int j = 1; j <= 2; ++j) {
        SeriesVec res = m.act_linear(sub2.pres.lambda[static_cast<std::size_t>(j - 1)],
                                     sub2.chain[static_cast<std::size_t>(j - 1)]);
        if (j >= 2)
            res = sv_sub(res, sv_scale(sub2.chain[static_cast<std::size_t>(j - 2)], sub2.pres.S(j - 1)));
        CHECK(sv_is_zero(res));
    }
}

TEST_CASE("submodule presentation: kernel line of the semi-simple rank-2 chain") {
    const int N = 20;
    FrescoPresentation p = make({rat(3, 2), rat(5, 2)}, {"1"}, N);
    auto k = kernel(p, rat(7, 2));
    REQUIRE(k.size() == 2);
    // pick the primitive vector on the line
    SeriesVec g;
    for (const auto& v : k)
        if (sv_valuation(v) == 0) g = v;
    REQUIRE(!g.empty());
    // bring it to full truncation data for the ambient module
    auto sub = submodule_presentation(p, {g});
    CHECK(sub.pres.rank() == 1);
    CHECK(sub.pres.lambda[0] == rat(7, 2));
}

TEST_CASE("submodule presentation: a-closure and the stability error") {
    const int N = 20;
    FrescoPresentation p = make({rat(5, 2), rat(5, 2)}, {"1 + b"}, N);
    SeriesVec e2 = sv_unit(2, 1, N);

    // e2 alone is not a-stable
    CHECK_THROWS_AS(submodule_presentation(p, {e2}, false), NotAStableError);

    // but it generates the whole module
    auto full = submodule_presentation(p, {e2});
    CHECK(full.pres.rank() == 2);
    CHECK(full.pres.invariants_sorted() == p.invariants_sorted());
    CHECK(full.pres.S(1)[1] == 1); // alpha preserved
}

TEST_CASE("submodule presentation: full-module round trips through random bases") {
    const int N = 18;
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> coeff(-2, 2);

    std::vector<FrescoPresentation> cases = {
        make({rat(5, 2), rat(5, 2), rat(7, 2)}, {"1 + b", "1 + b^2"}, N),
        make({Rat(4), Rat(4), Rat(5)}, {"1 + b", "1 - b"}, N),
        make({rat(7, 2), rat(5, 2)}, {"1 + b - b^3"}, N),
    };
    for (const auto& p : cases) {
        const int k = p.rank();
        // random unit-triangular mix of the chain basis
        std::vector<SeriesVec> gens;
        for (int i = 0; i < k; ++i) {
            SeriesVec v = sv_unit(k, i, N);
            for (int j = i + 1; j < k; ++j) {
                TruncSeries s(N);
                for (int n = 0; n <= 3; ++n) s.set(n, coeff(rng));
                v = sv_add(v, sv_scale(sv_unit(k, j, N), s));
            }
            gens.push_back(std::move(v));
        }
        auto sub = submodule_presentation(p, gens);
        CHECK(sub.pres.rank() == k);
        CHECK(sub.pres.invariants_sorted() == p.invariants_sorted());
        CHECK(sub.pres.bernstein_roots() == p.bernstein_roots());
    }
}

TEST_CASE("extract_chain recovers a chain from the raw module matrix") {
    const int N = 18;
    FrescoPresentation p = make({Rat(2), Rat(3), Rat(4)}, {"1 + b", "1 - b + 2*b^2"}, N);
    AModule m = AModule::from_presentation(p);
    std::vector<Rat> cands;
    for (Rat mu = p.class_rep(); mu <= Rat(7); mu += 1) cands.push_back(mu);
    ExtractedChain ec = extract_chain(m, cands);
    CHECK(verify_chain(m, ec));
    CHECK(ec.pres.invariants_sorted() == p.invariants_sorted());
}
