#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fresco/linalg.hpp"

#include <random>

using namespace fresco;

namespace {

TruncSeries poly(std::initializer_list<long> coeffs, int trunc) {
    TruncSeries s(trunc);
    int n = 0;
    for (long c : coeffs) s.set(n++, rat(c));
    return s;
}

TruncSeries random_poly(std::mt19937_64& rng, int trunc, int degree) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    TruncSeries s(trunc);
    for (int n = 0; n <= std::min(degree, trunc); ++n) s.set(n, rat(coeff(rng)));
    return s;
}

} // namespace

TEST_CASE("rref and nullspace on a pinned matrix") {
    QMatrix a(3, 3);
    long data[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.at(i, j) = rat(data[i][j]);

    QMatrix w = a;
    std::vector<int> piv;
    CHECK(rref(w, &piv) == 2);
    CHECK(piv == std::vector<int>{0, 1});

    auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    for (int i = 0; i < 3; ++i) {
        Rat acc = 0;
        for (int j = 0; j < 3; ++j) acc += a.at(i, j) * ns[0][static_cast<std::size_t>(j)];
        CHECK(acc == 0);
    }
}

TEST_CASE("nullspace dimension matches the rank defect") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 2 + trial % 5, cols = 2 + (trial * 7) % 6;
        QMatrix a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a.at(i, j) = rat(entry(rng), 1 + (i + j) % 2);
        QMatrix w = a;
        int rank = rref(w);
        auto ns = nullspace(a);
        CHECK(static_cast<int>(ns.size()) == cols - rank);
        for (const auto& v : ns)
            for (int i = 0; i < rows; ++i) {
                Rat acc = 0;
                for (int j = 0; j < cols; ++j) acc += a.at(i, j) * v[static_cast<std::size_t>(j)];
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("echelon basis over the power series ring") {
    const int N = 12;
    // (b, b^2) is b times (1, b): rank 1.
    std::vector<SeriesVec> vecs;
    vecs.push_back({poly({1}, N), poly({0, 1}, N)});
    vecs.push_back({poly({0, 1}, N), poly({0, 0, 1}, N)});
    EchelonBasis e = echelonize(vecs, 2);
    CHECK(e.rank() == 1);
    CHECK(e.pivots[0] == std::pair<int, int>(0, 0));

    SeriesVec member = {poly({0, 0, 3}, N), poly({0, 0, 0, 3}, N)};  // 3b^2 (1, b)
    CHECK(e.reduce(member));
    SeriesVec outside = {poly({1}, N), poly({0}, N)};
    CHECK(!e.reduce(outside));
}

TEST_CASE("pivot valuations and membership") {
    const int N = 10;
    std::vector<SeriesVec> vecs = {
        {poly({0, 1}, N), poly({0}, N)},  // (b, 0)
        {poly({0}, N), poly({0, 1}, N)},  // (0, b)
    };
    EchelonBasis e = echelonize(vecs, 2);
    CHECK(e.rank() == 2);
    CHECK(e.pivots[0].second == 1);
    CHECK(e.pivots[1].second == 1);

    SeriesVec in = {poly({0, 0, 1}, N), poly({0, 0, 0, 1}, N)};  // (b^2, b^3)
    CHECK(e.reduce(in));
    SeriesVec out = {poly({1}, N), poly({0}, N)};  // (1, 0): valuation undercuts the pivot
    CHECK(!e.reduce(out));
}

TEST_CASE("takeover keeps the basis triangular") {
    const int N = 10;
    EchelonBasis e = echelonize({{poly({0, 0, 1}, N), poly({1}, N)}}, 2);  // (b^2, 1)
    CHECK(e.pivots[0] == std::pair<int, int>(1, 0));
    // Lower valuation at a fresh component: new pivot, no conflict.
    CHECK(e.insert({poly({0, 1}, N), poly({0}, N)}));  // (b, 0)
    CHECK(e.rank() == 2);
    // A vector undercutting the (b, 0) pivot takes over its slot; the rank
    // stays 2 but the displaced row must still reduce to zero.
    CHECK(e.insert({poly({1}, N), poly({0}, N)}) == false);
    CHECK(e.rank() == 2);
    SeriesVec q = {poly({0, 1}, N), poly({0}, N)};
    CHECK(e.reduce(q));
}

TEST_CASE("saturation lifts divisible combinations") {
    const int N = 12;
    // span{(b, b^2)}: saturation is span{(1, b)}.
    EchelonBasis s1 = saturate({{poly({0, 1}, N), poly({0, 0, 1}, N)}}, 2);
    CHECK(s1.rank() == 1);
    SeriesVec gen = {poly({1}, N), poly({0, 1}, N)};
    CHECK(s1.reduce(gen));

    // span{(b,0),(0,b)}: saturation is everything.
    EchelonBasis s2 = saturate({{poly({0, 1}, N), poly({0}, N)}, {poly({0}, N), poly({0, 1}, N)}}, 2);
    CHECK(s2.rank() == 2);
    SeriesVec u0 = {poly({1}, N), poly({0}, N)};
    SeriesVec u1 = {poly({0}, N), poly({1}, N)};
    CHECK(s2.reduce(u0));
    CHECK(s2.reduce(u1));

    // span{(b,1),(0,b)}: rank 2 already, but (0,b) lifts to (0,1) and then
    // (b,1) - (0,1) lifts to (1,0), so the saturation is the full lattice.
    EchelonBasis s3 = saturate({{poly({0, 1}, N), poly({1}, N)}, {poly({0}, N), poly({0, 1}, N)}}, 2);
    CHECK(s3.rank() == 2);
    SeriesVec e0 = {poly({1}, N), poly({0}, N)};
    CHECK(s3.reduce(e0));
}

TEST_CASE("random modules: rank and membership round trip") {
    const int N = 14, K = 4;
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 1 + trial % K;
        // Triangular generators guarantee the rank.
        std::vector<SeriesVec> gens;
        for (int i = 0; i < r; ++i) {
            SeriesVec v = sv_zero(K, N);
            v[static_cast<std::size_t>(i)] = TruncSeries::one(N);
            for (int j = i + 1; j < K; ++j)
                v[static_cast<std::size_t>(j)] = random_poly(rng, N, 4);
            gens.push_back(v);
        }
        // Mix in redundant combinations.
        std::vector<SeriesVec> vecs = gens;
        for (int extra = 0; extra < 3; ++extra) {
            SeriesVec v = sv_zero(K, N);
            for (const auto& g : gens) v = sv_add(v, sv_scale(g, random_poly(rng, N, 3)));
            vecs.push_back(v);
        }
        EchelonBasis e = echelonize(vecs, K);
        CHECK(e.rank() == r);
        for (const auto& g : gens) {
            SeriesVec copy = g;
            CHECK(e.reduce(copy));
        }

        EchelonBasis sat = saturate(vecs, K);
        CHECK(sat.rank() == r);
        for (const auto& g : gens) {
            SeriesVec copy = g;
            CHECK(sat.reduce(copy));
        }
        // Saturated rows are independent mod b.
        QMatrix m(K, sat.rank());
        for (int i = 0; i < sat.rank(); ++i)
            for (int c = 0; c < K; ++c)
                m.at(c, i) = sat.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)][0];
        CHECK(nullspace(m).empty());
    }
}

TEST_CASE("series vector helpers") {
    const int N = 8;
    SeriesVec u = sv_unit(3, 1, N);
    CHECK(sv_valuation(u) == 0);
    CHECK(sv_is_zero(sv_sub(u, u)));
    CHECK(sv_valuation(sv_shift(u, 2)) == 2);
    CHECK(sv_window(u) == N);
    SeriesVec w = sv_scale_rat(u, rat(3, 2));
    CHECK(w[1][0] == rat(3, 2));
    CHECK(sv_str(u) == "(0; 1; 0)");
}
