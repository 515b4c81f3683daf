#pragma once

#include "fresco/series.hpp"

#include <utility>
#include <vector>

namespace fresco {

/* Dense exact-rational matrix, row major. */
struct QMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rat>> m;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), m(static_cast<std::size_t>(r)) {
        for (auto& row : m) row.assign(static_cast<std::size_t>(c), Rat(0));
    }
    Rat& at(int r, int c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    const Rat& at(int r, int c) const {
        return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
};

/* In-place reduced row echelon form, pivoting left to right; returns the
   rank and, if requested, the pivot column of each nonzero row. */
int rref(QMatrix& a, std::vector<int>* pivot_cols = nullptr);

/* Basis of {x : a x = 0}. */
std::vector<std::vector<Rat>> nullspace(const QMatrix& a);

/* Coordinate vector over the module's free basis. */
using SeriesVec = std::vector<TruncSeries>;

SeriesVec sv_zero(int comps, int trunc);
SeriesVec sv_unit(int comps, int which, int trunc);
SeriesVec sv_add(const SeriesVec& x, const SeriesVec& y);
SeriesVec sv_sub(const SeriesVec& x, const SeriesVec& y);
SeriesVec sv_scale(const SeriesVec& x, const TruncSeries& c);
SeriesVec sv_scale_rat(const SeriesVec& x, const Rat& c);
SeriesVec sv_shift(const SeriesVec& x, int m); // multiply by b^m
bool sv_is_zero(const SeriesVec& x, int limit = -1);
int sv_window(const SeriesVec& x);
int sv_valuation(const SeriesVec& x); // min over components, -1 when zero
std::string sv_str(const SeriesVec& x);

/* Triangular basis of a C[[b]]-submodule of C[[b]]^comps: pivots sit in
   distinct components, every other row vanishes at a pivot component, and
   row i has valuation pivots[i].second at component pivots[i].first. */
struct EchelonBasis {
    int comps = 0;
    std::vector<SeriesVec> rows;
    std::vector<std::pair<int, int>> pivots; // (component, valuation)

    int rank() const { return static_cast<int>(rows.size()); }
    int window() const;

    /* Reduces v against the rows in place. Returns true when v became zero
       inside its own window (i.e. v lies in the module as far as the data
       can tell). When coeffs is given it receives one series per row such
       that input = sum coeffs[i]*rows[i] + residual. */
    bool reduce(SeriesVec& v, std::vector<TruncSeries>* coeffs = nullptr) const;

    /* Inserts one vector, keeping the triangular invariants. Returns true
       exactly when the rank grew (a takeover that only refines a pivot
       valuation returns false). */
    bool insert(SeriesVec v);
};

EchelonBasis echelonize(const std::vector<SeriesVec>& vecs, int comps);
int module_rank(const std::vector<SeriesVec>& vecs, int comps);

/* Smallest submodule containing the given one with torsion-free quotient:
   repeatedly lifts C-linear combinations that vanish mod b. The result is
   an echelon basis whose rows are C-independent mod b. */
EchelonBasis saturate(const std::vector<SeriesVec>& vecs, int comps);

} // namespace fresco
