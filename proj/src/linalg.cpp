#include "fresco/linalg.hpp"

#include <algorithm>
#include <deque>

namespace fresco {

int rref(QMatrix& a, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int p = -1;
        for (int i = r; i < a.rows; ++i)
            if (a.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a.m[static_cast<std::size_t>(p)], a.m[static_cast<std::size_t>(r)]);
        Rat inv = 1 / a.at(r, c);
        for (int j = c; j < a.cols; ++j)
            if (a.at(r, j) != 0) a.at(r, j) *= inv;
        for (int i = 0; i < a.rows; ++i) {
            if (i == r) continue;
            const Rat f = a.at(i, c);
            if (f == 0) continue;
            for (int j = c; j < a.cols; ++j) {
                const Rat& v = a.at(r, j);
                if (v != 0) a.at(i, j) -= f * v;
            }
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

std::vector<std::vector<Rat>> nullspace(const QMatrix& a) {
    QMatrix w = a;
    std::vector<int> piv;
    int rank = rref(w, &piv);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols), false);
    for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < a.cols; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(a.cols), Rat(0));
        v[static_cast<std::size_t>(c)] = 1;
        for (int i = 0; i < rank; ++i)
            v[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = -w.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

SeriesVec sv_zero(int comps, int trunc) {
    return SeriesVec(static_cast<std::size_t>(comps), TruncSeries(trunc));
}

SeriesVec sv_unit(int comps, int which, int trunc) {
    SeriesVec v = sv_zero(comps, trunc);
    v[static_cast<std::size_t>(which)] = TruncSeries::one(trunc);
    return v;
}

SeriesVec sv_add(const SeriesVec& x, const SeriesVec& y) {
    SeriesVec z;
    z.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z.push_back(x[i] + y[i]);
    return z;
}

SeriesVec sv_sub(const SeriesVec& x, const SeriesVec& y) {
    SeriesVec z;
    z.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z.push_back(x[i] - y[i]);
    return z;
}

SeriesVec sv_scale(const SeriesVec& x, const TruncSeries& c) {
    SeriesVec z;
    z.reserve(x.size());
    for (const auto& s : x) z.push_back(s * c);
    return z;
}

SeriesVec sv_scale_rat(const SeriesVec& x, const Rat& c) {
    SeriesVec z;
    z.reserve(x.size());
    for (const auto& s : x) z.push_back(s.scaled(c));
    return z;
}

SeriesVec sv_shift(const SeriesVec& x, int m) {
    SeriesVec z;
    z.reserve(x.size());
    for (const auto& s : x) z.push_back(s.shifted_up(m));
    return z;
}

bool sv_is_zero(const SeriesVec& x, int limit) {
    for (const auto& s : x)
        if (!s.is_zero(limit)) return false;
    return true;
}

int sv_window(const SeriesVec& x) {
    int w = x.empty() ? 0 : x[0].trunc();
    for (const auto& s : x) w = std::min(w, s.window());
    return w;
}

int sv_valuation(const SeriesVec& x) {
    int v = -1;
    for (const auto& s : x) {
        int sv = s.valuation();
        if (sv >= 0 && (v < 0 || sv < v)) v = sv;
    }
    return v;
}

std::string sv_str(const SeriesVec& x) {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += "; ";
        out += series_str(x[i]);
    }
    return out + ")";
}

int EchelonBasis::window() const {
    int w = rows.empty() ? 0 : sv_window(rows[0]);
    for (const auto& r : rows) w = std::min(w, sv_window(r));
    return w;
}

/* Row invariant: rows[j] vanishes exactly at pivots[i].first for all i < j
   (creation order). One left-to-right pass therefore never reintroduces an
   entry at an already-cleared pivot component. */
bool EchelonBasis::reduce(SeriesVec& v, std::vector<TruncSeries>* coeffs) const {
    if (coeffs) coeffs->assign(rows.size(), TruncSeries(v.empty() ? 0 : v[0].trunc()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int c = pivots[i].first;
        const TruncSeries& entry = v[static_cast<std::size_t>(c)];
        if (entry.is_zero()) continue;
        if (entry.valuation() < pivots[i].second) continue; // cannot eliminate
        TruncSeries q = series_div(entry, rows[i][static_cast<std::size_t>(c)]);
        for (std::size_t t = 0; t < v.size(); ++t)
            v[t] = v[t] - q * rows[i][t];
        if (coeffs) (*coeffs)[i] = q;
    }
    return sv_is_zero(v);
}

bool EchelonBasis::insert(SeriesVec v) {
    std::deque<SeriesVec> queue;
    queue.push_back(std::move(v));
    bool added = false;
    while (!queue.empty()) {
        SeriesVec w = std::move(queue.front());
        queue.pop_front();
        bool displaced = false;
        for (std::size_t i = 0; i < rows.size() && !displaced; ++i) {
            int c = pivots[i].first;
            const TruncSeries& entry = w[static_cast<std::size_t>(c)];
            if (entry.is_zero()) continue;
            int val = entry.valuation();
            if (val >= pivots[i].second) {
                TruncSeries q = series_div(entry, rows[i][static_cast<std::size_t>(c)]);
                for (std::size_t t = 0; t < w.size(); ++t)
                    w[t] = w[t] - q * rows[i][t];
            } else {
                /* w undercuts this pivot: it takes the slot (it vanishes at
                   all earlier pivot components already) and the old row goes
                   around again. Pivot valuations strictly drop, so this
                   terminates. */
                std::swap(rows[i], w);
                pivots[i].second = val;
                queue.push_back(std::move(w));
                displaced = true;
            }
        }
        if (displaced) continue;
        if (sv_is_zero(w)) continue;
        int best_c = -1, best_val = -1;
        for (std::size_t c = 0; c < w.size(); ++c) {
            int val = w[c].valuation();
            if (val < 0) continue;
            if (best_c < 0 || val < best_val) { best_c = static_cast<int>(c); best_val = val; }
        }
        rows.push_back(std::move(w));
        pivots.emplace_back(best_c, best_val);
        added = true;
    }
    return added;
}

EchelonBasis echelonize(const std::vector<SeriesVec>& vecs, int comps) {
    EchelonBasis e;
    e.comps = comps;
    for (const auto& v : vecs) e.insert(v);
    return e;
}

int module_rank(const std::vector<SeriesVec>& vecs, int comps) {
    return echelonize(vecs, comps).rank();
}

EchelonBasis saturate(const std::vector<SeriesVec>& vecs, int comps) {
    EchelonBasis e = echelonize(vecs, comps);
    for (;;) {
        if (e.rank() == 0) return e;
        /* C-relations among the rows mod b. */
        QMatrix m(comps, e.rank());
        for (int i = 0; i < e.rank(); ++i)
            for (int c = 0; c < comps; ++c)
                m.at(c, i) = e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)][0];
        auto rel = nullspace(m);
        if (rel.empty()) return e;

        const auto& coef = rel.front();
        SeriesVec w = sv_zero(comps, e.rows[0][0].trunc());
        std::size_t replace = 0;
        for (std::size_t i = 0; i < coef.size(); ++i) {
            if (coef[i] == 0) continue;
            w = sv_add(w, sv_scale_rat(e.rows[i], coef[i]));
            replace = i;
        }
        /* w vanishes mod b by construction; divide and swap it in. */
        SeriesVec lifted;
        lifted.reserve(w.size());
        for (const auto& s : w) lifted.push_back(s.shifted_down(1));

        std::vector<SeriesVec> next;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            if (i != replace) next.push_back(e.rows[i]);
        next.push_back(lifted);
        EchelonBasis e2 = echelonize(next, comps);
        if (e2.rank() != e.rank()) return e; // window exhausted; stop at the last sound basis
        e = std::move(e2);
    }
}

} // namespace fresco
