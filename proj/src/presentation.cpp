#include "fresco/presentation.hpp"

#include <algorithm>

namespace fresco {

std::vector<Rat> FrescoPresentation::invariants() const {
    std::vector<Rat> v;
    v.reserve(lambda.size());
    for (int j = 1; j <= rank(); ++j) v.push_back(invariant(j));
    return v;
}

std::vector<Rat> FrescoPresentation::invariants_sorted() const {
    std::vector<Rat> v = invariants();
    std::sort(v.begin(), v.end());
    return v;
}

Rat FrescoPresentation::class_rep() const { return class_representative(lambda.at(0)); }

bool FrescoPresentation::is_primitive() const {
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (!same_class(lambda[i], lambda[0])) return false;
    return true;
}

bool FrescoPresentation::is_geometric() const {
    for (int j = 1; j <= rank(); ++j)
        if (!(invariant(j) > rank())) return false;
    return true;
}

void FrescoPresentation::validate() const {
    if (rank() < 1) throw ValidationError("rank must be >= 1");
    if (static_cast<int>(s.size()) != rank() - 1)
        throw ValidationError("expected " + std::to_string(rank() - 1) + " connecting series");
    for (const auto& sj : s) {
        if (sj.trunc() != trunc) throw ValidationError("series truncation differs from presentation truncation");
        if (sj[0] != 1) throw ValidationError("connecting series must have constant term 1");
    }
    if (!is_primitive()) throw ValidationError("exponents are not all congruent mod 1");
    if (!is_geometric())
        throw ValidationError("not geometric: some lambda_j + j <= rank");
}

std::vector<Rat> FrescoPresentation::bernstein_roots() const {
    /* Rank 1: root -lambda_1. Extending a chain by one factor keeps the new
       rank-1 quotient's root -lambda_m and shifts the prefix roots by +1
       (each prefix invariant sits one step further below the new rank). */
    std::vector<Rat> roots;
    for (int m = 1; m <= rank(); ++m) {
        for (auto& r : roots) r += 1;
        roots.push_back(-lambda[static_cast<std::size_t>(m - 1)]);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

FrescoPresentation FrescoPresentation::prefix(int m) const {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda.assign(lambda.begin(), lambda.begin() + m);
    p.s.assign(s.begin(), s.begin() + (m - 1));
    return p;
}

FrescoPresentation FrescoPresentation::suffix_quotient(int m) const {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda.assign(lambda.begin() + m, lambda.end());
    p.s.assign(s.begin() + m, s.end());
    return p;
}

FrescoPresentation FrescoPresentation::truncated(int new_trunc) const {
    FrescoPresentation p;
    p.trunc = new_trunc;
    p.lambda = lambda;
    p.s.reserve(s.size());
    for (const auto& sj : s) p.s.push_back(sj.truncated(new_trunc));
    return p;
}

int FrescoPresentation::window() const {
    int w = trunc;
    for (const auto& sj : s) w = std::min(w, sj.window());
    return w;
}

std::string presentation_str(const FrescoPresentation& p) {
    std::string out = "lambda = (" + rat_list_str(p.lambda) + ")";
    for (int j = 1; j < p.rank(); ++j)
        out += "; S" + std::to_string(j) + " = " + series_str(p.S(j));
    return out;
}

} // namespace fresco
