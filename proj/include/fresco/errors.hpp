#pragma once

#include <stdexcept>
#include <string>

namespace fresco {

/* Every failure the engine can signal derives from FrescoError, so callers
   (CLI, tests) can catch one type and still read a precise reason. */
struct FrescoError : std::runtime_error {
    explicit FrescoError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : FrescoError {
    explicit ParseError(const std::string& what) : FrescoError("parse error: " + what) {}
};

/* ODE b*T' = delta*T + R with delta a natural number p and R[p] != 0:
   no solution exists; p is the obstructed order. */
struct ObstructedError : FrescoError {
    long order;
    explicit ObstructedError(long p)
        : FrescoError("obstructed at order " + std::to_string(p)), order(p) {}
};

/* Requested swap at an index where the two adjacent factors cannot commute. */
struct NonCommutingIndexError : FrescoError {
    int index;
    explicit NonCommutingIndexError(int j)
        : FrescoError("non-commuting index " + std::to_string(j)), index(j) {}
};

struct ValidationError : FrescoError {
    explicit ValidationError(const std::string& what) : FrescoError("invalid presentation: " + what) {}
};

/* A verdict could not be established inside the reliable coefficient window,
   or did not survive re-derivation at doubled truncation. */
struct PrecisionInsufficientError : FrescoError {
    explicit PrecisionInsufficientError(const std::string& what)
        : FrescoError("precision insufficient: " + what) {}
};

struct RankMismatchError : FrescoError {
    explicit RankMismatchError(const std::string& what) : FrescoError("rank mismatch: " + what) {}
};

struct NotAStableError : FrescoError {
    explicit NotAStableError(const std::string& what) : FrescoError("not a-stable: " + what) {}
};

struct NoCyclicGeneratorError : FrescoError {
    explicit NoCyclicGeneratorError(const std::string& what)
        : FrescoError("no cyclic generator found: " + what) {}
};

/* theme_data could not bring the top-log coefficient to monomial form
   inside the reliable window. */
struct NotNormalizableError : FrescoError {
    explicit NotNormalizableError(const std::string& what)
        : FrescoError("not normalizable: " + what) {}
};

/* A cardinality that theory pins exactly (rank-1 quotient classes) came
   out different; treated as a precision failure signal. */
struct CountMismatchError : FrescoError {
    explicit CountMismatchError(const std::string& what)
        : FrescoError("count mismatch: " + what) {}
};

/* The embedding construction requires the chain in strictly decreasing
   lambda_j + j order. */
struct NotSemisimpleOrderError : FrescoError {
    explicit NotSemisimpleOrderError(const std::string& what)
        : FrescoError("not a semi-simple order: " + what) {}
};

/* A stated hypothesis of the construction fails (e.g. lambda_1 <= k-1). */
struct HypothesisViolatedError : FrescoError {
    explicit HypothesisViolatedError(const std::string& what)
        : FrescoError("hypothesis violated: " + what) {}
};

} // namespace fresco
