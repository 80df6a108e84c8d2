#pragma once

#include <map>
#include <vector>

#include "arithlift/intmat.hpp"

namespace arithlift {

// Fincke-Pohst enumeration for a positive definite form Q(x) = x^T A x on Z^n.
// Candidates are generated in floating point with a safety margin and then filtered
// by exact integer evaluation, so the returned sets are exact.
class ShortVectorEnumerator {
public:
    // Throws NotPositiveDefinite.
    explicit ShortVectorEnumerator(const RatMat& A);

    size_t dim() const { return n_; }
    // Q(x) * scale() is an integer for every integral x.
    long scale() const { return den_; }
    long scaled_value(const std::vector<long>& x) const;

    // All x with Q(x) <= bound, in a deterministic order. Parallel over the outermost
    // coordinate when parallel is true; the output order does not depend on it.
    std::vector<std::vector<long>> vectors(const Rat& bound, bool parallel = true) const;
    // Number of x with Q(x) * scale() == k for every k <= bound * scale().
    std::map<long, long> value_counts(const Rat& bound, bool parallel = true) const;

private:
    template <class Visit>
    void walk_outer(long outer, double bound, Visit&& visit) const;
    long outer_radius(double bound) const;

    size_t n_;
    long den_ = 1;
    std::vector<std::vector<long>> Ai_;
    std::vector<std::vector<double>> q_;  // upper-triangular Cholesky data
};

}  // namespace arithlift
