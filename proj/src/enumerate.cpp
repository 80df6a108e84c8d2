#include "arithlift/enumerate.hpp"

#include <cmath>

#include "arithlift/errors.hpp"

namespace arithlift {

ShortVectorEnumerator::ShortVectorEnumerator(const RatMat& A) : n_(A.size()) {
    Int den = 1;
    for (auto& row : A)
        for (auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    den_ = to_long(den);
    Ai_.assign(n_, std::vector<long>(n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            if (A[i][j] != A[j][i]) throw NotPositiveDefinite("form matrix is not symmetric");
            Rat y = A[i][j] * den_;
            Ai_[i][j] = to_long(y.get_num());
        }
    // q_ii (x_i + sum_{j>i} q_ij x_j)^2 decomposition.
    q_.assign(n_, std::vector<double>(n_, 0.0));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) q_[i][j] = to_double(A[i][j]);
    for (size_t i = 0; i < n_; ++i) {
        if (!(q_[i][i] > 0)) throw NotPositiveDefinite("form is not positive definite");
        for (size_t j = i + 1; j < n_; ++j) {
            q_[j][i] = q_[i][j];
            q_[i][j] /= q_[i][i];
        }
        for (size_t k = i + 1; k < n_; ++k)
            for (size_t l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
    // Exact check of positive definiteness via leading minors.
    for (size_t k = 1; k <= n_; ++k) {
        RatMat sub(k, std::vector<Rat>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub[i][j] = A[i][j];
        if (rat_det(sub) <= 0) throw NotPositiveDefinite("leading minor is not positive");
    }
}

long ShortVectorEnumerator::scaled_value(const std::vector<long>& x) const {
    long v = 0;
    for (size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        long row = 0;
        for (size_t j = 0; j < n_; ++j) row += Ai_[i][j] * x[j];
        v += x[i] * row;
    }
    return v;
}

long ShortVectorEnumerator::outer_radius(double bound) const {
    double qn = q_[n_ - 1][n_ - 1];
    return static_cast<long>(std::floor(std::sqrt(bound / qn) + 1e-9));
}

template <class Visit>
void ShortVectorEnumerator::walk_outer(long outer, double bound, Visit&& visit) const {
    std::vector<long> x(n_, 0);
    std::vector<double> remaining(n_ + 1, 0.0);
    std::vector<double> center(n_, 0.0);
    const size_t last = n_ - 1;
    x[last] = outer;
    remaining[last] = bound;
    double t = static_cast<double>(outer);
    double used = q_[last][last] * t * t;
    if (used > bound * (1 + 1e-9) + 1e-9) return;
    remaining[last + 1] = 0;
    if (n_ == 1) {
        visit(x);
        return;
    }
    // Depth-first over coordinates last-1 .. 0.
    std::vector<long> upper(n_, 0);
    std::vector<double> rem(n_, 0.0);
    rem[last] = bound - used;
    auto set_range = [&](size_t i) {
        double c = 0;
        for (size_t j = i + 1; j < n_; ++j) c += q_[i][j] * x[j];
        center[i] = -c;
        double r = std::sqrt(std::max(0.0, rem[i + 1]) / q_[i][i]) + 1e-7;
        x[i] = static_cast<long>(std::ceil(center[i] - r));
        upper[i] = static_cast<long>(std::floor(center[i] + r));
    };
    size_t i = last - 1;
    set_range(i);
    for (;;) {
        if (x[i] > upper[i]) {
            if (i == last - 1) break;
            ++i;
            ++x[i];
            continue;
        }
        double d = x[i] - center[i];
        rem[i] = rem[i + 1] - q_[i][i] * d * d;
        if (rem[i] < -1e-9 * (1 + bound)) {
            ++x[i];
            continue;
        }
        if (i == 0) {
            visit(x);
            ++x[i];
            continue;
        }
        --i;
        set_range(i);
    }
}

std::vector<std::vector<long>> ShortVectorEnumerator::vectors(const Rat& bound, bool parallel) const {
    double b = to_double(bound);
    long limit = to_long(floor_rat(bound * den_));
    long R = outer_radius(b);
    std::vector<std::vector<std::vector<long>>> parts(static_cast<size_t>(2 * R + 1));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long k = -R; k <= R; ++k) {
        auto& out = parts[static_cast<size_t>(k + R)];
        walk_outer(k, b, [&](const std::vector<long>& x) {
            if (scaled_value(x) <= limit) out.push_back(x);
        });
    }
    std::vector<std::vector<long>> all;
    for (auto& p : parts)
        for (auto& v : p) all.push_back(std::move(v));
    return all;
}

std::map<long, long> ShortVectorEnumerator::value_counts(const Rat& bound, bool parallel) const {
    double b = to_double(bound);
    long limit = to_long(floor_rat(bound * den_));
    long R = outer_radius(b);
    std::vector<std::map<long, long>> parts(static_cast<size_t>(2 * R + 1));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long k = -R; k <= R; ++k) {
        auto& out = parts[static_cast<size_t>(k + R)];
        walk_outer(k, b, [&](const std::vector<long>& x) {
            long v = scaled_value(x);
            if (v <= limit) ++out[v];
        });
    }
    std::map<long, long> total;
    for (auto& p : parts)
        for (auto& [k, c] : p) total[k] += c;
    return total;
}

}  // namespace arithlift
