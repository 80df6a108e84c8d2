#pragma once

#include <complex>
#include <string>

#include "arithlift/rational.hpp"

namespace arithlift {

// Exact rational until a floating-point value enters; results of mixed operations are
// floating point ("contagion").
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rat& r) : exact_(true), r_(r) {}  // NOLINT(google-explicit-constructor)
    Scalar(long v) : exact_(true), r_(v) {}        // NOLINT(google-explicit-constructor)
    Scalar(int v) : exact_(true), r_(v) {}         // NOLINT(google-explicit-constructor)
    Scalar(std::complex<double> z) : exact_(false), z_(z) {}  // NOLINT(google-explicit-constructor)
    static Scalar real(double x) { return Scalar(std::complex<double>(x, 0.0)); }

    bool is_exact() const { return exact_; }
    const Rat& rational() const;
    std::complex<double> value() const { return exact_ ? std::complex<double>(to_double(r_), 0.0) : z_; }
    bool is_zero() const { return exact_ ? r_ == 0 : z_ == std::complex<double>(0, 0); }

    Scalar conj() const { return exact_ ? *this : Scalar(std::conj(z_)); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    Scalar operator-() const { return exact_ ? Scalar(Rat(-r_)) : Scalar(-z_); }
    // Exact comparison for exact scalars; for floats, exact bitwise equality.
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    bool exact_ = true;
    Rat r_ = 0;
    std::complex<double> z_ = 0;
};

}  // namespace arithlift
