#include "arithlift/scalar.hpp"

#include <sstream>

#include "arithlift/errors.hpp"

namespace arithlift {

const Rat& Scalar::rational() const {
    if (!exact_) throw DomainError("scalar is not exact");
    return r_;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (exact_ && o.exact_) {
        r_ += o.r_;
    } else {
        z_ = value() + o.value();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (exact_ && o.exact_) {
        r_ -= o.r_;
    } else {
        z_ = value() - o.value();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact_ && o.exact_) {
        r_ *= o.r_;
    } else {
        z_ = value() * o.value();
        exact_ = false;
    }
    return *this;
}

bool Scalar::operator==(const Scalar& o) const {
    if (exact_ && o.exact_) return r_ == o.r_;
    return value() == o.value();
}

std::string Scalar::to_string() const {
    if (exact_) return arithlift::to_string(r_);
    std::ostringstream os;
    os.precision(17);
    os << z_.real();
    if (z_.imag() != 0) os << (z_.imag() < 0 ? "-" : "+") << std::abs(z_.imag()) << "i";
    return os.str();
}

}  // namespace arithlift
