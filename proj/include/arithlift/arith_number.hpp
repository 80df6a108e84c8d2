#pragma once

#include <map>
#include <string>

#include "arithlift/rational.hpp"

namespace arithlift {

// Formal Q-linear combination of 1, log p (p prime), gamma (Euler's constant), log pi
// and LCHI = L'(chi,0)/L(chi,0). The symbol log 2 is the log-prime coordinate at p = 2.
class ArithmeticNumber {
public:
    ArithmeticNumber() = default;
    explicit ArithmeticNumber(const Rat& c) : constant_(c) {}

    static ArithmeticNumber log_prime(long p, const Rat& coeff = 1);
    static ArithmeticNumber euler_gamma(const Rat& coeff = 1);
    static ArithmeticNumber log_pi(const Rat& coeff = 1);
    static ArithmeticNumber lchi(const Rat& coeff = 1);
    // log|n| for a nonzero rational n, expanded over its prime factorization.
    static ArithmeticNumber log_of(const Rat& n);

    const Rat& constant() const { return constant_; }
    const std::map<long, Rat>& log_primes() const { return logp_; }
    Rat log_coeff(long p) const;
    const Rat& gamma_coeff() const { return gamma_; }
    const Rat& log_pi_coeff() const { return logpi_; }
    Rat log2_coeff() const { return log_coeff(2); }
    const Rat& lchi_coeff() const { return lchi_; }

    bool is_zero() const;
    // True iff every nonzero coordinate is a log p coordinate.
    bool supported_on_log_primes() const;

    ArithmeticNumber& operator+=(const ArithmeticNumber& o);
    ArithmeticNumber& operator-=(const ArithmeticNumber& o);
    ArithmeticNumber& operator*=(const Rat& c);
    friend ArithmeticNumber operator+(ArithmeticNumber a, const ArithmeticNumber& b) { return a += b; }
    friend ArithmeticNumber operator-(ArithmeticNumber a, const ArithmeticNumber& b) { return a -= b; }
    friend ArithmeticNumber operator*(ArithmeticNumber a, const Rat& c) { return a *= c; }
    friend ArithmeticNumber operator*(const Rat& c, ArithmeticNumber a) { return a *= c; }
    ArithmeticNumber operator-() const { return (*this) * Rat(-1); }
    bool operator==(const ArithmeticNumber& o) const;
    bool operator!=(const ArithmeticNumber& o) const { return !(*this == o); }

    // Numeric value given L'(chi,0)/L(chi,0).
    double evaluate(double lchi_value) const;
    long double evaluate_ld(long double lchi_value) const;

    // Human readable form such as "-2*log(7)".
    std::string to_string() const;

private:
    void prune();

    Rat constant_ = 0;
    std::map<long, Rat> logp_;
    Rat gamma_ = 0;
    Rat logpi_ = 0;
    Rat lchi_ = 0;
};

}  // namespace arithlift
