#pragma once

#include <complex>
#include <vector>

#include "arithlift/rational.hpp"
#include "arithlift/special.hpp"

namespace arithlift {

// Element a + b*omega of k, where omega = (d + sqrt(d))/2.
struct QuadElem {
    Rat a = 0;
    Rat b = 0;

    QuadElem() = default;
    QuadElem(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit QuadElem(const Rat& a_) : a(a_), b(0) {}

    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
};

// Fractional ideal with Z-basis {p, q + r*omega} in Hermite normal form:
// p > 0, r > 0 and 0 <= q < p. The norm is p*r.
struct Ideal {
    Rat p = 1;
    Rat q = 0;
    Rat r = 1;

    Rat norm() const { return p * r; }
    bool operator==(const Ideal& o) const { return p == o.p && q == o.q && r == o.r; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
};

// Integral ideal class representative [a, b + omega] together with its norm a.
struct IdealClassRep {
    Ideal ideal;
    long form_a = 1;
    long form_b = 1;
    long form_c = 1;
    Rat norm() const { return ideal.norm(); }
};

// Binary quadratic form a x^2 + b x y + c y^2.
struct BinaryForm {
    long a, b, c;
    bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

BinaryForm reduce_form(BinaryForm f);

class QuadField {
public:
    // Throws EvenDiscriminant or NonFundamental.
    explicit QuadField(long d);

    long d() const { return d_; }
    long D() const { return -d_; }
    int class_number() const { return static_cast<int>(reps_.size()); }
    int unit_count() const { return w_; }
    int o() const { return static_cast<int>(primes_.size()); }
    const std::vector<long>& primes_of_D() const { return primes_; }

    // Element arithmetic.
    QuadElem add(const QuadElem& x, const QuadElem& y) const;
    QuadElem sub(const QuadElem& x, const QuadElem& y) const;
    QuadElem mul(const QuadElem& x, const QuadElem& y) const;
    QuadElem scale(const QuadElem& x, const Rat& c) const;
    QuadElem conj(const QuadElem& x) const;
    QuadElem inverse(const QuadElem& x) const;
    Rat norm(const QuadElem& x) const;
    Rat trace(const QuadElem& x) const;
    QuadElem omega() const { return QuadElem(0, 1); }
    QuadElem sqrt_d() const { return QuadElem(-d_, 2); }
    std::complex<long double> embed(const QuadElem& x) const;
    bool is_integral(const QuadElem& x) const;
    // The units of O_k.
    std::vector<QuadElem> units() const;

    // Kronecker symbol (d/m).
    int chi(long m) const;
    // chi_{k,p}(x) = (x, d)_p, the local norm residue symbol at a finite prime p.
    int chi_local(long p, const Rat& x) const;
    bool is_split(long p) const { return chi(p) == 1; }
    bool is_inert(long p) const { return chi(p) == -1; }
    bool is_ramified(long p) const { return D() % p == 0; }

    // Number of integral ideals of norm m (0 unless m is a positive integer).
    long rho(const Rat& m) const;
    // Number of ideals of O_{k,l} of norm m Z_l.
    long rho_local(long l, const Rat& m) const;

    // L(chi_k, s) via Hurwitz zeta values.
    std::complex<long double> dirichlet_L(std::complex<long double> s, long double tol = 1e-15L) const;
    // Lambda(chi_k, s) = D^{s/2} pi^{-(s+1)/2} Gamma((s+1)/2) L(chi_k, s).
    std::complex<long double> completed_L(std::complex<long double> s, long double tol = 1e-15L) const;
    // L'(chi_k, 0) / L(chi_k, 0) via the Lerch formula.
    long double lchi() const;
    // L'(chi_k, 0) via the Lerch formula.
    long double dirichlet_L_prime_at_0() const;

    // Ideals.
    Ideal unit_ideal() const { return Ideal{}; }
    Ideal ideal_from_generators(const std::vector<QuadElem>& gens) const;
    Ideal principal_ideal(const QuadElem& x) const;
    Ideal ideal_mul(const Ideal& I, const Ideal& J) const;
    Ideal ideal_conj(const Ideal& I) const;
    Ideal ideal_inverse(const Ideal& I) const;
    Ideal ideal_scale(const Ideal& I, const Rat& c) const;
    bool ideal_contains(const Ideal& I, const QuadElem& x) const;
    // Z-basis {p, q + r omega}.
    std::vector<QuadElem> ideal_basis(const Ideal& I) const;
    // The ideal r = R O + sqrt(d) O for a positive divisor R of D.
    Ideal ramified_ideal(long R) const;
    // Prime ideal above a prime p that is not split.
    Ideal nonsplit_prime(long p) const;

    const std::vector<IdealClassRep>& ideal_class_reps() const { return reps_; }
    // Index into ideal_class_reps() of the class of a fractional ideal.
    int class_index(const Ideal& I) const;
    // Index of the product of two classes.
    int class_mul(int i, int j) const;
    int class_inverse(int i) const;

private:
    long d_;
    int w_ = 2;
    std::vector<long> primes_;
    std::vector<IdealClassRep> reps_;
};

}  // namespace arithlift
