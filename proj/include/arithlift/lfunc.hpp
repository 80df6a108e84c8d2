#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arithlift/fqm.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/quadfield.hpp"
#include "arithlift/scalar.hpp"

namespace arithlift {

using cplx = std::complex<double>;

/// Normalized newform g = sum a(m) q^m of level D, weight n and character chi_k^n.
struct NewformData {
    long level = 0;
    int weight = 0;
    std::shared_ptr<const QuadField> field;
    std::vector<Scalar> a;  // a[m] for 1 <= m <= size(); a[0] is unused
    bool newform = true;

    long size() const { return static_cast<long>(a.size()) - 1; }
    // Throws MissingCoefficient beyond the table.
    const Scalar& at(long m) const;
    // Nebentypus chi_k^n at an integer.
    int character(long m) const;
};

// Checks a(1) = 1, multiplicativity and the prime-power recursion. Throws HeckeViolation.
void validate_hecke(const NewformData& g);

// Builds and validates a newform from a coefficient list (index 0 unused).
NewformData make_newform(long level, int weight, std::vector<Scalar> a);

// Reads a CSV with header "m,a_m" and contiguous rows 1..M. Values may be integers,
// rationals p/q or decimals. Throws ParseError, HeckeViolation.
NewformData ingest_newform(const std::string& path, long level, int weight);

// Atkin-Lehner pseudo-eigenvalue eps_Q(g). Exact for even weight and rational a(q).
Scalar epsilon_Q(const NewformData& g, long Q);

// Coefficients a_Q(m) of g_Q for 1 <= m <= M (index 0 unused). Throws MissingCoefficient.
std::vector<Scalar> g_twist(const NewformData& g, long Q, long M);

/// The vector-valued form attached to g on the module of S = S0 + Lambda. Coefficients are
/// produced on demand since a(m, mu) only depends on Q_mu and on Q(mu) mod 1.
class InducedForm {
public:
    InducedForm(const NewformData& g, const HermSpaceSpec& S, FQMPtr module, const Rat& bound);

    FQMPtr module() const { return module_; }
    const Rat& bound() const { return bound_; }
    long D() const { return D_; }
    // a(m, mu); zero unless Q(mu) = m mod 1. Throws MissingCoefficient.
    Scalar at(const Rat& m, size_t mu) const;
    SFunction coefficient(const Rat& m) const;
    // Root-of-unity factor eps_Q conj(gamma_Q) Q^{1-n} used for the divisor Q.
    const Scalar& weight(long Q) const { return weights_.at(Q); }

private:
    Scalar inner(long k, long Qmu) const;

    FQMPtr module_;
    Rat bound_;
    long D_;
    int n_;
    std::map<long, Scalar> weights_;
    std::map<long, std::vector<Scalar>> twists_;  // a_Q up to bound * Q
};

InducedForm induce(const NewformData& g, const HermSpaceSpec& S, FQMPtr module, const Rat& bound);

/// Upper bound for #{lambda in L : q(lambda) <= X} by the volume of a ball of radius
/// sqrt(X) + delta, delta being the diameter of a fundamental cell.
struct BallBound {
    int real_dim = 0;
    double inv_covolume = 0;
    double delta = 0;

    // For r^{-1} L (r of norm R) with the form scaled by `scale`.
    static BallBound for_lattice(const HermitianLattice& L, long R, const Rat& scale);
    double operator()(double X) const;
};

/// Dirichlet series Gamma(s/2 + n - 1) sum_{k >= 1} c_k (4 pi k / den)^{-(s/2 + n - 1)}, with
/// data for a rigorous tail bound: |c_k| <= A (k/den)^alpha R(k/den), where R counts vectors of a
/// lattice with norm k/den and sum_{m <= X} R(m) <= ball(X).
struct RankinSeries {
    std::shared_ptr<const QuadField> field;
    int n = 2;
    long den = 1;
    std::vector<cplx> c;  // c[k], k = 0..K (c[0] unused)
    double coef_A = 0;
    double coef_alpha = 0;
    BallBound ball;

    long terms() const { return static_cast<long>(c.size()) - 1; }
    RankinSeries& operator+=(const RankinSeries& o);
    RankinSeries operator*(cplx w) const;
};

// L(F, theta_Lambda, s) for the induced form F: c(m) = sum_mu conj(a(m, (0, mu))) R_Lambda(m, mu).
RankinSeries vector_series(const InducedForm& F, const HermitianLattice& Lambda, const Rat& bound);

// L(g_Q, theta^sc, s) for a scalar theta series with integral exponents.
RankinSeries scalar_series(const std::vector<Scalar>& aQ, int n, const std::vector<Scalar>& theta_coeffs,
                           BallBound ball, double coef_A, std::shared_ptr<const QuadField> field);

struct DirectValue {
    cplx value;
    double tail_bound = 0;
};

// Partial sum with a tail bound from Deligne's bound and the ball count. Throws
// OutsideConvergence when the bound does not converge at Re(s).
DirectValue direct_L(const RankinSeries& L, cplx s);

// Lambda(chi_k, s + 1) * direct_L(s).
DirectValue direct_completed(const RankinSeries& L, cplx s);

struct AFEOptions {
    double t0 = 1.2;         // splitting point of the smoothed functional equation
    double tolerance = 1e-13;
};

// Lambda*(s) = Lambda(chi_k, s + 1) L(F, theta, s) by the smoothed approximate functional equation
// with sign -1. Requires den == D. Throws PrecisionUnachievable, KernelDivergence.
cplx completed_L(const RankinSeries& L, cplx s, const AFEOptions& opt = {});

struct DerivativeValue {
    double value = 0;       // L'(F, theta, 0) from differentiated kernels
    double fd_step = 0;     // step h of the symmetric difference estimates
    double fd_h = 0;        // Richardson-extrapolated difference with step h
    double fd_h2 = 0;       // same with step h/2
    double lambda_at_0 = 0; // |Lambda*(0)|, zero up to rounding when the functional equation holds
    double antisymmetry = 0; // |Lambda*(1/2) + Lambda*(-1/2)|
    // Set when the symmetry residuals exceed 1e-6, which points at a pole or a wrong sign.
    bool pole_suspected() const { return lambda_at_0 > 1e-6 || antisymmetry > 1e-6; }
};

DerivativeValue L_prime_at_0(const RankinSeries& L, const AFEOptions& opt = {}, double step = 1e-2);

/// Class group character for the eta-twisted forms: values on ideal_class_reps().
struct ClassCharacter {
    std::vector<Phase> values;
    static ClassCharacter trivial(const QuadField& K);
    // Throws DomainMismatch when the values are not a character.
    void validate(const QuadField& K) const;
    Phase at_ideal(const QuadField& K, const Ideal& I) const;
};

struct DecompositionCheck {
    cplx lhs;
    cplx rhs;
    double residual = 0;
    double tail_bound = 0;
    bool product_form_checked = false;
    bool product_form_equal = false;
    bool passes() const { return residual <= tail_bound && (!product_form_checked || product_form_equal); }
};

// Vector L(F, theta_{eta, Lambda}, s) against sum_Q Q^{s/2} conj(eps_Q) gamma_Q chi_eta(q^{-1})
// L(g_Q, theta^sc, s), both summed directly up to m <= M.
DecompositionCheck scalar_vector_decomposition_check(const NewformData& g, const HermitianLattice& Lambda,
                                                     const HermSpaceSpec& s0,
                                                     const std::optional<ClassCharacter>& eta, cplx s,
                                                     long M);

struct MainTheorem2Value {
    double scalar_route = 0;  // -deg * d/ds [scalar combination] at s = 0
    double vector_route = 0;  // -deg * L'(F, theta_{eta, Lambda}, 0)
    double degree = 0;
};

// Right-hand side of the scalar form of the main theorem, with the vector route for comparison.
MainTheorem2Value theorem_maintheo2_rhs(const NewformData& g, const HermitianLattice& Lambda,
                                        const HermSpaceSpec& s0, const std::optional<ClassCharacter>& eta,
                                        long M, const AFEOptions& opt = {});

}  // namespace arithlift
