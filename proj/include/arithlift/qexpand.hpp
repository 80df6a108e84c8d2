#pragma once

#include <map>
#include <optional>
#include <vector>

#include "arithlift/fqm.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/scalar.hpp"

namespace arithlift {

enum class CoeffSpace { Scalar, Vector, Dual };

// Truncated q-expansion sum_m c(m) q^m. Every exponent below precision() is known
// (absent entries are zero); exponents at or above it are unknown.
class QExpansion {
public:
    QExpansion() = default;
    QExpansion(Rat weight, CoeffSpace space, FQMPtr module, Rat precision);

    static QExpansion scalar(Rat weight, Rat precision) { return QExpansion(weight, CoeffSpace::Scalar, nullptr, precision); }

    const Rat& weight() const { return weight_; }
    CoeffSpace space() const { return space_; }
    const FQMPtr& module() const { return module_; }
    const Rat& precision() const { return prec_; }
    size_t width() const { return module_ ? module_->size() : 1; }
    const std::map<Rat, std::vector<Scalar>>& coefficients() const { return coeffs_; }
    // Smallest exponent with a nonzero coefficient (0 for the zero series).
    Rat min_exponent() const;
    bool is_zero() const;

    // Coefficient vector at m. Throws InsufficientPrecision when m >= precision().
    std::vector<Scalar> at(const Rat& m) const;
    Scalar scalar_at(const Rat& m) const { return at(m).at(0); }
    void set(const Rat& m, std::vector<Scalar> c);
    void add_to(const Rat& m, size_t component, const Scalar& c);
    void set_weight(Rat w) { weight_ = std::move(w); }

    QExpansion& operator+=(const QExpansion& o);
    QExpansion operator*(const Scalar& c) const;
    // Product of a scalar series with any series (Cauchy product).
    QExpansion multiply(const QExpansion& scalar_series) const;
    // Coefficient-wise conjugation.
    QExpansion conj() const;

private:
    Rat weight_ = 0;
    CoeffSpace space_ = CoeffSpace::Scalar;
    FQMPtr module_;
    Rat prec_ = 0;
    std::map<Rat, std::vector<Scalar>> coeffs_;
};

// Harmonic Maass form data of weight 2 - n on a finite quadratic module: holomorphic
// coefficients c+(m) and non-holomorphic coefficients c-(m), m < 0, as S-functions.
struct HarmonicFormData {
    int n = 2;
    FQMPtr module;
    std::map<Rat, SFunction> c_plus;
    std::map<Rat, SFunction> c_minus;
    bool delta_invariant = false;

    Rat weight() const { return Rat(2 - n); }
    SFunction cp(const Rat& m) const;
    SFunction cm(const Rat& m) const;
    // Largest m with c+(-m) != 0 (0 when there is no principal part).
    Rat principal_depth() const;
    bool weakly_holomorphic() const;
    // Checks c(m, mu) = c(m, -mu) and the support condition Q(mu) = -m mod 1.
    void validate() const;
    HarmonicFormData scaled(const Scalar& c) const;
    HarmonicFormData operator+(const HarmonicFormData& o) const;
};

// Theta series of L valued in the dual of S_L: coefficient at m maps phi to R_L(m, phi).
QExpansion theta_series(const HermitianLattice& L, FQMPtr M, const Rat& prec);
// sum_{x in L} q^{<x,x>}.
QExpansion scalar_theta(const HermitianLattice& L, const Rat& prec);
// sum_h eta(h)/|Aut L_h| theta_{L_h} over ideal classes h, eta given as phases per class.
QExpansion eta_theta(const HermitianLattice& L, const std::vector<Phase>& eta, const Rat& prec);
// E_2 = 1 - 24 sum sigma_1(m) q^m.
QExpansion e2(const Rat& prec);
// theta(g) = q d/dq g.
QExpansion theta_operator(const QExpansion& g);
// Serre derivative theta(g) - (k/12) g E_2.
QExpansion serre_derivative(const QExpansion& g, const Rat& k);
// {f, g}: pairing of S-valued f with dual-valued g, as a scalar series.
QExpansion pairing(const QExpansion& f, const QExpansion& g);
Scalar constant_term(const QExpansion& h);
// The holomorphic part of a harmonic form as an S-valued expansion up to prec.
QExpansion holomorphic_expansion(const HarmonicFormData& f, const Rat& prec);

// Regularized pairing (f, g)^reg of f of weight -k with holomorphic g of weight k, returned
// as the coefficient of pi.
Scalar reg_pairing_pi(const HarmonicFormData& f, const QExpansion& g, int k);

// f_D: sum of f over the isotropic summand a of the hyperbolic plane in M_E + H_D.
HarmonicFormData boundary_reduction(const HarmonicFormData& f, FQMPtr ME);
// Multiplicity r Phi^D(f_D) / (4 pi N(a0)). E is null when n = 2.
Scalar boundary_mult(const HarmonicFormData& f, const HermitianLattice* E, const Rat& r_width, const Rat& Na0);

// Image under xi = 2i v^k conj(d/d taubar) of the harmonic form: the coefficient at m > 0
// is -(4 pi m)^{n-1} conj(c-(-m)).
QExpansion xi_image(const HarmonicFormData& f, const Rat& prec);

// Data for the Fourier expansion of the Green function at a point near a cusp. Geometric
// quantities are supplied by the caller for one fixed Weyl chamber.
struct GreenTerm {
    Scalar c_plus;       // c+(-<lambda,lambda>, nu)
    Scalar c_minus;      // c-(-<lambda,lambda>, nu)
    double phase = 0;    // <nu, l'> + <lambda, mu>
    double lambda_sq = 0;  // <lambda, lambda>
    double proj = 0;     // |lambda_w|
};
struct GreenFourierInput {
    int n = 3;
    double ell_z = 1;      // |l_z|
    double phi_K = 0;      // Phi^K(w, f_K)
    Scalar c00 = 0;        // c+(0, 0)
    // Pairs (c+(0, a l / N), a / N) for a != 0 mod N.
    std::vector<std::pair<Scalar, Rat>> boundary_constants;
    std::vector<GreenTerm> terms;
    int j_max = 64;
    double tail_tolerance = 1e-10;
    double singular_tolerance = 1e-12;
};
struct GreenValue {
    double value = 0;
    double constant = 0;   // C_f
    double log_sum = 0;
    double v_sum = 0;
    double tail_bound = 0;
};
GreenValue green_fourier_value(const GreenFourierInput& in);

}  // namespace arithlift
