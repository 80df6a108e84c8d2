#pragma once

#include <memory>
#include <optional>

#include "arithlift/arith_number.hpp"
#include "arithlift/eisenstein.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/qexpand.hpp"

namespace arithlift {

// Closed-form right-hand sides of the intersection formulas. Heights on integral models are
// never computed directly; every geometric quantity here is the counting formula for it.

/// A CM cycle datum: the incoherent rank-one space S0 and a self-dual positive definite
/// lattice Lambda of rank n - 1.
struct CycleConfig {
    std::shared_ptr<const QuadField> field;
    HermSpaceSpec s0;
    HermitianLattice lambda;

    // Throws NotPositiveDefinite or DomainMismatch when the data are inconsistent.
    static CycleConfig make(const HermSpaceSpec& s0, const HermitianLattice& lambda);
    int n() const { return lambda.rank() + 1; }
};

// Length of the local ring at a point of X(m1, m2, r) in characteristic p. Throws SplitPrime.
Rat nu_p(const QuadField& K, const Rat& m1, long p);

// Norm of s = r / (r + p), the prime-to-p part of r = R O + sqrt(d) O.
Rat prime_to_p_norm(const QuadField& K, long R, long p);

// Weighted number of geometric points of X(m1, m2, r); zero unless Diff(m1) is a singleton.
Rat geometric_count(const CycleConfig& cfg, const Rat& m1, const Rat& m2, long R);

// Arithmetic degree of X-hat(m1, m2, r) as log N(p) * length * count.
ArithmeticNumber deg_X_hat(const CycleConfig& cfg, const Rat& m1, const Rat& m2, long R);

// deg_C Y = h^2 / w^2 * 2^{1 - o} / |Aut Lambda|.
Rat deg_cm_cycle(const CycleConfig& cfg);

struct IdentityCheck {
    bool holds = false;
    ArithmeticNumber lhs;
    ArithmeticNumber rhs;
};

// deg X-hat(m1, m2, r) against -deg_C Y * a+(m1, r) * R_Lambda(m2, r).
IdentityCheck proper_identity_check(const CycleConfig& cfg, const Rat& m1, const Rat& m2, long R);

struct LocalComboCheck {
    bool applicable = false;  // Diff(m1) is a singleton
    bool holds = false;
    int case_id = 0;          // 1..5 by the valuation of m1 at l and the position of l
    Rat lhs;
    Rat rhs;
};

// The local identity rho_l(m1 D) sum_mu 2^{s_l(mu)} phi_{r,l}(mu) = 2 rho_l(m1 N(s)) at l | D,
// by enumeration of the l-part of the S0 module.
LocalComboCheck local_combo_check(const HermSpaceSpec& s0, long l, const Rat& m1, long R);

// [T-hat : Y] = -deg_C Y * a+(0, phi) / phi(0). Throws DegenerateTestFunction.
ArithmeticNumber taut_pairing(const CycleConfig& cfg, const SFunction& phi);

// log(2 pi) + (1/2) log D + L'(chi, 0) / L(chi, 0).
ArithmeticNumber chowla_selberg_rhs(const QuadField& K);

struct MainTheoremValue {
    double rhs = 0;        // -deg_C Y * L'(xi(f), theta_Lambda, 0)
    double taut_term = 0;  // c+(0, 0) * [T-hat : Y]
    double divisor = 0;    // rhs - taut_term, the pairing [Z-hat(f) : Y]
};

// Right-hand side of the main theorem. The L-derivative is required unless f is weakly
// holomorphic, in which case it vanishes.
MainTheoremValue main_theorem_rhs(const CycleConfig& cfg, const HarmonicFormData& f,
                                  std::optional<double> l_prime = std::nullopt);

}  // namespace arithlift
