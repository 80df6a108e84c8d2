#pragma once

#include <map>
#include <optional>
#include <vector>

#include "arithlift/arith_number.hpp"
#include "arithlift/fqm.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/qexpand.hpp"

namespace arithlift {

/// Holomorphic part of the derivative at s = 0 of the incoherent weight-one Eisenstein
/// series attached to S0. Values are stored on delta functions of the S0 module, so
/// a+(m, phi) = sum_mu phi(mu) table[m][mu].
struct EisensteinCoefficients {
    HermSpaceSpec s0;
    FQMPtr module;
    Rat precision;
    std::map<Rat, std::vector<ArithmeticNumber>> table;

    ArithmeticNumber value(const Rat& m, const SFunction& phi) const;
};

// a+(m, phi) for phi on the S0 module with exact rational values. Throws DomainMismatch.
ArithmeticNumber aplus(const HermSpaceSpec& s0, const Rat& m, const SFunction& phi);
// a+(m, r) := a+(m, phi_r) for r = R O + sqrt(d) O.
ArithmeticNumber aplus_r(const HermSpaceSpec& s0, const Rat& m, long R);

// All a+(m, delta_mu) with m < prec and D m integral.
EisensteinCoefficients holomorphic_part(const HermSpaceSpec& s0, const Rat& prec);

// Genus-averaged theta function (2^o / h) sum_{L0} theta_{L0} as a table of functionals on
// the S0 module; the coefficient at m belongs to exp(2 pi i m taubar), and the common factor
// v is left out.
QExpansion siegel_weil_theta(const HermSpaceSpec& s0, const Rat& prec);

struct CMValue {
    ArithmeticNumber constant_term;  // CT[{f+, E (x) theta_Lambda}]
    double l_prime = 0;              // L'(xi(f), theta_Lambda, 0)
    double value = 0;                // -l_prime + CT evaluated
};

// Right-hand side of the CM value formula for f on the module S0 + Lambda (built with
// FiniteQuadraticModule::direct_sum(rank_one(s0), from_lattice(Lambda))). The L-derivative
// must be supplied unless f is weakly holomorphic. Throws InsufficientPrecision, DomainError.
CMValue cm_value_rhs(const HarmonicFormData& f, const HermSpaceSpec& s0, const HermitianLattice& Lambda,
                     std::optional<double> l_prime = std::nullopt);

}  // namespace arithlift
