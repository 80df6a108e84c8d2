#include "arithlift/eisenstein.hpp"

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

namespace {

Rat exact_value(const Scalar& s) {
    if (!s.is_exact()) throw DomainMismatch("Eisenstein coefficients need exact test functions");
    return s.rational();
}

// Coefficient of delta_mu in a+(m, .), for m > 0 with Diff(m) = {p}.
ArithmeticNumber nonconstant_coeff(const HermSpaceSpec& s0, const FiniteQuadraticModule& M, const Rat& m,
                                   size_t mu) {
    const QuadField& K = *s0.field;
    if (frac(M.Q(mu) - m) != 0) return {};
    DiffSet diff = diff_set(s0, m);
    if (diff.primes.size() != 1) return {};
    long p = *diff.primes.begin();
    int eps = K.is_inert(p) ? 1 : 0;
    Rat arg = m * K.D() / (eps ? Rat(p) : Rat(1));
    long rho = K.rho(arg);
    long ord = valuation(Rat(m * p), p);
    if (rho == 0 || ord == 0) return {};
    Rat c = -make_rat(K.unit_count(), 2 * K.class_number()) * rho * ord * (Rat(1) << M.s_count(mu));
    return ArithmeticNumber::log_prime(p, c);
}

ArithmeticNumber constant_factor(const QuadField& K) {
    return ArithmeticNumber::euler_gamma() + ArithmeticNumber::log_prime(2, 2) + ArithmeticNumber::log_pi() -
           ArithmeticNumber::log_of(Rat(K.D())) + ArithmeticNumber::lchi(-2);
}

}  // namespace

ArithmeticNumber EisensteinCoefficients::value(const Rat& m, const SFunction& phi) const {
    if (m >= precision) throw InsufficientPrecision("Eisenstein coefficient beyond table precision");
    auto it = table.find(m);
    if (it == table.end()) return {};
    ArithmeticNumber out;
    for (size_t i = 0; i < it->second.size(); ++i) out += it->second[i] * exact_value(phi(i));
    return out;
}

ArithmeticNumber aplus(const HermSpaceSpec& s0, const Rat& m, const SFunction& phi) {
    FQMPtr M = FiniteQuadraticModule::rank_one(s0);
    if (!phi.module || phi.module->size() != M->size()) throw DomainMismatch("test function is not on the S0 module");
    if (m < 0) return {};
    if (m == 0) return constant_factor(*s0.field) * exact_value(phi(0));
    ArithmeticNumber out;
    for (size_t i = 0; i < M->size(); ++i) {
        Rat v = exact_value(phi(i));
        if (v != 0) out += nonconstant_coeff(s0, *M, m, i) * v;
    }
    return out;
}

ArithmeticNumber aplus_r(const HermSpaceSpec& s0, const Rat& m, long R) {
    return aplus(s0, m, phi_r(FiniteQuadraticModule::rank_one(s0), R));
}

EisensteinCoefficients holomorphic_part(const HermSpaceSpec& s0, const Rat& prec) {
    if (prec <= 0) throw DomainError("precision must be positive");
    EisensteinCoefficients out;
    out.s0 = s0;
    out.module = FiniteQuadraticModule::rank_one(s0);
    out.precision = prec;
    long D = s0.field->D();
    for (long k = 0; Rat(make_rat(k, D)) < prec; ++k) {
        Rat m = make_rat(k, D);
        std::vector<ArithmeticNumber> row(out.module->size());
        bool any = false;
        for (size_t i = 0; i < row.size(); ++i) {
            row[i] = (m == 0) ? (i == 0 ? constant_factor(*s0.field) : ArithmeticNumber())
                              : nonconstant_coeff(s0, *out.module, m, i);
            any = any || !row[i].is_zero();
        }
        if (any) out.table.emplace(m, std::move(row));
    }
    return out;
}

QExpansion siegel_weil_theta(const HermSpaceSpec& s0, const Rat& prec) {
    const QuadField& K = *s0.field;
    FQMPtr MS = FiniteQuadraticModule::rank_one(s0);
    QExpansion out(Rat(1), CoeffSpace::Dual, MS, prec);
    Rat weight = Rat(Rat(1) << K.o()) / K.class_number();
    for (const HermitianLattice& L0 : genus_rank_one(s0)) {
        FQMPtr M0 = FiniteQuadraticModule::from_lattice(L0);
        if (M0->size() != MS->size()) throw Error("internal", "genus member has the wrong discriminant", ErrorClass::Internal);
        // Transport nu in M0 to the mu in MS with Q_l(mu) = -Q_l(nu) at every l. The choice
        // of sign per l is averaged, which is exact on Delta-invariant test functions.
        std::vector<std::vector<size_t>> image(M0->size());
        for (size_t nu = 0; nu < M0->size(); ++nu) {
            for (size_t mu = 0; mu < MS->size(); ++mu) {
                bool ok = true;
                for (long l : K.primes_of_D()) {
                    if (M0->component_zero(nu, l) != MS->component_zero(mu, l) ||
                        frac(M0->Q_local(nu, l) + MS->Q_local(mu, l)) != 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) image[nu].push_back(mu);
            }
            if (image[nu].empty())
                throw Error("internal", "no isometry between genus member and S0 module", ErrorClass::Internal);
        }
        ThetaTable t = theta_table(L0, M0, prec);
        for (auto& [m, row] : t.counts) {
            if (m >= prec) continue;
            for (auto& [nu, c] : row) {
                Rat share = weight * c / static_cast<long>(image[nu].size());
                for (size_t mu : image[nu]) out.add_to(m, mu, Scalar(share));
            }
        }
    }
    return out;
}

CMValue cm_value_rhs(const HarmonicFormData& f, const HermSpaceSpec& s0, const HermitianLattice& Lambda,
                     std::optional<double> l_prime) {
    FQMPtr MS = FiniteQuadraticModule::rank_one(s0);
    FQMPtr ML = FiniteQuadraticModule::from_lattice(Lambda);
    size_t nL = ML->size();
    if (f.module->size() != MS->size() * nL) throw DomainMismatch("form is not on the S0 + Lambda module");
    CMValue out;
    if (!f.weakly_holomorphic()) {
        if (!l_prime) throw DomainError("L'(xi(f), theta, 0) is required when c- is nonzero");
        out.l_prime = *l_prime;
    }
    Rat depth = f.principal_depth();
    EisensteinCoefficients E = holomorphic_part(s0, depth + 1);
    ThetaTable theta = theta_table(Lambda, ML, depth + 1);
    ArithmeticNumber ct;
    for (auto& [k, c] : f.c_plus) {
        if (k > 0 || c.is_zero()) continue;
        Rat m = -k;
        // sum over m1 + m2 = m of a+(m1) (x) R_Lambda(m2)
        for (auto& [m2, row] : theta.counts) {
            if (m2 > m) break;
            Rat m1 = m - m2;
            auto it = E.table.find(m1);
            if (it == E.table.end()) continue;
            for (auto& [mu, cnt] : row)
                for (size_t mu0 = 0; mu0 < MS->size(); ++mu0) {
                    const Scalar& w = c.values[mu0 * nL + mu];
                    if (w.is_zero() || it->second[mu0].is_zero()) continue;
                    ct += it->second[mu0] * (exact_value(w) * cnt);
                }
        }
    }
    out.constant_term = ct;
    out.value = -out.l_prime + static_cast<double>(ct.evaluate_ld(s0.field->lchi()));
    return out;
}

}  // namespace arithlift
