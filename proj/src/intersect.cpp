#include "arithlift/intersect.hpp"

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

CycleConfig CycleConfig::make(const HermSpaceSpec& s0, const HermitianLattice& lambda) {
    if (s0.rank != 1 || s0.product() != -1) throw DomainMismatch("S0 must be incoherent of rank one");
    if (s0.field->d() != lambda.field().d()) throw DomainMismatch("S0 and Lambda live over different fields");
    if (!lambda.is_self_dual()) throw DomainMismatch("Lambda must be self-dual");
    return CycleConfig{s0.field, s0, lambda};
}

Rat nu_p(const QuadField& K, const Rat& m1, long p) {
    if (K.is_split(p)) throw SplitPrime("nu_p is defined only at nonsplit primes");
    Rat ord(valuation(Rat(m1 * p), p));
    return K.is_inert(p) ? ord / 2 : ord;
}

Rat prime_to_p_norm(const QuadField& K, long R, long p) {
    Ideal r = K.ramified_ideal(R);
    Ideal pp = K.nonsplit_prime(p);
    std::vector<QuadElem> gens = K.ideal_basis(r);
    for (auto& x : K.ideal_basis(pp)) gens.push_back(x);
    Ideal g = K.ideal_from_generators(gens);
    Ideal s = K.ideal_mul(r, K.ideal_inverse(g));
    return s.norm();
}

Rat geometric_count(const CycleConfig& cfg, const Rat& m1, const Rat& m2, long R) {
    if (m1 <= 0) throw DomainError("m1 must be positive");
    const QuadField& K = *cfg.field;
    DiffSet diff = diff_set(cfg.s0, m1);
    if (diff.primes.size() != 1) return 0;
    long p = *diff.primes.begin();
    long rep = cfg.lambda.rep_number(m2, R);
    if (rep == 0) return 0;
    Rat arg = m1 * prime_to_p_norm(K, R, p) / (K.is_inert(p) ? Rat(p) : Rat(1));
    return make_rat(K.class_number(), K.unit_count()) * make_rat(rep, cfg.lambda.aut_size()) * K.rho(arg);
}

ArithmeticNumber deg_X_hat(const CycleConfig& cfg, const Rat& m1, const Rat& m2, long R) {
    DiffSet diff = diff_set(cfg.s0, m1);
    if (diff.primes.size() != 1) return {};
    long p = *diff.primes.begin();
    const QuadField& K = *cfg.field;
    Rat count = geometric_count(cfg, m1, m2, R);
    Rat log_norm = K.is_inert(p) ? Rat(2) : Rat(1);
    return ArithmeticNumber::log_prime(p, log_norm * nu_p(K, m1, p) * count);
}

Rat deg_cm_cycle(const CycleConfig& cfg) {
    const QuadField& K = *cfg.field;
    Rat hw = make_rat(K.class_number(), K.unit_count());
    return hw * hw * Rat(Rat(2) / (Rat(1) << K.o())) / cfg.lambda.aut_size();
}

IdentityCheck proper_identity_check(const CycleConfig& cfg, const Rat& m1, const Rat& m2, long R) {
    IdentityCheck out;
    out.lhs = deg_X_hat(cfg, m1, m2, R);
    ArithmeticNumber a = aplus_r(cfg.s0, m1, R);
    out.rhs = a * (-deg_cm_cycle(cfg) * cfg.lambda.rep_number(m2, R));
    out.holds = out.lhs == out.rhs;
    return out;
}

LocalComboCheck local_combo_check(const HermSpaceSpec& s0, long l, const Rat& m1, long R) {
    const QuadField& K = *s0.field;
    if (K.D() % l != 0) throw DomainError("l must divide D");
    if (K.D() % R != 0) throw DomainError("R must divide D");
    LocalComboCheck out;
    DiffSet diff = diff_set(s0, m1);
    if (diff.primes.size() != 1) return out;
    long p = *diff.primes.begin();
    if (l != p && diff.primes.count(l)) return out;
    out.applicable = true;
    long ord = valuation(m1, l);
    Rat Ns = prime_to_p_norm(K, R, p);
    if (ord >= 0)
        out.case_id = 1;
    else if (ord < -1)
        out.case_id = 2;
    else if (l == p)
        out.case_id = 5;
    else if (R % l != 0)
        out.case_id = 3;
    else
        out.case_id = 4;

    // l-part of m1 in Q_l / Z_l.
    Rat target = 0;
    if (ord < 0) {
        long lk = 1;
        for (long i = 0; i < -ord; ++i) lk *= l;
        Rat u = m1 * lk;  // l-adic unit
        long num = mod(to_long(u.get_num()), lk), den = mod(to_long(u.get_den()), lk);
        target = make_rat(mod(num * inverse_mod(den, lk), lk), lk);
    }
    FQMPtr M = FiniteQuadraticModule::rank_one(s0);
    long sum = 0;
    for (size_t i = 0; i < M->size(); ++i) {
        bool only_l = true;
        for (long q : K.primes_of_D())
            if (q != l && !M->component_zero(i, q)) only_l = false;
        if (!only_l) continue;
        if (frac(M->Q(i)) != target) continue;
        bool zero = (i == 0);
        bool in_r = zero || R % l == 0;
        if (in_r) sum += zero ? 2 : 1;
    }
    out.lhs = Rat(K.rho_local(l, m1 * K.D()) * sum);
    out.rhs = Rat(2 * K.rho_local(l, m1 * Ns));
    out.holds = out.lhs == out.rhs;
    return out;
}

ArithmeticNumber taut_pairing(const CycleConfig& cfg, const SFunction& phi) {
    if (phi(0).is_zero()) throw DegenerateTestFunction("phi(0) = 0");
    if (!phi(0).is_exact()) throw DomainMismatch("taut_pairing needs an exact test function");
    return aplus(cfg.s0, Rat(0), phi) * (-deg_cm_cycle(cfg) / phi(0).rational());
}

ArithmeticNumber chowla_selberg_rhs(const QuadField& K) {
    return ArithmeticNumber::log_prime(2) + ArithmeticNumber::log_pi() +
           ArithmeticNumber::log_of(Rat(K.D())) * make_rat(1, 2) + ArithmeticNumber::lchi();
}

MainTheoremValue main_theorem_rhs(const CycleConfig& cfg, const HarmonicFormData& f, std::optional<double> l_prime) {
    MainTheoremValue out;
    double deg = to_double(deg_cm_cycle(cfg));
    if (!f.weakly_holomorphic()) {
        if (!l_prime) throw DomainError("L'(xi(f), theta, 0) is required when c- is nonzero");
        out.rhs = -deg * *l_prime;
    }
    SFunction c0 = f.cp(Rat(0));
    if (!c0(0).is_zero()) {
        FQMPtr MS = FiniteQuadraticModule::rank_one(cfg.s0);
        ArithmeticNumber taut = taut_pairing(cfg, SFunction::delta(MS, 0));
        out.taut_term = c0(0).value().real() * static_cast<double>(taut.evaluate_ld(cfg.field->lchi()));
    }
    out.divisor = out.rhs - out.taut_term;
    return out;
}

}  // namespace arithlift
