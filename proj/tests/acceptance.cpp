// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.
// Reference values come from oracles written here (Hilbert symbols, Lerch's formula, reduced
// forms, direct counting) rather than from the library path being tested.

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "arithlift/eisenstein.hpp"
#include "arithlift/errors.hpp"
#include "arithlift/fqm.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/intersect.hpp"
#include "arithlift/lfunc.hpp"
#include "arithlift/numtheory.hpp"
#include "arithlift/qexpand.hpp"
#include "arithlift/quadfield.hpp"
#include "arithlift/special.hpp"

using namespace arithlift;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const std::vector<long> kFields{-7, -11, -23};

std::shared_ptr<const QuadField> field_of(long d) { return std::make_shared<QuadField>(d); }

long oracle_class_number(long d) {
    // Reduced forms (a, b, c) with b^2 - 4ac = d, |b| <= a <= c, b >= 0 if |b| = a or a = c.
    long h = 0;
    for (long a = 1; 3 * a * a <= -d; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++h;
        }
    return h;
}

int oracle_kronecker_odd(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// Hilbert symbol (a, b)_p for nonzero integers.
int hilbert(long a, long b, long p) {
    auto split = [p](long x, long& v) {
        v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return x;
    };
    long alpha, beta;
    long u = split(a, alpha), w = split(b, beta);
    if (p != 2) {
        int s = ((alpha * beta) % 2 != 0 && ((p - 1) / 2) % 2 != 0) ? -1 : 1;
        int lu = (beta % 2) ? oracle_kronecker_odd(u, p) : 1;
        int lw = (alpha % 2) ? oracle_kronecker_odd(w, p) : 1;
        return s * lu * lw;
    }
    auto eps = [](long x) { return ((x % 4 + 4) % 4 == 3) ? 1 : 0; };
    auto omg = [](long x) {
        long r = (x % 8 + 8) % 8;
        return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(w) + (alpha % 2) * omg(w) + (beta % 2) * omg(u);
    return (e % 2) ? -1 : 1;
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

// ---------------------------------------------------------------------------------------------

Outcome criterion1() {
    long checks = 0, failures = 0;
    std::string coverage;
    bool all_cases = true;
    for (long d : kFields) {
        auto K = field_of(d);
        HermSpaceSpec s0 = default_incoherent(K);
        long D = K->D();
        std::set<int> cases;
        for (long l : K->primes_of_D())
            for (long R : divisors(D))
                for (long k = 1; k <= 60 * D; ++k) {
                    Rat m1 = make_rat(k, D * D);
                    LocalComboCheck c = local_combo_check(s0, l, m1, R);
                    if (!c.applicable) continue;
                    ++checks;
                    cases.insert(c.case_id);
                    // Oracle: rho_l at a ramified l is 1 on l-integral arguments. The l-part of N(s)
                    // is l exactly when l divides R and l is not the prime of Diff(m1).
                    long p = *diff_set(s0, m1).primes.begin();
                    long ord = valuation(m1, l) + ((R % l == 0 && l != p) ? 1 : 0);
                    Rat oracle_rhs = ord >= 0 ? Rat(2) : Rat(0);
                    if (c.lhs != c.rhs || c.rhs != oracle_rhs || !c.holds) ++failures;
                }
        all_cases = all_cases && cases.size() == 5;
        coverage += " d=" + std::to_string(d) + ":" + std::to_string(cases.size()) + "/5";
    }
    return {failures == 0 && all_cases && checks > 0,
            std::to_string(checks) + " checks, " + std::to_string(failures) + " failures, cases" + coverage};
}

Outcome criterion2() {
    long checks = 0, failures = 0;
    bool hand = false;
    for (long d : kFields) {
        auto K = field_of(d);
        HermSpaceSpec s0 = default_incoherent(K);
        long D = K->D();
        for (const auto& Lam : genus_rank_one(K)) {
            CycleConfig cfg = CycleConfig::make(s0, Lam);
            for (long R : divisors(D))
                for (long k = 1; k <= 30 * D; ++k)
                    for (long m2 = 0; m2 <= 10; ++m2) {
                        IdentityCheck c = proper_identity_check(cfg, make_rat(k, D), Rat(m2), R);
                        ++checks;
                        if (!c.holds || c.lhs != c.rhs) ++failures;
                    }
        }
        if (d == -7) {
            // Hand-computed instance: deg_C Y = 1/8, a+(1, O) = -2 log 7, R_O(1) = 2.
            CycleConfig cfg = CycleConfig::make(s0, unit_lattice(K, 1));
            IdentityCheck c = proper_identity_check(cfg, Rat(1), Rat(1), 1);
            ArithmeticNumber half_log7 = ArithmeticNumber::log_prime(7, make_rat(1, 2));
            hand = c.lhs == half_log7 && c.rhs == half_log7 && deg_cm_cycle(cfg) == make_rat(1, 8);
        }
    }
    return {failures == 0 && hand, std::to_string(checks) + " checks, " + std::to_string(failures) +
                                       " failures, d=-7 m1=m2=1 instance " + (hand ? "= log(7)/2" : "wrong")};
}

Outcome criterion3() {
    long checks = 0, failures = 0;
    for (long d : kFields) {
        auto K = field_of(d);
        HermSpaceSpec s0 = default_incoherent(K);
        long D = K->D();
        for (long k = 1; k <= 500 * D; ++k) {
            Rat m = make_rat(k, D);
            DiffSet ds = diff_set(s0, m);
            ++checks;
            // Oracle: p is in Diff(m) iff (m, d)_p differs from the local invariant of S0.
            long num = to_long(Int(m.get_num())), den = to_long(Int(m.get_den()));
            std::set<long> cand{2};
            for (long p : prime_divisors(num * den)) cand.insert(p);
            for (long p : prime_divisors(D)) cand.insert(p);
            for (auto& [p, e] : s0.inv) cand.insert(p);
            std::set<long> expect;
            for (long p : cand)
                if (hilbert(num * den, d, p) != s0.invariant(p)) expect.insert(p);
            bool ok = ds.primes == expect && ds.primes.size() % 2 == 1;
            for (long p : ds.primes) {
                int split = (p == 2) ? (((d % 8) + 8) % 8 == 1 ? 1 : -1) : oracle_kronecker_odd(d, p);
                if (split == 1) ok = false;
            }
            if (!ok) ++failures;
        }
    }
    return {failures == 0, std::to_string(checks) + " values of m, " + std::to_string(failures) + " failures"};
}

Outcome criterion4() {
    double worst = 0;
    std::vector<double> grid{0, 0.5, 1, 2, 5};
    for (int n : {3, 4, 5})
        for (double A : grid)
            for (double B : grid) {
                if (A == 0 && B == 0) continue;
                double c = special_V_closed(n, A, B);
                double q = special_V_quadrature(n, A, B, 1e-13);
                worst = std::max(worst, std::abs(c - q) / std::abs(c));
            }
    double spot = special_V(3, 0, 1);
    double spot_err = std::abs(spot - std::sqrt(M_PI) * std::exp(-2.0));
    return {worst <= 1e-9 && spot_err <= 1e-9,
            "max relative difference " + fmt(worst) + ", |V_3(0,1) - sqrt(pi)e^-2| = " + fmt(spot_err)};
}

struct LfunFixture {
    NewformData g;
    HermSpaceSpec s0;
    HermitianLattice L;
    RankinSeries V;
};

LfunFixture make_fixture(long M) {
    NewformData g = ingest_newform(std::string(ARITHLIFT_DATA_DIR) + "/11a.csv", 11, 2);
    HermSpaceSpec s0 = default_incoherent(g.field);
    HermitianLattice L = unit_lattice(g.field, 1);
    FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                   *FiniteQuadraticModule::from_lattice(L));
    InducedForm F = induce(g, orthogonal_sum(s0, L), mod, Rat(M));
    RankinSeries V = vector_series(F, L, Rat(M));
    return {g, s0, L, V};
}

Outcome criterion5() {
    LfunFixture fx = make_fixture(10000);
    double agree = 0;
    for (double s : {3.0, 4.0, 5.0}) agree = std::max(agree, std::abs(completed_L(fx.V, s) - direct_completed(fx.V, s).value));
    double at0 = std::abs(completed_L(fx.V, 0.0));
    double anti = 0;
    for (double s : {0.1, 0.5}) anti = std::max(anti, std::abs(completed_L(fx.V, s) + completed_L(fx.V, -s)));
    DerivativeValue dv = L_prime_at_0(fx.V);
    double halving = std::abs(dv.fd_h - dv.fd_h2) / std::abs(dv.fd_h2);
    double kernel_vs_fd = std::abs(dv.value - dv.fd_h2) / std::abs(dv.fd_h2);
    bool pass = agree <= 1e-8 && at0 <= 1e-6 && anti <= 1e-6 && halving <= 1e-6 && kernel_vs_fd <= 1e-6;
    return {pass, "(a) " + fmt(agree) + " (b) " + fmt(at0) + " (c) " + fmt(anti) + " (d) " + fmt(halving) +
                      ", L'(0) = " + std::to_string(dv.value)};
}

Outcome criterion6() {
    NewformData g = ingest_newform(std::string(ARITHLIFT_DATA_DIR) + "/11a.csv", 11, 2);
    HermSpaceSpec s0 = default_incoherent(g.field);
    HermitianLattice L = unit_lattice(g.field, 1);
    DecompositionCheck dc = scalar_vector_decomposition_check(g, L, s0, std::nullopt, 4.0, 10000);
    // Oracle for the product form at D = 11: eps_11 = -p^{1-n/2} a(11) = -1 and gamma_11 = +1 for this
    // incoherent space, so the Q = 11 summand carries the factor -1.
    bool factor = epsilon_Q(g, 11) == Scalar(-1) && gamma_Q(orthogonal_sum(s0, L), 11) == Phase::sign(1);
    bool pass = dc.residual <= dc.tail_bound && dc.product_form_checked && dc.product_form_equal && factor;
    return {pass, "residual " + fmt(dc.residual) + " <= tail bound " + fmt(dc.tail_bound) +
                      ", product form " + (dc.product_form_equal ? "equal" : "different")};
}

Outcome criterion7() {
    double worst_l1 = 0, worst_lp = 0;
    for (long d : {-3L, -7L, -11L, -23L, -43L}) {
        auto K = field_of(d);
        long D = -d;
        long h = oracle_class_number(d);
        double w = (d == -3) ? 6 : 2;
        double expect = 2 * M_PI * h / (w * std::sqrt(static_cast<double>(D)));
        worst_l1 = std::max(worst_l1, std::abs(static_cast<double>(K->dirichlet_L(1).real()) - expect));
        // Lerch: L'(chi, 0) = sum chi(a) log Gamma(a/D) - L(chi, 0) log D.
        long double lerch = 0, l0 = 0;
        for (long a = 1; a < D; ++a) {
            int c = K->chi(a);
            lerch += c * std::lgamma(static_cast<long double>(a) / D);
            l0 -= c * static_cast<long double>(a) / D;
        }
        lerch -= l0 * std::log(static_cast<long double>(D));
        long double h0 = 1e-3L;
        auto fd = [&](long double s) {
            return (K->dirichlet_L(s).real() - K->dirichlet_L(-s).real()) / (2 * s);
        };
        long double rich = (4 * fd(h0 / 2) - fd(h0)) / 3;
        double lib = static_cast<double>(K->dirichlet_L_prime_at_0());
        worst_lp = std::max({worst_lp, std::abs(lib - static_cast<double>(rich)), std::abs(lib - static_cast<double>(lerch))});
    }
    return {worst_l1 <= 1e-10 && worst_lp <= 1e-8,
            "L(chi,1) max error " + fmt(worst_l1) + ", L'(chi,0) Lerch vs differencing " + fmt(worst_lp)};
}

Outcome criterion8() {
    double worst = 0;
    int modules = 0;
    for (long d : {-7L, -11L}) {
        auto K = field_of(d);
        for (int rank : {1, 2}) {
            FQMPtr M = FiniteQuadraticModule::from_lattice(unit_lattice(K, rank));
            WeilGenerators w = weil_generators(*M);
            long n = static_cast<long>(M->size());
            Eigen::MatrixXcd ST = w.S * w.T;
            Eigen::MatrixXcd S2 = w.S * w.S;
            worst = std::max(worst, (ST * ST * ST - S2).cwiseAbs().maxCoeff());
            worst = std::max(worst, (w.S * w.S.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff());
            std::complex<double> sigma = S2(static_cast<long>(M->neg(0)), 0);
            worst = std::max(worst, std::abs(std::pow(sigma, 8) - 1.0));
            for (long mu = 0; mu < n; ++mu)
                for (long nu = 0; nu < n; ++nu) {
                    // Oracle for -mu: coordinates negated modulo the generator orders.
                    std::vector<long> c = M->coords(static_cast<size_t>(mu));
                    for (size_t i = 0; i < c.size(); ++i) c[i] = (M->orders()[i] - c[i]) % M->orders()[i];
                    std::complex<double> expect = (nu == static_cast<long>(M->index(c))) ? sigma : 0.0;
                    worst = std::max(worst, std::abs(S2(nu, mu) - expect));
                }
            ++modules;
        }
    }
    return {worst <= 1e-12, std::to_string(modules) + " modules, max deviation " + fmt(worst)};
}

Outcome criterion9() {
    long checks = 0, failures = 0;
    for (long d : {-7L, -11L}) {
        auto K = field_of(d);
        long D = K->D();
        Rat c0 = make_rat(3, 5);
        for (int n : {2, 3, 4}) {
            std::unique_ptr<HermitianLattice> E;
            FQMPtr ME;
            if (n > 2) {
                E = std::make_unique<HermitianLattice>(unit_lattice(K, n - 2));
                ME = FiniteQuadraticModule::from_lattice(*E);
            }
            FQMPtr H = FiniteQuadraticModule::hyperbolic(D);
            FQMPtr M = ME ? FiniteQuadraticModule::direct_sum(*ME, *H) : H;
            for (long R : divisors(D))
                for (long k = 1; k <= 3 * D; ++k) {
                    Rat m = make_rat(k, D);
                    if (n == 2 && !is_integer(m)) continue;
                    HarmonicFormData f;
                    f.n = n;
                    f.module = M;
                    f.c_plus.emplace(-m, phi_basis(M, m, R));
                    f.c_plus.emplace(Rat(0), SFunction::delta(M, 0) * Scalar(c0));
                    if (f.c_plus.at(-m).is_zero()) continue;
                    Scalar got = boundary_mult(f, E.get(), Rat(1), Rat(1));
                    // Simplified formulas: m N(r)/(n-2) #{lambda in r^{-1}E : <lambda,lambda> = m} for
                    // n > 2, and -2 sum c+(-m) sigma_1(m) with sigma_1(0) = -1/24 for n = 2.
                    Rat expect;
                    if (n > 2) {
                        expect = m * R * E->rep_number(m, R) / (n - 2);
                    } else {
                        long mm = to_long(m.get_num());
                        long s1 = 0;
                        for (long t = 1; t <= mm; ++t)
                            if (mm % t == 0) s1 += t;
                        expect = -2 * (c0 * make_rat(-1, 24) + Rat(R) * s1);
                    }
                    ++checks;
                    if (!got.is_exact() || got.rational() != expect) ++failures;
                }
        }
    }
    return {failures == 0 && checks > 0, std::to_string(checks) + " inputs, " + std::to_string(failures) + " failures"};
}

Outcome criterion10() {
    long checks = 0, failures = 0;
    double worst = 0;
    for (long d : {-3L, -7L, -11L, -15L, -23L, -35L}) {
        auto K = field_of(d);
        HermSpaceSpec s0 = default_incoherent(K);
        CycleConfig cfg = CycleConfig::make(s0, unit_lattice(K, 1));
        FQMPtr M = FiniteQuadraticModule::rank_one(s0);
        ArithmeticNumber ref = taut_pairing(cfg, SFunction::delta(M, 0));
        std::vector<SFunction> tests;
        for (long R : divisors(K->D())) tests.push_back(phi_r(M, R));
        SFunction mix = SFunction::delta(M, 0) * Scalar(make_rat(7, 3));
        for (size_t i = 1; i < M->size(); ++i) mix.values[i] = Scalar(make_rat(static_cast<long>(i % 5) - 2, 3));
        tests.push_back(mix);
        for (auto& phi : tests) {
            ++checks;
            if (taut_pairing(cfg, phi) != ref) ++failures;
        }
        // Oracle for L'(chi,0)/L(chi,0) by Lerch's formula with L(chi, 0) = -(1/D) sum a chi(a).
        long D = K->D();
        long double lp = 0, l0 = 0;
        for (long a = 1; a < D; ++a) {
            int c = K->chi(a);
            lp += c * std::lgamma(static_cast<long double>(a) / D);
            l0 -= c * static_cast<long double>(a) / D;
        }
        lp -= l0 * std::log(static_cast<long double>(D));
        double oracle = std::log(2 * M_PI) + 0.5 * std::log(static_cast<double>(D)) + static_cast<double>(lp / l0);
        double got = chowla_selberg_rhs(*K).evaluate(static_cast<double>(K->lchi()));
        worst = std::max(worst, std::abs(got - oracle));
    }
    return {failures == 0 && worst <= 1e-8,
            std::to_string(checks) + " test functions, " + std::to_string(failures) +
                " mismatches, Chowla-Selberg max error " + fmt(worst)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "local identity", 10, criterion1},
        {2, "proper intersection cross-check", 120, criterion2},
        {3, "Diff parity", 10, criterion3},
        {4, "special function", 30, criterion4},
        {5, "L-evaluator", 300, criterion5},
        {6, "scalar-vector decomposition", 120, criterion6},
        {7, "Dirichlet L oracles", 10, criterion7},
        {8, "Weil representation", 10, criterion8},
        {9, "boundary multiplicities", 10, criterion9},
        {10, "cotautological and Chowla-Selberg", 5, criterion10},
    };
    int failed = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.budget_s;
        bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << secs;
        std::cout << "criterion " << c.id << " [" << c.name << "]: " << (pass ? "PASS" : "FAIL") << " (" << o.detail
                  << "; " << t.str() << " s" << (in_time ? "" : ", over budget") << ")" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
