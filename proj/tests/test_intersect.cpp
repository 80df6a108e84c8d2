#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "arithlift/errors.hpp"
#include "arithlift/intersect.hpp"

using namespace arithlift;

namespace {

std::shared_ptr<const QuadField> field_of(long d) { return std::make_shared<QuadField>(d); }

CycleConfig config(long d) {
    auto K = field_of(d);
    return CycleConfig::make(default_incoherent(K), unit_lattice(K, 1));
}

}  // namespace

TEST_CASE("local lengths") {
    QuadField K(-7);
    CHECK(nu_p(K, Rat(3), 3) == 1);
    CHECK(nu_p(K, Rat(1), 7) == 1);
    CHECK(nu_p(K, Rat(27), 3) == 2);
    CHECK_THROWS_AS(nu_p(K, Rat(1), 2), SplitPrime);
}

TEST_CASE("geometric counts") {
    CycleConfig cfg = config(-7);
    CHECK(geometric_count(cfg, Rat(1), Rat(1), 1) == make_rat(1, 2));
    CHECK(geometric_count(cfg, Rat(15), Rat(1), 1) == 0);
    CHECK(geometric_count(cfg, Rat(1), Rat(3), 1) == 0);
}

TEST_CASE("arithmetic degrees") {
    CycleConfig cfg = config(-7);
    CHECK(deg_X_hat(cfg, Rat(1), Rat(1), 1) == ArithmeticNumber::log_prime(7, make_rat(1, 2)));
    // Inert prime: log N(p) = 2 log p.
    Rat count = geometric_count(cfg, Rat(3), Rat(1), 1);
    CHECK(count != 0);
    CHECK(deg_X_hat(cfg, Rat(3), Rat(1), 1) == ArithmeticNumber::log_prime(3, 2 * nu_p(*cfg.field, Rat(3), 3) * count));
    CHECK(deg_X_hat(cfg, Rat(15), Rat(2), 1).is_zero());
}

TEST_CASE("degree of the CM cycle") {
    CHECK(deg_cm_cycle(config(-7)) == make_rat(1, 8));
    CHECK(deg_cm_cycle(config(-23)) == make_rat(9, 8));
    auto K = field_of(-7);
    CycleConfig big = CycleConfig::make(default_incoherent(K), unit_lattice(K, 2));
    // Same field data, |Aut| = 8 instead of 2.
    CHECK(deg_cm_cycle(big) == make_rat(1, 8) * make_rat(2, 8));
}

TEST_CASE("proper intersection identity") {
    CycleConfig cfg = config(-7);
    IdentityCheck c = proper_identity_check(cfg, Rat(1), Rat(1), 1);
    CHECK(c.holds);
    CHECK(c.lhs == ArithmeticNumber::log_prime(7, make_rat(1, 2)));
    CHECK(c.rhs == c.lhs);
    IdentityCheck big_diff = proper_identity_check(cfg, Rat(15), Rat(1), 1);
    CHECK(big_diff.holds);
    CHECK(big_diff.lhs.is_zero());
    IdentityCheck gated = proper_identity_check(cfg, make_rat(1, 7), Rat(1), 1);
    CHECK(gated.holds);
    CHECK(gated.lhs.is_zero());
    for (long d : {-7L, -11L, -15L, -23L}) {
        CycleConfig cf = config(d);
        long D = cf.field->D();
        for (long k = 1; k <= 4 * D; ++k)
            for (long m2 = 0; m2 <= 4; ++m2)
                for (long R : {1L, D}) CHECK(proper_identity_check(cf, make_rat(k, D), Rat(m2), R).holds);
    }
}

TEST_CASE("local combinatorial identity") {
    auto K = field_of(-7);
    HermSpaceSpec s0 = incoherent_rank_one(K, {{7, -1}});
    LocalComboCheck c1 = local_combo_check(s0, 7, Rat(2), 1);
    CHECK(c1.holds);
    CHECK(c1.lhs == 2);
    LocalComboCheck c2 = local_combo_check(s0, 7, make_rat(1, 49), 7);
    CHECK(c2.holds);
    CHECK(c2.lhs == 0);
    LocalComboCheck c4 = local_combo_check(s0, 7, make_rat(3, 7), 7);
    CHECK(c4.holds);
    CHECK(c4.lhs == 2);
    for (long k = 1; k <= 7 * 49; ++k)
        for (long R : {1L, 7L}) {
            LocalComboCheck c = local_combo_check(s0, 7, make_rat(k, 49), R);
            if (c.applicable) CHECK(c.holds);
        }
}

TEST_CASE("tautological pairing") {
    auto K = field_of(-7);
    HermSpaceSpec s0 = default_incoherent(K);
    CycleConfig cfg = CycleConfig::make(s0, unit_lattice(K, 1));
    FQMPtr M = FiniteQuadraticModule::rank_one(s0);
    ArithmeticNumber base = ArithmeticNumber::euler_gamma() + ArithmeticNumber::log_prime(2, Rat(2)) +
                            ArithmeticNumber::log_pi() - ArithmeticNumber::log_of(Rat(7)) +
                            ArithmeticNumber::lchi(Rat(-2));
    ArithmeticNumber t0 = taut_pairing(cfg, SFunction::delta(M, 0));
    CHECK(t0 == base * -make_rat(1, 8));
    CHECK(taut_pairing(cfg, phi_r(M, 7)) == t0);
    CHECK(std::isfinite(t0.evaluate(static_cast<double>(K->lchi()))));
    SFunction degenerate = SFunction::delta(M, 1);
    CHECK_THROWS_AS(taut_pairing(cfg, degenerate), DegenerateTestFunction);
}

TEST_CASE("Chowla-Selberg right-hand side") {
    QuadField K(-7);
    ArithmeticNumber cs = chowla_selberg_rhs(K);
    ArithmeticNumber expect = ArithmeticNumber::log_prime(2) + ArithmeticNumber::log_pi() +
                              ArithmeticNumber::log_prime(7, make_rat(1, 2)) + ArithmeticNumber::lchi();
    CHECK(cs == expect);
    double lchi = static_cast<double>(K.lchi());
    double direct = std::log(2 * std::numbers::pi) + 0.5 * std::log(7.0) + lchi;
    CHECK(std::abs(cs.evaluate(lchi) - direct) < 1e-13);
}

TEST_CASE("main theorem right-hand side") {
    auto K = field_of(-7);
    HermSpaceSpec s0 = default_incoherent(K);
    HermitianLattice Lambda = unit_lattice(K, 1);
    CycleConfig cfg = CycleConfig::make(s0, Lambda);
    FQMPtr M = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                 *FiniteQuadraticModule::from_lattice(Lambda));
    HarmonicFormData f;
    f.n = 2;
    f.module = M;
    f.c_plus.emplace(Rat(0), SFunction::delta(M, 0) * Scalar(3));
    f.c_plus.emplace(Rat(-1), phi_basis(M, Rat(1), 1));
    MainTheoremValue v = main_theorem_rhs(cfg, f);
    CHECK(v.rhs == 0);
    double taut = taut_pairing(cfg, SFunction::delta(FiniteQuadraticModule::rank_one(s0), 0))
                      .evaluate(static_cast<double>(K->lchi()));
    CHECK(std::abs(v.taut_term - 3 * taut) < 1e-12);
    CHECK(std::abs(v.divisor - (v.rhs - v.taut_term)) < 1e-12);

    HarmonicFormData h = f;
    h.c_minus.emplace(Rat(-1), phi_basis(M, Rat(1), 1));
    CHECK_THROWS(main_theorem_rhs(cfg, h));
    MainTheoremValue w = main_theorem_rhs(cfg, h, 0.5);
    CHECK(std::abs(w.rhs + to_double(deg_cm_cycle(cfg)) * 0.5) < 1e-15);
}
