#include <doctest.h>

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "arithlift/errors.hpp"
#include "arithlift/lfunc.hpp"

using namespace arithlift;

namespace {

const std::string kData = std::string(ARITHLIFT_DATA_DIR) + "/11a.csv";

const NewformData& form_11a() {
    static const NewformData g = ingest_newform(kData, 11, 2);
    return g;
}

// The first Fourier coefficients of eta(q)^2 eta(q^11)^2.
std::vector<Scalar> head_11a(long M) {
    const NewformData& g = form_11a();
    return std::vector<Scalar>(g.a.begin(), g.a.begin() + M + 1);
}

struct Fixture {
    HermSpaceSpec s0;
    HermitianLattice L;
    FQMPtr module;
    InducedForm F;
};

Fixture make_fixture(long M) {
    const NewformData& g = form_11a();
    HermSpaceSpec s0 = default_incoherent(g.field);
    HermitianLattice L = unit_lattice(g.field, 1);
    FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                   *FiniteQuadraticModule::from_lattice(L));
    InducedForm F = induce(g, orthogonal_sum(s0, L), mod, Rat(M));
    return {s0, L, mod, F};
}

// Weight-2 coefficients with trivial nebentypus on (m, D) = 1, built multiplicatively from
// chosen a(p) with |a(p)| <= 2 and a(D) = -1.
std::vector<Scalar> synthetic_hecke(long D, long N) {
    std::vector<long> spf(N + 1, 0);
    for (long i = 2; i <= N; ++i)
        if (spf[i] == 0)
            for (long j = i; j <= N; j += i)
                if (spf[j] == 0) spf[j] = i;
    std::vector<long> a(N + 1, 0);
    a[1] = 1;
    for (long m = 2; m <= N; ++m) {
        long p = spf[m], pk = 1, k = 0, r = m;
        while (r % p == 0) {
            r /= p;
            pk *= p;
            ++k;
        }
        if (r > 1) {
            a[m] = a[pk] * a[r];
            continue;
        }
        long ap = (p == D) ? -1 : (p % 5) - 2;
        if (k == 1) a[m] = ap;
        else if (p == D) a[m] = ap * a[m / p];
        else a[m] = ap * a[m / p] - p * a[m / (p * p)];
    }
    return std::vector<Scalar>(a.begin(), a.end());
}

}  // namespace

TEST_CASE("newform ingestion and Hecke validation") {
    const NewformData& g = form_11a();
    CHECK(g.at(1) == Scalar(1));
    CHECK(g.at(2) == Scalar(-2));
    CHECK(g.at(3) == Scalar(-1));
    CHECK(g.at(4) == Scalar(2));
    CHECK(g.at(11) == Scalar(1));
    CHECK_THROWS_AS(g.at(g.size() + 1), MissingCoefficient);

    std::vector<Scalar> a = head_11a(12);
    CHECK_NOTHROW(make_newform(11, 2, a));
    std::vector<Scalar> bad6 = a;
    bad6[6] = bad6[6] + Scalar(1);
    CHECK_THROWS_AS(make_newform(11, 2, bad6), HeckeViolation);
    std::vector<Scalar> bad1 = a;
    bad1[1] = Scalar(2);
    CHECK_THROWS_AS(make_newform(11, 2, bad1), HeckeViolation);
    std::vector<Scalar> bad4 = a;
    bad4[4] = Scalar(3);
    CHECK_THROWS_AS(make_newform(11, 2, bad4), HeckeViolation);
}

TEST_CASE("malformed coefficient files") {
    std::string path = "arithlift_bad_coeffs.csv";
    {
        std::ofstream out(path);
        out << "m,a_m\n1,1\n3,-1\n";
    }
    CHECK_THROWS_AS(ingest_newform(path, 11, 2), ParseError);
    {
        std::ofstream out(path);
        out << "n,value\n1,1\n";
    }
    CHECK_THROWS_AS(ingest_newform(path, 11, 2), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("Atkin-Lehner signs and twists") {
    const NewformData& g = form_11a();
    CHECK(epsilon_Q(g, 11) == Scalar(-1));
    CHECK(epsilon_Q(g, 1) == Scalar(1));
    std::vector<Scalar> t = g_twist(g, 11, 200);
    for (long m = 1; m <= 200; ++m) CHECK(t[m] == g.at(m));
    CHECK_THROWS_AS(g_twist(g, 11, g.size() + 1), MissingCoefficient);
}

TEST_CASE("induced vector-valued form") {
    Fixture fx = make_fixture(40);
    const NewformData& g = form_11a();
    CHECK(fx.F.at(Rat(1), 0) == Scalar(make_rat(10, 11)));
    CHECK(fx.F.at(Rat(2), 0) == Scalar(make_rat(-20, 11)));
    // Regression table at mu = 0: a(m, 0) = a(m) - a(11 m) / 11.
    for (long m = 1; m <= 20; ++m)
        CHECK(fx.F.at(Rat(m), 0) == g.at(m) - g.at(11 * m) * Scalar(make_rat(1, 11)));
    const FiniteQuadraticModule& M = *fx.module;
    for (long k = 1; k <= 11 * 20; ++k) {
        Rat m = make_rat(k, 11);
        for (size_t mu = 0; mu < M.size(); ++mu) {
            CHECK(fx.F.at(m, mu) == fx.F.at(m, M.neg(mu)));
            Rat diff = M.Q(mu) - m;
            if (diff.get_den() != 1) CHECK(fx.F.at(m, mu).is_zero());
        }
    }
    // Coefficients are constant on isometry orbits.
    for (const auto& orbit : isometry_orbits(M))
        for (long k = 1; k <= 11 * 5; ++k)
            for (size_t mu : orbit) CHECK(fx.F.at(make_rat(k, 11), mu) == fx.F.at(make_rat(k, 11), orbit.front()));
    // Elements with Q_mu = D and m D not integral only see the top divisor.
    for (size_t mu = 0; mu < M.size(); ++mu)
        if (M.Q_mu(mu) == 11 && M.Q(mu) != 0) {
            Rat m = M.Q(mu) + 1;
            CHECK(fx.F.at(m, mu) == g.at(to_long(Rat(m * 11).get_num())) * fx.F.weight(11));
            break;
        }
}

TEST_CASE("direct Dirichlet series") {
    Fixture fx = make_fixture(10000);
    RankinSeries V = vector_series(fx.F, fx.L, Rat(10000));
    DirectValue v8 = direct_L(V, 8.0);
    CHECK(v8.tail_bound < 1e-12);
    DirectValue v8i = direct_L(V, cplx(8.0, 1.5));
    DirectValue v8c = direct_L(V, cplx(8.0, -1.5));
    CHECK(std::abs(v8i.value - std::conj(v8c.value)) < 1e-15 * std::abs(v8i.value) + 1e-300);
    // The tail bound shrinks with more terms.
    RankinSeries small = vector_series(fx.F, fx.L, Rat(2000));
    CHECK(direct_L(small, 8.0).tail_bound > v8.tail_bound);
    CHECK(std::abs(direct_L(small, 8.0).value - v8.value) <= direct_L(small, 8.0).tail_bound + v8.tail_bound);
    CHECK_THROWS_AS(direct_L(V, 1.0), OutsideConvergence);

    RankinSeries zero = V * cplx(0, 0);
    CHECK(std::abs(direct_L(zero, 8.0).value) == 0);
    CHECK(std::abs(completed_L(zero, 0.3)) == 0);
    CHECK(L_prime_at_0(zero).value == 0);
}

TEST_CASE("analytic continuation") {
    Fixture fx = make_fixture(10000);
    RankinSeries V = vector_series(fx.F, fx.L, Rat(10000));
    CHECK(std::abs(completed_L(V, 4.0) - direct_completed(V, 4.0).value) < 1e-8);
    CHECK(std::abs(completed_L(V, 0.0)) < 1e-6);
    for (double s : {0.1, 0.5}) CHECK(std::abs(completed_L(V, s) + completed_L(V, -s)) < 1e-6);
    DerivativeValue dv = L_prime_at_0(V);
    CHECK_FALSE(dv.pole_suspected());
    CHECK(std::abs(dv.fd_h - dv.fd_h2) < 1e-6 * std::abs(dv.fd_h2));
    CHECK(std::abs(dv.value - dv.fd_h2) < 1e-6 * std::abs(dv.value));
    // Scaling the conjugated first slot by c scales the derivative by c.
    DerivativeValue scaled = L_prime_at_0(V * cplx(-3, 0));
    CHECK(std::abs(scaled.value + 3 * dv.value) < 1e-10 * std::abs(dv.value));
    // Too few coefficients for the requested accuracy.
    RankinSeries tiny = vector_series(fx.F, fx.L, Rat(20));
    CHECK_THROWS_AS(completed_L(tiny, 0.3), PrecisionUnachievable);
}

TEST_CASE("scalar and vector Rankin-Selberg series agree") {
    const NewformData& g = form_11a();
    HermSpaceSpec s0 = default_incoherent(g.field);
    HermitianLattice L = unit_lattice(g.field, 1);
    DecompositionCheck dc = scalar_vector_decomposition_check(g, L, s0, std::nullopt, 4.0, 10000);
    CHECK(dc.passes());
    CHECK(dc.product_form_checked);
    CHECK(dc.product_form_equal);

    MainTheorem2Value v = theorem_maintheo2_rhs(g, L, s0, std::nullopt, 10000);
    CHECK(std::abs(v.scalar_route - v.vector_route) < 1e-5 * std::abs(v.vector_route));
    CHECK(v.degree == doctest::Approx(1.0 / 8));
}

TEST_CASE("class group character twist") {
    auto K = std::make_shared<QuadField>(-23);
    NewformData g = make_newform(23, 2, synthetic_hecke(23, 60000));
    HermSpaceSpec s0 = default_incoherent(K);
    HermitianLattice L = unit_lattice(K, 1);
    ClassCharacter eta;
    eta.values.resize(3);
    int cls = 0;
    for (int k = 0; k < 3; ++k) {
        eta.values[cls] = Phase(make_rat(k, 3));
        cls = K->class_mul(cls, 1);
    }
    CHECK_NOTHROW(eta.validate(*K));
    ClassCharacter bad{{Phase(), Phase(make_rat(1, 3)), Phase(make_rat(1, 3))}};
    CHECK_THROWS_AS(bad.validate(*K), DomainMismatch);
    for (const auto& chi : {std::optional<ClassCharacter>(), std::optional<ClassCharacter>(eta)}) {
        DecompositionCheck dc = scalar_vector_decomposition_check(g, L, s0, chi, 4.5, 1500);
        CHECK(dc.passes());
        CHECK(dc.residual <= dc.tail_bound);
    }
}
