#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "arithlift/errors.hpp"
#include "arithlift/qexpand.hpp"
#include "arithlift/special.hpp"

using namespace arithlift;

namespace {

std::shared_ptr<const QuadField> field_of(long d) { return std::make_shared<QuadField>(d); }

Scalar evaluate(const std::vector<Scalar>& coeff, const SFunction& phi) {
    Scalar s(0);
    for (size_t i = 0; i < coeff.size(); ++i) s += coeff[i] * phi(i);
    return s;
}

QExpansion vector_series(FQMPtr M, const Rat& weight, const Rat& m, const SFunction& c, const Rat& prec) {
    QExpansion f(weight, CoeffSpace::Vector, M, prec);
    for (size_t i = 0; i < c.values.size(); ++i)
        if (!c(i).is_zero()) f.add_to(m, i, c(i));
    return f;
}

}  // namespace

TEST_CASE("vector-valued theta series") {
    auto K = field_of(-7);
    HermitianLattice L = unit_lattice(K, 1);
    auto M = FiniteQuadraticModule::from_lattice(L);
    QExpansion th = theta_series(L, M, Rat(6));
    CHECK(th.weight() == 1);
    CHECK(evaluate(th.at(Rat(0)), SFunction::delta(M, 0)) == Scalar(1));
    CHECK(evaluate(th.at(Rat(2)), SFunction::delta(M, 0)) == Scalar(4));
    // The constant function counts all of d^{-1} L.
    SFunction all = SFunction::constant(M, Scalar(1));
    for (long k = 0; k < 42; ++k) {
        Rat m = make_rat(k, 7);
        CHECK(evaluate(th.at(m), all) == Scalar(L.rep_number(m, 7)));
    }
    CHECK_THROWS_AS(th.at(Rat(6)), InsufficientPrecision);
}

TEST_CASE("scalar theta series") {
    auto K = field_of(-7);
    HermitianLattice L = unit_lattice(K, 1);
    QExpansion th = scalar_theta(L, Rat(50));
    CHECK(th.scalar_at(Rat(0)) == Scalar(1));
    CHECK(th.scalar_at(Rat(1)) == Scalar(2));
    for (long m = 0; m < 50; ++m) {
        Scalar c = th.scalar_at(Rat(m));
        REQUIRE(c.is_exact());
        CHECK(c.rational() >= 0);
        CHECK(c.rational().get_den() == 1);
        CHECK(c == Scalar(L.rep_number(Rat(m))));
    }
}

TEST_CASE("class-character theta series") {
    auto K7 = field_of(-7);
    HermitianLattice L7 = unit_lattice(K7, 1);
    QExpansion single = eta_theta(L7, {Phase()}, Rat(20));
    QExpansion expect = scalar_theta(L7, Rat(20)) * Scalar(make_rat(1, 2));
    for (long m = 0; m < 20; ++m) CHECK(single.scalar_at(Rat(m)) == expect.scalar_at(Rat(m)));

    auto K = field_of(-23);
    HermitianLattice L = unit_lattice(K, 1);
    QExpansion triv = eta_theta(L, {Phase(), Phase(), Phase()}, Rat(10));
    CHECK(triv.scalar_at(Rat(0)) == Scalar(make_rat(3, 2)));
    // A cubic character: the constant term vanishes by orthogonality.
    std::vector<Phase> cubic;
    for (size_t i = 0; i < K->ideal_class_reps().size(); ++i) cubic.push_back(Phase(make_rat(static_cast<long>(i), 3)));
    QExpansion tw = eta_theta(L, cubic, Rat(10));
    CHECK(std::abs(tw.scalar_at(Rat(0)).value()) < 1e-14);
}

TEST_CASE("E2 and derivatives") {
    QExpansion E = e2(Rat(10));
    CHECK(E.scalar_at(Rat(0)) == Scalar(1));
    CHECK(E.scalar_at(Rat(1)) == Scalar(-24));
    CHECK(E.scalar_at(Rat(6)) == Scalar(-288));

    QExpansion c = QExpansion::scalar(Rat(0), Rat(10));
    c.add_to(Rat(0), 0, Scalar(5));
    CHECK(theta_operator(c).is_zero());
    CHECK(serre_derivative(c, Rat(0)).is_zero());

    auto K = field_of(-7);
    QExpansion th = scalar_theta(unit_lattice(K, 1), Rat(10));
    QExpansion sd = serre_derivative(th, Rat(1));
    // 1 R(1) - (1/12)(R(1) + R(0) (-24)).
    Rat r1 = 2, r0 = 1;
    CHECK(sd.scalar_at(Rat(1)) == Scalar(Rat(r1 - make_rat(1, 12) * (r1 + r0 * -24))));
    CHECK(sd.weight() == 3);
}

TEST_CASE("pairings and constant terms") {
    auto K = field_of(-7);
    HermitianLattice L = unit_lattice(K, 1);
    auto M = FiniteQuadraticModule::from_lattice(L);
    QExpansion th = theta_series(L, M, Rat(5));
    QExpansion f = vector_series(M, Rat(-1), Rat(0), SFunction::delta(M, 0), Rat(5));
    CHECK(constant_term(pairing(f, th)) == Scalar(1));

    // Bilinearity on small inputs.
    SFunction a = SFunction::delta(M, 1) * Scalar(3);
    a += SFunction::delta(M, 6) * Scalar(3);
    SFunction b = phi_basis(M, make_rat(2, 7), 7) * Scalar(make_rat(-1, 2));
    QExpansion fa = vector_series(M, Rat(-1), make_rat(-1, 7), a, Rat(5));
    QExpansion fb = vector_series(M, Rat(-1), make_rat(-2, 7), b, Rat(5));
    QExpansion sum = fa;
    sum += fb;
    QExpansion lhs = pairing(sum, th);
    QExpansion rhs = pairing(fa, th);
    rhs += pairing(fb, th);
    for (long k = -2; k < 20; ++k) CHECK(lhs.scalar_at(make_rat(k, 7)) == rhs.scalar_at(make_rat(k, 7)));
}

TEST_CASE("regularized pairing") {
    auto K = field_of(-7);
    HermitianLattice L = unit_lattice(K, 1);
    auto M = FiniteQuadraticModule::from_lattice(L);

    // k = 0: (pi/3) {c, g} for constants.
    HarmonicFormData f0;
    f0.n = 2;
    f0.module = M;
    f0.c_plus.emplace(Rat(0), SFunction::delta(M, 0) * Scalar(4));
    QExpansion g0(Rat(0), CoeffSpace::Dual, M, Rat(3));
    g0.add_to(Rat(0), 0, Scalar(make_rat(3, 2)));
    CHECK(reg_pairing_pi(f0, g0, 0) == Scalar(Rat(2)));

    // k = 1: (4 pi / k) {phi, b(1)} for f+ = phi q^{-1}.
    HarmonicFormData f1;
    f1.n = 3;
    f1.module = M;
    f1.c_plus.emplace(Rat(-1), SFunction::delta(M, 0));
    QExpansion th = theta_series(L, M, Rat(4));
    CHECK(reg_pairing_pi(f1, th, 1) == Scalar(4 * L.rep_number(Rat(1))));

    // No principal part against a cusp form.
    HarmonicFormData f2;
    f2.n = 3;
    f2.module = M;
    f2.c_plus.emplace(Rat(1), SFunction::delta(M, 0));
    QExpansion cusp(Rat(1), CoeffSpace::Dual, M, Rat(4));
    cusp.add_to(Rat(1), 0, Scalar(7));
    CHECK(reg_pairing_pi(f2, cusp, 1).is_zero());
}

TEST_CASE("boundary multiplicities") {
    auto K = field_of(-7);
    FQMPtr H = FiniteQuadraticModule::hyperbolic(7);
    HarmonicFormData f;
    f.n = 2;
    f.module = H;
    f.c_plus.emplace(Rat(0), SFunction::delta(H, 0) * Scalar(make_rat(3, 5)));
    CHECK(boundary_mult(f, nullptr, Rat(1), Rat(1)) == Scalar(make_rat(3, 5) * make_rat(1, 12)));
    HarmonicFormData zero;
    zero.n = 2;
    zero.module = H;
    CHECK(boundary_mult(zero, nullptr, Rat(1), Rat(1)).is_zero());

    HermitianLattice E = unit_lattice(K, 1);
    FQMPtr ME = FiniteQuadraticModule::from_lattice(E);
    FQMPtr M = FiniteQuadraticModule::direct_sum(*ME, *H);
    HarmonicFormData g;
    g.n = 3;
    g.module = M;
    g.c_plus.emplace(Rat(-2), phi_basis(M, Rat(2), 1));
    CHECK(boundary_mult(g, &E, Rat(1), Rat(1)) == Scalar(Rat(2 * E.rep_number(Rat(2)))));
}

TEST_CASE("xi operator against numerical differentiation") {
    using std::numbers::pi;
    using C = std::complex<double>;
    auto K = field_of(-7);
    auto M = FiniteQuadraticModule::from_lattice(unit_lattice(K, 1));
    for (int n : {2, 3, 4}) {
        int k = 2 - n;
        C w(0.3, 0.7);
        HarmonicFormData f;
        f.n = n;
        f.module = M;
        f.c_minus.emplace(Rat(-1), SFunction::delta(M, 0) * Scalar(w));
        f.validate();
        QExpansion xi = xi_image(f, Rat(3));
        C got = xi.at(Rat(1))[0].value();

        // xi_k f = 2 i v^k conj(d f / d taubar) for f = w Gamma(1 - k, 4 pi v) q^{-1}, at one point.
        auto fm = [&](double x, double y) {
            return w * boost::math::tgamma(1.0 - k, 4 * pi * y) * std::exp(C(0, -2 * pi * x)) * std::exp(2 * pi * y);
        };
        double x = 0.17, y = 0.9, h = 1e-5;
        C dx = (fm(x + h, y) - fm(x - h, y)) / (2 * h);
        C dy = (fm(x, y + h) - fm(x, y - h)) / (2 * h);
        C xi_val = C(0, 2) * std::pow(y, k) * std::conj(0.5 * (dx + C(0, 1) * dy));
        C oracle = xi_val / std::exp(C(0, 2 * pi) * C(x, y));
        CHECK(std::abs(got - oracle) < 1e-6 * std::abs(oracle));

        // Conjugate linearity.
        QExpansion scaled = xi_image(f.scaled(Scalar(C(0, 2))), Rat(3));
        CHECK(std::abs(scaled.at(Rat(1))[0].value() - std::conj(C(0, 2)) * got) < 1e-9 * std::abs(got));
    }
    HarmonicFormData hol;
    hol.n = 2;
    hol.module = M;
    hol.c_plus.emplace(Rat(-1), SFunction::delta(M, 0));
    CHECK(xi_image(hol, Rat(3)).is_zero());
}

TEST_CASE("harmonic form validation") {
    auto K = field_of(-7);
    auto M = FiniteQuadraticModule::from_lattice(unit_lattice(K, 1));
    HarmonicFormData f;
    f.n = 2;
    f.module = M;
    // Q(mu) must equal -m mod 1 on the support.
    f.c_plus.emplace(make_rat(-1, 7), SFunction::delta(M, 0));
    CHECK_THROWS(f.validate());
}

TEST_CASE("special function V_n") {
    using std::numbers::pi;
    for (int n = 2; n <= 5; ++n)
        for (double B : {0.1, 0.5, 1.0, 2.0}) {
            double fact = std::tgamma(n - 1);
            double expect = fact * std::sqrt(pi) * std::exp(-2 * B);
            CHECK(std::abs(special_V(n, 0, B) - expect) < 1e-12 * expect);
            CHECK(std::abs(special_V_quadrature(n, 0, B) - expect) < 1e-10 * expect);
        }
    CHECK(std::abs(special_V(3, 0, 1) - std::sqrt(pi) * std::exp(-2.0)) < 1e-14);
    double prev = special_V(3, 0, 0.05);
    for (double B = 0.1; B < 4; B += 0.1) {
        double v = special_V(3, 0, B);
        CHECK(v < prev);
        prev = v;
    }
    for (int n = 2; n <= 4; ++n)
        for (double A : {0.3, 1.0})
            for (double B : {0.0, 0.7})
                CHECK(std::abs(special_V_closed(n, A, B) - special_V_quadrature(n, A, B)) <
                      1e-10 * special_V_closed(n, A, B));
}

TEST_CASE("Green function Fourier expansion") {
    GreenFourierInput zero;
    zero.n = 3;
    GreenValue v = green_fourier_value(zero);
    CHECK(v.value == 0);
    GreenFourierInput in;
    in.n = 3;
    in.c00 = Scalar(2);
    in.ell_z = 1.3;
    GreenTerm t;
    t.c_plus = Scalar(1);
    t.c_minus = Scalar(0);
    t.phase = 0.25;
    t.lambda_sq = 1;
    t.proj = 0.4;
    in.terms.push_back(t);
    GreenValue w = green_fourier_value(in);
    CHECK(w.v_sum == 0);
    CHECK(std::isfinite(w.value));
    // A point on the divisor is rejected.
    in.terms[0].phase = 0;
    in.terms[0].proj = 0;
    CHECK_THROWS_AS(green_fourier_value(in), OnSingularLocus);
}
