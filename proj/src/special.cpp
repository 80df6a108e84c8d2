#include "arithlift/special.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// B_{2k} for k = 1..15.
constexpr std::array<long double, 15> kBernoulli = {
    1.0L / 6,          -1.0L / 30,         1.0L / 42,           -1.0L / 30,
    5.0L / 66,         -691.0L / 2730,     7.0L / 6,            -3617.0L / 510,
    43867.0L / 798,    -174611.0L / 330,   854513.0L / 138,     -236364091.0L / 2730,
    8553103.0L / 6,    -23749461029.0L / 870, 8615841276005.0L / 14322};

}  // namespace

cld lgamma_complex(cld z) {
    if (z.real() < 0.5L) {
        // Reflection formula.
        cld s = std::sin(kPi * z);
        if (std::abs(s) == 0.0L) throw DomainError("lgamma at a pole");
        return std::log(kPi) - std::log(s) - lgamma_complex(1.0L - z);
    }
    cld shift = 0;
    while (z.real() < 16.0L) {
        shift += std::log(z);
        z += 1.0L;
    }
    cld zinv = 1.0L / z;
    cld zinv2 = zinv * zinv;
    cld series = 0;
    cld pw = zinv;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulli[k - 1] / static_cast<long double>((2 * k) * (2 * k - 1)) * pw;
        pw *= zinv2;
    }
    return (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2 * kPi) + series - shift;
}

cld gamma_complex(cld z) { return std::exp(lgamma_complex(z)); }

cld hurwitz_zeta_minus_pole(cld s, long double a, long double tol) {
    if (!(a > 0 && a <= 1)) throw DomainError("hurwitz_zeta needs 0 < a <= 1");
    if (tol < 1e-18L) throw PrecisionUnachievable("tolerance below long double resolution");
    long N = 12 + static_cast<long>(std::abs(s));
    for (int attempt = 0; attempt < 8; ++attempt, N *= 2) {
        cld sum = 0;
        for (long k = 0; k < N; ++k) sum += std::pow(static_cast<long double>(k) + a, -s);
        long double x = static_cast<long double>(N) + a;
        long double lx = std::log(x);
        // ((x^{1-s}) - 1)/(s - 1), evaluated stably near s = 1.
        cld u = (1.0L - s) * lx;
        cld em1;
        if (std::abs(u) < 1e-3L) {
            em1 = u * (1.0L + u / 2.0L + u * u / 6.0L + u * u * u / 24.0L + u * u * u * u / 120.0L);
        } else {
            em1 = std::exp(u) - 1.0L;
        }
        cld pole_part = (std::abs(s - 1.0L) == 0.0L) ? cld(-lx) : em1 / (s - 1.0L);
        sum += pole_part;
        cld xs = std::exp(-s * lx);
        sum += 0.5L * xs;
        // Euler-Maclaurin tail: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}.
        cld poch = s;
        cld xpow = xs / x;
        long double fact = 2.0L;
        cld last = 0;
        for (int j = 1; j <= 15; ++j) {
            cld term = kBernoulli[j - 1] / fact * poch * xpow;
            sum += term;
            last = term;
            poch *= (s + static_cast<long double>(2 * j - 1)) * (s + static_cast<long double>(2 * j));
            xpow /= x * x;
            fact *= static_cast<long double>((2 * j + 1) * (2 * j + 2));
        }
        if (std::abs(last) <= tol * std::max(1.0L, std::abs(sum))) return sum;
    }
    throw PrecisionUnachievable("Euler-Maclaurin did not converge");
}

cld hurwitz_zeta(cld s, long double a, long double tol) {
    if (std::abs(s - 1.0L) == 0.0L) throw DomainError("hurwitz_zeta pole at s = 1");
    return hurwitz_zeta_minus_pole(s, a, tol) + 1.0L / (s - 1.0L);
}

double special_V_closed(int n, double A, double B) {
    if (n < 2) throw DomainError("V_n needs n >= 2");
    if (A < 0 || B < 0) throw DomainError("V_n needs A, B >= 0");
    double r2 = A * A + B * B;
    if (r2 == 0) throw DomainError("closed form of V_n undefined at (0,0)");
    double x = 2.0 * std::sqrt(r2);
    double sum = 0;
    double a2r = 1;
    double rfact = 1;
    for (int r = 0; r <= n - 2; ++r) {
        if (r > 0) {
            a2r *= A * A;
            rfact *= r;
        }
        double nu = r - 0.5;
        double k = boost::math::cyl_bessel_k(std::fabs(nu), x);
        sum += a2r / rfact * std::pow(r2, 0.25 - 0.5 * r) * k;
    }
    return 2.0 * static_cast<double>(factorial(n - 2)) * sum;
}

double special_V_quadrature(int n, double A, double B, double rel_tol) {
    if (n < 2) throw DomainError("V_n needs n >= 2");
    if (A < 0 || B < 0) throw DomainError("V_n needs A, B >= 0");
    if (A == 0 && B == 0) throw DomainError("V_n integral diverges at (0,0)");
    const double a = n - 1;
    const double gam = std::tgamma(a);
    auto integrand = [&](double t) -> double {
        double y = std::exp(t);
        double ay = A * A * y;
        double g = (ay == 0) ? gam : boost::math::tgamma(a, ay);
        double expo = -B * B * y - 1.0 / y - 0.5 * t;
        if (expo < -745) return 0.0;
        return g * std::exp(expo);
    };
    // The integrand is below e^-700 outside [t_lo, t_hi].
    double scale = std::max(A * A, B * B);
    double t_lo = -std::log(700.0);
    double t_hi = std::log(800.0 / scale) + 2.0;
    if (t_hi <= t_lo) t_hi = t_lo + 1.0;
    double err = 0;
    double val = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, t_lo, t_hi, 25,
                                                                               rel_tol, &err);
    return val;
}

double special_V(int n, double A, double B, double rel_tol) {
    double c = special_V_closed(n, A, B);
    double q = special_V_quadrature(n, A, B, rel_tol * 1e-3);
    if (std::fabs(c - q) > rel_tol * std::fabs(c))
        throw PrecisionUnachievable("V_n quadrature and closed form disagree");
    return c;
}

}  // namespace arithlift
