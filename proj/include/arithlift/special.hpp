#pragma once

#include <complex>

namespace arithlift {

using cld = std::complex<long double>;
using cd = std::complex<double>;

// log Gamma(z) for complex z away from the poles (branch chosen so exp() is Gamma).
cld lgamma_complex(cld z);
cld gamma_complex(cld z);

// zeta(s, a) - 1/(s - 1) for 0 < a <= 1 by Euler-Maclaurin summation. The pole part is
// removed so that character-weighted sums stay finite at s = 1. Throws
// PrecisionUnachievable when the requested tolerance cannot be met in long double.
cld hurwitz_zeta_minus_pole(cld s, long double a, long double tol);
cld hurwitz_zeta(cld s, long double a, long double tol);

// The function V_n(A,B) appearing in Fourier expansions of Green functions.
// Closed form via Bessel functions of half-integral order.
double special_V_closed(int n, double A, double B);
// Defining integral evaluated by adaptive Gauss-Kronrod after y = e^t.
double special_V_quadrature(int n, double A, double B, double rel_tol = 1e-12);
// Returns the closed form after checking both paths agree to rel_tol.
double special_V(int n, double A, double B, double rel_tol = 1e-9);

}  // namespace arithlift
