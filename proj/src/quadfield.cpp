#include "arithlift/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

namespace {

Int lcm_int(const Int& a, const Int& b) {
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Hermite normal form {(p,0), (q,r)} of the Z-span of rational vectors in Q^2.
Ideal hnf2(const std::vector<std::pair<Rat, Rat>>& gens) {
    Int den = 1;
    for (auto& [a, b] : gens) den = lcm_int(lcm_int(den, a.get_den()), b.get_den());
    Int p = 0, q = 0, r = 0;
    bool have2 = false;
    for (auto& [ra, rb] : gens) {
        Rat sa = ra * den, sb = rb * den;
        Int wa = sa.get_num(), wb = sb.get_num();
        if (wb == 0) {
            p = gcd_int(p, wa);
            continue;
        }
        if (!have2) {
            q = wa;
            r = wb;
            have2 = true;
            continue;
        }
        Int g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), r.get_mpz_t(), wb.get_mpz_t());
        Int nq = u * q + v * wa;
        Int nr = g;
        Int ka = -(wb / g) * q + (r / g) * wa;
        p = gcd_int(p, ka);
        q = nq;
        r = nr;
    }
    if (!have2 || p == 0) throw DomainError("generators do not span a lattice of full rank");
    if (r < 0) {
        r = -r;
        q = -q;
    }
    if (p < 0) p = -p;
    Int qm = q % p;
    if (qm < 0) qm += p;
    Ideal out;
    out.p = Rat(p, den);
    out.q = Rat(qm, den);
    out.r = Rat(r, den);
    out.p.canonicalize();
    out.q.canonicalize();
    out.r.canonicalize();
    return out;
}

}  // namespace

BinaryForm reduce_form(BinaryForm f) {
    auto normalize = [](BinaryForm& g) {
        // Translate b into (-a, a].
        long a2 = 2 * g.a;
        long num = g.a - g.b;
        long k = num / a2;
        if (num % a2 != 0 && num < 0) --k;
        // b' = b + 2ka, c' = a k^2 + b k + c
        long nb = g.b + 2 * k * g.a;
        long nc = g.a * k * k + g.b * k + g.c;
        g.b = nb;
        g.c = nc;
    };
    normalize(f);
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize(f);
    }
    return f;
}

QuadField::QuadField(long d) : d_(d) {
    if (d >= 0) throw NonFundamental("discriminant must be negative");
    if (d % 2 == 0) throw EvenDiscriminant("even discriminants are not supported");
    if (mod(d, 4) != 1) throw NonFundamental("odd discriminant must be 1 mod 4");
    if (!is_squarefree(-d)) throw NonFundamental("discriminant is not squarefree");
    primes_ = prime_divisors(-d);
    w_ = (d == -3) ? 6 : 2;
    // Units: count solutions of N(a + b omega) = 1 as a check on w.
    int units = static_cast<int>(this->units().size());
    if (units != w_) throw Error("Internal", "unit count mismatch", ErrorClass::Internal);

    long D = -d;
    std::vector<BinaryForm> forms;
    for (long a = 1; 3 * a * a <= D; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (mod(b, 2) != 1) continue;
            long num = b * b + D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (gcd_l(gcd_l(a, std::labs(b)), c) != 1) continue;
            forms.push_back({a, b, c});
        }
    }
    std::sort(forms.begin(), forms.end(), [](const BinaryForm& x, const BinaryForm& y) {
        if (x.a != y.a) return x.a < y.a;
        if (std::labs(x.b) != std::labs(y.b)) return std::labs(x.b) < std::labs(y.b);
        return x.b > y.b;
    });
    for (auto& f : forms) {
        IdealClassRep rep;
        // [a, B + omega] with 2B + d = b.
        rep.ideal = ideal_from_generators({QuadElem(Rat(f.a)), QuadElem(make_rat(f.b - d_, 2), 1)});
        rep.form_a = f.a;
        rep.form_b = f.b;
        rep.form_c = f.c;
        reps_.push_back(rep);
    }
}

QuadElem QuadField::add(const QuadElem& x, const QuadElem& y) const { return {x.a + y.a, x.b + y.b}; }
QuadElem QuadField::sub(const QuadElem& x, const QuadElem& y) const { return {x.a - y.a, x.b - y.b}; }
QuadElem QuadField::scale(const QuadElem& x, const Rat& c) const { return {x.a * c, x.b * c}; }

QuadElem QuadField::mul(const QuadElem& x, const QuadElem& y) const {
    // omega^2 = d omega - (d^2 - d)/4
    Rat w2c = make_rat(-(d_ * d_ - d_) / 4);
    Rat bb = x.b * y.b;
    return {x.a * y.a + bb * w2c, x.a * y.b + x.b * y.a + bb * d_};
}

QuadElem QuadField::conj(const QuadElem& x) const { return {x.a + x.b * d_, -x.b}; }

Rat QuadField::norm(const QuadElem& x) const {
    return x.a * x.a + x.a * x.b * d_ + x.b * x.b * make_rat((d_ * d_ - d_) / 4);
}

Rat QuadField::trace(const QuadElem& x) const { return 2 * x.a + x.b * d_; }

QuadElem QuadField::inverse(const QuadElem& x) const {
    Rat n = norm(x);
    if (n == 0) throw DomainError("inverse of zero");
    return scale(conj(x), 1 / n);
}

std::complex<long double> QuadField::embed(const QuadElem& x) const {
    long double sq = std::sqrt(static_cast<long double>(D()));
    long double re = to_long_double(x.a) + to_long_double(x.b) * d_ / 2.0L;
    long double im = to_long_double(x.b) * sq / 2.0L;
    return {re, im};
}

bool QuadField::is_integral(const QuadElem& x) const { return is_integer(x.a) && is_integer(x.b); }

std::vector<QuadElem> QuadField::units() const {
    // N(a + b omega) = (2a + b d)^2/4 + b^2 D/4 = 1 forces |b| <= 2/sqrt(D).
    std::vector<QuadElem> out;
    long D = -d_;
    for (long b = -2; b <= 2; ++b) {
        if (b * b * D > 4) continue;
        for (long a = -4; a <= 4; ++a) {
            QuadElem u{Rat(a), Rat(b)};
            if (norm(u) == 1) out.push_back(u);
        }
    }
    return out;
}

int QuadField::chi(long m) const { return kronecker(d_, m); }

int QuadField::chi_local(long p, const Rat& x) const {
    if (x == 0) throw DomainError("chi_local(0)");
    long a = valuation(x, p);
    Rat u = x / rat_pow(Rat(p), a);
    long D = -d_;
    if (D % p == 0) {
        // Odd ramified p: (p^a u, p d')_p.
        long dp = d_ / p;
        long un = to_long(Int(u.get_num() % p));
        long ud = to_long(Int(u.get_den() % p));
        int uleg = legendre(un, p) * legendre(ud, p);
        int sign = ((a % 2 != 0) && ((p - 1) / 2) % 2 != 0) ? -1 : 1;
        int dleg = legendre(dp, p);
        int dpow = (a % 2 != 0) ? dleg : 1;
        return sign * dpow * uleg;
    }
    if (p == 2) {
        if (mod(d_, 8) == 1) return 1;
        return (a % 2 != 0) ? -1 : 1;
    }
    int leg = legendre(d_, p);
    if (leg == 1) return 1;
    return (a % 2 != 0) ? -1 : 1;
}

long QuadField::rho(const Rat& m) const {
    if (m <= 0 || !is_integer(m)) return 0;
    long n = to_long(m.get_num());
    long total = 0;
    for (long k : divisors(n)) total += chi(k);
    return total;
}

long QuadField::rho_local(long l, const Rat& m) const {
    if (m <= 0) return 0;
    long a = valuation(m, l);
    if (a < 0) return 0;
    if (is_ramified(l)) return 1;
    if (chi(l) == 1) return a + 1;
    return (a % 2 == 0) ? 1 : 0;
}

std::complex<long double> QuadField::dirichlet_L(std::complex<long double> s, long double tol) const {
    long D = -d_;
    std::complex<long double> sum = 0;
    for (long a = 1; a < D; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        sum += static_cast<long double>(c) *
               hurwitz_zeta_minus_pole(s, static_cast<long double>(a) / D, tol);
    }
    return std::exp(-s * std::log(static_cast<long double>(D))) * sum;
}

std::complex<long double> QuadField::completed_L(std::complex<long double> s, long double tol) const {
    const long double pi = std::numbers::pi_v<long double>;
    long double lD = std::log(static_cast<long double>(D()));
    auto pref = std::exp(s / 2.0L * lD - (s + 1.0L) / 2.0L * std::log(pi) + lgamma_complex((s + 1.0L) / 2.0L));
    return pref * dirichlet_L(s, tol);
}

long double QuadField::dirichlet_L_prime_at_0() const {
    long D = -d_;
    long double sum = 0;
    long double l0 = 0;
    for (long a = 1; a < D; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        long double x = static_cast<long double>(a) / D;
        sum += c * std::lgamma(x);
        l0 -= c * x;
    }
    return sum - l0 * std::log(static_cast<long double>(D));
}

long double QuadField::lchi() const {
    long double l0 = 2.0L * class_number() / unit_count();
    return dirichlet_L_prime_at_0() / l0;
}

Ideal QuadField::ideal_from_generators(const std::vector<QuadElem>& gens) const {
    std::vector<std::pair<Rat, Rat>> vecs;
    for (auto& g : gens) {
        vecs.emplace_back(g.a, g.b);
        QuadElem gw = mul(g, omega());
        vecs.emplace_back(gw.a, gw.b);
    }
    return hnf2(vecs);
}

Ideal QuadField::principal_ideal(const QuadElem& x) const { return ideal_from_generators({x}); }

std::vector<QuadElem> QuadField::ideal_basis(const Ideal& I) const {
    return {QuadElem(I.p), QuadElem(I.q, I.r)};
}

Ideal QuadField::ideal_mul(const Ideal& I, const Ideal& J) const {
    std::vector<std::pair<Rat, Rat>> vecs;
    for (auto& x : ideal_basis(I))
        for (auto& y : ideal_basis(J)) {
            QuadElem z = mul(x, y);
            vecs.emplace_back(z.a, z.b);
        }
    return hnf2(vecs);
}

Ideal QuadField::ideal_conj(const Ideal& I) const {
    std::vector<QuadElem> gens;
    for (auto& x : ideal_basis(I)) gens.push_back(conj(x));
    return ideal_from_generators(gens);
}

Ideal QuadField::ideal_inverse(const Ideal& I) const { return ideal_scale(ideal_conj(I), 1 / I.norm()); }

Ideal QuadField::ideal_scale(const Ideal& I, const Rat& c) const {
    std::vector<QuadElem> gens;
    for (auto& x : ideal_basis(I)) gens.push_back(scale(x, c));
    return ideal_from_generators(gens);
}

bool QuadField::ideal_contains(const Ideal& I, const QuadElem& x) const {
    // x = u p + v (q + r omega) with integers u, v.
    Rat v = x.b / I.r;
    if (!is_integer(v)) return false;
    Rat u = (x.a - v * I.q) / I.p;
    return is_integer(u);
}

Ideal QuadField::ramified_ideal(long R) const {
    if (R <= 0 || D() % R != 0) throw DomainError("ramified_ideal needs R | D");
    return ideal_from_generators({QuadElem(Rat(R)), sqrt_d()});
}

Ideal QuadField::nonsplit_prime(long p) const {
    if (is_ramified(p)) return ramified_ideal(p);
    if (chi(p) == -1) return ideal_from_generators({QuadElem(Rat(p))});
    throw SplitPrime("prime " + std::to_string(p) + " splits");
}

int QuadField::class_index(const Ideal& I) const {
    // Scale to a primitive integral ideal [A, B + omega].
    Ideal J = ideal_scale(I, 1 / I.r);
    if (!is_integer(J.p) || !is_integer(J.q))
        throw Error("Internal", "non-integral primitive ideal", ErrorClass::Internal);
    long A = to_long(J.p.get_num());
    long B = to_long(J.q.get_num());
    QuadElem g(Rat(B), Rat(1));
    Rat c = norm(g) / A;
    BinaryForm f = reduce_form({A, 2 * B + d_, to_long(c.get_num())});
    for (size_t i = 0; i < reps_.size(); ++i) {
        const auto& r = reps_[i];
        if (r.form_a == f.a && r.form_b == f.b && r.form_c == f.c) return static_cast<int>(i);
    }
    throw Error("Internal", "ideal class not found", ErrorClass::Internal);
}

int QuadField::class_mul(int i, int j) const {
    return class_index(ideal_mul(reps_.at(i).ideal, reps_.at(j).ideal));
}

int QuadField::class_inverse(int i) const { return class_index(ideal_conj(reps_.at(i).ideal)); }

}  // namespace arithlift
