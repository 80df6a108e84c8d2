#include "arithlift/lfunc.hpp"

#include <omp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"
#include "arithlift/special.hpp"

namespace arithlift {

namespace {

Scalar phase_scalar(const Phase& p) {
    if (frac(p.turn * 2) == 0) return Scalar(Rat(p.real_sign()));
    return Scalar(p.value());
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

bool close(const Scalar& x, const Scalar& y) {
    if (x.is_exact() && y.is_exact()) return x.rational() == y.rational();
    double scale = 1.0 + std::abs(x.value()) + std::abs(y.value());
    return std::abs(x.value() - y.value()) <= 1e-6 * scale;
}

// Smallest prime factor table for 0..M.
std::vector<long> spf_table(long M) {
    std::vector<long> spf(static_cast<size_t>(std::max<long>(M, 1) + 1), 0);
    for (long i = 2; i <= M; ++i)
        if (spf[i] == 0)
            for (long j = i; j <= M; j += i)
                if (spf[j] == 0) spf[j] = i;
    return spf;
}

// chi_Q(x) = prod_{q | Q} (x / q).
int chi_part(long Q, long x) {
    int v = 1;
    for (long q : prime_divisors(Q)) v *= legendre(x, q);
    return v;
}

int ipow_sign(int v, long e) { return (v == 0) ? (e == 0 ? 1 : 0) : ((e % 2 == 0) ? 1 : v); }

cplx gamma_c(cplx z) {
    cld g = gamma_complex(cld(z.real(), z.imag()));
    return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

struct LatticeTerm {
    HermitianLattice lattice;
    Scalar weight;  // eta(h) / |Aut Lambda_h|, or 1 without a character
};

std::vector<LatticeTerm> orbit_terms(const HermitianLattice& Lambda, const std::optional<ClassCharacter>& eta) {
    std::vector<LatticeTerm> out;
    if (!eta) {
        out.push_back({Lambda, Scalar(1)});
        return out;
    }
    const QuadField& K = Lambda.field();
    eta->validate(K);
    const auto& reps = K.ideal_class_reps();
    for (size_t h = 0; h < reps.size(); ++h) {
        HermitianLattice Lh = lambda_twist(Lambda, reps[h].ideal);
        out.push_back({Lh, phase_scalar(eta->values[h]) * Scalar(make_rat(1, Lh.aut_size()))});
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Newforms

const Scalar& NewformData::at(long m) const {
    if (m < 1 || m > size())
        throw MissingCoefficient("coefficient a(" + std::to_string(m) + ") is beyond the table (size " +
                                 std::to_string(size()) + ")");
    return a[static_cast<size_t>(m)];
}

int NewformData::character(long m) const {
    if (gcd_l(m, level) != 1) return 0;
    return ipow_sign(field->chi(m), weight);
}

void validate_hecke(const NewformData& g) {
    long M = g.size();
    if (M < 1) throw HeckeViolation("empty coefficient table");
    if (!close(g.at(1), Scalar(1))) throw HeckeViolation("a(1) must be 1");
    std::vector<long> spf = spf_table(M);
    for (long m = 2; m <= M; ++m) {
        long p = spf[m];
        long pe = 1;
        long r = m;
        while (r % p == 0) {
            r /= p;
            pe *= p;
        }
        if (r > 1) {
            if (!close(g.at(m), g.at(pe) * g.at(r)))
                throw HeckeViolation("a(" + std::to_string(m) + ") is not multiplicative");
            continue;
        }
        if (pe == p) continue;
        // a(p^{k+1}) = a(p) a(p^k) - chi(p) p^{n-1} a(p^{k-1})
        Scalar expect = g.at(p) * g.at(pe / p);
        int c = g.character(p);
        if (c != 0) {
            Rat pn = rat_pow(Rat(p), g.weight - 1) * c;
            long prev = pe / (p * p);
            expect -= Scalar(pn) * g.at(prev);
        }
        if (!close(g.at(pe), expect))
            throw HeckeViolation("a(" + std::to_string(pe) + ") violates the prime-power recursion");
    }
}

NewformData make_newform(long level, int weight, std::vector<Scalar> a) {
    if (weight < 2) throw DomainError("weight must be at least 2");
    NewformData g;
    g.level = level;
    g.weight = weight;
    g.field = std::make_shared<QuadField>(-level);
    if (g.field->D() != level) throw NonFundamental("level must be |d| for an odd fundamental discriminant d");
    g.a = std::move(a);
    validate_hecke(g);
    return g;
}

NewformData ingest_newform(const std::string& path, long level, int weight) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    std::string header = trim(line);
    header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
    if (header != "m,a_m") throw ParseError(path + ": expected header 'm,a_m'");
    std::vector<Scalar> a{Scalar(0)};
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t comma = t.find(',');
        if (comma == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": missing comma");
        std::string ms = trim(t.substr(0, comma));
        std::string vs = trim(t.substr(comma + 1));
        long m = 0;
        try {
            size_t used = 0;
            m = std::stol(ms, &used);
            if (used != ms.size()) throw std::invalid_argument(ms);
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad index '" + ms + "'");
        }
        if (m != static_cast<long>(a.size()))
            throw ParseError(path + ":" + std::to_string(lineno) + ": rows must be contiguous from m = 1");
        try {
            if (vs.find_first_of(".eE") != std::string::npos) {
                size_t used = 0;
                double x = std::stod(vs, &used);
                if (used != vs.size()) throw std::invalid_argument(vs);
                a.push_back(Scalar::real(x));
            } else {
                a.push_back(Scalar(parse_rational(vs)));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad value '" + vs + "'");
        }
    }
    return make_newform(level, weight, std::move(a));
}

Scalar epsilon_Q(const NewformData& g, long Q) {
    if (Q < 1 || g.level % Q != 0) throw DomainError("Q must divide the level");
    int n = g.weight;
    Scalar eps(1);
    for (long q : prime_divisors(Q)) {
        // The character factor uses the q-part of chi_k, which is defined at Q/q.
        eps *= Scalar(ipow_sign(legendre(Q / q, q), n));
        Scalar lam = g.at(q).conj();
        if (n % 2 == 0) {
            lam *= Scalar(Rat(-1) / rat_pow(Rat(q), n / 2 - 1));
        } else {
            Scalar delta = (q % 4 == 1) ? Scalar(1) : Scalar(cplx(0, 1));
            lam *= delta * Scalar::real(std::pow(static_cast<double>(q), (1.0 - n) / 2.0));
        }
        eps *= lam;
    }
    return eps;
}

std::vector<Scalar> g_twist(const NewformData& g, long Q, long M) {
    if (Q < 1 || g.level % Q != 0) throw DomainError("Q must divide the level");
    if (M > g.size())
        throw MissingCoefficient("a_Q up to " + std::to_string(M) + " needs more coefficients than the table holds");
    long Qc = g.level / Q;
    int n = g.weight;
    std::vector<long> spf = spf_table(M);
    std::vector<Scalar> out(static_cast<size_t>(M + 1), Scalar(0));
    if (M >= 1) out[1] = Scalar(1);
    for (long m = 2; m <= M; ++m) {
        long p = spf[m];
        long pe = 1;
        long e = 0;
        long r = m;
        while (r % p == 0) {
            r /= p;
            pe *= p;
            ++e;
        }
        if (r > 1) {
            out[m] = out[pe] * out[r];
            continue;
        }
        if (Q % p != 0) {
            int c = ipow_sign(chi_part(Q, p), e * n);
            out[m] = Scalar(c) * g.at(m);
        } else {
            int c = ipow_sign(chi_part(Qc, p), e * n);
            out[m] = Scalar(c) * g.at(m).conj();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Induced vector-valued form

InducedForm::InducedForm(const NewformData& g, const HermSpaceSpec& S, FQMPtr module, const Rat& bound)
    : module_(std::move(module)), bound_(bound), D_(g.level), n_(g.weight) {
    if (S.rank != g.weight) throw RankMismatch("space rank must equal the weight");
    if (S.field->D() != g.level) throw DomainMismatch("newform level and field discriminant differ");
    for (long Q : divisors(D_)) {
        Scalar w = epsilon_Q(g, Q) * phase_scalar(gamma_Q(S, Q).conj()) *
                   Scalar(Rat(1) / rat_pow(Rat(Q), n_ - 1));
        weights_.emplace(Q, w);
        long need = to_long(floor_rat(bound_ * Q));
        twists_.emplace(Q, g_twist(g, Q, std::min(need, g.size())));
    }
}

Scalar InducedForm::inner(long k, long Qmu) const {
    Scalar sum(0);
    for (auto& [Q, w] : weights_) {
        if (Q % Qmu != 0) continue;
        long qd = D_ / Q;
        if (k % qd != 0) continue;
        long idx = k / qd;
        const auto& t = twists_.at(Q);
        if (idx >= static_cast<long>(t.size()))
            throw MissingCoefficient("a_Q(" + std::to_string(idx) + ") is beyond the coefficient table");
        sum += w * t[static_cast<size_t>(idx)];
    }
    return sum;
}

Scalar InducedForm::at(const Rat& m, size_t mu) const {
    if (m <= 0) return Scalar(0);
    if (m > bound_) throw MissingCoefficient("exponent " + to_string(m) + " exceeds the induced bound");
    if (frac(m - module_->Q(mu)) != 0) return Scalar(0);
    Rat k = m * D_;
    if (!is_integer(k)) return Scalar(0);
    return inner(to_long(k.get_num()), module_->Q_mu(mu));
}

SFunction InducedForm::coefficient(const Rat& m) const {
    SFunction f = SFunction::zero(module_);
    for (size_t i = 0; i < module_->size(); ++i) f.values[i] = at(m, i);
    return f;
}

InducedForm induce(const NewformData& g, const HermSpaceSpec& S, FQMPtr module, const Rat& bound) {
    return InducedForm(g, S, std::move(module), bound);
}

// ---------------------------------------------------------------------------------------------
// Rankin-type Dirichlet series

BallBound BallBound::for_lattice(const HermitianLattice& L, long R, const Rat& scale) {
    std::vector<KVec> basis = L.scaled_basis(R);
    RatMat T = L.trace_gram(basis);
    long dim = static_cast<long>(basis.size());
    Eigen::MatrixXd G(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) G(i, j) = to_double(T[i][j] * scale / 2);
    BallBound b;
    b.real_dim = static_cast<int>(dim);
    int r = b.real_dim / 2;
    b.inv_covolume = std::pow(M_PI, r) / static_cast<double>(factorial(r)) / std::sqrt(G.determinant());
    for (long i = 0; i < dim; ++i) b.delta += std::sqrt(G(i, i));
    return b;
}

double BallBound::operator()(double X) const {
    return inv_covolume * std::pow(std::sqrt(X) + delta, real_dim);
}

RankinSeries& RankinSeries::operator+=(const RankinSeries& o) {
    if (c.empty()) return *this = o;
    if (o.den != den || o.n != n) throw DomainMismatch("series with different normalizations");
    if (o.c.size() < c.size()) c.resize(o.c.size());
    for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
    coef_A += o.coef_A;
    coef_alpha = std::max(coef_alpha, o.coef_alpha);
    // The ball bounds are merged by taking the larger one in each parameter.
    ball.real_dim = std::max(ball.real_dim, o.ball.real_dim);
    ball.inv_covolume = std::max(ball.inv_covolume, o.ball.inv_covolume);
    ball.delta = std::max(ball.delta, o.ball.delta);
    return *this;
}

RankinSeries RankinSeries::operator*(cplx w) const {
    RankinSeries out = *this;
    for (auto& x : out.c) x *= w;
    out.coef_A *= std::abs(w);
    return out;
}

RankinSeries vector_series(const InducedForm& F, const HermitianLattice& Lambda, const Rat& bound) {
    if (bound > F.bound()) throw MissingCoefficient("series bound exceeds the induced bound");
    FQMPtr ML = FiniteQuadraticModule::from_lattice(Lambda);
    const auto& parts = F.module()->summand_sizes();
    if (parts.size() != 2 || parts[1] != ML->size())
        throw NotOrthogonalSum("induced module is not S0 + Lambda for this lattice");
    long D = F.D();
    Rat kb = bound * D;
    long K = to_long(floor_rat(kb));
    ThetaTable tt = theta_table(Lambda, ML, bound);
    RankinSeries out;
    out.field = Lambda.field_ptr();
    out.n = Lambda.rank() + 1;
    out.den = D;
    out.c.assign(static_cast<size_t>(K + 1), cplx(0, 0));
    for (auto& [m, row] : tt.counts) {
        if (m <= 0) continue;
        long k = to_long(Rat(m * D).get_num());
        cplx acc = 0;
        for (auto& [mu, cnt] : row) acc += std::conj(F.at(m, mu).value()) * static_cast<double>(cnt);
        out.c[static_cast<size_t>(k)] = acc;
    }
    double A = 0;
    for (long Q : divisors(D)) A += std::abs(F.weight(Q).value()) * 2.0 * std::pow(static_cast<double>(Q), out.n / 2.0);
    out.coef_A = A;
    out.coef_alpha = out.n / 2.0;
    out.ball = BallBound::for_lattice(Lambda, D, Rat(1));
    return out;
}

RankinSeries scalar_series(const std::vector<Scalar>& aQ, int n, const std::vector<Scalar>& theta_coeffs,
                           BallBound ball, double coef_A, std::shared_ptr<const QuadField> field) {
    RankinSeries out;
    out.field = std::move(field);
    out.n = n;
    out.den = 1;
    size_t K = std::min(aQ.size(), theta_coeffs.size());
    out.c.assign(K, cplx(0, 0));
    for (size_t k = 1; k < K; ++k) {
        if (theta_coeffs[k].is_zero()) continue;
        out.c[k] = std::conj(aQ[k].value()) * theta_coeffs[k].value();
    }
    out.coef_A = coef_A;
    out.coef_alpha = n / 2.0;
    out.ball = ball;
    return out;
}

DirectValue direct_L(const RankinSeries& L, cplx s) {
    cplx w = s / 2.0 + static_cast<double>(L.n - 1);
    double sigma = w.real();
    double r = L.ball.real_dim / 2.0;
    if (sigma <= L.coef_alpha + r)
        throw OutsideConvergence("the direct sum needs Re(s) > " + std::to_string(2 * (L.coef_alpha + r - L.n + 1)));
    cplx gw = gamma_c(w);
    cplx sum = 0;
    double den = static_cast<double>(L.den);
    for (long k = L.terms(); k >= 1; --k) {
        const cplx& c = L.c[static_cast<size_t>(k)];
        if (c == cplx(0, 0)) continue;
        sum += c * std::exp(-w * std::log(4 * M_PI * k / den));
    }
    DirectValue out;
    out.value = gw * sum;
    // sum_{m > M} A m^alpha R(m) (4 pi m)^{-sigma} <= int_M^inf V(X) (-g'(X)) dX in closed form.
    double M = static_cast<double>(L.terms()) / den;
    double pref = L.coef_A * std::pow(4 * M_PI, -sigma) * (sigma - L.coef_alpha) * L.ball.inv_covolume;
    int dim = L.ball.real_dim;
    double tail = 0;
    double binom = 1;
    for (int j = 0; j <= dim; ++j) {
        if (j > 0) binom = binom * (dim - j + 1) / j;
        double e = j / 2.0 + L.coef_alpha - sigma;
        tail += binom * std::pow(L.ball.delta, dim - j) * std::pow(M, e) / (-e);
    }
    out.tail_bound = std::abs(gw) * pref * tail;
    return out;
}

DirectValue direct_completed(const RankinSeries& L, cplx s) {
    DirectValue d = direct_L(L, s);
    auto lam = L.field->completed_L(cld(s.real() + 1, s.imag()));
    cplx f(static_cast<double>(lam.real()), static_cast<double>(lam.imag()));
    d.value *= f;
    d.tail_bound *= std::abs(f);
    return d;
}

// ---------------------------------------------------------------------------------------------
// Smoothed functional equation

namespace {

// I(z, X) = int_X^inf theta(u) u^{z-1} du with theta(u) = 2 u^{n/2} K_{n-2}(2 sqrt u), written as
// 4 int_{sqrt X}^inf y^{n+2z-1} K_{n-2}(2y) (2 log y)^j dy for the j-th z-derivative.
cplx kernel(int n, cplx z, double X, int deriv, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    double a = std::sqrt(X);
    double nu = n - 2;
    auto integrand = [&](double y, bool imag) {
        double k = boost::math::cyl_bessel_k(nu, 2 * y);
        double ly = std::log(y);
        cplx v = std::exp((static_cast<double>(n) - 1.0 + 2.0 * z) * ly) * k;
        if (deriv) v *= std::pow(2 * ly, deriv);
        return imag ? v.imag() : v.real();
    };
    double err_r = 0, err_i = 0;
    double re = gauss_kronrod<double, 61>::integrate([&](double y) { return integrand(y, false); }, a,
                                                      std::numeric_limits<double>::infinity(), 12, tol, &err_r);
    double im = 0;
    if (z.imag() != 0)
        im = gauss_kronrod<double, 61>::integrate([&](double y) { return integrand(y, true); }, a,
                                                   std::numeric_limits<double>::infinity(), 12, tol, &err_i);
    if (!std::isfinite(re) || !std::isfinite(im)) throw KernelDivergence("kernel integral is not finite");
    double mag = std::abs(re) + std::abs(im);
    if (err_r + err_i > 1e3 * tol * std::max(mag, 1e-300) && err_r + err_i > 1e-290)
        throw KernelDivergence("kernel integral did not converge");
    return 4.0 * cplx(re, im);
}

struct AFESetup {
    std::vector<cplx> A;  // A[N], N = 1..Nmax
    std::vector<double> lam;
    double C = 0;
};

AFESetup afe_setup(const RankinSeries& L, cplx z, const AFEOptions& opt) {
    if (!L.field || L.den != L.field->D()) throw DomainMismatch("functional equation needs exponents in (1/D)Z");
    if (opt.t0 <= 0) throw DomainError("t0 must be positive");
    long D = L.den;
    int n = L.n;
    double tmin = std::min(opt.t0, 1.0 / opt.t0);
    double a = n + 2 * std::abs(z.real());
    AFESetup s;
    s.C = std::sqrt(static_cast<double>(D)) / M_PI * std::pow(4 * M_PI, -(n - 1));
    s.A.push_back(0);
    s.lam.push_back(0);
    double abs_sum = 0;
    long K = L.terms();
    // The zero series has no terms to sum.
    if (std::all_of(L.c.begin(), L.c.end(), [](const cplx& c) { return c == cplx(0, 0); })) return s;
    for (long N = 1;; ++N) {
        if (N > K)
            throw PrecisionUnachievable("functional equation needs coefficients beyond m = " +
                                        std::to_string(K) + "/" + std::to_string(D));
        cplx A = 0;
        for (long k = 1; k * k <= N; ++k) {
            if (N % (k * k) != 0) continue;
            int chi = L.field->chi(k);
            if (chi == 0) continue;
            long Np = N / (k * k);
            double m = static_cast<double>(Np) / D;
            A += static_cast<double>(chi) / k * L.c[static_cast<size_t>(Np)] * std::pow(m, 1 - n);
        }
        double lam = 4 * M_PI * M_PI * N / (static_cast<double>(D) * D);
        s.A.push_back(A);
        s.lam.push_back(lam);
        double Y = std::sqrt(lam * tmin);
        double est = 8 * std::pow(Y, a + 1) * std::exp(-2 * Y) * std::pow(lam, std::abs(z.real())) *
                     std::max(std::abs(A), 1.0) * N;
        abs_sum += std::abs(A) * std::pow(Y, a) * std::exp(-2 * Y);
        if (Y > 4 && est < opt.tolerance * 1e-2 * std::max(abs_sum, 1e-300)) break;
    }
    return s;
}

// sum_N A_N d^j/dz^j [lam^{-z} I(z, lam t0) - lam^{z} I(-z, lam / t0)] for j = 0, 1.
cplx afe_sum(const RankinSeries& L, const AFESetup& S, cplx z, int deriv, const AFEOptions& opt) {
    size_t Nmax = S.A.size() - 1;
    std::vector<cplx> terms(Nmax + 1, cplx(0, 0));
    int n = L.n;
    bool failed = false;
    std::string what;
#pragma omp parallel for schedule(dynamic, 16)
    for (size_t N = 1; N <= Nmax; ++N) {
        if (S.A[N] == cplx(0, 0)) continue;
        try {
            double lam = S.lam[N];
            double ll = std::log(lam);
            cplx p1 = std::exp(-z * ll), p2 = std::exp(z * ll);
            cplx I1 = kernel(n, z, lam * opt.t0, 0, opt.tolerance);
            cplx I2 = kernel(n, -z, lam / opt.t0, 0, opt.tolerance);
            cplx v;
            if (deriv == 0) {
                v = p1 * I1 - p2 * I2;
            } else {
                cplx J1 = kernel(n, z, lam * opt.t0, 1, opt.tolerance);
                cplx J2 = kernel(n, -z, lam / opt.t0, 1, opt.tolerance);
                v = p1 * (J1 - ll * I1) - p2 * (ll * I2 - J2);
            }
            terms[N] = S.A[N] * v;
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                what = e.what();
            }
        }
    }
    if (failed) throw KernelDivergence(what);
    cplx sum = 0;
    for (size_t N = Nmax; N >= 1; --N) sum += terms[N];
    return sum;
}

}  // namespace

cplx completed_L(const RankinSeries& L, cplx s, const AFEOptions& opt) {
    cplx z = s / 2.0;
    AFESetup S = afe_setup(L, z, opt);
    return S.C * afe_sum(L, S, z, 0, opt);
}

DerivativeValue L_prime_at_0(const RankinSeries& L, const AFEOptions& opt, double step) {
    auto lam1 = L.field->completed_L(cld(1, 0));
    double chi1 = static_cast<double>(lam1.real());
    AFESetup S = afe_setup(L, cplx(0, 0), opt);
    DerivativeValue out;
    // d/ds = (1/2) d/dz
    out.value = (0.5 * S.C * afe_sum(L, S, cplx(0, 0), 1, opt)).real() / chi1;
    out.lambda_at_0 = std::abs(S.C * afe_sum(L, S, cplx(0, 0), 0, opt));
    out.antisymmetry = std::abs(completed_L(L, 0.5, opt) + completed_L(L, -0.5, opt));
    auto diff = [&](double h) {
        AFESetup Sh = afe_setup(L, cplx(h / 2, 0), opt);
        cplx plus = Sh.C * afe_sum(L, Sh, cplx(h / 2, 0), 0, opt);
        cplx minus = Sh.C * afe_sum(L, Sh, cplx(-h / 2, 0), 0, opt);
        return ((plus - minus) / (2 * h)).real() / chi1;
    };
    double d1 = diff(step), d2 = diff(step / 2), d4 = diff(step / 4);
    out.fd_step = step;
    out.fd_h = (4 * d2 - d1) / 3;
    out.fd_h2 = (4 * d4 - d2) / 3;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Class group characters

ClassCharacter ClassCharacter::trivial(const QuadField& K) {
    ClassCharacter c;
    c.values.assign(K.ideal_class_reps().size(), Phase());
    return c;
}

void ClassCharacter::validate(const QuadField& K) const {
    int h = K.class_number();
    if (static_cast<int>(values.size()) != h) throw DomainMismatch("character needs one value per ideal class");
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            if (frac(values[K.class_mul(i, j)].turn - values[i].turn - values[j].turn) != 0)
                throw DomainMismatch("values do not define a character of the class group");
}

Phase ClassCharacter::at_ideal(const QuadField& K, const Ideal& I) const {
    return values.at(static_cast<size_t>(K.class_index(I)));
}

// ---------------------------------------------------------------------------------------------
// Scalar decomposition and the scalar main formula

namespace {

struct QData {
    long Q;
    Scalar eps;
    Phase gamma;
    Phase chi_eta;
    std::vector<Scalar> aQ;
};

std::vector<QData> q_data(const NewformData& g, const HermSpaceSpec& S, const std::optional<ClassCharacter>& eta,
                          long M) {
    const QuadField& K = *S.field;
    std::vector<QData> out;
    for (long Q : divisors(g.level)) {
        QData d;
        d.Q = Q;
        d.eps = epsilon_Q(g, Q);
        d.gamma = gamma_Q(S, Q);
        if (eta) d.chi_eta = eta->at_ideal(K, K.ideal_inverse(K.ramified_ideal(Q)));
        d.aQ = g_twist(g, Q, std::min(M * Q, g.size()));
        out.push_back(std::move(d));
    }
    return out;
}

// Scalar theta coefficients for the Q-term: R^sc_{Lambda_q} without a character, the eta-weighted
// orbit sum with one.
std::vector<Scalar> scalar_theta_coeffs(const std::vector<LatticeTerm>& terms, bool with_eta, long Q, long Mq) {
    std::vector<Scalar> th(static_cast<size_t>(Mq + 1), Scalar(0));
    if (!with_eta) {
        const HermitianLattice& L = terms.front().lattice;
        for (auto& [m, cnt] : L.norm_counts(make_rat(Mq, Q), Q)) {
            Rat mp = m * Q;
            if (mp <= 0 || !is_integer(mp)) continue;
            th[static_cast<size_t>(to_long(mp.get_num()))] += Scalar(cnt);
        }
        return th;
    }
    for (auto& t : terms)
        for (auto& [m, cnt] : t.lattice.norm_counts(Rat(Mq), 1)) {
            if (m <= 0 || !is_integer(m)) continue;
            th[static_cast<size_t>(to_long(m.get_num()))] += t.weight * Scalar(cnt);
        }
    return th;
}

// Normal form (r >= 0, phase mod 1) of an exact value r * phase for exact comparison.
std::pair<Rat, Rat> normal_form(Rat r, Rat turn) {
    if (r < 0) {
        r = -r;
        turn += make_rat(1, 2);
    }
    if (r == 0) turn = 0;
    return {r, frac(turn)};
}

}  // namespace

DecompositionCheck scalar_vector_decomposition_check(const NewformData& g, const HermitianLattice& Lambda,
                                                     const HermSpaceSpec& s0,
                                                     const std::optional<ClassCharacter>& eta, cplx s, long M) {
    if (s0.rank != 1 || s0.product() != -1) throw DomainError("S0 must be an incoherent rank-one space");
    if (Lambda.rank() + 1 != g.weight) throw RankMismatch("weight must be rank(Lambda) + 1");
    if (!Lambda.is_self_dual()) throw DomainError("Lambda must be self-dual");
    std::vector<LatticeTerm> terms = orbit_terms(Lambda, eta);
    HermSpaceSpec S = orthogonal_sum(s0, Lambda);
    int n = g.weight;
    Rat bound(M);
    DecompositionCheck out;
    for (auto& t : terms) {
        FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                       *FiniteQuadraticModule::from_lattice(t.lattice));
        InducedForm F = induce(g, orthogonal_sum(s0, t.lattice), mod, bound);
        DirectValue v = direct_L(vector_series(F, t.lattice, bound), s);
        out.lhs += t.weight.value() * v.value;
        out.tail_bound += std::abs(t.weight.value()) * v.tail_bound;
    }
    for (auto& q : q_data(g, S, eta, M)) {
        long Mq = static_cast<long>(q.aQ.size()) - 1;
        cplx f = std::exp(s / 2.0 * std::log(static_cast<double>(q.Q))) * std::conj(q.eps.value()) *
                 q.gamma.value() * q.chi_eta.value();
        double A = 2.0;
        if (!eta) {
            std::vector<Scalar> th = scalar_theta_coeffs(terms, false, q.Q, Mq);
            BallBound ball = BallBound::for_lattice(Lambda, q.Q, Rat(q.Q));
            DirectValue v = direct_L(scalar_series(q.aQ, n, th, ball, A, Lambda.field_ptr()), s);
            out.rhs += f * v.value;
            out.tail_bound += std::abs(f) * v.tail_bound;
        } else {
            for (auto& t : terms) {
                std::vector<Scalar> th(static_cast<size_t>(Mq + 1), Scalar(0));
                for (auto& [m, cnt] : t.lattice.norm_counts(Rat(Mq), 1))
                    if (m > 0 && is_integer(m)) th[static_cast<size_t>(to_long(m.get_num()))] = Scalar(cnt);
                BallBound ball = BallBound::for_lattice(t.lattice, 1, Rat(1));
                DirectValue v = direct_L(scalar_series(q.aQ, n, th, ball, A, Lambda.field_ptr()), s);
                cplx w = t.weight.value();
                out.rhs += f * w * v.value;
                out.tail_bound += std::abs(f * w) * v.tail_bound;
            }
        }
    }
    out.residual = std::abs(out.lhs - out.rhs);
    // Product form of the root-of-unity factors for even weight and exact eps_p.
    if (n % 2 == 0) {
        const QuadField& K = Lambda.field();
        bool exact = true;
        bool equal = true;
        for (long Q : divisors(g.level)) {
            Scalar eQ = epsilon_Q(g, Q);
            if (!eQ.is_exact()) {
                exact = false;
                break;
            }
            Phase chiQ = eta ? eta->at_ideal(K, K.ideal_inverse(K.ramified_ideal(Q))) : Phase();
            auto lhs = normal_form(eQ.rational(), gamma_Q(S, Q).turn + chiQ.turn);
            Rat r = 1;
            Rat turn = 0;
            for (long p : prime_divisors(Q)) {
                Scalar ep = epsilon_Q(g, p);
                if (!ep.is_exact()) {
                    exact = false;
                    break;
                }
                r *= ep.rational();
                turn += gamma_p(S, p).turn;
                if (eta) turn += eta->at_ideal(K, K.ideal_inverse(K.ramified_ideal(p))).turn;
            }
            if (!exact) break;
            if (lhs != normal_form(r, turn)) equal = false;
        }
        out.product_form_checked = exact;
        out.product_form_equal = exact && equal;
    }
    return out;
}

MainTheorem2Value theorem_maintheo2_rhs(const NewformData& g, const HermitianLattice& Lambda,
                                        const HermSpaceSpec& s0, const std::optional<ClassCharacter>& eta,
                                        long M, const AFEOptions& opt) {
    if (s0.rank != 1 || s0.product() != -1) throw DomainError("S0 must be an incoherent rank-one space");
    if (Lambda.rank() + 1 != g.weight) throw RankMismatch("weight must be rank(Lambda) + 1");
    if (!Lambda.is_self_dual()) throw DomainError("Lambda must be self-dual");
    const QuadField& K = Lambda.field();
    std::vector<LatticeTerm> terms = orbit_terms(Lambda, eta);
    HermSpaceSpec S = orthogonal_sum(s0, Lambda);
    int n = g.weight;
    long D = g.level;
    Rat bound(M);

    double h = K.class_number();
    double w = static_cast<double>(K.units().size());
    double base = h * h / (w * w) * std::pow(2.0, 1 - K.o());
    MainTheorem2Value out;
    out.degree = eta ? base : base / static_cast<double>(Lambda.aut_size());

    RankinSeries vec;
    for (auto& t : terms) {
        FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                       *FiniteQuadraticModule::from_lattice(t.lattice));
        InducedForm F = induce(g, orthogonal_sum(s0, t.lattice), mod, bound);
        vec += vector_series(F, t.lattice, bound) * t.weight.value();
    }
    out.vector_route = -out.degree * L_prime_at_0(vec, opt).value;

    RankinSeries sc;
    sc.field = Lambda.field_ptr();
    sc.n = n;
    sc.den = D;
    sc.c.assign(static_cast<size_t>(M * D + 1), cplx(0, 0));
    for (auto& q : q_data(g, S, eta, M)) {
        long Mq = static_cast<long>(q.aQ.size()) - 1;
        std::vector<Scalar> th = scalar_theta_coeffs(terms, eta.has_value(), q.Q, Mq);
        cplx f = std::pow(static_cast<double>(q.Q), 1 - n) * std::conj(q.eps.value()) * q.gamma.value() *
                 q.chi_eta.value();
        long step = D / q.Q;
        for (long k = step; k <= M * D; k += step) {
            long mp = k / step;
            if (mp > Mq) throw MissingCoefficient("scalar route needs a_Q(" + std::to_string(mp) + ")");
            if (th[static_cast<size_t>(mp)].is_zero()) continue;
            sc.c[static_cast<size_t>(k)] += f * std::conj(q.aQ[static_cast<size_t>(mp)].value()) *
                                            th[static_cast<size_t>(mp)].value();
        }
    }
    out.scalar_route = -out.degree * L_prime_at_0(sc, opt).value;
    return out;
}

}  // namespace arithlift
