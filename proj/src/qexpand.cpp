#include "arithlift/qexpand.hpp"

#include <cmath>
#include <numbers>

#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"
#include "arithlift/special.hpp"

namespace arithlift {

QExpansion::QExpansion(Rat weight, CoeffSpace space, FQMPtr module, Rat precision)
    : weight_(std::move(weight)), space_(space), module_(std::move(module)), prec_(std::move(precision)) {
    if (space_ != CoeffSpace::Scalar && !module_) throw DomainMismatch("vector-valued expansion needs a module");
}

Rat QExpansion::min_exponent() const {
    for (auto& [m, c] : coeffs_)
        for (auto& x : c)
            if (!x.is_zero()) return m;
    return prec_;
}

bool QExpansion::is_zero() const {
    for (auto& [m, c] : coeffs_)
        for (auto& x : c)
            if (!x.is_zero()) return false;
    return true;
}

std::vector<Scalar> QExpansion::at(const Rat& m) const {
    if (m >= prec_) throw InsufficientPrecision("coefficient at " + to_string(m) + " is beyond precision " + to_string(prec_));
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) return std::vector<Scalar>(width(), Scalar(0));
    return it->second;
}

void QExpansion::set(const Rat& m, std::vector<Scalar> c) {
    if (c.size() != width()) throw DomainMismatch("coefficient has the wrong width");
    if (m >= prec_) throw InsufficientPrecision("exponent beyond precision");
    if (module_ && !is_integer(m * module_->exponent()) && !is_integer(m))
        throw DomainMismatch("exponent denominator does not divide the level");
    coeffs_[m] = std::move(c);
}

void QExpansion::add_to(const Rat& m, size_t component, const Scalar& c) {
    if (m >= prec_) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) it = coeffs_.emplace(m, std::vector<Scalar>(width(), Scalar(0))).first;
    it->second.at(component) += c;
}

QExpansion& QExpansion::operator+=(const QExpansion& o) {
    if (o.width() != width() || o.space_ != space_) throw DomainMismatch("adding expansions in different spaces");
    prec_ = std::min(prec_, o.prec_);
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first >= prec_)
            it = coeffs_.erase(it);
        else
            ++it;
    }
    for (auto& [m, c] : o.coeffs_) {
        if (m >= prec_) continue;
        for (size_t i = 0; i < c.size(); ++i) add_to(m, i, c[i]);
    }
    return *this;
}

QExpansion QExpansion::operator*(const Scalar& c) const {
    QExpansion out = *this;
    for (auto& [m, v] : out.coeffs_)
        for (auto& x : v) x *= c;
    return out;
}

QExpansion QExpansion::conj() const {
    QExpansion out = *this;
    for (auto& [m, v] : out.coeffs_)
        for (auto& x : v) x = x.conj();
    return out;
}

QExpansion QExpansion::multiply(const QExpansion& s) const {
    if (s.space_ != CoeffSpace::Scalar) throw DomainMismatch("multiply expects a scalar series");
    Rat fmin = min_exponent(), smin = s.min_exponent();
    Rat prec = std::min(prec_ + smin, s.prec_ + fmin);
    QExpansion out(weight_ + s.weight_, space_, module_, prec);
    for (auto& [a, fa] : coeffs_) {
        for (auto& [b, sb] : s.coeffs_) {
            Rat m = a + b;
            if (m >= prec) break;
            if (sb[0].is_zero()) continue;
            for (size_t i = 0; i < fa.size(); ++i)
                if (!fa[i].is_zero()) out.add_to(m, i, fa[i] * sb[0]);
        }
    }
    return out;
}

SFunction HarmonicFormData::cp(const Rat& m) const {
    auto it = c_plus.find(m);
    return it == c_plus.end() ? SFunction::zero(module) : it->second;
}

SFunction HarmonicFormData::cm(const Rat& m) const {
    auto it = c_minus.find(m);
    return it == c_minus.end() ? SFunction::zero(module) : it->second;
}

Rat HarmonicFormData::principal_depth() const {
    Rat depth = 0;
    for (auto& [m, c] : c_plus)
        if (m < 0 && !c.is_zero()) depth = std::max(depth, Rat(-m));
    return depth;
}

bool HarmonicFormData::weakly_holomorphic() const {
    for (auto& [m, c] : c_minus)
        if (!c.is_zero()) return false;
    return true;
}

void HarmonicFormData::validate() const {
    if (!module) throw DomainMismatch("harmonic form without module");
    auto check = [&](const std::map<Rat, SFunction>& stream, const char* name) {
        for (auto& [m, c] : stream) {
            if (c.values.size() != module->size()) throw DomainMismatch(std::string(name) + " has the wrong width");
            if (!is_integer(m * module->exponent()) && !is_integer(m))
                throw DomainMismatch(std::string(name) + " exponent denominator does not divide the level");
            for (size_t i = 0; i < module->size(); ++i) {
                if (c.values[i] != c.values[module->neg(i)])
                    throw DomainMismatch(std::string(name) + " is not symmetric under mu -> -mu");
                if (!c.values[i].is_zero() && frac(module->Q(i) + m) != 0)
                    throw DomainMismatch(std::string(name) + " violates m = -Q(mu) mod 1");
            }
        }
    };
    check(c_plus, "c_plus");
    check(c_minus, "c_minus");
    for (auto& [m, c] : c_minus)
        if (m >= 0 && !c.is_zero()) throw DomainMismatch("c_minus must be supported on negative exponents");
}

HarmonicFormData HarmonicFormData::scaled(const Scalar& c) const {
    HarmonicFormData out = *this;
    for (auto& [m, v] : out.c_plus) v = v * c;
    for (auto& [m, v] : out.c_minus) v = v * c;
    return out;
}

HarmonicFormData HarmonicFormData::operator+(const HarmonicFormData& o) const {
    if (o.module->size() != module->size() || o.n != n) throw DomainMismatch("adding forms on different modules");
    HarmonicFormData out = *this;
    for (auto& [m, v] : o.c_plus) {
        auto it = out.c_plus.find(m);
        if (it == out.c_plus.end())
            out.c_plus.emplace(m, v);
        else
            it->second += v;
    }
    for (auto& [m, v] : o.c_minus) {
        auto it = out.c_minus.find(m);
        if (it == out.c_minus.end())
            out.c_minus.emplace(m, v);
        else
            it->second += v;
    }
    out.delta_invariant = delta_invariant && o.delta_invariant;
    return out;
}

QExpansion theta_series(const HermitianLattice& L, FQMPtr M, const Rat& prec) {
    ThetaTable t = theta_table(L, M, prec);
    QExpansion out(Rat(L.rank()), CoeffSpace::Dual, M, prec);
    for (auto& [m, row] : t.counts) {
        if (m >= prec) continue;
        for (auto& [idx, c] : row) out.add_to(m, idx, Scalar(c));
    }
    return out;
}

QExpansion scalar_theta(const HermitianLattice& L, const Rat& prec) {
    QExpansion out = QExpansion::scalar(Rat(L.rank()), prec);
    for (auto& [m, c] : L.norm_counts(prec))
        if (m < prec) out.add_to(m, 0, Scalar(c));
    return out;
}

QExpansion eta_theta(const HermitianLattice& L, const std::vector<Phase>& eta, const Rat& prec) {
    if (!L.ideal_presentation()) throw UnsupportedPresentation("eta_theta needs an ideal-diagonal lattice");
    const auto& reps = L.field().ideal_class_reps();
    if (eta.size() != reps.size()) throw DomainMismatch("eta must have one value per ideal class");
    QExpansion out = QExpansion::scalar(Rat(L.rank()), prec);
    for (size_t h = 0; h < reps.size(); ++h) {
        HermitianLattice Lh = lambda_twist(L, reps[h].ideal);
        Scalar w = (frac(eta[h].turn * 2) == 0) ? Scalar(Rat(eta[h].real_sign())) : Scalar(eta[h].value());
        w *= Scalar(make_rat(1, Lh.aut_size()));
        out += scalar_theta(Lh, prec) * w;
    }
    return out;
}

QExpansion e2(const Rat& prec) {
    QExpansion out = QExpansion::scalar(Rat(2), prec);
    out.add_to(Rat(0), 0, Scalar(1));
    for (long m = 1; Rat(m) < prec; ++m) out.add_to(Rat(m), 0, Scalar(-24 * sigma1(m)));
    return out;
}

QExpansion theta_operator(const QExpansion& g) {
    QExpansion out(g.weight() + 2, g.space(), g.module(), g.precision());
    for (auto& [m, c] : g.coefficients()) {
        if (m == 0) continue;
        for (size_t i = 0; i < c.size(); ++i) out.add_to(m, i, c[i] * Scalar(m));
    }
    return out;
}

QExpansion serre_derivative(const QExpansion& g, const Rat& k) {
    QExpansion out = theta_operator(g);
    QExpansion corr = g.multiply(e2(g.precision())) * Scalar(Rat(-k / 12));
    out += corr;
    out.set_weight(g.weight() + 2);
    return out;
}

QExpansion pairing(const QExpansion& f, const QExpansion& g) {
    if (f.width() != g.width()) throw DomainMismatch("pairing of expansions on different modules");
    Rat fmin = f.min_exponent(), gmin = g.min_exponent();
    Rat prec = std::min(f.precision() + gmin, g.precision() + fmin);
    QExpansion out = QExpansion::scalar(f.weight() + g.weight(), prec);
    for (auto& [a, fa] : f.coefficients())
        for (auto& [b, gb] : g.coefficients()) {
            Rat m = a + b;
            if (m >= prec) break;
            Scalar s(0);
            for (size_t i = 0; i < fa.size(); ++i)
                if (!fa[i].is_zero() && !gb[i].is_zero()) s += fa[i] * gb[i];
            if (!s.is_zero()) out.add_to(m, 0, s);
        }
    return out;
}

Scalar constant_term(const QExpansion& h) { return h.scalar_at(Rat(0)); }

QExpansion holomorphic_expansion(const HarmonicFormData& f, const Rat& prec) {
    QExpansion out(f.weight(), CoeffSpace::Vector, f.module, prec);
    for (auto& [m, c] : f.c_plus) {
        if (m >= prec) continue;
        for (size_t i = 0; i < c.values.size(); ++i)
            if (!c.values[i].is_zero()) out.add_to(m, i, c.values[i]);
    }
    return out;
}

Scalar reg_pairing_pi(const HarmonicFormData& f, const QExpansion& g, int k) {
    if (k < 0) throw DomainError("reg_pairing needs k >= 0");
    if (g.width() != f.module->size()) throw DomainMismatch("pairing of forms on different modules");
    Rat depth = f.principal_depth();
    if (k > 0) {
        if (g.precision() <= depth) throw InsufficientPrecision("theta series precision does not cover the principal part");
        Scalar total(0);
        for (auto& [m, c] : f.c_plus) {
            if (m >= 0 || c.is_zero()) continue;
            Rat mm = -m;
            auto b = g.at(mm);
            Scalar s(0);
            for (size_t i = 0; i < b.size(); ++i) s += c.values[i] * b[i];
            total += s * Scalar(mm);
        }
        return total * Scalar(make_rat(4, k));
    }
    // k = 0: (pi/3) CT[{f+, g E_2}]
    QExpansion ge = g.multiply(e2(g.precision()));
    if (ge.precision() <= depth) throw InsufficientPrecision("expansion precision does not cover the principal part");
    QExpansion fp = holomorphic_expansion(f, Rat(1));
    QExpansion h = pairing(fp, ge);
    return constant_term(h) * Scalar(make_rat(1, 3));
}

HarmonicFormData boundary_reduction(const HarmonicFormData& f, FQMPtr ME) {
    size_t nE = ME->size();
    size_t total = f.module->size();
    if (total % nE != 0) throw RankMismatch("module is not a sum with the given summand");
    size_t h = total / nE;
    long D = std::lround(std::sqrt(static_cast<double>(h)));
    if (static_cast<size_t>(D * D) != h) throw RankMismatch("complement is not a hyperbolic plane");
    const auto& parts = f.module->summand_sizes();
    if (!parts.empty() && (parts.size() != 2 || parts[0] != nE)) throw NotOrthogonalSum("unexpected module layout");
    HarmonicFormData out;
    out.n = f.n;
    out.module = ME;
    out.delta_invariant = f.delta_invariant;
    auto reduce = [&](const SFunction& c) {
        SFunction r = SFunction::zero(ME);
        for (size_t e = 0; e < nE; ++e)
            for (long x = 0; x < D; ++x) r.values[e] += c.values[e * h + static_cast<size_t>(x * D)];
        return r;
    };
    for (auto& [m, c] : f.c_plus) out.c_plus.emplace(m, reduce(c));
    for (auto& [m, c] : f.c_minus) out.c_minus.emplace(m, reduce(c));
    return out;
}

Scalar boundary_mult(const HarmonicFormData& f, const HermitianLattice* E, const Rat& r_width, const Rat& Na0) {
    if (f.n < 2) throw RankMismatch("boundary multiplicities need n >= 2");
    Scalar phi_pi;
    Rat prec = f.principal_depth() + 1;
    if (f.n == 2) {
        if (E) throw RankMismatch("n = 2 has no positive definite boundary lattice");
        FQMPtr trivial = FiniteQuadraticModule::from_generators({}, {}, {});
        HarmonicFormData fD = boundary_reduction(f, trivial);
        QExpansion theta(Rat(0), CoeffSpace::Dual, trivial, prec);
        theta.add_to(Rat(0), 0, Scalar(1));
        phi_pi = reg_pairing_pi(fD, theta, 0);
    } else {
        if (!E || E->rank() != f.n - 2) throw RankMismatch("boundary lattice must have rank n - 2");
        FQMPtr ME = FiniteQuadraticModule::from_lattice(*E);
        HarmonicFormData fD = boundary_reduction(f, ME);
        QExpansion theta = theta_series(*E, ME, prec);
        phi_pi = reg_pairing_pi(fD, theta, f.n - 2);
    }
    return phi_pi * Scalar(Rat(r_width / (4 * Na0)));
}

QExpansion xi_image(const HarmonicFormData& f, const Rat& prec) {
    QExpansion out(Rat(f.n), CoeffSpace::Vector, f.module, prec);
    for (auto& [m, c] : f.c_minus) {
        if (m >= 0 || c.is_zero()) continue;
        Rat mm = -m;
        if (mm >= prec) continue;
        double fac = std::pow(4 * std::numbers::pi * to_double(mm), f.n - 1);
        for (size_t i = 0; i < c.values.size(); ++i)
            if (!c.values[i].is_zero()) out.add_to(mm, i, c.values[i].conj() * Scalar::real(-fac));
    }
    return out;
}

GreenValue green_fourier_value(const GreenFourierInput& in) {
    const double pi = std::numbers::pi;
    const double euler = 0.57721566490153286061;
    GreenValue out;
    if (!(in.ell_z > 0)) throw DomainError("|l_z| must be positive");
    std::complex<double> c00 = in.c00.value();
    std::complex<double> cf = -c00 * (std::log(2 * pi) - euler);
    for (auto& [c, t] : in.boundary_constants) {
        double x = std::abs(1.0 - Phase(t).value());
        if (x < in.singular_tolerance) throw OnSingularLocus("boundary constant at a = 0 mod N");
        cf -= 2.0 * c.value() * std::log(x);
    }
    out.constant = cf.real();
    std::complex<double> logsum = 0;
    std::complex<double> vsum = 0;
    double tail = 0;
    for (auto& t : in.terms) {
        std::complex<double> cp = t.c_plus.value();
        if (cp != std::complex<double>(0, 0)) {
            std::complex<double> z(t.phase, t.proj / in.ell_z);
            std::complex<double> e = std::exp(2.0 * pi * std::complex<double>(0, 1) * z);
            std::complex<double> one_minus = 1.0 - e;
            if (std::abs(one_minus) < in.singular_tolerance) throw OnSingularLocus("point lies on a special divisor");
            logsum += -2.0 * cp * std::log(one_minus);
        }
        std::complex<double> cm = t.c_minus.value();
        if (t.lambda_sq > 0 && cm != std::complex<double>(0, 0)) {
            double a = pi * std::sqrt(t.lambda_sq) / in.ell_z;
            double b = pi * t.proj / in.ell_z;
            std::complex<double> s = 0;
            for (int j = 1; j <= in.j_max; ++j) {
                double v = special_V_closed(in.n, j * a, j * b);
                s += std::exp(2.0 * pi * std::complex<double>(0, 1) * (j * t.phase)) * v / double(j);
            }
            vsum += 2.0 / std::sqrt(pi) * cm * s;
            // V_n(jA, jB) decays at least like exp(-2 j sqrt(A^2+B^2)) times a polynomial factor.
            double r = std::sqrt(a * a + b * b);
            double next = special_V_closed(in.n, (in.j_max + 1) * a, (in.j_max + 1) * b);
            double ratio = std::exp(-2 * r);
            double bound = (ratio < 1) ? next / (1 - ratio) : INFINITY;
            tail += 2.0 / std::sqrt(pi) * std::abs(cm) * bound / (in.j_max + 1);
        }
    }
    if (tail > in.tail_tolerance) throw TruncationBudgetExceeded("j-sum tail bound above tolerance");
    out.log_sum = logsum.real();
    out.v_sum = vsum.real();
    out.tail_bound = tail;
    out.value = in.phi_K / (std::sqrt(2.0) * in.ell_z) + out.constant + (c00 * std::log(in.ell_z * in.ell_z)).real() +
                out.log_sum + out.v_sum;
    return out;
}

}  // namespace arithlift
