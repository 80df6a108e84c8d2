#include "arithlift/fqm.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "arithlift/enumerate.hpp"
#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

std::complex<double> Phase::value() const {
    // Exact values at multiples of 1/8 keep unitary checks free of rounding noise.
    Rat t = frac(turn);
    Rat t8 = t * 8;
    if (is_integer(t8)) {
        static const double h = std::sqrt(0.5);
        static const std::complex<double> table[8] = {{1, 0}, {h, h}, {0, 1}, {-h, h},
                                                      {-1, 0}, {-h, -h}, {0, -1}, {h, -h}};
        return table[to_long(t8.get_num())];
    }
    double a = 2 * std::numbers::pi * to_double(t);
    return {std::cos(a), std::sin(a)};
}

int Phase::real_sign() const {
    Rat t = frac(turn);
    if (t == 0) return 1;
    if (t == make_rat(1, 2)) return -1;
    throw DomainError("phase is not real");
}

std::shared_ptr<const FiniteQuadraticModule> FiniteQuadraticModule::from_generators(std::vector<long> orders,
                                                                                      std::vector<Rat> q,
                                                                                      RatMat b) {
    auto M = std::shared_ptr<FiniteQuadraticModule>(new FiniteQuadraticModule());
    M->orders_ = std::move(orders);
    M->gen_q_ = std::move(q);
    M->gen_b_ = std::move(b);
    M->finish();
    return M;
}

void FiniteQuadraticModule::finish() {
    size_t n = 1;
    exponent_ = 1;
    for (long d : orders_) {
        if (d < 1) throw DomainError("cyclic orders must be positive");
        n *= static_cast<size_t>(d);
        exponent_ = std::lcm(exponent_, d);
    }
    Q_.assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        auto z = coords(i);
        Rat v = 0;
        for (size_t a = 0; a < z.size(); ++a) {
            if (z[a] == 0) continue;
            v += gen_q_[a] * z[a] * z[a];
            for (size_t b = a + 1; b < z.size(); ++b) v += gen_b_[a][b] * z[a] * z[b];
        }
        Q_[i] = frac(v);
    }
    primes_ = exponent_ > 1 ? prime_divisors(exponent_) : std::vector<long>{};
    // Milgram: sum e(Q) = sqrt|M| e(sig/8).
    std::complex<double> g = 0;
    for (auto& q : Q_) g += Phase(q).value();
    g /= std::sqrt(static_cast<double>(n));
    if (std::abs(std::abs(g) - 1.0) > 1e-9) throw DomainError("quadratic form is degenerate");
    double ang = std::arg(g) / (2 * std::numbers::pi) * 8;
    signature_ = static_cast<int>(mod(std::lround(ang), 8));
}

std::vector<long> FiniteQuadraticModule::coords(size_t idx) const {
    std::vector<long> z(orders_.size());
    for (size_t a = orders_.size(); a-- > 0;) {
        z[a] = static_cast<long>(idx % static_cast<size_t>(orders_[a]));
        idx /= static_cast<size_t>(orders_[a]);
    }
    return z;
}

size_t FiniteQuadraticModule::index(const std::vector<long>& z) const {
    size_t idx = 0;
    for (size_t a = 0; a < orders_.size(); ++a) idx = idx * static_cast<size_t>(orders_[a]) + static_cast<size_t>(mod(z[a], orders_[a]));
    return idx;
}

size_t FiniteQuadraticModule::add(size_t i, size_t j) const {
    auto a = coords(i), b = coords(j);
    for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return index(a);
}

size_t FiniteQuadraticModule::neg(size_t i) const {
    auto a = coords(i);
    for (auto& x : a) x = -x;
    return index(a);
}

size_t FiniteQuadraticModule::mul(size_t i, long k) const {
    auto a = coords(i);
    for (size_t t = 0; t < a.size(); ++t) a[t] = mod(a[t] * mod(k, orders_[t]), orders_[t]);
    return index(a);
}

long FiniteQuadraticModule::order(size_t i) const {
    long o = 1;
    auto a = coords(i);
    for (size_t t = 0; t < a.size(); ++t) o = std::lcm(o, orders_[t] / gcd_l(a[t], orders_[t]));
    return o;
}

Rat FiniteQuadraticModule::B(size_t i, size_t j) const { return frac(Q_[add(i, j)] - Q_[i] - Q_[j]); }

bool FiniteQuadraticModule::component_zero(size_t i, long l) const {
    long k = exponent_;
    while (k % l == 0) k /= l;
    return mul(i, k) == 0;
}

Rat FiniteQuadraticModule::Q_local(size_t i, long l) const {
    long lv = 1, k = exponent_;
    while (k % l == 0) {
        k /= l;
        lv *= l;
    }
    if (lv == 1) return 0;
    long e = k * inverse_mod(mod(k, lv), lv);
    return Q_[mul(i, e)];
}

int FiniteQuadraticModule::s_count(size_t i) const {
    int s = 0;
    for (long p : primes_)
        if (component_zero(i, p)) ++s;
    return s;
}

long FiniteQuadraticModule::Q_mu(size_t i) const {
    long q = 1;
    for (long p : primes_)
        if (!component_zero(i, p)) q *= p;
    return q;
}

bool FiniteQuadraticModule::in_r_part(size_t i, long R) const {
    for (long p : primes_)
        if (R % p != 0 && !component_zero(i, p)) return false;
    return true;
}

std::shared_ptr<const FiniteQuadraticModule> FiniteQuadraticModule::from_lattice(const HermitianLattice& L) {
    if (!L.is_integral()) throw NotIntegral("discriminant module needs an integral lattice");
    RatMat T = L.trace_gram();
    IntMat Ti;
    for (auto& row : T) {
        std::vector<Int> r;
        for (auto& x : row) r.push_back(x.get_num());
        Ti.push_back(r);
    }
    SmithForm snf = smith_form(Ti);
    std::vector<KVec> U = L.dual_basis();
    // Generators g_i = (Y^{-1})_i . U
    RatMat Yr;
    for (auto& row : snf.Y) {
        std::vector<Rat> r;
        for (auto& x : row) r.push_back(Rat(x));
        Yr.push_back(r);
    }
    RatMat Yinv = rat_inverse(Yr);
    std::vector<long> orders;
    std::vector<size_t> kept;
    std::vector<KVec> gens;
    for (size_t i = 0; i < snf.diag.size(); ++i) {
        if (snf.diag[i] == 1) continue;
        kept.push_back(i);
        orders.push_back(to_long(snf.diag[i]));
        gens.push_back(L.combine(Yinv[i], U));
    }
    std::vector<Rat> q;
    RatMat b(gens.size(), std::vector<Rat>(gens.size(), Rat(0)));
    for (size_t i = 0; i < gens.size(); ++i) {
        q.push_back(L.norm_value(gens[i]));
        for (size_t j = i + 1; j < gens.size(); ++j) b[i][j] = L.field().trace(L.inner(gens[i], gens[j]));
    }
    auto M = std::shared_ptr<FiniteQuadraticModule>(new FiniteQuadraticModule());
    M->orders_ = orders;
    M->gen_q_ = q;
    M->gen_b_ = b;
    M->dual_basis_ = U;
    // Keep only the columns of Y that feed nontrivial cyclic factors.
    IntMat Ykept(snf.Y.size(), std::vector<Int>(kept.size()));
    for (size_t r = 0; r < snf.Y.size(); ++r)
        for (size_t c = 0; c < kept.size(); ++c) Ykept[r][c] = snf.Y[r][kept[c]];
    M->Y_ = Ykept;
    M->finish();
    return M;
}

size_t FiniteQuadraticModule::element_of(const std::vector<long>& y) const {
    if (Y_.empty() && !orders_.empty()) throw DomainMismatch("module has no lattice coordinates");
    std::vector<long> z(orders_.size(), 0);
    for (size_t c = 0; c < orders_.size(); ++c) {
        Int acc = 0;
        for (size_t r = 0; r < y.size(); ++r) acc += Y_[r][c] * y[r];
        Int m = acc % orders_[c];
        z[c] = to_long(m);
    }
    return index(z);
}

std::shared_ptr<const FiniteQuadraticModule> FiniteQuadraticModule::rank_one(const HermSpaceSpec& s0) {
    const QuadField& K = *s0.field;
    std::vector<long> orders;
    std::vector<Rat> q;
    for (long l : K.primes_of_D()) {
        long u = 1;
        while (legendre(u, l) != s0.invariant(l)) ++u;
        long cof = K.D() / l;
        long c = mod(u * inverse_mod(mod(cof, l), l), l);
        orders.push_back(l);
        q.push_back(make_rat(c, l));
    }
    RatMat b(orders.size(), std::vector<Rat>(orders.size(), Rat(0)));
    return from_generators(orders, q, b);
}

std::shared_ptr<const FiniteQuadraticModule> FiniteQuadraticModule::hyperbolic(long D) {
    RatMat b(2, std::vector<Rat>(2, Rat(0)));
    b[0][1] = make_rat(1, D);
    return from_generators({D, D}, {Rat(0), Rat(0)}, b);
}

std::shared_ptr<const FiniteQuadraticModule> FiniteQuadraticModule::direct_sum(const FiniteQuadraticModule& a,
                                                                                const FiniteQuadraticModule& b) {
    std::vector<long> orders = a.orders_;
    orders.insert(orders.end(), b.orders_.begin(), b.orders_.end());
    std::vector<Rat> q = a.gen_q_;
    q.insert(q.end(), b.gen_q_.begin(), b.gen_q_.end());
    size_t na = a.orders_.size(), n = orders.size();
    RatMat bb(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < na; ++j) bb[i][j] = a.gen_b_[i][j];
    for (size_t i = 0; i < b.orders_.size(); ++i)
        for (size_t j = 0; j < b.orders_.size(); ++j) bb[na + i][na + j] = b.gen_b_[i][j];
    auto M = std::shared_ptr<FiniteQuadraticModule>(new FiniteQuadraticModule());
    M->orders_ = orders;
    M->gen_q_ = q;
    M->gen_b_ = bb;
    M->summands_ = {a.size(), b.size()};
    M->finish();
    return M;
}

SFunction SFunction::zero(FQMPtr m) {
    SFunction f;
    f.values.assign(m->size(), Scalar(0));
    f.module = std::move(m);
    return f;
}

SFunction SFunction::delta(FQMPtr m, size_t idx) {
    SFunction f = zero(std::move(m));
    f.values.at(idx) = Scalar(1);
    return f;
}

SFunction SFunction::constant(FQMPtr m, const Scalar& c) {
    SFunction f;
    f.values.assign(m->size(), c);
    f.module = std::move(m);
    return f;
}

SFunction& SFunction::operator+=(const SFunction& o) {
    if (o.values.size() != values.size()) throw DomainMismatch("functions on different modules");
    for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

SFunction SFunction::operator*(const Scalar& c) const {
    SFunction f = *this;
    for (auto& v : f.values) v *= c;
    return f;
}

bool SFunction::is_zero() const {
    for (auto& v : values)
        if (!v.is_zero()) return false;
    return true;
}

size_t SFunction::support_size() const {
    size_t n = 0;
    for (auto& v : values)
        if (!v.is_zero()) ++n;
    return n;
}

SFunction phi_basis(FQMPtr M, const Rat& m, long R) {
    SFunction f = SFunction::zero(M);
    Rat mm = frac(m);
    for (size_t i = 0; i < M->size(); ++i)
        if (M->in_r_part(i, R) && M->Q(i) == mm) f.values[i] = Scalar(1);
    return f;
}

SFunction phi_r(FQMPtr M, long R) {
    SFunction f = SFunction::zero(M);
    for (size_t i = 0; i < M->size(); ++i)
        if (M->in_r_part(i, R)) f.values[i] = Scalar(1);
    return f;
}

WeilGenerators weil_generators(const FiniteQuadraticModule& M) {
    size_t n = M.size();
    WeilGenerators w;
    w.T = Eigen::MatrixXcd::Zero(static_cast<long>(n), static_cast<long>(n));
    w.S = Eigen::MatrixXcd::Zero(static_cast<long>(n), static_cast<long>(n));
    std::complex<double> c = Phase(make_rat(-M.signature_mod8(), 8)).value() / std::sqrt(static_cast<double>(n));
    for (size_t g = 0; g < n; ++g) {
        w.T(static_cast<long>(g), static_cast<long>(g)) = Phase(M.Q(g)).value();
        for (size_t d = 0; d < n; ++d)
            w.S(static_cast<long>(d), static_cast<long>(g)) = c * Phase(-M.B(g, d)).value();
    }
    return w;
}

Phase gamma_p(const HermSpaceSpec& s, long p) {
    const QuadField& K = *s.field;
    Phase inv = Phase::sign(s.invariant(p));
    if (K.D() % p != 0) return inv;
    Phase delta = (p % 4 == 1) ? Phase() : Phase(make_rat(1, 4));
    Phase chi = Phase::sign(K.chi_local(p, Rat(p)));
    return delta.pow(-s.rank) * chi.pow(s.rank) * inv;
}

Phase gamma_Q(const HermSpaceSpec& s, long Q) {
    Phase g;
    for (long p : prime_divisors(Q)) g = g * gamma_p(s, p);
    return g;
}

Phase gamma_infinity(const HermSpaceSpec& s) {
    std::set<long> primes(s.field->primes_of_D().begin(), s.field->primes_of_D().end());
    for (auto& [p, e] : s.inv)
        if (e != 1) primes.insert(p);
    Phase prod;
    for (long p : primes) prod = prod * gamma_p(s, p);
    return Phase(make_rat(1, 2)) * prod.conj();
}

SFunction restrict_to_sublattice(const SFunction& phi, FQMPtr sub) {
    const auto& parts = phi.module->summand_sizes();
    if (parts.size() != 2 || parts[1] != sub->size())
        throw NotOrthogonalSum("function does not live on an orthogonal sum with this summand");
    SFunction out = SFunction::zero(sub);
    for (size_t i = 0; i < sub->size(); ++i) out.values[i] = phi.values[i];
    return out;
}

SFunction lift_functional(const SFunction& ell, FQMPtr total) {
    const auto& parts = total->summand_sizes();
    if (parts.size() != 2 || parts[1] != ell.values.size())
        throw NotOrthogonalSum("target is not an orthogonal sum with this summand");
    SFunction out = SFunction::zero(total);
    for (size_t i = 0; i < ell.values.size(); ++i) out.values[i] = ell.values[i];
    return out;
}

bool is_isotropic(const FiniteQuadraticModule& M) {
    if (M.size() <= 1) return false;
    for (size_t i = 0; i < M.size(); ++i)
        if (M.Q(i) == 0 && M.order(i) == M.exponent()) return true;
    return false;
}

std::vector<std::vector<size_t>> isometry_orbits(const FiniteQuadraticModule& M, long budget) {
    size_t n = M.size();
    size_t k = M.orders().size();
    std::vector<size_t> gens;
    for (size_t i = 0; i < k; ++i) {
        std::vector<long> z(k, 0);
        z[i] = 1;
        gens.push_back(M.index(z));
    }
    std::vector<std::vector<size_t>> cand(k);
    for (size_t i = 0; i < k; ++i)
        for (size_t x = 0; x < n; ++x)
            if (M.order(x) == M.orders()[i] && M.Q(x) == M.Q(gens[i])) cand[i].push_back(x);
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<size_t> img(k);
    long visited = 0;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == k) {
            std::vector<size_t> image(n);
            std::vector<char> seen(n, 0);
            for (size_t x = 0; x < n; ++x) {
                auto z = M.coords(x);
                size_t y = 0;
                for (size_t t = 0; t < k; ++t) y = M.add(y, M.mul(img[t], z[t]));
                if (seen[y] || M.Q(y) != M.Q(x)) return;
                seen[y] = 1;
                image[x] = y;
            }
            for (size_t x = 0; x < n; ++x) parent[find(x)] = find(image[x]);
            return;
        }
        for (size_t c : cand[i]) {
            if (++visited > budget) throw EnumerationBudgetExceeded("isometry search budget exceeded");
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                if (M.B(c, img[j]) != M.B(gens[i], gens[j])) ok = false;
            if (!ok) continue;
            img[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t x = 0; x < n; ++x) groups[find(x)].push_back(x);
    std::vector<std::vector<size_t>> out;
    for (auto& [r, v] : groups) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

ThetaTable theta_table(const HermitianLattice& L, FQMPtr M, const Rat& bound) {
    if (!M->has_lattice() || M->dual_basis() != L.dual_basis())
        throw DomainMismatch("module does not belong to this lattice");
    RatMat A = L.trace_gram(M->dual_basis());
    for (auto& row : A)
        for (auto& x : row) x /= 2;
    ShortVectorEnumerator en(A);
    ThetaTable t;
    t.module = M;
    t.bound = bound;
    for (auto& y : en.vectors(bound)) {
        Rat m = make_rat(en.scaled_value(y), en.scale());
        ++t.counts[m][M->element_of(y)];
    }
    return t;
}

Scalar rep_number_weighted(const HermitianLattice& L, const Rat& m, const SFunction& phi) {
    if (m < 0) return Scalar(0);
    ThetaTable t = theta_table(L, phi.module, m);
    Scalar s(0);
    auto it = t.counts.find(m);
    if (it == t.counts.end()) return s;
    for (auto& [idx, c] : it->second) s += phi(idx) * Scalar(c);
    return s;
}

}  // namespace arithlift
