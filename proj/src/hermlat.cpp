#include "arithlift/hermlat.hpp"

#include <algorithm>
#include <functional>

#include "arithlift/enumerate.hpp"
#include "arithlift/errors.hpp"
#include "arithlift/numtheory.hpp"

namespace arithlift {

namespace {

std::vector<Rat> flatten(const KVec& v) {
    std::vector<Rat> out;
    for (auto& x : v) {
        out.push_back(x.a);
        out.push_back(x.b);
    }
    return out;
}

KVec unflatten(const std::vector<Rat>& f) {
    KVec v;
    for (size_t i = 0; i + 1 < f.size(); i += 2) v.emplace_back(f[i], f[i + 1]);
    return v;
}

QuadElem kdet(const QuadField& K, KMat m) {
    size_t n = m.size();
    QuadElem det(Rat(1));
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) return QuadElem();
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = K.scale(det, -1);
        }
        det = K.mul(det, m[c][c]);
        QuadElem inv = K.inverse(m[c][c]);
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            QuadElem f = K.mul(m[r][c], inv);
            for (size_t j = c; j < n; ++j) m[r][j] = K.sub(m[r][j], K.mul(f, m[c][j]));
        }
    }
    return det;
}

}  // namespace

HermitianLattice HermitianLattice::from_gram(std::shared_ptr<const QuadField> field, const KMat& gram,
                                             std::optional<bool> self_dual) {
    const QuadField& K = *field;
    size_t r = gram.size();
    for (auto& row : gram)
        if (row.size() != r) throw NotPositiveDefinite("gram matrix is not square");
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (gram[i][j] != K.conj(gram[j][i])) throw NotPositiveDefinite("gram matrix is not hermitian");
    HermitianLattice L;
    L.field_ = field;
    L.form_ = gram;
    L.gram_ = gram;
    for (size_t i = 0; i < r; ++i) {
        KVec e(r), f(r);
        e[i] = QuadElem(Rat(1));
        f[i] = K.omega();
        L.basis_.push_back(e);
        L.basis_.push_back(f);
    }
    L.finish();
    if (self_dual && *self_dual && !L.is_self_dual())
        throw NotIntegral("lattice flagged self-dual but the trace determinant is not D^rank");
    return L;
}

HermitianLattice HermitianLattice::ideal_diagonal(std::shared_ptr<const QuadField> field,
                                                  const std::vector<IdealSummand>& summands) {
    const QuadField& K = *field;
    size_t r = summands.size();
    if (r == 0) throw RankMismatch("ideal-diagonal lattice needs at least one summand");
    HermitianLattice L;
    L.field_ = field;
    L.form_.assign(r, KVec(r));
    for (size_t i = 0; i < r; ++i) {
        if (summands[i].scale <= 0) throw NotPositiveDefinite("ideal-diagonal scale must be positive");
        L.form_[i][i] = QuadElem(summands[i].scale);
        auto zb = K.ideal_basis(summands[i].ideal);
        for (auto& b : zb) {
            KVec v(r);
            v[i] = b;
            L.basis_.push_back(v);
        }
    }
    L.summands_ = summands;
    L.finish();
    return L;
}

void HermitianLattice::finish() {
    RatMat B;
    for (auto& v : basis_) B.push_back(flatten(v));
    coord_inv_ = rat_inverse(B);
    // Throws NotPositiveDefinite if the trace form is not positive definite.
    RatMat A = trace_gram();
    for (auto& row : A)
        for (auto& x : row) x /= 2;
    ShortVectorEnumerator check(A);
    (void)check;
    cache_ = std::make_shared<Cache>();
}

QuadElem HermitianLattice::inner(const KVec& x, const KVec& y) const {
    const QuadField& K = *field_;
    QuadElem s;
    size_t r = form_.size();
    for (size_t i = 0; i < r; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < r; ++j) {
            if (form_[i][j].is_zero() || y[j].is_zero()) continue;
            s = K.add(s, K.mul(K.mul(x[i], form_[i][j]), K.conj(y[j])));
        }
    }
    return s;
}

Rat HermitianLattice::norm_value(const KVec& x) const {
    QuadElem v = inner(x, x);
    return field_->trace(v) / 2;
}

KVec HermitianLattice::combine(const std::vector<Rat>& coeffs, const std::vector<KVec>& basis) const {
    size_t r = form_.size();
    KVec out(r);
    for (size_t a = 0; a < coeffs.size(); ++a) {
        if (coeffs[a] == 0) continue;
        for (size_t i = 0; i < r; ++i) out[i] = field_->add(out[i], field_->scale(basis[a][i], coeffs[a]));
    }
    return out;
}

std::vector<Rat> HermitianLattice::coordinates(const KVec& x) const {
    std::vector<Rat> f = flatten(x);
    std::vector<Rat> c(f.size(), Rat(0));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < f.size(); ++j) c[j] += f[i] * coord_inv_[i][j];
    }
    return c;
}

bool HermitianLattice::contains(const KVec& x) const {
    for (auto& c : coordinates(x))
        if (!is_integer(c)) return false;
    return true;
}

RatMat HermitianLattice::trace_gram() const { return trace_gram(basis_); }

RatMat HermitianLattice::trace_gram(const std::vector<KVec>& basis) const {
    size_t n = basis.size();
    RatMat T(n, std::vector<Rat>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) {
            T[a][b] = field_->trace(inner(basis[a], basis[b]));
            T[b][a] = T[a][b];
        }
    return T;
}

Rat HermitianLattice::hermitian_det() const {
    QuadElem det = kdet(*field_, form_);
    if (det.b != 0) throw Error("Internal", "hermitian determinant is not rational", ErrorClass::Internal);
    return det.a;
}

bool HermitianLattice::is_integral() const {
    RatMat T = trace_gram();
    for (size_t a = 0; a < T.size(); ++a) {
        for (auto& x : T[a])
            if (!is_integer(x)) return false;
        if (!is_integer(T[a][a] / 2)) return false;
    }
    return true;
}

bool HermitianLattice::is_self_dual() const {
    if (!is_integral()) return false;
    Rat det = rat_det(trace_gram());
    Rat target = 1;
    for (int i = 0; i < rank(); ++i) target *= field_->D();
    return det == target;
}

std::vector<KVec> HermitianLattice::scaled_basis(long R) const {
    if (R == 1) return basis_;
    const QuadField& K = *field_;
    QuadElem s = K.scale(K.sqrt_d(), make_rat(1, R));
    if (field_->D() % R != 0) throw DomainError("r must divide the different");
    RatMat gens;
    for (auto& v : basis_) {
        gens.push_back(flatten(v));
        KVec w;
        for (auto& x : v) w.push_back(K.mul(x, s));
        gens.push_back(flatten(w));
    }
    RatMat hb = lattice_basis(gens);
    std::vector<KVec> out;
    for (auto& row : hb) out.push_back(unflatten(row));
    return out;
}

std::vector<KVec> HermitianLattice::dual_basis() const {
    RatMat Tinv = rat_inverse(trace_gram());
    std::vector<KVec> out;
    for (auto& row : Tinv) out.push_back(combine(row, basis_));
    return out;
}

std::vector<std::vector<long>> HermitianLattice::short_vectors(const Rat& bound, long R) const {
    RatMat A = trace_gram(scaled_basis(R));
    for (auto& row : A)
        for (auto& x : row) x /= 2;
    ShortVectorEnumerator en(A);
    return en.vectors(bound);
}

std::map<Rat, long> HermitianLattice::norm_counts(const Rat& bound, long R) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->counts.find(R);
        if (it != cache_->counts.end() && it->second.first >= bound) {
            std::map<Rat, long> out;
            for (auto& [k, c] : it->second.second)
                if (k <= bound) out[k] = c;
            return out;
        }
    }
    RatMat A = trace_gram(scaled_basis(R));
    for (auto& row : A)
        for (auto& x : row) x /= 2;
    ShortVectorEnumerator en(A);
    std::map<Rat, long> counts;
    for (auto& [k, c] : en.value_counts(bound)) counts[make_rat(k, en.scale())] = c;
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& slot = cache_->counts[R];
    if (slot.second.empty() || slot.first < bound) slot = {bound, counts};
    return counts;
}

long HermitianLattice::rep_number(const Rat& m, long R) const {
    if (m < 0) return 0;
    if (m == 0) return 1;
    if (!is_integer(m * R) && is_integral()) return 0;
    Rat bound = m;
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->counts.find(R);
        if (it != cache_->counts.end() && it->second.first >= m) {
            auto jt = it->second.second.find(m);
            return jt == it->second.second.end() ? 0 : jt->second;
        }
        // Grow geometrically so repeated queries reuse one enumeration.
        if (it != cache_->counts.end()) bound = std::max(m, Rat(2 * it->second.first));
    }
    if (bound < 16) bound = 16;
    auto counts = norm_counts(bound, R);
    auto jt = counts.find(m);
    return jt == counts.end() ? 0 : jt->second;
}

long HermitianLattice::aut_size(long budget) const {
    const QuadField& K = *field_;
    size_t r = form_.size();
    // A k-basis v_i taken from the Z-basis: v_i = basis_[2i] spans the i-th coordinate line.
    std::vector<KVec> v;
    for (size_t i = 0; i < r; ++i) v.push_back(basis_[2 * i]);
    // Express each Z-basis vector in the k-basis v (diagonal by construction).
    std::vector<KVec> coeff;
    for (auto& u : basis_) {
        KVec c(r);
        for (size_t i = 0; i < r; ++i)
            if (!u[i].is_zero()) c[i] = K.mul(u[i], K.inverse(v[i][i]));
        coeff.push_back(c);
    }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (i != j && !v[i][j].is_zero())
                throw Error("Internal", "unexpected basis layout", ErrorClass::Internal);
    Rat maxnorm = 0;
    std::vector<Rat> norms;
    for (auto& x : v) {
        norms.push_back(norm_value(x));
        maxnorm = std::max(maxnorm, norms.back());
    }
    auto sv = short_vectors(maxnorm, 1);
    if (static_cast<long>(sv.size()) > budget)
        throw EnumerationBudgetExceeded("too many candidate vectors for automorphism search");
    std::vector<std::vector<KVec>> cand(r);
    for (auto& x : sv) {
        std::vector<Rat> cx(x.begin(), x.end());
        KVec w = combine(cx, basis_);
        Rat nv = norm_value(w);
        for (size_t i = 0; i < r; ++i)
            if (nv == norms[i]) cand[i].push_back(w);
    }
    std::vector<std::vector<QuadElem>> target(r, KVec(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) target[i][j] = inner(v[i], v[j]);
    long count = 0;
    long visited = 0;
    std::vector<KVec> img(r);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == r) {
            for (auto& c : coeff) {
                KVec fu(r);
                for (size_t t = 0; t < r; ++t) {
                    if (c[t].is_zero()) continue;
                    for (size_t s = 0; s < r; ++s) fu[s] = K.add(fu[s], K.mul(c[t], img[t][s]));
                }
                if (!contains(fu)) return;
            }
            ++count;
            return;
        }
        for (auto& w : cand[i]) {
            if (++visited > budget) throw EnumerationBudgetExceeded("automorphism search budget exceeded");
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                if (inner(w, img[j]) != target[i][j]) ok = false;
            if (!ok) continue;
            img[i] = w;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

int HermitianLattice::local_invariant(long p) const { return field_->chi_local(p, hermitian_det()); }

int HermSpaceSpec::invariant(long p) const {
    auto it = inv.find(p);
    return it == inv.end() ? 1 : it->second;
}

int HermSpaceSpec::product() const {
    int prod = 1;
    for (auto& [p, s] : inv) prod *= s;
    return prod;
}

HermSpaceSpec incoherent_rank_one(std::shared_ptr<const QuadField> field, const std::map<long, int>& inv) {
    HermSpaceSpec s;
    s.rank = 1;
    for (long p : field->primes_of_D()) s.inv[p] = 1;
    for (auto& [p, e] : inv) {
        if (field->D() % p != 0) throw DomainError("rank-one invariants are supported on primes dividing D");
        if (e != 1 && e != -1) throw DomainError("invariants must be +1 or -1");
        s.inv[p] = e;
    }
    s.field = std::move(field);
    if (s.product() != -1) throw DomainError("invariants must multiply to -1 for an incoherent space");
    return s;
}

HermSpaceSpec default_incoherent(std::shared_ptr<const QuadField> field) {
    std::map<long, int> inv;
    for (long p : field->primes_of_D()) inv[p] = field->chi_local(p, Rat(-1));
    return incoherent_rank_one(std::move(field), inv);
}

HermSpaceSpec orthogonal_sum(const HermSpaceSpec& s0, const HermitianLattice& L) {
    HermSpaceSpec s = s0;
    s.rank = s0.rank + L.rank();
    Rat det = L.hermitian_det();
    std::set<long> primes(s0.field->primes_of_D().begin(), s0.field->primes_of_D().end());
    for (auto& [p, e] : s0.inv) primes.insert(p);
    for (long p : prime_support(det)) primes.insert(p);
    if (s0.field->D() % 2 != 0) primes.insert(2);
    for (long p : primes) s.inv[p] = s0.invariant(p) * L.local_invariant(p);
    return s;
}

int local_invariant(const HermSpaceSpec& s, long p) { return s.invariant(p); }

DiffSet diff_set(const HermSpaceSpec& s0, const Rat& m) {
    if (m <= 0) throw DomainError("diff_set needs m > 0");
    const QuadField& K = *s0.field;
    std::set<long> cand(K.primes_of_D().begin(), K.primes_of_D().end());
    for (long p : prime_support(m)) cand.insert(p);
    for (auto& [p, e] : s0.inv)
        if (e != 1) cand.insert(p);
    cand.insert(2);
    DiffSet out;
    out.m = m;
    // A rank-one space of determinant delta represents m iff m/delta is a local norm,
    // i.e. chi_{k,p}(m) = inv_p.
    for (long p : cand)
        if (K.chi_local(p, m) != s0.invariant(p)) out.primes.insert(p);
    return out;
}

HermSpaceSpec nearby_rank_one(const HermSpaceSpec& s0, long p) {
    if (!is_prime(p)) throw DomainError("nearby_rank_one needs a prime");
    if (s0.field->is_split(p)) throw SplitPrime("cannot flip the invariant at a split prime");
    HermSpaceSpec s = s0;
    s.inv[p] = -s0.invariant(p);
    return s;
}

std::vector<int> genus_rank_one_classes(const HermSpaceSpec& s0) {
    const QuadField& K = *s0.field;
    std::vector<int> out;
    const auto& reps = K.ideal_class_reps();
    for (size_t i = 0; i < reps.size(); ++i) {
        Rat n = reps[i].norm();
        bool ok = true;
        for (long p : K.primes_of_D())
            if (K.chi_local(p, -n) != s0.invariant(p)) ok = false;
        if (ok) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<HermitianLattice> genus_rank_one(const HermSpaceSpec& s0) {
    std::vector<HermitianLattice> out;
    for (int i : genus_rank_one_classes(s0)) {
        const auto& rep = s0.field->ideal_class_reps()[static_cast<size_t>(i)];
        out.push_back(HermitianLattice::ideal_diagonal(s0.field, {{rep.ideal, 1 / rep.norm()}}));
    }
    return out;
}

std::vector<HermitianLattice> genus_rank_one(std::shared_ptr<const QuadField> field) {
    return genus_rank_one(default_incoherent(std::move(field)));
}

HermitianLattice lambda_twist(const HermitianLattice& L, const Ideal& a) {
    if (!L.ideal_presentation())
        throw UnsupportedPresentation("class-group twists need an ideal-diagonal presentation");
    const QuadField& K = L.field();
    std::vector<IdealSummand> out;
    for (auto& s : *L.ideal_presentation()) out.push_back({K.ideal_mul(a, s.ideal), s.scale / a.norm()});
    return HermitianLattice::ideal_diagonal(L.field_ptr(), out);
}

HermitianLattice unit_lattice(std::shared_ptr<const QuadField> field, int rank) {
    std::vector<IdealSummand> s(static_cast<size_t>(rank), IdealSummand{Ideal{}, Rat(1)});
    return HermitianLattice::ideal_diagonal(std::move(field), s);
}

}  // namespace arithlift
