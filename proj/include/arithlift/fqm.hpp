#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "arithlift/hermlat.hpp"
#include "arithlift/scalar.hpp"

namespace arithlift {

// Root of unity e(turn) = exp(2 pi i turn) with exact rational turn mod 1.
struct Phase {
    Rat turn = 0;

    Phase() = default;
    explicit Phase(const Rat& t) : turn(frac(t)) {}
    static Phase sign(int s) { return Phase(s < 0 ? make_rat(1, 2) : Rat(0)); }
    Phase operator*(const Phase& o) const { return Phase(turn + o.turn); }
    Phase conj() const { return Phase(-turn); }
    Phase pow(long e) const { return Phase(turn * e); }
    bool operator==(const Phase& o) const { return turn == o.turn; }
    bool operator!=(const Phase& o) const { return !(*this == o); }
    std::complex<double> value() const;
    // +1 or -1 when the phase is real, otherwise throws DomainError.
    int real_sign() const;
};

// Finite abelian group (Z/d_1 x ... x Z/d_k) with a Q/Z-valued quadratic form given on
// generators: Q(sum z_i g_i) = sum z_i^2 q_i + sum_{i<j} z_i z_j b_ij.
class FiniteQuadraticModule {
public:
    // The trace-dual quotient L'/L, which equals d^{-1}L/L for self-dual L.
    // Throws NotIntegral.
    static std::shared_ptr<const FiniteQuadraticModule> from_lattice(const HermitianLattice& L);
    // Discriminant module of the incoherent rank-one space S0, as a sum of F_l.
    static std::shared_ptr<const FiniteQuadraticModule> rank_one(const HermSpaceSpec& s0);
    // (Z/D)^2 with Q(x, y) = x y / D.
    static std::shared_ptr<const FiniteQuadraticModule> hyperbolic(long D);
    static std::shared_ptr<const FiniteQuadraticModule> direct_sum(const FiniteQuadraticModule& a,
                                                                   const FiniteQuadraticModule& b);
    static std::shared_ptr<const FiniteQuadraticModule> from_generators(std::vector<long> orders,
                                                                        std::vector<Rat> q, RatMat b);

    size_t size() const { return Q_.size(); }
    const std::vector<long>& orders() const { return orders_; }
    long exponent() const { return exponent_; }
    const std::vector<long>& primes() const { return primes_; }
    std::vector<long> coords(size_t idx) const;
    size_t index(const std::vector<long>& z) const;
    size_t add(size_t i, size_t j) const;
    size_t neg(size_t i) const;
    size_t mul(size_t i, long k) const;
    long order(size_t i) const;
    const Rat& Q(size_t i) const { return Q_[i]; }
    Rat B(size_t i, size_t j) const;
    int signature_mod8() const { return signature_; }

    // True iff the l-component of element i vanishes.
    bool component_zero(size_t i, long l) const;
    // Q of the l-component.
    Rat Q_local(size_t i, long l) const;
    // Number of primes q | D with vanishing q-component.
    int s_count(size_t i) const;
    // Product of primes with nonvanishing component.
    long Q_mu(size_t i) const;
    // Membership in r^{-1}L/L: all components outside primes of R vanish.
    bool in_r_part(size_t i, long R) const;

    // Summand sizes when built by direct_sum (empty otherwise).
    const std::vector<size_t>& summand_sizes() const { return summands_; }

    // Lattice data for modules built by from_lattice: a Z-basis of L' and the map
    // from L'-coordinates to element indices.
    bool has_lattice() const { return !dual_basis_.empty(); }
    const std::vector<KVec>& dual_basis() const { return dual_basis_; }
    size_t element_of(const std::vector<long>& dual_coords) const;

private:
    FiniteQuadraticModule() = default;
    void finish();

    std::vector<long> orders_;
    std::vector<Rat> gen_q_;
    RatMat gen_b_;
    std::vector<Rat> Q_;
    long exponent_ = 1;
    std::vector<long> primes_;
    int signature_ = 0;
    std::vector<size_t> summands_;
    std::vector<KVec> dual_basis_;
    IntMat Y_;
};

using FQMPtr = std::shared_ptr<const FiniteQuadraticModule>;

// Function on a finite quadratic module.
struct SFunction {
    FQMPtr module;
    std::vector<Scalar> values;

    static SFunction zero(FQMPtr m);
    static SFunction delta(FQMPtr m, size_t idx);
    static SFunction constant(FQMPtr m, const Scalar& c);
    Scalar operator()(size_t i) const { return values.at(i); }
    SFunction& operator+=(const SFunction& o);
    SFunction operator*(const Scalar& c) const;
    bool operator==(const SFunction& o) const { return values == o.values; }
    bool is_zero() const;
    size_t support_size() const;
};

// phi_{m,r}: characteristic function of {mu in r^{-1}L/L : Q(mu) = m mod 1}.
SFunction phi_basis(FQMPtr M, const Rat& m, long R);
// phi_r: characteristic function of r^{-1}L/L.
SFunction phi_r(FQMPtr M, long R);

// rho_M(T), rho_M(S) in the basis of delta functions.
struct WeilGenerators {
    Eigen::MatrixXcd T, S;
};
WeilGenerators weil_generators(const FiniteQuadraticModule& M);

// Local Weil index gamma_p of a hermitian space of rank n.
Phase gamma_p(const HermSpaceSpec& s, long p);
// Archimedean index fixed by prod_{p <= infinity} gamma_p = -1 for incoherent spaces.
Phase gamma_infinity(const HermSpaceSpec& s);
// prod_{p | Q} gamma_p.
Phase gamma_Q(const HermSpaceSpec& s, long Q);

// Restriction along M_L -> M_S0 + M_L, mu -> (0, mu), and its dual on functionals.
SFunction restrict_to_sublattice(const SFunction& phi, FQMPtr sub);
SFunction lift_functional(const SFunction& ell, FQMPtr total);

bool is_isotropic(const FiniteQuadraticModule& M);

// Orbits of the full isometry group O(M), enumerated through images of generators.
std::vector<std::vector<size_t>> isometry_orbits(const FiniteQuadraticModule& M, long budget = 5000000);

// Weighted representation number sum phi(lambda) over lambda in L' with <lambda,lambda> = m.
// The module of phi must be from_lattice(L). Throws DomainMismatch.
Scalar rep_number_weighted(const HermitianLattice& L, const Rat& m, const SFunction& phi);

// Counts of lattice vectors of L' by (norm, module element) up to bound.
struct ThetaTable {
    FQMPtr module;
    Rat bound;
    std::map<Rat, std::map<size_t, long>> counts;
};
ThetaTable theta_table(const HermitianLattice& L, FQMPtr M, const Rat& bound);

}  // namespace arithlift
