#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "arithlift/intmat.hpp"
#include "arithlift/quadfield.hpp"

namespace arithlift {

using KVec = std::vector<QuadElem>;
using KMat = std::vector<std::vector<QuadElem>>;

// One summand b * e_i of an ideal-diagonal lattice, with hermitian form scale * x conj(y).
struct IdealSummand {
    Ideal ideal;
    Rat scale = 1;
};

class ShortVectorEnumerator;

// Hermitian O_k-lattice of rank r inside k^r, described by a hermitian form H on k^r and a
// Z-basis of 2r vectors. Values <x, y> = sum_ij x_i H_ij conj(y_j).
class HermitianLattice {
public:
    // Free lattice O_k^r with Gram matrix G. Throws NotPositiveDefinite.
    static HermitianLattice from_gram(std::shared_ptr<const QuadField> field, const KMat& gram,
                                      std::optional<bool> self_dual = std::nullopt);
    // Orthogonal sum of ideals b_i with forms scale_i * x conj(y).
    static HermitianLattice ideal_diagonal(std::shared_ptr<const QuadField> field,
                                           const std::vector<IdealSummand>& summands);

    const QuadField& field() const { return *field_; }
    std::shared_ptr<const QuadField> field_ptr() const { return field_; }
    int rank() const { return static_cast<int>(form_.size()); }
    const KMat& hermitian_form() const { return form_; }
    const std::vector<KVec>& z_basis() const { return basis_; }
    const std::optional<std::vector<IdealSummand>>& ideal_presentation() const { return summands_; }
    // Gram matrix over O_k when the lattice was given as O_k^r.
    const std::optional<KMat>& gram() const { return gram_; }

    QuadElem inner(const KVec& x, const KVec& y) const;
    Rat norm_value(const KVec& x) const;  // <x, x>
    KVec combine(const std::vector<Rat>& coeffs, const std::vector<KVec>& basis) const;
    // Coordinates of x in the Z-basis (rational; integral iff x lies in the lattice).
    std::vector<Rat> coordinates(const KVec& x) const;
    bool contains(const KVec& x) const;

    // Trace form Gram matrix tr<v_a, v_b> on the Z-basis.
    RatMat trace_gram() const;
    RatMat trace_gram(const std::vector<KVec>& basis) const;
    Rat hermitian_det() const;
    bool is_integral() const;
    bool is_self_dual() const;

    // Z-basis of r^{-1} L with r = R O + sqrt(d) O for R | D.
    std::vector<KVec> scaled_basis(long R) const;
    // Z-basis of the trace dual lattice.
    std::vector<KVec> dual_basis() const;

    // Number of vectors of r^{-1}L of norm m (r given by R | D).
    long rep_number(const Rat& m, long R = 1) const;
    // Vectors of r^{-1}L with norm <= bound, as coordinates in scaled_basis(R).
    std::vector<std::vector<long>> short_vectors(const Rat& bound, long R = 1) const;
    // Norm counts over r^{-1}L up to bound: map norm -> count.
    std::map<Rat, long> norm_counts(const Rat& bound, long R = 1) const;

    // Order of the unitary group, by backtracking over short-vector images.
    long aut_size(long budget = 10000000) const;

    int local_invariant(long p) const;

private:
    HermitianLattice() = default;
    void finish();

    struct Cache {
        std::mutex mu;
        std::map<long, std::pair<Rat, std::map<Rat, long>>> counts;
    };

    std::shared_ptr<const QuadField> field_;
    KMat form_;
    std::vector<KVec> basis_;
    RatMat coord_inv_;  // maps flattened k^r coordinates to Z-basis coordinates
    std::optional<std::vector<IdealSummand>> summands_;
    std::optional<KMat> gram_;
    std::shared_ptr<Cache> cache_;
};

// Hermitian space data: rank and local invariants (+1 where unspecified).
struct HermSpaceSpec {
    std::shared_ptr<const QuadField> field;
    int rank = 1;
    std::map<long, int> inv;

    int invariant(long p) const;
    // Product of finite invariants (+1 coherent, -1 incoherent).
    int product() const;
};

// The incoherent rank-one space S0. inv maps p | D to +-1 and must multiply to -1.
HermSpaceSpec incoherent_rank_one(std::shared_ptr<const QuadField> field, const std::map<long, int>& inv);
// The incoherent S0 whose positive definite nearby genus contains O_k with x conj(y).
HermSpaceSpec default_incoherent(std::shared_ptr<const QuadField> field);
// Spec of S0 + L for a positive definite lattice L.
HermSpaceSpec orthogonal_sum(const HermSpaceSpec& s0, const HermitianLattice& L);

int local_invariant(const HermSpaceSpec& s, long p);

struct DiffSet {
    std::set<long> primes;
    Rat m;
};

DiffSet diff_set(const HermSpaceSpec& s0, const Rat& m);
// Flip the invariant at a nonsplit prime p. Throws SplitPrime.
HermSpaceSpec nearby_rank_one(const HermSpaceSpec& s0, long p);

// Rank-one self-dual lattices b with form N(b)^{-1} x conj(y) in the positive definite genus
// attached to S0 (the sign of the form is normalized to be positive).
std::vector<HermitianLattice> genus_rank_one(const HermSpaceSpec& s0);
std::vector<HermitianLattice> genus_rank_one(std::shared_ptr<const QuadField> field);
// Class indices of the ideals used by genus_rank_one.
std::vector<int> genus_rank_one_classes(const HermSpaceSpec& s0);

// Twist of an ideal-diagonal lattice by the central class of a: a L with form scaled by N(a)^{-1}.
HermitianLattice lambda_twist(const HermitianLattice& L, const Ideal& a);

// Unit lattice O_k with x conj(y).
HermitianLattice unit_lattice(std::shared_ptr<const QuadField> field, int rank = 1);

}  // namespace arithlift
