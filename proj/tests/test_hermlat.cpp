#include <doctest.h>

#include <memory>

#include "arithlift/errors.hpp"
#include "arithlift/hermlat.hpp"

using namespace arithlift;

namespace {

std::shared_ptr<const QuadField> field_of(long d) { return std::make_shared<QuadField>(d); }

// Brute-force count of x + y omega with norm m, for the rank-one unit lattice.
long elements_of_norm(long d, long m) {
    long c = (1 - d) / 4, count = 0;
    for (long y = -2 * m - 2; y <= 2 * m + 2; ++y)
        for (long x = -2 * m - 2; x <= 2 * m + 2; ++x)
            if (x * x + x * y + c * y * y == m) ++count;
    return count;
}

}  // namespace

TEST_CASE("representation numbers of the unit lattice") {
    auto K = field_of(-7);
    HermitianLattice L = unit_lattice(K, 1);
    CHECK(L.rep_number(Rat(2)) == 4);
    CHECK(L.rep_number(make_rat(1, 7), 7) == 2);
    CHECK(L.rep_number(make_rat(1, 3)) == 0);
    CHECK(L.rep_number(Rat(0)) == 1);
    for (long d : {-3L, -7L, -11L})
        for (long m = 1; m <= 200; ++m) {
            auto F = field_of(d);
            CHECK(unit_lattice(F, 1).rep_number(Rat(m)) == F->unit_count() * F->rho(Rat(m)));
        }
}

TEST_CASE("rank two counts are convolutions") {
    auto K = field_of(-11);
    HermitianLattice L2 = unit_lattice(K, 2);
    for (long m = 0; m <= 30; ++m) {
        long conv = 0;
        for (long a = 0; a <= m; ++a) {
            long ra = a == 0 ? 1 : elements_of_norm(-11, a);
            long rb = m - a == 0 ? 1 : elements_of_norm(-11, m - a);
            conv += ra * rb;
        }
        CHECK(L2.rep_number(Rat(m)) == conv);
    }
}

TEST_CASE("positive definiteness and self-duality") {
    auto K = field_of(-7);
    KMat bad{{QuadElem(1, 0), QuadElem(0, 0)}, {QuadElem(0, 0), QuadElem(-1, 0)}};
    CHECK_THROWS_AS(HermitianLattice::from_gram(K, bad), NotPositiveDefinite);
    HermitianLattice L = unit_lattice(K, 2);
    CHECK(L.is_integral());
    CHECK(L.is_self_dual());
    CHECK(L.hermitian_det() == 1);
    HermitianLattice L2 = HermitianLattice::ideal_diagonal(K, {{Ideal{}, Rat(2)}});
    CHECK(L2.is_integral());
    CHECK_FALSE(L2.is_self_dual());
}

TEST_CASE("automorphism group orders") {
    CHECK(unit_lattice(field_of(-7), 1).aut_size() == 2);
    CHECK(unit_lattice(field_of(-3), 1).aut_size() == 6);
    CHECK(unit_lattice(field_of(-7), 2).aut_size() == 8);
    auto K = field_of(-7);
    HermitianLattice mixed = HermitianLattice::ideal_diagonal(K, {{Ideal{}, Rat(1)}, {Ideal{}, Rat(3)}});
    CHECK(mixed.aut_size() == 4);
}

TEST_CASE("local invariants") {
    auto K = field_of(-7);
    HermitianLattice L = unit_lattice(K, 1);
    CHECK(L.local_invariant(3) == 1);
    CHECK(L.local_invariant(2) == 1);
    HermSpaceSpec s0 = default_incoherent(K);
    CHECK(s0.invariant(7) == -1);
    CHECK(s0.product() == -1);
}

TEST_CASE("Diff sets") {
    auto K = field_of(-7);
    HermSpaceSpec s0 = incoherent_rank_one(K, {{7, -1}});
    CHECK(diff_set(s0, Rat(1)).primes == std::set<long>{7});
    CHECK(diff_set(s0, Rat(3)).primes == std::set<long>{3});
    CHECK(diff_set(s0, Rat(15)).primes == std::set<long>{3, 5, 7});
    for (long m = 1; m <= 100; ++m) {
        auto diff = diff_set(s0, Rat(m));
        CHECK(diff.primes.size() % 2 == 1);
        for (long p : diff.primes) CHECK_FALSE(K->is_split(p));
    }
}

TEST_CASE("nearby spaces") {
    auto K = field_of(-7);
    HermSpaceSpec s0 = incoherent_rank_one(K, {{7, -1}});
    HermSpaceSpec s7 = nearby_rank_one(s0, 7);
    CHECK(s7.invariant(7) == 1);
    CHECK(s7.product() == 1);
    HermSpaceSpec back = nearby_rank_one(s7, 7);
    CHECK(back.invariant(7) == -1);
    CHECK(back.product() == -1);
    CHECK(nearby_rank_one(s0, 3).invariant(3) == -1);
    CHECK_THROWS_AS(nearby_rank_one(s0, 2), SplitPrime);
}

TEST_CASE("rank-one genus and class twists") {
    auto K = field_of(-23);
    auto genus = genus_rank_one(K);
    REQUIRE(genus.size() == 3);
    CHECK(genus_rank_one(field_of(-15)).size() == 1);
    CHECK(genus_rank_one(field_of(-7)).size() == 1);
    for (const auto& L : genus) {
        CHECK(L.is_self_dual());
        CHECK(L.aut_size() == 2);
    }
    // Twisting O_k by each class reproduces the norm profile of some genus member.
    HermitianLattice O = unit_lattice(K, 1);
    for (const auto& rep : K->ideal_class_reps()) {
        auto counts = lambda_twist(O, rep.ideal).norm_counts(Rat(40));
        bool found = false;
        for (const auto& L : genus) found = found || L.norm_counts(Rat(40)) == counts;
        CHECK(found);
    }
    // The principal class gives back O_k.
    CHECK(lambda_twist(O, Ideal{}).norm_counts(Rat(40)) == O.norm_counts(Rat(40)));
}
