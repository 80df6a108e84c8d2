#include <doctest.h>

#include <memory>

#include "arithlift/errors.hpp"
#include "arithlift/io.hpp"

using namespace arithlift;

namespace {

std::shared_ptr<const QuadField> field_of(long d) { return std::make_shared<QuadField>(d); }

}  // namespace

TEST_CASE("scalar round trips") {
    for (const Scalar& x : {Scalar(0), Scalar(7), Scalar(make_rat(-3, 11)), Scalar(std::complex<double>(0.25, -1.5))}) {
        Scalar back = scalar_from_json(scalar_to_json(x));
        CHECK(back == x);
        CHECK(back.is_exact() == x.is_exact());
    }
    CHECK(scalar_from_json(json("5/10")) == Scalar(make_rat(1, 2)));
    CHECK(scalar_from_json(json(0.5)).value() == std::complex<double>(0.5, 0));
    CHECK_THROWS_AS(scalar_from_json(json("abc")), ParseError);
    CHECK_THROWS_AS(scalar_from_json(json("1/0")), ParseError);
    CHECK(rational_from_json(json(-4)) == -4);
    CHECK(quad_from_json(json::array({1, 2})) == QuadElem(1, 2));
}

TEST_CASE("lattice round trips") {
    json j = json::parse(R"({"discriminant": -7, "rank": 2,
                             "gram": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})");
    HermitianLattice L = lattice_from_json(j);
    CHECK(L.rank() == 2);
    CHECK(L.is_self_dual());
    HermitianLattice back = lattice_from_json(lattice_to_json(L));
    CHECK(back.norm_counts(Rat(6)) == L.norm_counts(Rat(6)));

    auto K = field_of(-23);
    HermitianLattice twisted = lambda_twist(unit_lattice(K, 1), K->ideal_class_reps().at(1).ideal);
    json tj = lattice_to_json(twisted);
    CHECK(tj.contains("ideal_diagonal"));
    HermitianLattice tback = lattice_from_json(tj);
    CHECK(tback.norm_counts(Rat(30)) == twisted.norm_counts(Rat(30)));

    json principal = json::parse(R"({"discriminant": -7, "rank": 1,
                                     "ideal_diagonal": [{"ideal": [1, 0], "scale": "1"}]})");
    CHECK(lattice_from_json(principal).norm_counts(Rat(10)) == unit_lattice(field_of(-7), 1).norm_counts(Rat(10)));
}

TEST_CASE("lattice input errors") {
    CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"discriminant": -7, "rank": 1, "gram": [[[-1, 0]]]})")),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"discriminant": -27, "rank": 1, "gram": [[[1, 0]]]})")),
                    NonFundamental);
    CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"discriminant": -7, "rank": 2, "gram": [[[1, 0]]]})")),
                    ParseError);
    CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"rank": 1})")), ParseError);
}

TEST_CASE("harmonic form round trips") {
    auto K = field_of(-7);
    auto M = FiniteQuadraticModule::from_lattice(unit_lattice(K, 1));
    HarmonicFormData f;
    f.n = 2;
    f.module = M;
    f.c_plus.emplace(make_rat(-1, 7), phi_basis(M, make_rat(1, 7), 7) * Scalar(make_rat(2, 3)));
    f.c_plus.emplace(Rat(0), SFunction::delta(M, 0) * Scalar(5));
    f.c_minus.emplace(Rat(-1), SFunction::delta(M, 0) * Scalar(std::complex<double>(0.5, 0.25)));
    f.validate();
    json j = harmonic_form_to_json(f);
    HarmonicFormData back = harmonic_form_from_json(j, M, 7);
    CHECK(back.n == 2);
    CHECK(back.c_plus.size() == f.c_plus.size());
    for (auto& [m, phi] : f.c_plus) CHECK(back.cp(m) == phi);
    for (auto& [m, phi] : f.c_minus) CHECK(back.cm(m) == phi);
}

TEST_CASE("harmonic form input errors") {
    auto K = field_of(-7);
    auto M = FiniteQuadraticModule::from_lattice(unit_lattice(K, 1));
    // Exponent denominator 3 does not divide D = 7.
    json bad_den = json::parse(R"({"weight": "2-n", "n": 2,
                                   "coeffs": [{"mu": [0], "m": "-1/3", "c_plus": 1}]})");
    CHECK_THROWS_AS(harmonic_form_from_json(bad_den, M, 7), DomainMismatch);
    // Non-holomorphic coefficients only live at negative exponents.
    json bad_minus = json::parse(R"({"weight": "2-n", "n": 2,
                                     "coeffs": [{"mu": [0], "m": "1", "c_minus": 1}]})");
    CHECK_THROWS(harmonic_form_from_json(bad_minus, M, 7));
}

TEST_CASE("space and character specifications") {
    auto K = field_of(-15);
    HermSpaceSpec s = parse_space_spec(K, "3:-1,5:1");
    CHECK(s.invariant(3) == -1);
    CHECK(s.invariant(5) == 1);
    CHECK(parse_space_spec(K, "default").product() == -1);
    CHECK_THROWS(parse_space_spec(K, "3:1,5:1"));
    CHECK_THROWS(parse_space_spec(K, "3:x"));

    QuadField K23(-23);
    ClassCharacter triv = parse_class_character(K23, "0,0,0");
    CHECK(triv.values.size() == 3);
    CHECK_THROWS(parse_class_character(K23, "0,1/3"));
}

TEST_CASE("arithmetic numbers in JSON") {
    ArithmeticNumber x = ArithmeticNumber::log_prime(7, make_rat(-2, 1));
    json j = arithmetic_to_json(x, 0.0);
    CHECK(j.at("symbolic").get<std::string>() == x.to_string());
    CHECK(j.at("value").get<double>() == doctest::Approx(-2 * std::log(7.0)));
}
