#pragma once

#include <string>

#include <json.hpp>

#include "arithlift/arith_number.hpp"
#include "arithlift/fqm.hpp"
#include "arithlift/hermlat.hpp"
#include "arithlift/lfunc.hpp"
#include "arithlift/qexpand.hpp"

namespace arithlift {

using json = nlohmann::json;

// Scalars: an integer, a "p/q" string, a float, or [re, im].
Scalar scalar_from_json(const json& j);
json scalar_to_json(const Scalar& x);
Rat rational_from_json(const json& j);
// Field element a + b*omega from [a, b] or a plain integer.
QuadElem quad_from_json(const json& j);

json arithmetic_to_json(const ArithmeticNumber& x, double lchi_value);

// Lattice schema:
//   { "discriminant": int, "rank": int, "gram": [[[a, b], ...], ...], "self_dual": bool?,
//     "ideal_diagonal": [{ "ideal": ..., "scale": "p/q" }]? }
// An "ideal" is either one element [a, b] (principal) or a list of such generators.
// Throws ParseError, NotPositiveDefinite, NonFundamental.
HermitianLattice lattice_from_json(const json& j);
HermitianLattice load_lattice(const std::string& path);
json lattice_to_json(const HermitianLattice& L);

// Incoherent rank-one space from "default" or a list "p:e,p:e" of local invariants.
HermSpaceSpec parse_space_spec(std::shared_ptr<const QuadField> field, const std::string& text);

// Class group character from turns "t0,t1,..." on ideal_class_reps() (e.g. "0,1/3,2/3").
ClassCharacter parse_class_character(const QuadField& K, const std::string& text);

json sfunction_to_json(const SFunction& f, const json& module_ref);
SFunction sfunction_from_json(const json& j, FQMPtr module);

// { "weight": "2-n", "n": int, "coeffs": [{ "mu": [ints], "m": "p/q", "c_plus": scalar,
//   "c_minus": scalar }], "delta_invariant": bool }. Exponent denominators must divide D.
HarmonicFormData harmonic_form_from_json(const json& j, FQMPtr module, long D);
HarmonicFormData load_harmonic_form(const std::string& path, FQMPtr module, long D);
json harmonic_form_to_json(const HarmonicFormData& f);

json read_json_file(const std::string& path);

}  // namespace arithlift
