#pragma once

#include <vector>

#include "arithlift/rational.hpp"

namespace arithlift {

using RatMat = std::vector<std::vector<Rat>>;
using IntMat = std::vector<std::vector<Int>>;

RatMat rat_identity(size_t n);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatMat rat_transpose(const RatMat& a);
Rat rat_det(RatMat a);
// Throws DomainError when singular.
RatMat rat_inverse(const RatMat& a);

// Row-style Hermite normal form of the Z-span of integer row vectors. The span must have
// full rank; the result is an upper triangular square basis with positive diagonal.
IntMat hnf_rows(const IntMat& gens);
// Same for rational generators (scaled to integers and back).
RatMat lattice_basis(const RatMat& gens);

// Smith normal form X A Y = diag(d_1, ..., d_n) with d_i | d_{i+1}, X and Y unimodular.
struct SmithForm {
    IntMat X, Y;
    std::vector<Int> diag;
};
SmithForm smith_form(const IntMat& a);

}  // namespace arithlift
