#pragma once

#include "latdec/exact.hpp"

namespace latdec {

using IntMatrix = Matrix<Integer>;

/// Row-style Hermite normal form of the Z-span of the rows of m: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped, so rows() is the rank.
IntMatrix hermite_normal_form(IntMatrix m);

/// Least common denominator of all rational coordinates (both the rational
/// and the sqrt7 part) of the entries.
Integer common_denominator(const ExactMatrix& m);

/// Maps each coordinate a + b*sqrt7 to the integer pair (D*a, D*b), turning a
/// lattice in Q(sqrt7)^n into an integer lattice in Z^{2n}. D must clear all
/// denominators.
IntMatrix integerize(const ExactMatrix& m, const Integer& denom);
ExactMatrix deintegerize(const IntMatrix& m, const Integer& denom);

/// True iff every row of sub lies in the Z-span of super's rows.
bool lattice_contains(const ExactMatrix& super, const ExactMatrix& sub);
bool same_lattice(const ExactMatrix& a, const ExactMatrix& b);

/// A basis of the Z-span of arbitrary generator rows; throws unless the span
/// has full rank equal to the coordinate dimension.
ExactMatrix lattice_from_generators(const ExactMatrix& generators);

/// Solves v = z * basis; returns false if z is not integral.
bool integral_coordinates(const ExactVector& v, const ExactMatrix& basis_inverse,
                          std::vector<Integer>* z = nullptr);

}  // namespace latdec
