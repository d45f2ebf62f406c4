#pragma once

// Independent reference computations used by the test and acceptance suites.
// Nothing here shares code with the production paths it is compared against.

#include <complex>
#include <vector>

#include "blinksig/laurent.hpp"

namespace blinksig::oracle {

/// Laplace expansion along the first row.
LaurentPoly cofactor_det(const LaurentMatrix& m);

/// Determinant of a small dense complex matrix by Laplace expansion.
std::complex<double> cofactor_det(const std::vector<std::vector<std::complex<double>>>& m);

/// Eigenvalues of a 2x2 Hermitian matrix [[a, b], [conj b, d]] from the
/// characteristic polynomial, ascending.
std::vector<double> hermitian_2x2_eigenvalues(double a, std::complex<double> b, double d);

}  // namespace blinksig::oracle
