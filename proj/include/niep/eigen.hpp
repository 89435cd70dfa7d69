#pragma once

#include <complex>
#include <vector>

#include "niep/matrix.hpp"

namespace niep {

using Complex = std::complex<double>;

/// All n eigenvalues of M by balancing, Householder reduction to Hessenberg
/// form and shifted QR iteration (Wilkinson shift), with a 500·n iteration
/// cap. Throws ConvergenceFailure if the cap is hit.
std::vector<Complex> numeric_eigenvalues(const Matrix& M, double tol = 1e-10);
std::vector<Complex> numeric_eigenvalues(std::vector<std::vector<Complex>> a, double tol = 1e-10);

/// Largest |computed - expected| after pairing the two multisets by sorted
/// order (real part, then imaginary part).
double eigen_match_residual(std::vector<Complex> computed, std::vector<Complex> expected);

} // namespace niep
