#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "swemed/system.hpp"

namespace swemed {

struct SpectralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// det(A - lambda I) by LU with partial pivoting.
double char_poly_direct(const Eigen::MatrixXd& matrix, double lambda);

/// Closed-form factorization of the characteristic polynomial of the
/// regularized transport matrix: a (u_m - lambda) factor, a quartic built
/// from the shallow-water/Exner coupling, and the characteristic polynomial
/// of the off-bidiagonal moment block A_2 with entries
/// c_i = (i+1)/(2i+1) alpha_1 and a_i = (i-1)/(2i-1) alpha_1.
/// For N = 1 the moment block is the 1x1 zero matrix, which contributes the
/// second (u_m - lambda) factor; for N = 0 it contributes nothing.
struct CharFactorization {
  int order = 0;
  double u_m = 0.0;
  double gh = 0.0;
  double alpha1 = 0.0;
  double c_m = 0.0;
  BedloadGradient delta;

  /// Bracketed cubic: (-l)((l-u_m)^2 - gh - a1^2) + gh (dh + l dq + c_m dc + 2 a1 dq).
  double bracket(double lambda) const;

  /// Coefficients of the quartic (u_m - lambda) * bracket(lambda),
  /// ascending powers of lambda.
  std::array<double, 5> quartic_coefficients() const;

  /// chi_{A_2}(mu) = det(A_2 - mu I) via the three-term tridiagonal
  /// determinant recurrence.
  double moment_block_charpoly(double mu) const;

  double evaluate(double lambda) const;
};

CharFactorization factorization(const Primitives& s, const SedimentParams& p,
                                double dry_threshold = 1e-4);

double char_poly_factored(const Primitives& s, const SedimentParams& p, double lambda,
                          double dry_threshold = 1e-4);

/// Dense spectrum of a transport matrix. Eigenvalues are reported by real
/// part (ascending, stable); the imaginary residue is kept for
/// hyperbolicity verification.
struct Spectrum {
  std::vector<double> values;  // real parts, sorted ascending
  double max_imag = 0.0;       // largest |Im(lambda)|
  double radius = 0.0;         // spectral radius max |lambda|

  bool real_within(double rel_tol) const {
    return max_imag <= rel_tol * std::max(radius, 1e-300);
  }
};

/// Throws SpectralError if the eigensolver fails to converge.
Spectrum eigenvalues(const Eigen::MatrixXd& matrix);

/// max |lambda_i|; zero for the dry-cell matrix.
double max_wave_speed(const Eigen::MatrixXd& matrix);

/// Spectral radius of the alpha_1-normalized moment block (the largest |b_i|
/// with block eigenvalues u_m + b_i alpha_1). Cached per order.
double moment_block_radius(int order);

/// Cheap upper bound on the spectral radius of the regularized matrix:
/// max(|u_m| + b_max |alpha_1|, |u_m| + sqrt(gh + alpha_1^2) + Delta_delta)
/// with Delta_delta a Gershgorin majorant of the Exner-row perturbation.
double wave_speed_bound(const Primitives& s, const SedimentParams& p,
                        double dry_threshold = 1e-4);

}  // namespace swemed
