#include "swemed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace swemed {

double char_poly_direct(const Eigen::MatrixXd& matrix, double lambda) {
  Eigen::MatrixXd shifted = matrix;
  shifted.diagonal().array() -= lambda;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(shifted).determinant();
}

double CharFactorization::bracket(double lambda) const {
  const double du = lambda - u_m;
  return -lambda * (du * du - gh - alpha1 * alpha1) +
         gh * (delta.dh + lambda * delta.dq + c_m * delta.dc + 2.0 * alpha1 * delta.dq);
}

std::array<double, 5> CharFactorization::quartic_coefficients() const {
  const double b0 = gh * (delta.dh + c_m * delta.dc + 2.0 * alpha1 * delta.dq);
  const double b1 = gh + alpha1 * alpha1 - u_m * u_m + gh * delta.dq;
  const double b2 = 2.0 * u_m;
  const double b3 = -1.0;
  return {u_m * b0, u_m * b1 - b0, u_m * b2 - b1, u_m * b3 - b2, -b3};
}

double CharFactorization::moment_block_charpoly(double mu) const {
  if (order <= 0) return 1.0;
  double d_prev = 1.0;
  double d = -mu;
  for (int k = 2; k <= order; ++k) {
    const double ck = (k + 1.0) / (2.0 * k + 1.0) * alpha1;
    const double ak = (k - 1.0) / (2.0 * k - 1.0) * alpha1;
    const double d_next = -mu * d - ck * ak * d_prev;
    d_prev = d;
    d = d_next;
  }
  return d;
}

double CharFactorization::evaluate(double lambda) const {
  return (u_m - lambda) * bracket(lambda) * moment_block_charpoly(lambda - u_m);
}

CharFactorization factorization(const Primitives& s, const SedimentParams& p,
                                double dry_threshold) {
  CharFactorization f;
  f.order = s.order;
  if (!s.wet || s.h < dry_threshold) return f;  // matches the bare dry-cell matrix
  f.u_m = s.u_m;
  f.gh = p.g * s.h;
  f.alpha1 = s.order >= 1 ? s.alpha(0) : 0.0;
  f.c_m = s.c_m;
  f.delta = bedload_flux_derivatives(s.h, s.u_b(), s.c_m, p, dry_threshold);
  return f;
}

double char_poly_factored(const Primitives& s, const SedimentParams& p, double lambda,
                          double dry_threshold) {
  return factorization(s, p, dry_threshold).evaluate(lambda);
}

Spectrum eigenvalues(const Eigen::MatrixXd& matrix) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw SpectralError("eigensolver failed to converge");
  Spectrum sp;
  const auto& ev = solver.eigenvalues();
  sp.values.resize(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    sp.values[i] = ev(i).real();
    sp.max_imag = std::max(sp.max_imag, std::abs(ev(i).imag()));
    sp.radius = std::max(sp.radius, std::abs(ev(i)));
  }
  std::stable_sort(sp.values.begin(), sp.values.end());
  return sp;
}

double max_wave_speed(const Eigen::MatrixXd& matrix) {
  return eigenvalues(matrix).radius;
}

double moment_block_radius(int order) {
  constexpr int kMaxOrder = 32;
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("order out of range");
  static std::array<double, kMaxOrder + 1> cache;
  static std::array<bool, kMaxOrder + 1> ready{};
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (!ready[order]) {
    double radius = 0.0;
    if (order >= 2) {
      Eigen::MatrixXd block = Eigen::MatrixXd::Zero(order, order);
      for (int k = 2; k <= order; ++k) {
        block(k - 2, k - 1) = (k + 1.0) / (2.0 * k + 1.0);
        block(k - 1, k - 2) = (k - 1.0) / (2.0 * k - 1.0);
      }
      radius = eigenvalues(block).radius;
    }
    cache[order] = radius;
    ready[order] = true;
  }
  return cache[order];
}

double wave_speed_bound(const Primitives& s, const SedimentParams& p,
                        double dry_threshold) {
  if (!s.wet || s.h < dry_threshold) return 0.0;
  const double alpha1 = s.order >= 1 ? std::abs(s.alpha(0)) : 0.0;
  const BedloadGradient d = bedload_flux_derivatives(s.h, s.u_b(), s.c_m, p, dry_threshold);
  const double delta_majorant =
      std::abs(d.dh) + (s.order + 1.0) * std::abs(d.dq) + std::abs(d.dc);
  const double moment_part = std::abs(s.u_m) + moment_block_radius(s.order) * alpha1;
  const double wave_part =
      std::abs(s.u_m) + std::sqrt(p.g * s.h + alpha1 * alpha1) + delta_majorant;
  return std::max(moment_part, wave_part);
}

}  // namespace swemed
