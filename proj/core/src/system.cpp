#include "swemed/system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swemed {

Primitives recover_primitives(Eigen::Ref<const Eigen::VectorXd> w, int order,
                              double dry_threshold) {
  if (w.size() != state_size(order)) throw std::invalid_argument("state size mismatch");
  Primitives s;
  s.order = order;
  s.alpha.setZero(order);
  s.h_b = w(idx_bed(order));
  const double h = w(idx_h);
  if (h < dry_threshold) {
    s.h = std::max(h, 0.0);
    return s;
  }
  s.wet = true;
  s.h = h;
  s.u_m = w(idx_q) / h;
  for (int i = 1; i <= order; ++i) s.alpha(i - 1) = w(idx_moment(i)) / h;
  s.c_m = std::clamp(w(idx_conc(order)) / h, 0.0, 1.0);
  return s;
}

double bottom_velocity(const Primitives& s) { return s.u_b(); }

double velocity_profile(const Primitives& s, const ScaledLegendre& poly, double zeta) {
  double u = s.u_m;
  for (int j = 1; j <= s.order; ++j) u += s.alpha(j - 1) * poly.phi(j, zeta);
  return u;
}

ConcentrationCoeffs concentration_coefficients(double c_m, double S_b) {
  return {0.5 * S_b * c_m, 0.5 * (S_b - 2.0) * c_m};
}

double concentration_profile(double c_m, double S_b, double zeta) {
  const auto c = concentration_coefficients(c_m, S_b);
  const double phi1 = 1.0 - 2.0 * zeta;
  const double phi2 = 1.0 - 6.0 * zeta + 6.0 * zeta * zeta;
  return c_m + c.c1 * phi1 + c.c2 * phi2;
}

double sediment_weighted_velocity(double u_m, double alpha1, double alpha2, double S_b) {
  return u_m + S_b / 6.0 * alpha1 + (S_b - 2.0) / 10.0 * alpha2;
}

void assemble_transport(Eigen::Ref<Eigen::MatrixXd> out, const Primitives& s,
                        const BasisTables& tables, const SedimentParams& p,
                        MatrixKind kind, double dry_threshold) {
  const int n = s.order;
  if (tables.order() < n) throw std::invalid_argument("basis tables order too small");
  const int m = state_size(n);
  if (out.rows() != m || out.cols() != m) throw std::invalid_argument("matrix size mismatch");

  out.setZero();
  out(idx_h, idx_q) = 1.0;
  if (!s.wet || s.h < dry_threshold) return;

  const double h = s.h;
  const double u = s.u_m;
  const double g = p.g;
  const double rho = mixture_density(s.c_m, p);
  const double drho = p.rho_s - p.rho_w;

  // Exner-row derivatives always see the full state.
  const BedloadGradient d = bedload_flux_derivatives(h, s.u_b(), s.c_m, p, dry_threshold);

  // Fluid block: the regularization keeps only alpha_1.
  Eigen::VectorXd a = s.alpha;
  if (kind == MatrixKind::Regularized)
    for (int i = 2; i <= n; ++i) a(i - 1) = 0.0;

  // Momentum row.
  double alpha_sq = 0.0;
  for (int j = 1; j <= n; ++j) alpha_sq += a(j - 1) * a(j - 1) / (2.0 * j + 1.0);
  out(idx_q, idx_h) = g * h - u * u - alpha_sq - g * h * s.c_m * drho / (2.0 * rho);
  out(idx_q, idx_q) = 2.0 * u;
  for (int j = 1; j <= n; ++j) out(idx_q, idx_moment(j)) = 2.0 * a(j - 1) / (2.0 * j + 1.0);
  out(idx_q, idx_conc(n)) = g * h * drho / (2.0 * rho);
  out(idx_q, idx_bed(n)) = g * h;

  // Moment rows: convective block u_m I + (2A + B) alpha, the buoyancy
  // chain-rule terms weighted by K_i, and the bedload block G alpha delta.
  for (int i = 1; i <= n; ++i) {
    const int r = idx_moment(i);
    double quad = 0.0;
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) quad += tables.A(i, j, k) * a(j - 1) * a(k - 1);
    double g_dot_alpha = 0.0;
    for (int j = 1; j <= n; ++j) g_dot_alpha += a(j - 1) * tables.G(i, j);
    const double buoy = (2.0 * i + 1.0) * g * h * drho / rho * tables.K(i);

    out(r, idx_h) = -2.0 * u * a(i - 1) - quad + buoy * s.c_m + g_dot_alpha * d.dh;
    out(r, idx_q) = 2.0 * a(i - 1) + g_dot_alpha * d.dq;
    for (int l = 1; l <= n; ++l) {
      double conv = (i == l) ? u : 0.0;
      for (int k = 1; k <= n; ++k)
        conv += (2.0 * tables.A(i, l, k) + tables.B(i, l, k)) * a(k - 1);
      out(r, idx_moment(l)) = conv + g_dot_alpha * d.dq;
    }
    out(r, idx_conc(n)) = -buoy + g_dot_alpha * d.dc;
  }

  // Suspended-load advection row.
  out(idx_conc(n), idx_h) = -s.c_m * u;
  out(idx_conc(n), idx_q) = s.c_m;
  out(idx_conc(n), idx_conc(n)) = u;

  // Exner row.
  out(idx_bed(n), idx_h) = d.dh;
  out(idx_bed(n), idx_q) = d.dq;
  for (int i = 1; i <= n; ++i) out(idx_bed(n), idx_moment(i)) = d.dq;
  out(idx_bed(n), idx_conc(n)) = d.dc;
}

Eigen::MatrixXd assemble_full(const Primitives& s, const BasisTables& tables,
                              const SedimentParams& p, double dry_threshold) {
  Eigen::MatrixXd out(state_size(s.order), state_size(s.order));
  assemble_transport(out, s, tables, p, MatrixKind::Full, dry_threshold);
  return out;
}

Eigen::MatrixXd assemble_regularized(const Primitives& s, const BasisTables& tables,
                                     const SedimentParams& p, double dry_threshold) {
  Eigen::MatrixXd out(state_size(s.order), state_size(s.order));
  assemble_transport(out, s, tables, p, MatrixKind::Regularized, dry_threshold);
  return out;
}

SourceVector source(const Primitives& s, const BasisTables& tables,
                    const SedimentParams& p, bool exchange_enabled) {
  const int n = s.order;
  const int m = state_size(n);
  SourceVector sv;
  sv.friction.setZero(m);
  sv.exchange.setZero(m);
  if (!s.wet) return sv;

  const double ub = s.u_b();
  const double fric = p.eps * std::abs(ub) * ub;

  sv.friction(idx_q) = -fric;
  for (int i = 1; i <= n; ++i) {
    double shear = 0.0;
    for (int j = 1; j <= n; ++j) shear += s.alpha(j - 1) * tables.C(i, j);
    sv.friction(idx_moment(i)) = -(2.0 * i + 1.0) * (fric + p.nu / s.h * shear);
  }

  if (exchange_enabled) {
    const ExchangeRates ex = exchange(ub, s.c_m, p);
    const double fb = ex.bed_exchange;
    sv.exchange(idx_h) = fb;
    sv.exchange(idx_q) = fb * ub;
    for (int i = 1; i <= n; ++i) {
      double mix = s.alpha(i - 1);
      for (int j = 1; j <= n; ++j)
        mix += s.alpha(j - 1) * (tables.H(i, j) - tables.G(i, j));
      sv.exchange(idx_moment(i)) = fb * mix;
    }
    sv.exchange(idx_conc(n)) = (1.0 - p.psi) * fb;  // = E - D
    sv.exchange(idx_bed(n)) = -fb;
  }
  return sv;
}

}  // namespace swemed
