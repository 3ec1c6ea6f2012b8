#pragma once

#include <Eigen/Dense>

#include "swemed/basis.hpp"
#include "swemed/sediment.hpp"

namespace swemed {

/// Conserved layout per cell: [h, h u_m, h alpha_1 .. h alpha_N, h c_m, h_b].
constexpr int state_size(int order) { return order + 4; }

constexpr int idx_h = 0;
constexpr int idx_q = 1;
constexpr int idx_moment(int i) { return 1 + i; }  // moment index i in 1..N
constexpr int idx_conc(int order) { return order + 2; }
constexpr int idx_bed(int order) { return order + 3; }

/// Per-cell primitive variables. Below the dry threshold every primitive
/// except the bed elevation is zero; c_m is clamped into [0,1] for closure
/// evaluation (the conserved state is clamped separately by the solver).
struct Primitives {
  int order = 0;
  bool wet = false;
  double h = 0.0;
  double u_m = 0.0;
  double c_m = 0.0;
  double h_b = 0.0;
  Eigen::VectorXd alpha;  // size N

  double u_b() const { return wet ? u_m + alpha.sum() : 0.0; }
};

Primitives recover_primitives(Eigen::Ref<const Eigen::VectorXd> w, int order,
                              double dry_threshold);

/// u_b = u_m + sum_j alpha_j (zero on dry cells).
double bottom_velocity(const Primitives& s);

/// Reconstructed horizontal velocity u_m + sum alpha_j phi_j(zeta).
double velocity_profile(const Primitives& s, const ScaledLegendre& poly, double zeta);

/// Coefficients of the quadratic concentration profile with mean c_m,
/// bed value S_b c_m and zero surface value.
struct ConcentrationCoeffs {
  double c1;
  double c2;
};
ConcentrationCoeffs concentration_coefficients(double c_m, double S_b);

double concentration_profile(double c_m, double S_b, double zeta);

/// Sediment-weighted mean velocity u_c (diagnostic only; transport uses u_m).
double sediment_weighted_velocity(double u_m, double alpha1, double alpha2, double S_b);

enum class MatrixKind { Full, Regularized };

/// Quasilinear transport matrix of the coupled system,
/// A = dF/dW - B + A_s, assembled entry-by-entry from the basis tables and
/// the bedload-flux derivatives. The regularized kind zeroes
/// alpha_2..alpha_N inside the fluid block while the Exner-row derivatives
/// keep their full-state values. Dry cells yield the bare mass-row matrix.
void assemble_transport(Eigen::Ref<Eigen::MatrixXd> out, const Primitives& s,
                        const BasisTables& tables, const SedimentParams& p,
                        MatrixKind kind, double dry_threshold);

Eigen::MatrixXd assemble_full(const Primitives& s, const BasisTables& tables,
                              const SedimentParams& p, double dry_threshold = 1e-4);
Eigen::MatrixXd assemble_regularized(const Primitives& s, const BasisTables& tables,
                                     const SedimentParams& p, double dry_threshold = 1e-4);

/// Right-hand side split into the friction part S_F and the
/// erosion-deposition part S_ED. Dry cells produce zero vectors.
struct SourceVector {
  Eigen::VectorXd friction;
  Eigen::VectorXd exchange;
  Eigen::VectorXd total() const { return friction + exchange; }
};

SourceVector source(const Primitives& s, const BasisTables& tables,
                    const SedimentParams& p, bool exchange_enabled = true);

}  // namespace swemed
