#pragma once

#include <Eigen/Dense>

#include "swemed/solver.hpp"

namespace swemed {

/// Mechanical energy density of the mixture for the order-0 model:
/// h u_m^2 / 2 + g (h + h_b)^2 / 2. Dry cells contribute g h_b^2 / 2.
double energy_density_0(const Primitives& s, const SedimentParams& p);

/// Order-1 energy h u_m^2 / 2 + h alpha_1^2 / 6 + g (h + h_b)^2 / 2.
/// Requires order >= 1; reduces exactly to the order-0 density at alpha_1 = 0.
double energy_density_1(const Primitives& s, const SedimentParams& p);

/// Froude number u_m / sqrt(g h); zero on dry cells.
double froude(const Primitives& s, const SedimentParams& p);

/// Discrete residual of the printed energy balance laws, second-order
/// centered in space and forward in time between two consecutive snapshots.
/// The density-contrast coupling beta = (rho_s - rho_w)/rho(c_m) is computed
/// per cell (inferred definition). `order` selects the order-0 or order-1
/// balance; fields of higher moment order are admitted, the balance then
/// ignores alpha_2 and beyond.
struct EnergyBudget {
  double total_energy = 0.0;     // sum E_i dx at the later snapshot
  double boundary_flux = 0.0;    // net energy flux out of the domain ends
  double dissipation = 0.0;      // integrated sign-definite sink terms
  double density_coupling = 0.0; // integrated beta-coupling term, kept apart
  double residual = 0.0;         // L1 norm of the per-cell residual
};

EnergyBudget energy_residual(const Field& before, const Field& after, double dt,
                             const Mesh& mesh, const SedimentParams& p, int order,
                             bool exchange_enabled, BoundaryPolicy boundary,
                             double dry_threshold,
                             Eigen::VectorXd* per_cell = nullptr);

/// Water column mass, integral of h over the domain.
double water_mass(const Field& field, const Mesh& mesh);

/// Total sediment inventory, integral of (1 - psi) h_b + h c_m.
double sediment_mass(const Field& field, const Mesh& mesh, const SedimentParams& p);

}  // namespace swemed
