#pragma once

#include <optional>

namespace swemed {

/// Physical closure constants for one bed material. Particle sizes are in
/// metres here; configuration files and the literature tables carry them in
/// millimetres and are converted on ingestion.
struct SedimentParams {
  double rho_w = 1000.0;   // water density, kg/m^3
  double rho_s = 1580.0;   // sediment density, kg/m^3
  double theta_c = 0.047;  // critical Shields number
  double psi = 0.47;       // bed porosity
  double d_s = 0.0039;     // particle diameter, m
  double eps = 0.0324;     // Manning-type bed friction coefficient
  double nu = 1e-6;        // in-fluid Newtonian viscosity, m^2/s
  double nu_w = 1e-6;      // kinematic viscosity of water, m^2/s
  double c_D = 0.0324;     // bed drag coefficient (defaults to eps)
  double g = 9.81;         // gravity, m/s^2
  double D_sg = 0.0039;    // geometric mean suspended size, m (defaults to d_s)
  std::optional<double> omega_o_override;  // pins the settling velocity

  void validate() const;  // throws std::invalid_argument on bad constants
};

SedimentParams pvc_params();
SedimentParams sand_params();

/// rho = rho_w + c_m (rho_s - rho_w). Throws std::domain_error if c_m is
/// outside [0,1]; callers clamp first where undershoot is expected.
double mixture_density(double c_m, const SedimentParams& p);

/// Nonnegative Shields number plus the sign of the bed shear stress,
/// taken as sgn(u_b) so bedload moves with the flow.
struct ShieldsStress {
  double theta;
  double sign;
};
ShieldsStress shields(double u_b, double c_m, const SedimentParams& p);

/// Meyer-Peter & Mueller bedload law: 8 (theta - theta_c)_+^{3/2}.
double mpm_phi(double theta, double theta_c);

/// Characteristic discharge Q = sqrt((rho_s/rho_w - 1) g d_s^3).
double characteristic_discharge(const SedimentParams& p);

/// Signed bedload discharge Q_b = sgn(tau) Q Phi(theta).
double bedload_flux(double u_b, double c_m, const SedimentParams& p);

/// Partial derivatives of Q_b/(1-psi) with respect to the conserved
/// variables: dh w.r.t. h, dq w.r.t. hu_m (and each h alpha_i), dc w.r.t.
/// h c_m. All zero below the dry threshold or below critical stress.
struct BedloadGradient {
  double dh = 0.0;
  double dq = 0.0;
  double dc = 0.0;
};
BedloadGradient bedload_flux_derivatives(double h, double u_b, double c_m,
                                         const SedimentParams& p,
                                         double dry_threshold);

/// Settling velocity. The dimensionally consistent form (no water-density
/// prefactor under the root) is used; an override on the parameter set wins.
double settling_velocity(const SedimentParams& p);

double particle_reynolds(const SedimentParams& p);

/// Erosion rate E = omega_o (1-psi) E_s with the Garcia-Parker coefficient.
double erosion_rate(double u_b, const SedimentParams& p);

/// Bradford near-bed enrichment factor S_b = 0.4 (d_s/D_sg)^1.64 + 1.64.
double bradford_factor(const SedimentParams& p);

/// Deposition rate D = omega_o S_b c_m.
double deposition_rate(double c_m, const SedimentParams& p);

struct ExchangeRates {
  double erosion = 0.0;       // E
  double deposition = 0.0;    // D
  double bed_exchange = 0.0;  // F_b = (E - D)/(1 - psi)
};
ExchangeRates exchange(double u_b, double c_m, const SedimentParams& p);

}  // namespace swemed
