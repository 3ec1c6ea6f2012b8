#include "swemed/sediment.hpp"

#include <cmath>
#include <stdexcept>

namespace swemed {

void SedimentParams::validate() const {
  if (!(rho_w > 0.0) || !(rho_s > rho_w))
    throw std::invalid_argument("require rho_s > rho_w > 0");
  if (!(psi >= 0.0 && psi < 1.0)) throw std::invalid_argument("porosity psi must lie in [0,1)");
  if (!(d_s > 0.0)) throw std::invalid_argument("particle diameter d_s must be positive");
  if (!(D_sg > 0.0)) throw std::invalid_argument("suspended size D_sg must be positive");
  if (eps < 0.0) throw std::invalid_argument("friction coefficient eps must be >= 0");
  if (theta_c < 0.0) throw std::invalid_argument("critical Shields number must be >= 0");
  if (!(nu_w > 0.0)) throw std::invalid_argument("water viscosity nu_w must be positive");
  if (nu < 0.0) throw std::invalid_argument("in-fluid viscosity nu must be >= 0");
  if (c_D < 0.0) throw std::invalid_argument("bed drag coefficient c_D must be >= 0");
  if (!(g > 0.0)) throw std::invalid_argument("gravity must be positive");
}

SedimentParams pvc_params() {
  SedimentParams p;
  p.rho_s = 1580.0;
  p.theta_c = 0.047;
  p.psi = 0.47;
  p.d_s = 3.9e-3;
  p.eps = 0.0324;
  p.c_D = p.eps;
  p.D_sg = p.d_s;
  return p;
}

SedimentParams sand_params() {
  SedimentParams p;
  p.rho_s = 2683.0;
  p.theta_c = 0.047;
  p.psi = 0.47;
  p.d_s = 1.82e-3;
  p.eps = 0.0104;
  p.c_D = p.eps;
  p.D_sg = p.d_s;
  return p;
}

double mixture_density(double c_m, const SedimentParams& p) {
  if (!(c_m >= 0.0 && c_m <= 1.0))
    throw std::domain_error("concentration must lie in [0,1]");
  return p.rho_w + c_m * (p.rho_s - p.rho_w);
}

ShieldsStress shields(double u_b, double c_m, const SedimentParams& p) {
  const double rho = mixture_density(c_m, p);
  const double theta = rho * p.eps * u_b * u_b / (p.g * (p.rho_s - p.rho_w) * p.d_s);
  const double sign = (u_b > 0.0) ? 1.0 : (u_b < 0.0 ? -1.0 : 0.0);
  return {theta, sign};
}

double mpm_phi(double theta, double theta_c) {
  const double ex = theta - theta_c;
  return ex > 0.0 ? 8.0 * ex * std::sqrt(ex) : 0.0;
}

double characteristic_discharge(const SedimentParams& p) {
  return std::sqrt((p.rho_s / p.rho_w - 1.0) * p.g * p.d_s * p.d_s * p.d_s);
}

double bedload_flux(double u_b, double c_m, const SedimentParams& p) {
  const auto st = shields(u_b, c_m, p);
  return st.sign * characteristic_discharge(p) * mpm_phi(st.theta, p.theta_c);
}

BedloadGradient bedload_flux_derivatives(double h, double u_b, double c_m,
                                         const SedimentParams& p,
                                         double dry_threshold) {
  BedloadGradient d;
  if (!(h >= dry_threshold)) return d;
  const auto st = shields(u_b, c_m, p);
  const double ex = st.theta - p.theta_c;
  if (ex <= 0.0) return d;
  const double rho = mixture_density(c_m, p);
  const double q = characteristic_discharge(p);
  d.dq = 24.0 * q / (1.0 - p.psi) * st.sign * rho * p.eps /
         (p.g * (p.rho_s - p.rho_w) * p.d_s) * std::sqrt(ex) * u_b / h;
  d.dh = -u_b * (1.0 + c_m * (p.rho_s - p.rho_w) / (2.0 * rho)) * d.dq;
  d.dc = u_b * (p.rho_s - p.rho_w) / (2.0 * rho) * d.dq;
  return d;
}

double settling_velocity(const SedimentParams& p) {
  if (p.omega_o_override) return *p.omega_o_override;
  const double a = 13.95 * p.nu_w / p.d_s;
  return std::sqrt(a * a + 1.09 * (p.rho_s / p.rho_w - 1.0) * p.g * p.d_s) - a;
}

double particle_reynolds(const SedimentParams& p) {
  return std::sqrt((p.rho_s - p.rho_w) * p.g * p.d_s) * p.d_s / p.nu_w;
}

double erosion_rate(double u_b, const SedimentParams& p) {
  const double rp = particle_reynolds(p);
  const double gamma1 = rp > 2.36 ? 1.0 : 0.586;
  const double gamma2 = rp > 2.36 ? 0.6 : 1.23;
  const double omega = settling_velocity(p);
  const double z = gamma1 * std::sqrt(p.c_D) * std::abs(u_b) * std::pow(rp, gamma2) / omega;
  const double z5 = std::pow(z, 5);
  const double es = 1.3e-7 * z5 / (1.0 + 4.3e-7 * z5);
  return omega * (1.0 - p.psi) * es;
}

double bradford_factor(const SedimentParams& p) {
  return 0.4 * std::pow(p.d_s / p.D_sg, 1.64) + 1.64;
}

double deposition_rate(double c_m, const SedimentParams& p) {
  return settling_velocity(p) * bradford_factor(p) * c_m;
}

ExchangeRates exchange(double u_b, double c_m, const SedimentParams& p) {
  ExchangeRates r;
  r.erosion = erosion_rate(u_b, p);
  r.deposition = deposition_rate(c_m, p);
  r.bed_exchange = (r.erosion - r.deposition) / (1.0 - p.psi);
  return r;
}

}  // namespace swemed
