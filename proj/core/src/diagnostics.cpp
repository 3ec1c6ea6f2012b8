#include "swemed/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace swemed {

double energy_density_0(const Primitives& s, const SedimentParams& p) {
  const double surface = s.h + s.h_b;
  return 0.5 * s.h * s.u_m * s.u_m + 0.5 * p.g * surface * surface;
}

double energy_density_1(const Primitives& s, const SedimentParams& p) {
  if (s.order < 1) throw std::invalid_argument("order-1 energy needs a moment field");
  const double a1 = s.alpha(0);
  return energy_density_0(s, p) + s.h * a1 * a1 / 6.0;
}

double froude(const Primitives& s, const SedimentParams& p) {
  if (!s.wet) return 0.0;
  return s.u_m / std::sqrt(p.g * s.h);
}

namespace {

struct CellTerms {
  double energy = 0.0;
  double flux = 0.0;
  double surface = 0.0;       // h + h_b
  double shear_flow = 0.0;    // h^2 u_m (order 0) or h^2 (u_m + alpha_1/3)
  double beta_weight = 0.0;   // (g beta / 2) c_m
  double friction = 0.0;      // eps |u_b| u_b^2
  double exch_term = 0.0;     // S_m u_b^2 / 2
  double bedload = 0.0;       // g Q_b / (1 - psi)
  double viscous = 0.0;       // 4 nu alpha_1^2 / h (order 1 only)
};

CellTerms cell_terms(const Primitives& s, const SedimentParams& p, int order,
                     bool exchange_enabled) {
  CellTerms t;
  const double a1 = (order >= 1 && s.order >= 1) ? s.alpha(0) : 0.0;
  const double ub = order >= 1 ? s.u_m + a1 : s.u_m;
  const double rho = mixture_density(s.c_m, p);
  const double beta = (p.rho_s - p.rho_w) / rho;
  const double qb = s.wet ? bedload_flux(ub, s.c_m, p) : 0.0;
  const double sm =
      (s.wet && exchange_enabled) ? exchange(ub, s.c_m, p).bed_exchange : 0.0;

  t.surface = s.h + s.h_b;
  t.energy = order >= 1 ? energy_density_1(s, p) : energy_density_0(s, p);
  t.shear_flow = s.h * s.h * (s.u_m + (order >= 1 ? a1 / 3.0 : 0.0));
  t.beta_weight = 0.5 * p.g * beta * s.c_m;
  t.bedload = p.g * qb / (1.0 - p.psi);
  t.friction = p.eps * std::abs(ub) * ub * ub;
  t.exch_term = 0.5 * sm * ub * ub;
  if (order >= 1 && s.wet) t.viscous = 4.0 * p.nu * a1 * a1 / s.h;

  const double ke_flux = order >= 1
                             ? 0.5 * s.h * s.u_m * (s.u_m * s.u_m + a1 * a1)
                             : 0.5 * s.h * s.u_m * s.u_m * s.u_m;
  t.flux = ke_flux + 0.5 * p.g * beta * s.h * s.h * s.c_m * (s.u_m + (order >= 1 ? a1 / 3.0 : 0.0)) +
           p.g * s.h * s.u_m * t.surface + t.surface * t.bedload;
  return t;
}

}  // namespace

EnergyBudget energy_residual(const Field& before, const Field& after, double dt,
                             const Mesh& mesh, const SedimentParams& p, int order,
                             bool exchange_enabled, BoundaryPolicy boundary,
                             double dry_threshold, Eigen::VectorXd* per_cell) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("energy balance is defined for orders 0 and 1");
  const int n = before.n_cells();
  Field bf = before;
  apply_boundaries(bf, boundary);

  std::vector<CellTerms> terms(n + 2);
  for (int i = -1; i <= n; ++i) {
    const Primitives s = recover_primitives(bf.cell(i), bf.order(), dry_threshold);
    terms[i + 1] = cell_terms(s, p, order, exchange_enabled);
  }

  const double dx = mesh.dx();
  EnergyBudget budget;
  if (per_cell) per_cell->setZero(n);

  for (int i = 0; i < n; ++i) {
    const CellTerms& c = terms[i + 1];
    const CellTerms& l = terms[i];
    const CellTerms& r = terms[i + 2];

    const double dsurf = (r.surface - l.surface) / (2.0 * dx);
    const double dshear = (r.shear_flow - l.shear_flow) / (2.0 * dx);
    const double dflux = (r.flux - l.flux) / (2.0 * dx);

    const Primitives sa = recover_primitives(after.cell(i), after.order(), dry_threshold);
    const double e_after = order >= 1 ? energy_density_1(sa, p) : energy_density_0(sa, p);

    const double dissipation = c.friction - c.exch_term - c.bedload * dsurf + c.viscous;
    const double coupling = c.beta_weight * dshear;
    const double residual = (e_after - c.energy) / dt + dflux + dissipation - coupling;

    if (per_cell) (*per_cell)(i) = residual;
    budget.total_energy += e_after * dx;
    budget.dissipation += dissipation * dx;
    budget.density_coupling += coupling * dx;
    budget.residual += std::abs(residual) * dx;
  }
  budget.boundary_flux = terms[n].flux - terms[1].flux;
  return budget;
}

double water_mass(const Field& field, const Mesh& mesh) {
  double total = 0.0;
  for (int i = 0; i < field.n_cells(); ++i) total += field.at(i, idx_h);
  return total * mesh.dx();
}

double sediment_mass(const Field& field, const Mesh& mesh, const SedimentParams& p) {
  const int order = field.order();
  double total = 0.0;
  for (int i = 0; i < field.n_cells(); ++i)
    total += (1.0 - p.psi) * field.at(i, idx_bed(order)) + field.at(i, idx_conc(order));
  return total * mesh.dx();
}

}  // namespace swemed
