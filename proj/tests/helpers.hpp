#pragma once

#include <random>

#include "swemed/system.hpp"

namespace swemed::testing {

/// Random wet physical state within the ranges used throughout the
/// property suites.
inline Primitives random_state(std::mt19937_64& rng, int order, double h_min = 0.05,
                               double h_max = 2.0, double u_max = 5.0,
                               double alpha_max = 2.0, double c_max = 0.3) {
  std::uniform_real_distribution<double> uh(h_min, h_max), uu(-u_max, u_max),
      ua(-alpha_max, alpha_max), uc(0.0, c_max), ub(-0.5, 0.5);
  Primitives s;
  s.order = order;
  s.wet = true;
  s.h = uh(rng);
  s.u_m = uu(rng);
  s.alpha.setZero(order);
  for (int i = 0; i < order; ++i) s.alpha(i) = ua(rng);
  s.c_m = uc(rng);
  s.h_b = ub(rng);
  return s;
}

inline Eigen::VectorXd conserved(const Primitives& s) {
  Eigen::VectorXd w(state_size(s.order));
  w(idx_h) = s.h;
  w(idx_q) = s.h * s.u_m;
  for (int i = 1; i <= s.order; ++i) w(idx_moment(i)) = s.h * s.alpha(i - 1);
  w(idx_conc(s.order)) = s.h * s.c_m;
  w(idx_bed(s.order)) = s.h_b;
  return w;
}

}  // namespace swemed::testing
