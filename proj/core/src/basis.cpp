#include "swemed/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace swemed {

QuadratureRule gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("quadrature node count must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[k] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
    rule.weights[k] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

ScaledLegendre::ScaledLegendre(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  coeff_.resize(max_degree + 1);
  // (z - z^2)^j = sum_m binom(j,m) (-1)^m z^{j+m}; the j-th derivative of
  // z^{j+m} is (j+m)!/m! z^m, so the coefficient of z^m in phi_j is
  // (-1)^m binom(j,m) (j+m)! / (m! j!).
  for (int j = 0; j <= max_degree; ++j) {
    coeff_[j].assign(j + 1, 0.0);
    double binom = 1.0;  // binom(j, m)
    for (int m = 0; m <= j; ++m) {
      double rising = 1.0;  // (j+m)! / (j! m!) * m! / m! ... accumulate directly
      // (j+m)!/(m! j!) = binom(j+m, m) * ... compute as product of (j+1..j+m)/m!
      for (int t = 1; t <= m; ++t) rising *= double(j + t) / double(t);
      double sign = (m % 2 == 0) ? 1.0 : -1.0;
      coeff_[j][m] = sign * binom * rising;
      binom *= double(j - m) / double(m + 1);
    }
  }
}

void ScaledLegendre::check(int j, double zeta) const {
  if (j < 0 || j > max_degree_) throw std::domain_error("basis degree out of range");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("zeta must lie in [0,1]");
}

double ScaledLegendre::phi(int j, double zeta) const {
  check(j, zeta);
  const auto& c = coeff_[j];
  double v = 0.0;
  for (int m = j; m >= 0; --m) v = v * zeta + c[m];
  return v;
}

double ScaledLegendre::phi_prime(int j, double zeta) const {
  check(j, zeta);
  const auto& c = coeff_[j];
  double v = 0.0;
  for (int m = j; m >= 1; --m) v = v * zeta + m * c[m];
  return v;
}

double ScaledLegendre::phi_antiderivative(int j, double zeta) const {
  check(j, zeta);
  const auto& c = coeff_[j];
  double v = 0.0;
  for (int m = j; m >= 0; --m) v = v * zeta + c[m] / (m + 1.0);
  return v * zeta;
}

const std::vector<double>& ScaledLegendre::coefficients(int j) const {
  if (j < 0 || j > max_degree_) throw std::domain_error("basis degree out of range");
  return coeff_[j];
}

int BasisTables::default_quadrature_nodes(int order) {
  return (3 * order + 2 + 1) / 2 + 1;  // ceil((3N+2)/2) + 1
}

std::size_t BasisTables::t3(int i, int j, int k) const {
  const std::size_t n = static_cast<std::size_t>(order_);
  return ((static_cast<std::size_t>(i) - 1) * n + (j - 1)) * n + (k - 1);
}

BasisTables::BasisTables(int order, int quadrature_nodes)
    : order_(order), poly_(order) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  const int n = order;
  const auto quad = gauss_legendre_01(quadrature_nodes);

  a_.assign(std::size_t(n) * n * n, 0.0);
  b_.assign(std::size_t(n) * n * n, 0.0);
  c_.setZero(n, n);
  g_.setZero(n, n);
  h_.setZero(n, n);
  k_.setZero(n);

  for (int i = 1; i <= n; ++i) {
    k_(i - 1) = quad.integrate([&](double z) { return z * poly_.phi(i, z); });
    for (int j = 1; j <= n; ++j) {
      c_(i - 1, j - 1) = quad.integrate(
          [&](double z) { return poly_.phi_prime(i, z) * poly_.phi_prime(j, z); });
      g_(i - 1, j - 1) = (2.0 * i + 1.0) * quad.integrate([&](double z) {
        return poly_.phi(i, z) * poly_.phi_prime(j, z);
      });
      h_(i - 1, j - 1) = (2.0 * i + 1.0) * quad.integrate([&](double z) {
        return z * poly_.phi(i, z) * poly_.phi_prime(j, z);
      });
      for (int k = 1; k <= n; ++k) {
        a_[t3(i, j, k)] = (2.0 * i + 1.0) * quad.integrate([&](double z) {
          return poly_.phi(i, z) * poly_.phi(j, z) * poly_.phi(k, z);
        });
        b_[t3(i, j, k)] = (2.0 * i + 1.0) * quad.integrate([&](double z) {
          return poly_.phi_prime(i, z) * poly_.phi_antiderivative(j, z) * poly_.phi(k, z);
        });
      }
    }
  }
}

}  // namespace swemed
