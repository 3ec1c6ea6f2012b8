#pragma once

#include <Eigen/Dense>
#include <vector>

namespace swemed {

/// Gauss-Legendre quadrature rule mapped to [0,1]. Exact for polynomials of
/// degree <= 2n-1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) s += weights[k] * f(nodes[k]);
    return s;
  }
};

QuadratureRule gauss_legendre_01(int n);

/// Scaled Legendre basis phi_j on [0,1]: phi_j = (1/j!) d^j/dz^j (z - z^2)^j,
/// normalized so phi_j(0) = 1 and with zero mean for j >= 1. Monomial
/// coefficients are integers and exact in double up to the degrees used here.
class ScaledLegendre {
 public:
  explicit ScaledLegendre(int max_degree);

  int max_degree() const { return max_degree_; }

  /// phi_j(zeta). Throws std::domain_error if zeta is outside [0,1] or j < 0.
  double phi(int j, double zeta) const;

  /// d/dzeta phi_j(zeta); identically zero for j = 0.
  double phi_prime(int j, double zeta) const;

  /// int_0^zeta phi_j(s) ds, the antiderivative vanishing at zeta = 0.
  double phi_antiderivative(int j, double zeta) const;

  /// Monomial coefficients of phi_j, lowest power first.
  const std::vector<double>& coefficients(int j) const;

 private:
  void check(int j, double zeta) const;

  int max_degree_;
  std::vector<std::vector<double>> coeff_;
};

/// Coupling tensors of the moment equations, defined by integrals of the
/// scaled Legendre polynomials and their derivatives/antiderivatives.
/// Moment indices run 1..N; accessors are 1-based to match that convention.
/// Immutable after construction.
class BasisTables {
 public:
  explicit BasisTables(int order) : BasisTables(order, default_quadrature_nodes(order)) {}
  BasisTables(int order, int quadrature_nodes);

  int order() const { return order_; }

  double A(int i, int j, int k) const { return a_[t3(i, j, k)]; }
  double B(int i, int j, int k) const { return b_[t3(i, j, k)]; }
  double C(int i, int j) const { return c_(i - 1, j - 1); }
  double G(int i, int j) const { return g_(i - 1, j - 1); }
  double H(int i, int j) const { return h_(i - 1, j - 1); }
  double K(int i) const { return k_(i - 1); }

  const ScaledLegendre& polynomials() const { return poly_; }

  /// Node count exact for every tensor integrand (degree <= 3N+1).
  static int default_quadrature_nodes(int order);

 private:
  std::size_t t3(int i, int j, int k) const;

  int order_;
  ScaledLegendre poly_;
  std::vector<double> a_, b_;
  Eigen::MatrixXd c_, g_, h_;
  Eigen::VectorXd k_;
};

inline BasisTables build_tables(int order) { return BasisTables(order); }

}  // namespace swemed
