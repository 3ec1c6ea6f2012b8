#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "swemed/system.hpp"

using namespace swemed;
using swemed::testing::random_state;
using swemed::testing::conserved;

namespace {

constexpr double kDry = 1e-4;

// Hand-transcribed transport matrices of the printed order-0..3 systems,
// kept deliberately literal as an independent oracle for the generic
// assembly. The moment rows carry the bedload block G*alpha*(dh,dq,...,dc,0).
Eigen::MatrixXd oracle_full(const Primitives& s, const SedimentParams& p) {
  const int n = s.order;
  const double g = p.g, h = s.h, u = s.u_m, c = s.c_m;
  const double rho = mixture_density(c, p);
  const double drho = p.rho_s - p.rho_w;
  const double bweight = g * h * drho / (2.0 * rho);       // gh(rho_s-rho_w)/(2 rho)
  const double bweight_h = g * h * c * drho / (2.0 * rho); // gh(rho-rho_w)/(2 rho)
  const auto d = bedload_flux_derivatives(h, s.u_b(), c, p, kDry);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 4, n + 4);
  a(0, 1) = 1.0;
  if (n == 0) {
    a(1, 0) = g * h - u * u - bweight_h;
    a(1, 1) = 2 * u;
    a(1, 2) = bweight;
    a(1, 3) = g * h;
    a(2, 0) = -c * u;
    a(2, 1) = c;
    a(2, 2) = u;
    a(3, 0) = d.dh;
    a(3, 1) = d.dq;
    a(3, 2) = d.dc;
  } else if (n == 1) {
    const double a1 = s.alpha(0);
    a(1, 0) = g * h - u * u - a1 * a1 / 3.0 - bweight_h;
    a(1, 1) = 2 * u;
    a(1, 2) = 2 * a1 / 3.0;
    a(1, 3) = bweight;
    a(1, 4) = g * h;
    a(2, 0) = -2 * a1 * u - bweight_h;
    a(2, 1) = 2 * a1;
    a(2, 2) = u;
    a(2, 3) = bweight;
    a(3, 0) = -c * u;
    a(3, 1) = c;
    a(3, 3) = u;
    a(4, 0) = d.dh;
    a(4, 1) = d.dq;
    a(4, 2) = d.dq;
    a(4, 3) = d.dc;
  } else if (n == 2) {
    const double a1 = s.alpha(0), a2 = s.alpha(1);
    a(1, 0) = g * h - u * u - a1 * a1 / 3.0 - a2 * a2 / 5.0 - bweight_h;
    a(1, 1) = 2 * u;
    a(1, 2) = 2 * a1 / 3.0;
    a(1, 3) = 2 * a2 / 5.0;
    a(1, 4) = bweight;
    a(1, 5) = g * h;
    // first-moment row plus the printed bedload row -6 alpha_2 (dh,dq,dq,dq,dc,0)
    a(2, 0) = -2 * a1 * u - 0.8 * a1 * a2 - bweight_h - 6 * a2 * d.dh;
    a(2, 1) = 2 * a1 - 6 * a2 * d.dq;
    a(2, 2) = u + a2 - 6 * a2 * d.dq;
    a(2, 3) = 3 * a1 / 5.0 - 6 * a2 * d.dq;
    a(2, 4) = bweight - 6 * a2 * d.dc;
    a(3, 0) = -2.0 / 3.0 * a1 * a1 - 2 * u * a2 - 2.0 / 7.0 * a2 * a2;
    a(3, 1) = 2 * a2;
    a(3, 2) = a1 / 3.0;
    a(3, 3) = u + 3 * a2 / 7.0;
    a(4, 0) = -c * u;
    a(4, 1) = c;
    a(4, 4) = u;
    a(5, 0) = d.dh;
    a(5, 1) = d.dq;
    a(5, 2) = d.dq;
    a(5, 3) = d.dq;
    a(5, 4) = d.dc;
  } else if (n == 3) {
    const double a1 = s.alpha(0), a2 = s.alpha(1), a3 = s.alpha(2);
    a(1, 0) = g * h - u * u - a1 * a1 / 3.0 - a2 * a2 / 5.0 - a3 * a3 / 7.0 - bweight_h;
    a(1, 1) = 2 * u;
    a(1, 2) = 2 * a1 / 3.0;
    a(1, 3) = 2 * a2 / 5.0;
    a(1, 4) = 2 * a3 / 7.0;
    a(1, 5) = bweight;
    a(1, 6) = g * h;
    // bedload rows: -6 alpha_2 on the first moment, -10 alpha_3 on the second
    a(2, 0) = -2.0 / 35.0 * (9 * a3 * a2 + 7 * a1 * (5 * u + 2 * a2)) - bweight_h -
              6 * a2 * d.dh;
    a(2, 1) = 2 * a1 - 6 * a2 * d.dq;
    a(2, 2) = u + a2 - 6 * a2 * d.dq;
    a(2, 3) = 3 * (a1 + a3) / 5.0 - 6 * a2 * d.dq;
    a(2, 4) = 3 * a2 / 7.0 - 6 * a2 * d.dq;
    a(2, 5) = bweight - 6 * a2 * d.dc;
    a(3, 0) = -2.0 / 21.0 *
                  (7 * a1 * a1 + 9 * a1 * a3 + 2 * a3 * a3 + 3 * a2 * (7 * u + a2)) -
              10 * a3 * d.dh;
    a(3, 1) = 2 * a2 - 10 * a3 * d.dq;
    a(3, 2) = a1 / 3.0 + 9 * a3 / 7.0 - 10 * a3 * d.dq;
    a(3, 3) = u + 3 * a2 / 7.0 - 10 * a3 * d.dq;
    a(3, 4) = 4 * a1 / 7.0 + a3 / 3.0 - 10 * a3 * d.dq;
    a(3, 5) = -10 * a3 * d.dc;
    a(4, 0) = -2.0 / 15.0 * (15 * u * a3 + 4 * a2 * a3 + 9 * a1 * a2);
    a(4, 1) = 2 * a3;
    a(4, 3) = 2 * (a1 + a3) / 5.0;
    a(4, 4) = u + a2 / 3.0;
    a(5, 0) = -c * u;
    a(5, 1) = c;
    a(5, 5) = u;
    a(6, 0) = d.dh;
    a(6, 1) = d.dq;
    a(6, 2) = d.dq;
    a(6, 3) = d.dq;
    a(6, 4) = d.dq;
    a(6, 5) = d.dc;
  }
  return a;
}

// The regularized matrix printed for arbitrary order: only alpha_1 in the
// fluid block, off-diagonal moment entries (i+1)/(2i+1) and (i-1)/(2i-1),
// full-state derivatives in the Exner row.
Eigen::MatrixXd oracle_regularized(const Primitives& s, const SedimentParams& p) {
  const int n = s.order;
  const double g = p.g, h = s.h, u = s.u_m, c = s.c_m;
  const double a1 = n >= 1 ? s.alpha(0) : 0.0;
  const double rho = mixture_density(c, p);
  const double drho = p.rho_s - p.rho_w;
  const double bweight = g * h * drho / (2.0 * rho);
  const double bweight_h = g * h * c * drho / (2.0 * rho);
  const auto d = bedload_flux_derivatives(h, s.u_b(), c, p, kDry);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 4, n + 4);
  a(0, 1) = 1.0;
  a(1, 0) = g * h - u * u - (n >= 1 ? a1 * a1 / 3.0 : 0.0) - bweight_h;
  a(1, 1) = 2 * u;
  if (n >= 1) a(1, 2) = 2 * a1 / 3.0;
  a(1, n + 2) = bweight;
  a(1, n + 3) = g * h;
  if (n >= 1) {
    a(2, 0) = -2 * u * a1 - bweight_h;
    a(2, 1) = 2 * a1;
    a(2, 2) = u;
    if (n >= 2) a(2, 3) = 3.0 / 5.0 * a1;
    a(2, n + 2) = bweight;
  }
  if (n >= 2) {
    a(3, 0) = -2.0 * a1 * a1 / 3.0;
    a(3, 2) = a1 / 3.0;
    a(3, 3) = u;
  }
  for (int i = 3; i <= n; ++i) {  // rows of moments 3..N: pure off-bidiagonal
    a(1 + i, i) = (i - 1.0) / (2.0 * i - 1.0) * a1;
    a(1 + i, 1 + i) = u;
  }
  for (int i = 2; i < n; ++i)  // superdiagonal c_{i+1}
    a(1 + i, 2 + i) = (i + 2.0) / (2.0 * i + 3.0) * a1;
  a(n + 2, 0) = -c * u;
  a(n + 2, 1) = c;
  a(n + 2, n + 2) = u;
  a(n + 3, 0) = d.dh;
  a(n + 3, 1) = d.dq;
  for (int i = 1; i <= n; ++i) a(n + 3, 1 + i) = d.dq;
  a(n + 3, n + 2) = d.dc;
  return a;
}

void check_close(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  REQUIRE(got.rows() == want.rows());
  for (int r = 0; r < got.rows(); ++r)
    for (int c = 0; c < got.cols(); ++c) {
      CAPTURE(r);
      CAPTURE(c);
      CHECK(std::abs(got(r, c) - want(r, c)) <= 1e-13 * (1.0 + std::abs(want(r, c))));
    }
}

}  // namespace

TEST_CASE("primitive recovery and profiles") {
  Primitives s;
  s.order = 2;
  s.wet = true;
  s.u_m = 1.0;
  s.h = 1.0;
  s.alpha.resize(2);
  s.alpha << 0.2, -0.1;
  CHECK(bottom_velocity(s) == doctest::Approx(1.1).epsilon(1e-15));

  Primitives zero;
  zero.order = 0;
  CHECK(bottom_velocity(zero) == 0.0);

  ScaledLegendre poly(2);
  Primitives lin;
  lin.order = 1;
  lin.wet = true;
  lin.u_m = 1.0;
  lin.h = 1.0;
  lin.alpha.resize(1);
  lin.alpha << 0.4;
  CHECK(velocity_profile(lin, poly, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(velocity_profile(lin, poly, 0.0) == doctest::Approx(lin.u_b()).epsilon(1e-15));

  // profile integrates back to the mean velocity
  const QuadratureRule quad = gauss_legendre_01(8);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Primitives r = random_state(rng, 3);
    const double mean =
        quad.integrate([&](double z) { return velocity_profile(r, ScaledLegendre(3), z); });
    CHECK(mean == doctest::Approx(r.u_m).epsilon(1e-12));
  }

  // near-dry state: primitives vanish, bed survives
  Eigen::VectorXd w = Eigen::VectorXd::Zero(state_size(1));
  w(idx_h) = 5e-5;
  w(idx_q) = 1e-6;
  w(idx_bed(1)) = 0.3;
  const Primitives dry = recover_primitives(w, 1, kDry);
  CHECK_FALSE(dry.wet);
  CHECK(dry.u_m == 0.0);
  CHECK(dry.h_b == 0.3);
}

TEST_CASE("concentration profile and weighted velocity") {
  CHECK(concentration_profile(0.05, 2.04, 0.0) == doctest::Approx(0.102).epsilon(1e-14));
  CHECK(concentration_profile(0.03, 2.04, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  const auto c = concentration_coefficients(0.05, 2.04);
  CHECK(c.c1 == doctest::Approx(0.051).epsilon(1e-14));
  CHECK(c.c2 == doctest::Approx(0.001).epsilon(1e-12));

  // mean of the reconstructed profile is c_m
  const QuadratureRule quad = gauss_legendre_01(5);
  const double mean =
      quad.integrate([](double z) { return concentration_profile(0.07, 2.04, z); });
  CHECK(mean == doctest::Approx(0.07).epsilon(1e-13));

  CHECK(sediment_weighted_velocity(1.0, 0.0, 0.0, 2.04) == 1.0);
  CHECK(sediment_weighted_velocity(1.0, 0.3, 0.0, 2.0) ==
        doctest::Approx(1.0 + 0.1).epsilon(1e-14));
  CHECK(sediment_weighted_velocity(1.0, 0.3, -0.1, 2.04) ==
        doctest::Approx(1.1016).epsilon(1e-12));
}

TEST_CASE("generic assembly matches the printed systems") {
  const SedimentParams sets[2] = {pvc_params(), sand_params()};
  std::mt19937_64 rng(11);
  for (int n = 0; n <= 3; ++n) {
    const BasisTables tables(std::max(n, 1));
    for (int trial = 0; trial < 50; ++trial) {
      const SedimentParams& p = sets[trial % 2];
      const Primitives s = random_state(rng, n, 0.05, 2.0, 3.0, 1.0);
      check_close(assemble_full(s, tables, p, kDry), oracle_full(s, p));
      check_close(assemble_regularized(s, tables, p, kDry), oracle_regularized(s, p));
    }
  }
}

TEST_CASE("printed source vectors") {
  const SedimentParams p = pvc_params();
  const BasisTables t1(1), t3(3);

  {
    Primitives s;
    s.order = 1;
    s.wet = true;
    s.h = 0.4;
    s.u_m = 0.8;
    s.alpha.resize(1);
    s.alpha << 0.2;
    s.c_m = 0.01;
    const double ub = 1.0;
    const SourceVector sv = source(s, t1, p);
    const double fb = exchange(ub, s.c_m, p).bed_exchange;

    CHECK(sv.friction(0) == 0.0);
    CHECK(sv.friction(1) == doctest::Approx(-p.eps * std::abs(ub) * ub).epsilon(1e-14));
    CHECK(sv.friction(2) ==
          doctest::Approx(-3 * p.eps * std::abs(ub) * ub - 12 * p.nu / s.h * 0.2)
              .epsilon(1e-13));
    CHECK(sv.friction(3) == 0.0);
    CHECK(sv.friction(4) == 0.0);

    CHECK(sv.exchange(0) == doctest::Approx(fb).epsilon(1e-14));
    CHECK(sv.exchange(1) == doctest::Approx(fb * ub).epsilon(1e-14));
    CHECK(sv.exchange(2) == doctest::Approx(fb * 2 * 0.2).epsilon(1e-13));
    CHECK(sv.exchange(3) == doctest::Approx((1 - p.psi) * fb).epsilon(1e-14));
    CHECK(sv.exchange(4) == doctest::Approx(-fb).epsilon(1e-14));
  }

  {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const Primitives s = random_state(rng, 3, 0.1, 2.0, 3.0, 1.0);
      const double a1 = s.alpha(0), a2 = s.alpha(1), a3 = s.alpha(2);
      const double ub = s.u_b();
      const SourceVector sv = source(s, t3, p);
      const double fb = exchange(ub, s.c_m, p).bed_exchange;
      const double fr = p.eps * std::abs(ub) * ub;

      CHECK(sv.friction(2) ==
            doctest::Approx(-3 * fr - 12 * p.nu / s.h * (a1 + a3)).epsilon(1e-12));
      CHECK(sv.friction(3) ==
            doctest::Approx(-5 * fr - 60 * p.nu / s.h * a2).epsilon(1e-12));
      CHECK(sv.friction(4) ==
            doctest::Approx(-7 * fr - 7 * p.nu / s.h * (4 * a1 + 24 * a3)).epsilon(1e-12));

      CHECK(sv.exchange(2) == doctest::Approx(fb * (2 * a1 + 3 * (a2 + a3))).epsilon(1e-12));
      CHECK(sv.exchange(3) == doctest::Approx(fb * (3 * a2 + 5 * a3)).epsilon(1e-12));
      CHECK(sv.exchange(4) == doctest::Approx(fb * 4 * a3).epsilon(1e-12));
      CHECK(sv.exchange(5) == doctest::Approx((1 - p.psi) * fb).epsilon(1e-14));
      CHECK(sv.exchange(6) == doctest::Approx(-fb).epsilon(1e-14));
    }
  }

  // zero state -> zero source; dry state -> zero source
  Primitives zero;
  zero.order = 1;
  zero.wet = true;
  zero.h = 0.5;
  zero.alpha.setZero(1);
  const SourceVector sz = source(zero, t1, p);
  CHECK(sz.friction.norm() == 0.0);
  CHECK(sz.exchange.norm() == 0.0);

  Primitives dry;
  dry.order = 1;
  dry.alpha.setZero(1);
  CHECK(source(dry, t1, p).total().norm() == 0.0);
}

TEST_CASE("structural invariants of the assembly") {
  const SedimentParams p = pvc_params();
  std::mt19937_64 rng(17);
  for (int n : {1, 2, 3, 5}) {
    const BasisTables tables(n);
    for (int trial = 0; trial < 25; ++trial) {
      const Primitives s = random_state(rng, n);
      for (MatrixKind kind : {MatrixKind::Full, MatrixKind::Regularized}) {
        Eigen::MatrixXd a(state_size(n), state_size(n));
        assemble_transport(a, s, tables, p, kind, kDry);

        // canonical mass row
        CHECK(a(0, 1) == 1.0);
        a(0, 1) = 0.0;
        CHECK(a.row(0).norm() == 0.0);

        // Exner row is (dh, dq, ..., dq, dc, 0)
        const auto d = bedload_flux_derivatives(s.h, s.u_b(), s.c_m, p, kDry);
        CHECK(a(n + 3, 0) == doctest::Approx(d.dh).epsilon(1e-14));
        for (int i = 1; i <= n + 1; ++i)
          CHECK(a(n + 3, i) == doctest::Approx(d.dq).epsilon(1e-14));
        CHECK(a(n + 3, n + 2) == doctest::Approx(d.dc).epsilon(1e-14));
        CHECK(a(n + 3, n + 3) == 0.0);

        // last column nonzero only in the momentum row
        for (int r = 0; r < n + 4; ++r)
          if (r != 1) CHECK(a(r, n + 3) == 0.0);
        CHECK(a(1, n + 3) == doctest::Approx(p.g * s.h).epsilon(1e-14));
      }

      // water gains what the bed loses
      const SourceVector sv = source(s, tables, p);
      CHECK(sv.exchange(0) == doctest::Approx(-sv.exchange(n + 3)).epsilon(1e-14));
    }
  }
}

TEST_CASE("regularized equals full at low order and at the linearization point") {
  const SedimentParams p = pvc_params();
  std::mt19937_64 rng(23);
  for (int n : {0, 1}) {
    const BasisTables tables(std::max(n, 1));
    for (int trial = 0; trial < 10; ++trial) {
      const Primitives s = random_state(rng, n);
      check_close(assemble_regularized(s, tables, p, kDry), assemble_full(s, tables, p, kDry));
    }
  }
  {
    const BasisTables tables(3);
    Primitives s = random_state(rng, 3);
    s.alpha(1) = 0.0;
    s.alpha(2) = 0.0;
    check_close(assemble_regularized(s, tables, p, kDry), assemble_full(s, tables, p, kDry));
  }
  // alpha_2 leaves the fluid block untouched, only the derivative rows move
  {
    const BasisTables tables(2);
    Primitives s = random_state(rng, 2);
    Primitives s2 = s;
    s2.alpha(1) += 0.37;
    const Eigen::MatrixXd a = assemble_regularized(s, tables, p, kDry);
    const Eigen::MatrixXd b = assemble_regularized(s2, tables, p, kDry);
    for (int r = 0; r <= 3; ++r)
      for (int c = 0; c < 6; ++c) CHECK(a(r, c) == doctest::Approx(b(r, c)).epsilon(1e-14));
    CHECK(a.row(4).isApprox(b.row(4)));  // concentration row has no alpha
  }
}

TEST_CASE("assembly collapses to the order-0 matrix at vanishing moments") {
  const SedimentParams p = pvc_params();
  std::mt19937_64 rng(29);
  for (int n : {1, 2, 4}) {
    const BasisTables tables(n);
    Primitives s = random_state(rng, n);
    s.alpha.setZero();
    const Eigen::MatrixXd a = assemble_full(s, tables, p, kDry);

    Primitives s0 = s;
    s0.order = 0;
    s0.alpha.resize(0);
    const Eigen::MatrixXd a0 = oracle_full(s0, p);

    // delete moment rows/columns: keep 0,1,n+2,n+3
    const int keep[4] = {0, 1, n + 2, n + 3};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        CHECK(a(keep[r], keep[c]) ==
              doctest::Approx(a0(r, c)).epsilon(1e-13));
  }
}

TEST_CASE("dry cells produce the bare mass-row matrix") {
  const SedimentParams p = pvc_params();
  const BasisTables tables(2);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(state_size(2));
  w(idx_h) = 1e-6;
  const Primitives s = recover_primitives(w, 2, kDry);
  const Eigen::MatrixXd a = assemble_full(s, tables, p, kDry);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(6, 6);
  expect(0, 1) = 1.0;
  CHECK((a - expect).norm() == 0.0);
}
