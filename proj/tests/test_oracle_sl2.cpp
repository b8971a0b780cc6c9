#include <cmath>
#include <complex>

#include "cfn/oracle.hpp"
#include "cfn/rng.hpp"
#include "doctest.h"

using cfn::cplx;
using cfn::SL2Factorization;

namespace {

Eigen::Matrix2d nbar(double x) {
  Eigen::Matrix2d m;
  m << 1, 0, x, 1;
  return m;
}

Eigen::Matrix2d diag_exp(double s) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = std::exp(s);
  m(1, 1) = std::exp(-s);
  return m;
}

}  // namespace

TEST_CASE("causal factorization at the base point") {
  SL2Factorization f = cfn::sl2_ncc_aH(0.0);
  CHECK((f.h - Eigen::Matrix2d::Identity()).norm() <= 1e-14);
  CHECK((f.n - Eigen::Matrix2d::Identity()).norm() <= 1e-14);
  CHECK(std::abs(f.a_log) <= 1e-14);
  CHECK(f.residual <= 1e-14);
}

TEST_CASE("causal factorization at x = 0.6") {
  SL2Factorization f = cfn::sl2_ncc_aH(0.6);
  CHECK(std::exp(f.a_log) == doctest::Approx(0.8).epsilon(1e-13));
  // h preserves the (1,1) form: h^T diag(1,-1) h = diag(1,-1)
  Eigen::Matrix2d eta = Eigen::Matrix2d::Zero();
  eta(0, 0) = 1;
  eta(1, 1) = -1;
  CHECK((f.h.transpose() * eta * f.h - eta).norm() <= 1e-12);
  CHECK(f.h.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  // upper unipotent
  CHECK(f.n(0, 0) == doctest::Approx(1.0));
  CHECK(f.n(1, 1) == doctest::Approx(1.0));
  CHECK(f.n(1, 0) == doctest::Approx(0.0));
  // the product reconstructs nbar(x)
  CHECK((f.h * diag_exp(f.a_log) * f.n - nbar(0.6)).norm() <= 1e-12);
  CHECK(f.residual <= 1e-12);
}

TEST_CASE("causal factorization exists only inside the unit interval") {
  CHECK_THROWS_AS(cfn::sl2_ncc_aH(1.0), cfn::OutsideOmega);
  CHECK_THROWS_AS(cfn::sl2_ncc_aH(-1.0), cfn::OutsideOmega);
  CHECK_THROWS_AS(cfn::sl2_ncc_aH(1.5), cfn::OutsideOmega);
  CHECK_NOTHROW(cfn::sl2_ncc_aH(0.999999));
}

TEST_CASE("riemannian factorization") {
  SL2Factorization f = cfn::sl2_riemannian_aH(1.0);
  CHECK(std::exp(f.a_log) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK((f.h.transpose() * f.h - Eigen::Matrix2d::Identity()).norm() <= 1e-12);
  CHECK(f.h.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((f.h * diag_exp(f.a_log) * f.n - nbar(1.0)).norm() <= 1e-12);

  // defined for arbitrarily large arguments
  SL2Factorization g = cfn::sl2_riemannian_aH(-25.0);
  CHECK(std::exp(g.a_log) == doctest::Approx(std::sqrt(626.0)).epsilon(1e-12));
  CHECK(g.residual <= 1e-10);
}

TEST_CASE("a-part matches the closed radial weight") {
  cfn::CounterRng rng(20260823, 7);
  const cplx zs[] = {{-1.5, 0.0}, {-0.3, 0.8}, {0.5, -1.2}};
  for (int i = 0; i < 50; ++i) {
    double x = rng.next_uniform(-0.999, 0.999);
    SL2Factorization f = cfn::sl2_ncc_aH(x);
    SL2Factorization g = cfn::sl2_riemannian_aH(x);
    for (cplx z : zs) {
      cplx w_ncc = std::exp(-(z + 1.0) * f.a_log);
      cplx direct_ncc = std::pow(cplx(1.0 - x * x, 0.0), -(z + 1.0) / 2.0);
      CHECK(std::abs(w_ncc - direct_ncc) <= 1e-12 * std::abs(direct_ncc));

      cplx w_rie = std::exp(-(z + 1.0) * g.a_log);
      cplx direct_rie = std::pow(cplx(1.0 + x * x, 0.0), -(z + 1.0) / 2.0);
      CHECK(std::abs(w_rie - direct_rie) <= 1e-12 * std::abs(direct_rie));
    }
  }
}
