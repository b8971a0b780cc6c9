#include <cmath>

#include "cfn/errors.hpp"
#include "cfn/oracle.hpp"

namespace cfn {

namespace {

Eigen::Matrix2d nbar(double x) {
  Eigen::Matrix2d m;
  m << 1.0, 0.0, x, 1.0;
  return m;
}

}  // namespace

SL2Factorization sl2_ncc_aH(double x) {
  if (std::abs(x) >= 1.0)
    throw OutsideOmega("nbar(x) leaves the decomposable set at |x| >= 1");
  SL2Factorization f;
  double s = 0.5 * std::log1p(-x * x);  // exp(s) = sqrt(1 - x^2)
  double t = std::atanh(x);
  f.a_log = s;
  f.h << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
  double u = -x * std::exp(-2.0 * s);
  f.n << 1.0, u, 0.0, 1.0;
  Eigen::Matrix2d a = Eigen::Vector2d(std::exp(s), std::exp(-s)).asDiagonal();
  f.residual = (f.h * a * f.n - nbar(x)).norm();
  return f;
}

SL2Factorization sl2_riemannian_aH(double x) {
  SL2Factorization f;
  double s = 0.5 * std::log1p(x * x);  // exp(s) = sqrt(1 + x^2)
  f.a_log = s;
  double u = x * std::exp(-2.0 * s);
  f.n << 1.0, u, 0.0, 1.0;
  double es = std::exp(s);
  f.h << 1.0 / es, -x / es, x / es, 1.0 / es;
  Eigen::Matrix2d a = Eigen::Vector2d(es, 1.0 / es).asDiagonal();
  f.residual = (f.h * a * f.n - nbar(x)).norm();
  return f;
}

}  // namespace cfn
