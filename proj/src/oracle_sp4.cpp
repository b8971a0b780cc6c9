#include <cmath>

#include "cfn/errors.hpp"
#include "cfn/oracle.hpp"
#include "sp4_newton.hpp"

namespace cfn {

namespace sp4_detail {

using Eigen::Matrix2d;
using Eigen::Matrix4d;

// theta = (M00, M01, M10, M11, d1, d2, u1, u2, u3, u4):
// h from the GL(2) parameter M, a = exp diag(d1, d2, -d1, -d2), n the
// unipotent for the positive-root coordinates (u1, u2, u3) on the symmetric
// upper block and u4 on the compact direction.

Matrix4d h_from_M(const Matrix2d& M, bool* singular) {
  double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  if (std::abs(det) < 1e-12) {
    *singular = true;
    return Matrix4d::Identity();
  }
  Matrix2d P;
  P << M(1, 1), -M(1, 0), -M(0, 1), M(0, 0);
  P /= det;  // inverse transpose of M
  Matrix4d h;
  Matrix2d sum = 0.5 * (M + P), dif = 0.5 * (M - P);
  h << sum, dif, dif, sum;
  return h;
}

Matrix4d h_of(const Vec10& th, bool* singular) {
  Matrix2d M;
  M << th[0], th[1], th[2], th[3];
  return h_from_M(M, singular);
}

Matrix4d n_of(const Vec10& th) {
  double u1 = th[6], u2 = th[7], u3 = th[8], u4 = th[9];
  Matrix4d n = Matrix4d::Identity();
  n(1, 0) = u4;
  n(0, 2) = u1;
  n(0, 3) = u2 - 0.5 * u1 * u4;
  n(1, 2) = u2 + 0.5 * u1 * u4;
  n(1, 3) = u3 - u1 * u4 * u4 / 6.0;
  n(2, 3) = -u4;
  return n;
}

Vec16 residual(const Vec10& th, const Matrix4d& g, bool* singular) {
  *singular = false;
  Matrix4d h = h_of(th, singular);
  if (*singular) return Vec16::Constant(1e6);
  Eigen::Vector4d a(std::exp(th[4]), std::exp(th[5]), std::exp(-th[4]),
                    std::exp(-th[5]));
  Matrix4d han = (h * a.asDiagonal()) * n_of(th);
  Matrix4d diff = han - g;
  return Eigen::Map<const Vec16>(diff.data());
}

Mat16x10 fd_jacobian(const Vec10& theta, const Matrix4d& g, const Vec16& F) {
  bool singular = false;
  Mat16x10 J;
  for (int j = 0; j < 10; ++j) {
    Vec10 tp = theta;
    double step = 1e-7 * (1.0 + std::abs(tp[j]));
    tp[j] += step;
    J.col(j) = (residual(tp, g, &singular) - F) / step;
  }
  return J;
}

bool newton_solve(const Matrix4d& g, Vec10* theta, double tol, int max_iter,
                  int* iterations) {
  // Damped (Levenberg-Marquardt) least-squares Newton. Near the shell
  // boundary the unipotent coordinates grow like 1/(1 - spectral radius) and
  // the undamped step overshoots along a curved valley; the multiplicative
  // damping keeps steps inside it. Iterate well past the acceptance level so
  // interior points polish to ~machine precision; stagnating at a roundoff
  // floor below `tol` still counts as success.
  const double polish = 1e-3 * tol;
  bool singular = false;
  Vec16 F = residual(*theta, g, &singular);
  double fn = F.norm();
  double mu = 1e-8;
  for (int iter = 0; iter < max_iter && fn > polish; ++iter) {
    ++*iterations;
    Mat16x10 J = fd_jacobian(*theta, g, F);
    Eigen::Matrix<double, 10, 10> JtJ = J.transpose() * J;
    Vec10 JtF = J.transpose() * F;
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::Matrix<double, 10, 10> A = JtJ;
      A.diagonal() += mu * JtJ.diagonal();
      Vec10 delta = A.ldlt().solve(-JtF);
      Vec16 Fc = residual(*theta + delta, g, &singular);
      if (!singular && Fc.norm() < fn) {
        *theta += delta;
        F = Fc;
        fn = Fc.norm();
        mu = std::max(mu / 4.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return fn <= tol;
}

Matrix4d embed(const Matrix2d& X, double t) {
  Matrix4d g = Matrix4d::Identity();
  g.block<2, 2>(2, 0) = t * X;
  return g;
}

// Reduced system: with the H factor fixed by its GL(2) parameter M, the
// equation h a n = g forces a and n in closed form from Y = h(M)^-1 g, which
// must vanish at the six entries outside the pattern of a diagonal times the
// unipotent. h(M)^-1 = h(M^-1) because M -> h(M) is a group isomorphism.
// Solving the 6x4 system for M and reading a, n off is far better
// conditioned than iterating all ten coordinates jointly, whose coupled
// steps creep near the shell boundary.

using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6x4 = Eigen::Matrix<double, 6, 4>;

Vec6 reduced_residual(const Vec4& m, const Matrix4d& g, bool* singular,
                      double* scale) {
  Matrix2d M;
  M << m[0], m[1], m[2], m[3];
  double det = m[0] * m[3] - m[1] * m[2];
  if (std::abs(det) < 1e-12) {
    *singular = true;
    return Vec6::Constant(1e6);
  }
  *singular = false;
  Matrix2d Minv;
  Minv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  Minv /= det;
  bool h_singular = false;
  Matrix4d Y = h_from_M(Minv, &h_singular) * g;
  if (h_singular) {
    *singular = true;
    return Vec6::Constant(1e6);
  }
  if (scale) *scale = Y.norm();
  Vec6 r;
  r << Y(0, 1), Y(2, 0), Y(2, 1), Y(3, 0), Y(3, 1), Y(3, 2);
  return r;
}

bool reduced_solve(Vec4* m, const Matrix4d& g, int max_iter, int* iterations) {
  bool singular = false;
  double scale = 1.0;
  Vec6 F = reduced_residual(*m, g, &singular, &scale);
  double fn = F.norm();
  double mu = 1e-8;
  // drive toward the roundoff floor of the Y entries; the final acceptance
  // happens downstream on the full reconstruction residual
  for (int iter = 0; iter < max_iter && fn > 1e-14 * scale; ++iter) {
    ++*iterations;
    Mat6x4 J;
    for (int j = 0; j < 4; ++j) {
      Vec4 tp = *m;
      double step = 1e-7 * (1.0 + std::abs(tp[j]));
      tp[j] += step;
      J.col(j) = (reduced_residual(tp, g, &singular, nullptr) - F) / step;
    }
    Eigen::Matrix4d JtJ = J.transpose() * J;
    Vec4 JtF = J.transpose() * F;
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::Matrix4d A = JtJ;
      A.diagonal() += mu * JtJ.diagonal();
      Vec4 delta = A.ldlt().solve(-JtF);
      Vec6 Fc = reduced_residual(*m + delta, g, &singular, &scale);
      if (!singular && Fc.norm() < fn) {
        *m += delta;
        F = Fc;
        fn = Fc.norm();
        mu = std::max(mu / 4.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return fn <= 1e-9 * scale;
}

// a and n from a converged M; false when Y leaves the positive-diagonal
// sheet (cannot happen on the continuous homotopy path from the identity).
bool read_off(const Vec4& m, const Matrix4d& g, Vec10* theta) {
  Matrix2d M, Minv;
  M << m[0], m[1], m[2], m[3];
  double det = m[0] * m[3] - m[1] * m[2];
  Minv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  Minv /= det;
  bool singular = false;
  Matrix4d Y = h_from_M(Minv, &singular) * g;
  if (singular || !(Y(0, 0) > 0.0) || !(Y(1, 1) > 0.0)) return false;
  double u4 = Y(1, 0) / Y(1, 1);
  double u1 = Y(0, 2) / Y(0, 0);
  double u2 = 0.5 * (Y(0, 3) / Y(0, 0) + Y(1, 2) / Y(1, 1));
  double u3 = Y(1, 3) / Y(1, 1) + u1 * u4 * u4 / 6.0;
  *theta << m[0], m[1], m[2], m[3], std::log(Y(0, 0)), std::log(Y(1, 1)), u1,
      u2, u3, u4;
  return true;
}

// Direct initializer for M.  Vanishing of the lower-left block of
// h(M)^-1 g forces M M^T = (I+X)(I-X)^-1, and triangularity of the a n
// block forces T = (I-X) M upper triangular with positive diagonal; hence
// T T^T = I - X^2 and T is its unique upper-triangular square root:
//   t22 = sqrt(K22), t12 = K12 / t22, t11 = sqrt(K11 - t12^2).
// False only for numerically degenerate input (boundary within roundoff).
bool closed_form_M(const Matrix2d& X, Vec4* m) {
  Matrix2d K = Matrix2d::Identity() - X * X;
  if (!(K(1, 1) > 0.0)) return false;
  double t22 = std::sqrt(K(1, 1));
  double t12 = K(0, 1) / t22;
  double t11sq = K(0, 0) - t12 * t12;
  if (!(t11sq > 0.0)) return false;
  Matrix2d T;
  T << std::sqrt(t11sq), t12, 0.0, t22;
  Matrix2d ImX = Matrix2d::Identity() - X;
  double det = ImX(0, 0) * ImX(1, 1) - ImX(0, 1) * ImX(1, 0);
  if (!(std::abs(det) > 0.0)) return false;
  Matrix2d Inv;
  Inv << ImX(1, 1), -ImX(0, 1), -ImX(1, 0), ImX(0, 0);
  Matrix2d M = (Inv / det) * T;
  (*m) << M(0, 0), M(0, 1), M(1, 0), M(1, 1);
  return true;
}

// shared tail: coordinates from a converged M, full-coordinate polish,
// and the reconstruction contract
bool finish(const Vec4& m, const Matrix2d& X, Vec10* theta, int* iterations) {
  if (!read_off(m, embed(X, 1.0), theta)) return false;
  newton_solve(embed(X, 1.0), theta, 1e-9, 10, iterations);
  bool singular = false;
  return residual(*theta, embed(X, 1.0), &singular).norm() <= 1e-9;
}

// Newton iteration from the direct initializer; if that path fails, retry
// with homotopy continuation along t X from the identity.  False only when
// both fail the reconstruction contract.
bool factorize(const Matrix2d& X, Vec10* theta, int* iterations,
               double* t_reached) {
  Vec4 m0;
  if (closed_form_M(X, &m0)) {
    Vec4 m = m0;
    reduced_solve(&m, embed(X, 1.0), 30, iterations);
    if (finish(m, X, theta, iterations)) {
      *t_reached = 1.0;
      return true;
    }
  }
  Vec4 m(1.0, 0.0, 0.0, 1.0);  // M = I
  double t = 0.0, dt = 1.0;
  while (t < 1.0) {
    double tn = std::min(1.0, t + dt);
    Vec4 trial = m;
    if (reduced_solve(&trial, embed(X, tn), 60, iterations)) {
      m = trial;
      t = tn;
      dt = std::min(1.0, 2.0 * dt);
    } else {
      dt *= 0.5;
      if (dt < 1e-4) {
        *t_reached = t;
        return false;
      }
    }
  }
  *t_reached = 1.0;
  return finish(m, X, theta, iterations);
}

}  // namespace sp4_detail

bool sp4_omega_member(const Eigen::Matrix2d& X, double* spectral_radius) {
  if ((X - X.transpose()).norm() > 1e-12)
    throw NotSymmetric("Omega membership is defined for symmetric matrices");
  double mean = 0.5 * (X(0, 0) + X(1, 1));
  double rad = std::hypot(0.5 * (X(0, 0) - X(1, 1)), X(0, 1));
  double sr = std::abs(mean) + rad;
  if (spectral_radius) *spectral_radius = sr;
  return sr < 1.0;
}

SP4Factorization sp4_aH(const Eigen::Matrix2d& X) {
  double sr = 0.0;
  if (!sp4_omega_member(X, &sr))
    throw OutsideOmega("spectral radius " + std::to_string(sr) + " >= 1");
  using namespace sp4_detail;
  Vec10 theta;
  int iterations = 0;
  double t_reached = 0.0;
  if (!factorize(X, &theta, &iterations, &t_reached))
    throw NewtonDivergence(
        t_reached < 1.0
            ? "homotopy stalled at t = " + std::to_string(t_reached)
            : "residual tolerance not met at t = 1");
  SP4Factorization out;
  bool singular = false;
  out.h = h_of(theta, &singular);
  out.n = n_of(theta);
  out.a_log = Eigen::Vector2d(theta[4], theta[5]);
  out.residual = residual(theta, embed(X, 1.0), &singular).norm();
  out.newton_iterations = iterations;

  Eigen::Matrix4d S = Eigen::Matrix4d::Zero(), J = Eigen::Matrix4d::Zero();
  S.block<2, 2>(0, 2).setIdentity();
  S.block<2, 2>(2, 0).setIdentity();
  J.block<2, 2>(0, 2).setIdentity();
  J.block<2, 2>(2, 0) = -Eigen::Matrix2d::Identity();
  out.h_tau_residual = (S * out.h * S - out.h).norm();
  out.h_symp_residual = (out.h.transpose() * J * out.h - J).norm();
  return out;
}

}  // namespace cfn
