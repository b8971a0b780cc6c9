#pragma once

// Internal Newton kernel for the Sp(4,R) Iwasawa-type factorization, shared
// by the single-point oracle and the Monte-Carlo sampler. Not installed.

#include <Eigen/Dense>

namespace cfn {
namespace sp4_detail {

using Vec10 = Eigen::Matrix<double, 10, 1>;
using Vec16 = Eigen::Matrix<double, 16, 1>;
using Mat16x10 = Eigen::Matrix<double, 16, 10>;

Eigen::Matrix4d h_of(const Vec10& theta, bool* singular);
Eigen::Matrix4d n_of(const Vec10& theta);
Vec16 residual(const Vec10& theta, const Eigen::Matrix4d& g, bool* singular);
bool newton_solve(const Eigen::Matrix4d& g, Vec10* theta, double tol,
                  int max_iter, int* iterations);
Eigen::Matrix4d embed(const Eigen::Matrix2d& X, double t);
bool factorize(const Eigen::Matrix2d& X, Vec10* theta, int* iterations,
               double* t_reached);

}  // namespace sp4_detail
}  // namespace cfn
