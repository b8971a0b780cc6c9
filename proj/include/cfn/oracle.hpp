#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cfn/cfunc.hpp"
#include "cfn/quadrature.hpp"

namespace cfn {

// ---------------------------------------------------------------------------
// SL(2,R) rank-one models. nbar(x) is the lower unipotent [[1,0],[x,1]].
// a_log is the coordinate of log a in the catalog basis for the rank-one
// entries (alpha = 2e_1, so alpha(diag(s,-s)) = 2s gives coordinate s).

struct SL2Factorization {
  Eigen::Matrix2d h;  // hyperbolic rotation (causal model) / SO(2) (Riemannian)
  Eigen::Matrix2d n;  // upper unipotent
  double a_log = 0.0;
  double residual = 0.0;  // ||h a n - nbar(x)||_F, verified by multiplication
};

// Causal model: h in SO(1,1)_0, exists iff |x| < 1 (throws OutsideOmega),
// with exp(a_log) = sqrt(1 - x^2).
SL2Factorization sl2_ncc_aH(double x);

// Riemannian model: h in SO(2), defined for every x,
// with exp(a_log) = sqrt(1 + x^2).
SL2Factorization sl2_riemannian_aH(double x);

// ---------------------------------------------------------------------------
// Radial quadrature oracle for the rank-one integrals over R^m, m in {1,2,3}:
//   NCC:        int_{|X|<1} (1 - |X|^2)^(-(z+m)/2) dX   (Re z < 2 - m)
//   Riemannian: int_{R^m}   (1 + |X|^2)^(-(z+m)/2) dX   (Re z > 0)
// Plain Lebesgue measure; independent of the Beta/log-Gamma kernel.
// Errors: OutOfDomain, QuadratureFailure.

enum class Rank1Kind { NCC, Riemannian };

QuadratureResult quadrature_c_rank1(Rank1Kind kind, int m, cplx z,
                                    const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------
// Sp(4,R) model with the causal GL(2,R) structure. The picture used has
// diagonal a = diag(d1, d2, -d1, -d2); the negative noncompact nilpotent is
// the symmetric lower block, so exp(Xbar) = [[I,0],[X,I]] for X in Sym(2,R).
// Omega is the set of symmetric X with spectral radius < 1.

// Errors: NotSymmetric. Optionally reports the spectral radius.
bool sp4_omega_member(const Eigen::Matrix2d& X,
                      double* spectral_radius = nullptr);

struct SP4Factorization {
  Eigen::Matrix4d h;
  Eigen::Matrix4d n;
  Eigen::Vector2d a_log;        // (d1, d2) in the catalog e-basis
  double residual = 0.0;        // ||h a n - exp(Xbar)||_F
  double h_tau_residual = 0.0;  // distance of h from the tau-fixed subgroup
  double h_symp_residual = 0.0; // ||h^T J h - J||_F
  int newton_iterations = 0;
};

// Least-squares Newton on the (h, log a, n) coordinates along the homotopy
// t X, t: 0 -> 1. Errors: NotSymmetric, OutsideOmega, NewtonDivergence
// (message reports the homotopy parameter reached).
SP4Factorization sp4_aH(const Eigen::Matrix2d& X);

// ---------------------------------------------------------------------------
// Monte-Carlo estimate of the noncompact-shell integral for the Sp(4) model:
//   int_Omega a_H(exp Xbar)^(-(lambda+rho)) dX
// by rejection sampling of the coordinate box [-1,1]^3 for (X11, X22, X12).
// Draws with spectral radius above 1 - 1e-12 are rejected. Reproducible for a
// fixed (seed, streams) pair; the estimate does not depend on thread timing.
// Errors: OutOfDomain when lambda is outside the convergence tube.

struct MCConfig {
  long long samples = 1000000;  // box draws, split across streams
  std::uint64_t seed = 20260823;
  int streams = 8;
};

struct MCEstimate {
  cplx estimate{0.0, 0.0};
  double stderr_est = 0.0;
  long long draws = 0;
  long long accepted = 0;
  long long newton_failures = 0;  // excluded from the estimate; expect 0
};

MCEstimate mc_c_omega_sp4(const Functional& lambda, const MCConfig& cfg = {});

// Shared-sample variant: one factorization sweep serves every lambda.
std::vector<MCEstimate> mc_c_omega_sp4_multi(
    const std::vector<Functional>& lambdas, const MCConfig& cfg = {});

// ---------------------------------------------------------------------------
// Structural Monte-Carlo checks on the Sp(4) model.

struct SampleCheckResult {
  int samples = 0;
  int failures = 0;
  bool pass() const { return failures == 0; }
};

// Projections of Omega samples onto the three negative noncompact root
// directions (two diagonal entries, the off-diagonal pair) stay in Omega.
SampleCheckResult projection_property_check(int samples, std::uint64_t seed);

// Conjugating Omega samples by exp of random elements of the maximal cone
// acts on root coordinates by contraction scalings and stays in Omega.
SampleCheckResult semigroup_contraction_check(int samples, std::uint64_t seed);

}  // namespace cfn
