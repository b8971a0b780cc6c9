#pragma once

#include <functional>
#include <vector>

#include "cfn/special.hpp"

namespace cfn {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  cplx value;
  double error = 0.0;     // accumulated estimate
  int subdivisions = 0;   // intervals examined beyond the initial one
};

// Adaptive Gauss-Kronrod (G7,K15) bisection for a complex-valued integrand on
// [a, b]. Throws QuadratureFailure when the error target is not met within
// cfg.max_subdivisions. The integrand is never evaluated at the endpoints.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f,
                                    double a, double b,
                                    const QuadratureConfig& cfg = {});

// Closed-form integral of the leading endpoint behaviour:
//   integral_0^delta  phi^p * sum_k c[k] phi^(2k)  dphi
//     = sum_k c[k] * delta^(p+2k+1) / (p+2k+1),
// valid for Re p > -1. Captures an endpoint power singularity exactly, which
// bisection alone cannot resolve in double precision once Re p approaches -1.
cplx power_endpoint_cell(cplx p, double delta, const std::vector<cplx>& c);

// Even power-series coefficients of cos(phi)^a * (sin(phi)/phi)^q around 0:
//   cos^a(phi) (sin phi/phi)^q = sum_k c[k] phi^(2k) + O(phi^12),  c[0] = 1.
// Built from the log-cos / log-sinc series and exponentiated; used together
// with power_endpoint_cell for integrands of the form phi^q * (analytic).
std::vector<cplx> cos_pow_sinc_pow_series(int a, cplx q);

}  // namespace cfn
