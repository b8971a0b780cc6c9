#include <cmath>

#include "cfn/errors.hpp"
#include "cfn/oracle.hpp"

namespace cfn {

// Radial reduction with the substitution r = sin(theta) (NCC) resp.
// r = tan(theta) (Riemannian). Both integrals become
//   Vol(S^{m-1}) * int_0^{pi/2} sin^{m-1}(theta) cos^{E}(theta) dtheta
// with E = 1 - z - m (NCC) or E = z - 1 (Riemannian). In the variable
// phi = pi/2 - theta the integrand is phi^E * analytic near phi = 0; that
// endpoint cell is integrated from the power series, the rest adaptively.
QuadratureResult quadrature_c_rank1(Rank1Kind kind, int m, cplx z,
                                    const QuadratureConfig& cfg) {
  if (m < 1 || m > 3) throw Error("rank-one oracle supports m in {1, 2, 3}");
  const double kPi = 3.141592653589793238462643383279502884;
  cplx E = (kind == Rank1Kind::NCC) ? (1.0 - z - double(m)) : (z - 1.0);
  if (!(E.real() > -1.0)) {
    throw OutOfDomain(kind == Rank1Kind::NCC
                          ? "integral diverges: Re z >= 2 - m"
                          : "integral diverges: Re z <= 0");
  }
  const double delta = 0.05;
  cplx cell = power_endpoint_cell(E, delta, cos_pow_sinc_pow_series(m - 1, E));
  auto f = [m, E](double phi) {
    return std::pow(std::cos(phi), m - 1) *
           std::exp(E * std::log(std::sin(phi)));
  };
  QuadratureResult bulk = integrate_adaptive(f, delta, 0.5 * kPi, cfg);
  double volS = (m == 1) ? 2.0 : (m == 2 ? 2.0 * kPi : 4.0 * kPi);
  QuadratureResult out;
  out.value = volS * (cell + bulk.value);
  out.error = volS * (bulk.error + std::abs(cell) * 1e-13);
  out.subdivisions = bulk.subdivisions;
  return out;
}

}  // namespace cfn
