#include "cfn/special.hpp"

#include <cmath>
#include <limits>

namespace cfn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogPi = 1.144729885849400174143427351353058712;
constexpr double kHalfLog2Pi = 0.918938533204672741780329736405617639;

// Lanczos g = 607/128, 15 terms (Godfrey's coefficients). Good to ~1e-15
// relative in the half-plane Re z >= 1/2.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx lanczos_log_gamma(cplx z) {
  // valid for Re z >= 0.5
  cplx sum = kLanczosC[0];
  for (int k = 1; k < 15; ++k) sum += kLanczosC[k] / (z - 1.0 + double(k));
  cplx t = z + (kLanczosG - 0.5);
  return kHalfLog2Pi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

bool near_nonpositive_integer(cplx z, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  double r = z.real();
  if (r > 0.5) return false;
  return std::abs(r - std::round(r)) <= tol;
}

cplx log_sin_pi(cplx z) {
  double y = z.imag();
  if (std::abs(y) <= 20.0) return std::log(std::sin(kPi * z));
  const cplx i(0.0, 1.0);
  if (y > 0.0) {
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i), |e^{2 i pi z}| < 1
    cplx w = std::exp(2.0 * i * kPi * z);
    return -i * kPi * z + std::log((w - 1.0) / (2.0 * i));
  }
  cplx w = std::exp(-2.0 * i * kPi * z);
  return i * kPi * z + std::log((1.0 - w) / (2.0 * i));
}

cplx log_gamma(cplx z) {
  if (near_nonpositive_integer(z)) {
    return cplx(std::numeric_limits<double>::infinity(), 0.0);
  }
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return kLogPi - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

namespace {

// B(n, b) = Gamma(n) / (b (b+1) ... (b+n-1)) for positive integer n; exact on
// the cancelled pole lines.
BetaResult beta_int_first(int n, cplx b, double tol) {
  double lognum = std::lgamma(double(n));
  cplx denom = 1.0;
  bool pole = false;
  for (int k = 0; k < n; ++k) {
    cplx f = b + double(k);
    if (std::abs(f) <= tol) pole = true;
    denom *= f;
  }
  if (pole) {
    double nan = std::numeric_limits<double>::quiet_NaN();
    return {cplx(nan, nan), true};
  }
  return {std::exp(lognum) / denom, false};
}

bool near_positive_integer(cplx z, int* n_out, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  double r = std::round(z.real());
  if (r < 1.0 || r > 256.0) return false;
  if (std::abs(z.real() - r) > tol) return false;
  *n_out = int(r);
  return true;
}

}  // namespace

BetaResult beta(cplx a, cplx b) {
  const double tol = 1e-11;
  int n = 0;
  if (near_positive_integer(a, &n, tol)) return beta_int_first(n, b, tol);
  if (near_positive_integer(b, &n, tol)) return beta_int_first(n, a, tol);

  bool na = near_nonpositive_integer(a, tol);
  bool nb = near_nonpositive_integer(b, tol);
  bool nd = near_nonpositive_integer(a + b, tol);
  if (na || nb) {
    // neither argument is a positive integer, so a denominator pole cannot
    // fully cancel a numerator pole here
    double nan = std::numeric_limits<double>::quiet_NaN();
    return {cplx(nan, nan), true};
  }
  if (nd) return {cplx(0.0, 0.0), false};  // zero of 1/Gamma(a+b)
  return {std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b)), false};
}

}  // namespace cfn
