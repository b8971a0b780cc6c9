#pragma once

#include <complex>

namespace cfn {

using cplx = std::complex<double>;

// Log Gamma for complex argument, Lanczos approximation with reflection for
// Re z < 1/2. exp(log_gamma(z)) == Gamma(z) to ~1e-13 relative away from
// poles; the imaginary part may differ from the principal determination by a
// multiple of 2*pi off the positive real axis (callers only exponentiate or
// difference it). Returns +inf real part at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

// log(sin(pi z)) computed without overflow for large |Im z|.
cplx log_sin_pi(cplx z);

// Euler Beta with explicit pole bookkeeping.
//
// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), continued meromorphically. `pole` is
// set when the value has a genuine pole at (a,b): a numerator Gamma pole not
// cancelled by a denominator pole. When one argument is a positive integer n
// the closed form Gamma(n)/prod_{k<n}(other+k) is used, which evaluates the
// cancelled cases exactly. When `pole` is true `value` is NaN.
struct BetaResult {
  cplx value;
  bool pole = false;
};

BetaResult beta(cplx a, cplx b);

// Distance-based test used for pole bookkeeping: true when z is within tol of
// a non-positive real integer.
bool near_nonpositive_integer(cplx z, double tol = 1e-10);

}  // namespace cfn
