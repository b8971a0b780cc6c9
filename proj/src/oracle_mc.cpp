#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "cfn/errors.hpp"
#include "cfn/oracle.hpp"
#include "cfn/rng.hpp"
#include "sp4_newton.hpp"

namespace cfn {
namespace {

// Cached combinatorial data for the C2 system with x0 = (1/2, 1/2): rho and
// the noncompact positive coroots that bound the convergence tube.
struct Sp4Model {
  RootSystem rs;
  Functional rho_f;
  std::vector<Eigen::Vector2d> nc_coroots;
  std::vector<int> nc_mult;
};

const Sp4Model& sp4_model() {
  static const Sp4Model model = [] {
    Multiplicities mult;
    mult.long_mult = 1;
    mult.short_mult = 1;
    Eigen::VectorXd x0(2);
    x0 << 0.5, 0.5;
    Sp4Model m{build_root_system(CartanType::C, 2, mult, x0),
               Functional{}, {}, {}};
    m.rho_f = rho(m.rs);
    for (int i : m.rs.noncompact_positive()) {
      Eigen::VectorXd H = coroot(m.rs, m.rs.root(i).coords);
      m.nc_coroots.emplace_back(H[0], H[1]);
      m.nc_mult.push_back(m.rs.root(i).multiplicity);
    }
    return m;
  }();
  return model;
}

void check_domain(const Sp4Model& m, const Functional& lambda) {
  if (lambda.dim() != 2)
    throw Error("lambda must be 2-dimensional for the Sp(4,R) model");
  for (std::size_t k = 0; k < m.nc_coroots.size(); ++k) {
    double v = lambda.re.dot(m.nc_coroots[k]);
    double bound = 2.0 - m.nc_mult[k];
    if (!(v < bound))
      throw OutOfDomain("Re lambda(H) = " + std::to_string(v) +
                        " outside the convergence tube (needs < " +
                        std::to_string(bound) + ")");
  }
}

constexpr double kShell = 1e-12;  // boundary shell excluded from sampling

// Accept/reject in the raw coordinate box; sets X and its spectral radius.
bool draw_box_point(CounterRng& rng, Eigen::Matrix2d* X) {
  double x11 = 2.0 * rng.next_double() - 1.0;
  double x22 = 2.0 * rng.next_double() - 1.0;
  double x12 = 2.0 * rng.next_double() - 1.0;
  double mean = 0.5 * (x11 + x22);
  double rad = std::hypot(0.5 * (x11 - x22), x12);
  if (!(std::abs(mean) + rad < 1.0 - kShell)) return false;
  (*X) << x11, x12, x12, x22;
  return true;
}

Eigen::Matrix2d draw_omega_point(CounterRng& rng) {
  Eigen::Matrix2d X;
  for (int tries = 0; tries < 10000; ++tries)
    if (draw_box_point(rng, &X)) return X;
  throw Error("rejection sampler failed to hit Omega in 10000 tries");
}

}  // namespace

std::vector<MCEstimate> mc_c_omega_sp4_multi(
    const std::vector<Functional>& lambdas, const MCConfig& cfg) {
  const Sp4Model& model = sp4_model();
  if (cfg.samples <= 0) throw Error("MCConfig.samples must be positive");
  if (cfg.streams <= 0) throw Error("MCConfig.streams must be positive");
  for (const Functional& lambda : lambdas) check_domain(model, lambda);

  const std::size_t L = lambdas.size();
  std::vector<Eigen::Vector2d> shift_re(L), shift_im(L);
  for (std::size_t k = 0; k < L; ++k) {
    shift_re[k] = Eigen::Vector2d(lambdas[k].re[0] + model.rho_f.re[0],
                                  lambdas[k].re[1] + model.rho_f.re[1]);
    shift_im[k] = Eigen::Vector2d(lambdas[k].im[0], lambdas[k].im[1]);
  }

  std::vector<cplx> sum(L, cplx{0.0, 0.0});
  std::vector<double> sum_re2(L, 0.0), sum_im2(L, 0.0);
  long long accepted = 0, failures = 0;

  for (int s = 0; s < cfg.streams; ++s) {
    long long n_s = cfg.samples / cfg.streams +
                    (s < cfg.samples % cfg.streams ? 1 : 0);
    CounterRng rng(cfg.seed, std::uint64_t(s));
    for (long long n = 0; n < n_s; ++n) {
      Eigen::Matrix2d X;
      if (!draw_box_point(rng, &X)) continue;
      sp4_detail::Vec10 theta;
      int iterations = 0;
      double t_reached = 0.0;
      if (!sp4_detail::factorize(X, &theta, &iterations, &t_reached)) {
        ++failures;
        continue;
      }
      ++accepted;
      Eigen::Vector2d d(theta[4], theta[5]);
      for (std::size_t k = 0; k < L; ++k) {
        cplx w = std::polar(std::exp(-shift_re[k].dot(d)), -shift_im[k].dot(d));
        sum[k] += w;
        sum_re2[k] += w.real() * w.real();
        sum_im2[k] += w.imag() * w.imag();
      }
    }
  }

  const double N = double(cfg.samples);
  const double volume = 8.0;  // Lebesgue volume of the coordinate box
  std::vector<MCEstimate> out(L);
  for (std::size_t k = 0; k < L; ++k) {
    cplx mean = sum[k] / N;
    double var_re = sum_re2[k] / N - mean.real() * mean.real();
    double var_im = sum_im2[k] / N - mean.imag() * mean.imag();
    double correction = N > 1.5 ? N / (N - 1.0) : 1.0;
    var_re = std::max(0.0, var_re * correction);
    var_im = std::max(0.0, var_im * correction);
    out[k].estimate = volume * mean;
    out[k].stderr_est = volume * std::sqrt((var_re + var_im) / N);
    out[k].draws = cfg.samples;
    out[k].accepted = accepted;
    out[k].newton_failures = failures;
  }
  return out;
}

MCEstimate mc_c_omega_sp4(const Functional& lambda, const MCConfig& cfg) {
  return mc_c_omega_sp4_multi({lambda}, cfg)[0];
}

SampleCheckResult projection_property_check(int samples, std::uint64_t seed) {
  CounterRng rng(seed, 101);
  SampleCheckResult result;
  for (int n = 0; n < samples; ++n) {
    Eigen::Matrix2d X = draw_omega_point(rng);
    Eigen::Matrix2d p_diag = Eigen::Matrix2d::Zero();
    p_diag(0, 0) = X(0, 0);
    p_diag(1, 1) = X(1, 1);
    Eigen::Matrix2d p_first = Eigen::Matrix2d::Zero();
    p_first(0, 0) = X(0, 0);
    Eigen::Matrix2d p_second = Eigen::Matrix2d::Zero();
    p_second(1, 1) = X(1, 1);
    ++result.samples;
    if (!sp4_omega_member(p_diag) || !sp4_omega_member(p_first) ||
        !sp4_omega_member(p_second))
      ++result.failures;
  }
  return result;
}

SampleCheckResult semigroup_contraction_check(int samples,
                                              std::uint64_t seed) {
  CounterRng rng(seed, 202);
  SampleCheckResult result;
  for (int n = 0; n < samples; ++n) {
    Eigen::Matrix2d X = draw_omega_point(rng);
    double y1 = 2.0 * rng.next_double();
    double y2 = 2.0 * rng.next_double();
    Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
    S(0, 0) = std::exp(-y1);
    S(1, 1) = std::exp(-y2);
    Eigen::Matrix2d Xp = S * X * S;
    ++result.samples;
    if (!sp4_omega_member(Xp)) ++result.failures;
  }
  return result;
}

}  // namespace cfn
