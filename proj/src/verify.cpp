#include <cmath>
#include <complex>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "cfn/catalog.hpp"
#include "cfn/cfunc.hpp"
#include "cfn/oracle.hpp"
#include "cfn/rng.hpp"
#include "cfn/verify.hpp"

namespace cfn {

bool SuiteReport::passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

template <class Body>
CheckResult run_check(const std::string& name, Body&& body) {
  CheckResult r;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

Functional func1(cplx z) {
  Eigen::VectorXd re(1), im(1);
  re << z.real();
  im << z.imag();
  return Functional(re, im);
}

Functional func2(double a, double b, double ia = 0.0, double ib = 0.0) {
  Eigen::VectorXd re(2), im(2);
  re << a, b;
  im << ia, ib;
  return Functional(re, im);
}

const RootSystem& a1_system() {
  static const RootSystem rs = [] {
    Multiplicities mult;
    mult.long_mult = 1;
    Eigen::VectorXd x0(1);
    x0 << 0.5;
    return build_root_system(CartanType::A, 1, mult, x0);
  }();
  return rs;
}

const RootSystem& c2_system() {
  static const RootSystem rs = [] {
    Multiplicities mult;
    mult.long_mult = 1;
    mult.short_mult = 1;
    Eigen::VectorXd x0(2);
    x0 << 0.5, 0.5;
    return build_root_system(CartanType::C, 2, mult, x0);
  }();
  return rs;
}

// 20 points below the convergence boundary, 6 of them complex.
std::vector<cplx> grid_below(double boundary) {
  std::vector<cplx> zs;
  for (int j = 0; j < 14; ++j) zs.push_back(cplx(boundary - 0.1 - 0.35 * j, 0));
  zs.push_back(cplx(boundary - 0.4, 0.8));
  zs.push_back(cplx(boundary - 0.4, -0.8));
  zs.push_back(cplx(boundary - 1.3, 2.1));
  zs.push_back(cplx(boundary - 1.3, -2.1));
  zs.push_back(cplx(boundary - 2.6, 0.5));
  zs.push_back(cplx(boundary - 3.1, -1.2));
  return zs;
}

// 20 points with positive real part, 6 of them complex.
std::vector<cplx> grid_positive() {
  std::vector<cplx> zs;
  for (int j = 0; j < 14; ++j) zs.push_back(cplx(0.15 + 0.3 * j, 0));
  zs.push_back(cplx(0.4, 0.8));
  zs.push_back(cplx(0.4, -0.8));
  zs.push_back(cplx(1.3, 2.1));
  zs.push_back(cplx(1.3, -2.1));
  zs.push_back(cplx(2.6, 0.5));
  zs.push_back(cplx(3.1, -1.2));
  return zs;
}

CheckResult ratio_constancy(Rank1Kind kind, int m) {
  std::string name = "ratio-constancy-m" + std::to_string(m);
  return run_check(name, [&](CheckResult& r) {
    std::vector<cplx> zs =
        kind == Rank1Kind::NCC ? grid_below(2.0 - m) : grid_positive();
    cplx first{};
    double spread = 0.0;
    for (std::size_t j = 0; j < zs.size(); ++j) {
      cplx z = zs[j];
      QuadratureResult q = quadrature_c_rank1(kind, m, z);
      BetaResult B = kind == Rank1Kind::NCC
                         ? beta(0.5 * m, -0.5 * z - 0.5 * m + 1.0)
                         : beta(0.5 * m, 0.5 * z);
      cplx formula = B.value;
      if (kind == Rank1Kind::NCC) formula *= std::pow(2.0, m - 1);
      cplx ratio = q.value / formula;
      if (j == 0)
        first = ratio;
      else
        spread = std::max(spread, std::abs(ratio / first - 1.0));
    }
    r.passed = spread <= 1e-8;
    r.detail = "spread " + fmt(spread) + " over 20 z, kappa " +
               fmt(first.real()) + (std::abs(first.imag()) > 1e-9
                                        ? " + " + fmt(first.imag()) + "i"
                                        : "");
  });
}

std::vector<CheckResult> domain_sharpness_checks() {
  std::vector<CheckResult> out;
  std::vector<double> values;

  out.push_back(run_check("boundary-monotone", [&](CheckResult& r) {
    bool monotone = true;
    for (int k = 1; k <= 10; ++k) {
      double z = 1.0 - std::pow(2.0, -k);
      QuadratureResult q = quadrature_c_rank1(Rank1Kind::NCC, 1, z);
      if (!values.empty() && q.value.real() <= values.back()) monotone = false;
      values.push_back(q.value.real());
    }
    r.passed = monotone;
    r.detail = "v(k=1) = " + fmt(values.front()) +
               ", v(k=10) = " + fmt(values.back());
  }));

  out.push_back(run_check("boundary-blowup", [&](CheckResult& r) {
    if (values.size() != 10) {
      r.passed = false;
      r.detail = "no quadrature values";
      return;
    }
    // v / (1 - z) at k = 10; the raw integral grows like 1/(1 - z).
    double scaled = values.back() * std::pow(2.0, 10);
    r.passed = scaled > 1e6;
    r.detail = "v/(1-z) = " + fmt(scaled) + " at k = 10";
  }));

  out.push_back(run_check("boundary-pole", [&](CheckResult& r) {
    const RootSystem& rs = a1_system();
    Eigen::VectorXd alpha = rs.root(rs.noncompact_positive()[0]).coords;
    CValue at_one = c_alpha_noncompact(rs, alpha, func1(1.0));
    bool ok = at_one.pole && !at_one.in_domain;
    for (int k = 1; k <= 10; ++k) {
      CValue ck =
          c_alpha_noncompact(rs, alpha, func1(1.0 - std::pow(2.0, -k)));
      if (ck.pole || !ck.in_domain) ok = false;
    }
    std::vector<PoleSheet> sheets = pole_sheets(rs);
    bool sheet_ok = false;
    for (const PoleSheet& s : sheets)
      if (s.family == PoleFamily::Noncompact &&
          std::abs(s.offset - 1.0) < 1e-12 && std::abs(s.step - 2.0) < 1e-12)
        sheet_ok = true;
    r.passed = ok && sheet_ok;
    r.detail = "pole flagged at z = 1 only; sheet z = 1 + 2k";
  }));

  out.push_back(run_check("boundary-flag-flip", [&](CheckResult& r) {
    const RootSystem& rs = a1_system();
    Eigen::VectorXd alpha = rs.root(rs.noncompact_positive()[0]).coords;
    auto in_domain = [&](cplx z) {
      return c_alpha_noncompact(rs, alpha, func1(z)).in_domain;
    };
    bool ok = in_domain(cplx(1.0 - 1e-9, 0.0)) &&
              in_domain(cplx(1.0 - 1e-3, 0.7)) && !in_domain(cplx(1.0, 0.0)) &&
              !in_domain(cplx(1.0, 0.7)) && !in_domain(cplx(1.0 + 1e-9, 0.0)) &&
              !in_domain(cplx(1.0 + 1e-3, -0.4));
    r.passed = ok;
    r.detail = "in_domain == (Re z < 1) around the boundary";
  }));
  return out;
}

double reduced_mod_2pi(double x) {
  return x - 2.0 * kPi * std::round(x / (2.0 * kPi));
}

double identity_deviation(cplx delta) {
  return std::abs(delta.real()) + std::abs(reduced_mod_2pi(delta.imag()));
}

std::vector<cplx> pole_avoiding_grid() {
  std::vector<cplx> zs;
  for (double re : {-2.6, -1.3, -0.7, 0.4, 1.1, 2.5, 3.9})
    for (double im : {-2.0, -0.6, 0.3, 1.7}) zs.push_back(cplx(re, im));
  return zs;
}

std::string entry_dir(const VerifyOptions& opt) {
  return opt.data_dir.empty() ? default_data_dir() : opt.data_dir;
}

}  // namespace

SuiteReport verify_rank1(const VerifyOptions& opt) {
  SuiteReport report;
  report.suite = "rank1";
  for (int m : {1, 2, 3})
    if (opt.m == 0 || opt.m == m)
      report.checks.push_back(ratio_constancy(Rank1Kind::NCC, m));
  if (opt.m == 0 || opt.m == 1)
    for (CheckResult& c : domain_sharpness_checks())
      report.checks.push_back(std::move(c));
  return report;
}

SuiteReport verify_rank1_riemannian(const VerifyOptions& opt) {
  SuiteReport report;
  report.suite = "rank1-riemannian";
  for (int m : {1, 2, 3})
    if (opt.m == 0 || opt.m == m)
      report.checks.push_back(ratio_constancy(Rank1Kind::Riemannian, m));
  report.checks.push_back(run_check("spot-arctangent", [](CheckResult& r) {
    QuadratureResult q = quadrature_c_rank1(Rank1Kind::Riemannian, 1, 1.0);
    double dev = std::abs(q.value - cplx(kPi, 0.0));
    r.passed = dev <= 1e-9;
    r.detail = "|value - pi| = " + fmt(dev);
  }));
  report.checks.push_back(run_check("spot-algebraic", [](CheckResult& r) {
    QuadratureResult q = quadrature_c_rank1(Rank1Kind::Riemannian, 1, 2.0);
    double dev = std::abs(q.value - cplx(2.0, 0.0));
    r.passed = dev <= 1e-9;
    r.detail = "|value - 2| = " + fmt(dev);
  }));
  return report;
}

SuiteReport verify_sp4_mc(const VerifyOptions& opt) {
  SuiteReport report;
  report.suite = "sp4-mc";

  std::vector<Functional> lambdas = {
      func2(-2.0, -2.0),   func2(-1.0, -2.0),         func2(-0.5, -1.0),
      func2(-2.0, -1.0),   func2(-3.0, -2.5),         func2(-1.5, -1.5),
      func2(-2.0, -2.0, 0.5, -0.3)};

  std::vector<MCEstimate> estimates;
  report.checks.push_back(run_check("mc-run", [&](CheckResult& r) {
    MCConfig cfg;
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.streams = opt.streams;
    estimates = mc_c_omega_sp4_multi(lambdas, cfg);
    r.passed = estimates.size() == lambdas.size() &&
               estimates[0].newton_failures == 0;
    r.detail = std::to_string(estimates.empty() ? 0 : estimates[0].accepted) +
               " of " + std::to_string(opt.samples) + " draws accepted, " +
               std::to_string(estimates.empty()
                                  ? 0
                                  : estimates[0].newton_failures) +
               " factorization failures";
  }));

  report.checks.push_back(run_check("ratio-agreement", [&](CheckResult& r) {
    if (estimates.size() != lambdas.size()) {
      r.passed = false;
      r.detail = "no estimates";
      return;
    }
    const RootSystem& rs = c2_system();
    std::vector<cplx> ratio(lambdas.size());
    std::vector<double> sigma(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      CValue formula = c_omega(rs, lambdas[k]);
      if (!formula.in_domain)
        throw Error("test point unexpectedly outside the formula domain");
      cplx est = estimates[k].estimate;
      ratio[k] = formula.value / est;
      sigma[k] = std::abs(formula.value) * estimates[k].stderr_est /
                 (std::abs(est) * std::abs(est));
    }
    double worst = 0.0;
    for (std::size_t k = 1; k < ratio.size(); ++k) {
      double dev = std::abs(ratio[k] - ratio[0]);
      double comb = std::hypot(sigma[k], sigma[0]);
      worst = std::max(worst, dev / comb);
    }
    r.passed = worst <= opt.tol;
    r.detail = "kappa " + fmt(ratio[0].real()) + ", worst deviation " +
               fmt(worst) + " combined sigma (limit " + fmt(opt.tol) + ")";
  }));
  return report;
}

SuiteReport verify_structure(const VerifyOptions& opt) {
  SuiteReport report;
  report.suite = "structure";
  const std::string dir = entry_dir(opt);

  std::vector<std::string> names;
  report.checks.push_back(run_check("catalog-present", [&](CheckResult& r) {
    names = list_entries(dir);
    r.passed = !names.empty();
    std::string joined;
    for (const std::string& n : names) joined += (joined.empty() ? "" : ", ") + n;
    r.detail = std::to_string(names.size()) + " entries: " + joined;
  }));

  for (const std::string& name : names) {
    report.checks.push_back(run_check("validators-" + name, [&](CheckResult& r) {
      LoadedEntry e = load_entry(name, dir);
      int pass_count = 0;
      for (const ValidationCheck& c : e.report.checks)
        if (c.passed) ++pass_count;
      r.passed = !e.report.hard_failures();
      r.detail = std::to_string(pass_count) + "/" +
                 std::to_string(e.report.checks.size()) + " checks, ncc = " +
                 (e.report.is_ncc() ? "yes" : "no");
    }));
  }

  for (std::size_t idx = 0; idx < names.size(); ++idx) {
    const std::string& name = names[idx];
    report.checks.push_back(
        run_check("bookkeeping-" + name, [&](CheckResult& r) {
          LoadedEntry e = load_entry(name, dir);
          const RootSystem& rs = e.system;
          std::vector<int> flipped;
          for (int i : rs.noncompact_positive())
            flipped.push_back(
                rs.find_root(-rs.root(i).coords).value());
          for (int i : rs.compact_positive()) flipped.push_back(i);

          CounterRng rng(opt.seed, 0x50 + idx);
          double worst_full = 0.0, worst_flip = 0.0;
          int skipped = 0;
          for (int n = 0; n < 100; ++n) {
            Eigen::VectorXd re(rs.rank()), im(rs.rank());
            for (int d = 0; d < rs.rank(); ++d) {
              re[d] = rng.next_uniform(-3.0, 3.0);
              im[d] = rng.next_uniform(-3.0, 3.0);
            }
            Functional lambda(re, im);
            CValue full = c_full(rs, lambda);
            CValue as_r = c_R(rs, rs.positive(), lambda);
            CValue flip = c_R(rs, flipped, lambda);
            CValue zero = c_zero(rs, lambda);
            if (full.pole != as_r.pole || flip.pole != zero.pole ||
                full.in_domain != as_r.in_domain ||
                flip.in_domain != zero.in_domain) {
              r.passed = false;
              r.detail = "flag mismatch at sample " + std::to_string(n);
              return;
            }
            if (full.pole || zero.pole) {
              ++skipped;
              continue;
            }
            double scale_full = std::max(std::abs(full.value), 1e-300);
            double scale_zero = std::max(std::abs(zero.value), 1e-300);
            worst_full = std::max(
                worst_full, std::abs(full.value - as_r.value) / scale_full);
            worst_flip = std::max(
                worst_flip, std::abs(flip.value - zero.value) / scale_zero);
          }
          r.passed = worst_full <= 1e-13 && worst_flip <= 1e-13;
          r.detail = "full-vs-R " + fmt(worst_full) + ", flipped-vs-compact " +
                     fmt(worst_flip) +
                     (skipped ? ", " + std::to_string(skipped) + " pole hits"
                              : "");
        }));
  }

  report.checks.push_back(run_check("signatures-sp4r-gl2r", [&](CheckResult& r) {
    LoadedEntry e = load_entry("sp4r-gl2r", dir);
    const RootSystem& rs = e.system;
    const int nb = int(rs.basis().size());
    const int total = 1 << nb;
    std::set<std::vector<int>> distinct;
    bool properties = true;
    for (int mask = 0; mask < total; ++mask) {
      std::vector<int> assign(nb);
      for (int b = 0; b < nb; ++b) assign[b] = (mask >> b & 1) ? -1 : 1;
      Signature sig = make_signature(rs, assign);
      distinct.insert(sig.on_roots);
      for (int i = 0; i < rs.size(); ++i) {
        int j = rs.find_root(-rs.root(i).coords).value();
        if (sig.sign_of(i) != sig.sign_of(j)) properties = false;
      }
      for (int i = 0; i < rs.size(); ++i)
        for (int j = 0; j < rs.size(); ++j) {
          std::optional<int> k =
              rs.find_root(rs.root(i).coords + rs.root(j).coords);
          if (k && sig.sign_of(*k) != sig.sign_of(i) * sig.sign_of(j))
            properties = false;
        }
    }
    r.passed = int(distinct.size()) == total && properties;
    r.detail = std::to_string(distinct.size()) + " distinct of " +
               std::to_string(total) +
               " assignments, symmetry and multiplicativity exhaustive";
  }));

  for (std::size_t idx = 0; idx < names.size(); ++idx) {
    const std::string& name = names[idx];
    report.checks.push_back(
        run_check("simple-noncompact-" + name, [&](CheckResult& r) {
          LoadedEntry e = load_entry(name, dir);
          const RootSystem& rs = e.system;
          CounterRng rng(opt.seed, 0x80 + idx);
          int applicable = 0, violations = 0;
          for (int n = 0; n < opt.positive_system_samples; ++n) {
            Eigen::VectorXd v(rs.rank());
            bool regular = false;
            for (int tries = 0; tries < 1000 && !regular; ++tries) {
              for (int d = 0; d < rs.rank(); ++d)
                v[d] = rng.next_uniform(-1.0, 1.0);
              regular = true;
              for (const Root& root : rs.roots())
                if (std::abs(root.coords.dot(v)) < 1e-6) regular = false;
            }
            std::vector<int> R = positive_system_from_vector(rs, v);
            bool has_noncompact = false;
            for (int i : R)
              if (!rs.root(i).compact) has_noncompact = true;
            if (!has_noncompact) continue;
            ++applicable;
            if (!has_simple_noncompact(rs, R)) ++violations;
          }
          r.passed = violations == 0;
          r.detail = std::to_string(applicable) + " of " +
                     std::to_string(opt.positive_system_samples) +
                     " sampled systems applicable, " +
                     std::to_string(violations) + " violations";
        }));
  }

  report.checks.push_back(run_check("beta-spot-values", [](CheckResult& r) {
    double d1 = std::abs(beta(0.5, 0.5).value - cplx(kPi, 0.0));
    double d2 = std::abs(beta(0.5, 1.0).value - cplx(2.0, 0.0));
    r.passed = d1 <= 1e-12 && d2 <= 1e-12;
    r.detail = "|B(1/2,1/2) - pi| = " + fmt(d1) + ", |B(1/2,1) - 2| = " +
               fmt(d2);
  }));

  report.checks.push_back(run_check("lgamma-reflection", [](CheckResult& r) {
    double worst = 0.0;
    for (cplx z : pole_avoiding_grid()) {
      cplx delta = log_gamma(z) + log_gamma(1.0 - z) -
                   (std::log(kPi) - log_sin_pi(z));
      worst = std::max(worst, identity_deviation(delta));
    }
    r.passed = worst <= 1e-11;
    r.detail = "max deviation " + fmt(worst) + " over 28 points (mod 2 pi i)";
  }));

  report.checks.push_back(run_check("lgamma-duplication", [](CheckResult& r) {
    double worst = 0.0;
    for (cplx z : pole_avoiding_grid()) {
      cplx delta = log_gamma(z) + log_gamma(z + 0.5) -
                   (log_gamma(2.0 * z) + (1.0 - 2.0 * z) * std::log(2.0) +
                    0.5 * std::log(kPi));
      worst = std::max(worst, identity_deviation(delta));
    }
    r.passed = worst <= 1e-11;
    r.detail = "max deviation " + fmt(worst) + " over 28 points (mod 2 pi i)";
  }));

  return report;
}

SuiteReport verify_projection(const VerifyOptions& opt) {
  SuiteReport report;
  report.suite = "projection";

  report.checks.push_back(run_check("omega-projections", [&](CheckResult& r) {
    SampleCheckResult s =
        projection_property_check(opt.projection_samples, opt.seed);
    r.passed = s.pass() && s.samples == opt.projection_samples;
    r.detail = std::to_string(s.samples - s.failures) + "/" +
               std::to_string(s.samples) + " samples kept by all projections";
  }));

  report.checks.push_back(run_check("omega-contractions", [&](CheckResult& r) {
    SampleCheckResult s =
        semigroup_contraction_check(opt.contraction_samples, opt.seed);
    r.passed = s.pass() && s.samples == opt.contraction_samples;
    r.detail = std::to_string(s.samples - s.failures) + "/" +
               std::to_string(s.samples) + " contracted samples inside";
  }));

  report.checks.push_back(run_check("sl2-slice", [](CheckResult& r) {
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
      double x = -0.95 + 0.1 * j;
      SL2Factorization small = sl2_ncc_aH(x);
      Eigen::Matrix2d X = Eigen::Matrix2d::Zero();
      X(0, 0) = x;
      SP4Factorization big = sp4_aH(X);
      worst = std::max(worst, std::abs(big.a_log[0] - small.a_log));
      worst = std::max(worst, std::abs(big.a_log[1]));
    }
    r.passed = worst <= 1e-8;
    r.detail = "max |a-component difference| = " + fmt(worst) +
               " over 20 slice points";
  }));
  return report;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt) {
  if (name == "rank1") return verify_rank1(opt);
  if (name == "rank1-riemannian") return verify_rank1_riemannian(opt);
  if (name == "sp4-mc") return verify_sp4_mc(opt);
  if (name == "structure") return verify_structure(opt);
  if (name == "projection") return verify_projection(opt);
  throw Error("unknown verification suite: " + name);
}

std::vector<std::string> suite_names() {
  return {"rank1", "rank1-riemannian", "sp4-mc", "structure", "projection"};
}

}  // namespace cfn
