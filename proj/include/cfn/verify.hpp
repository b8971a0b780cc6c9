#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cfn {

// One named pass/fail line of a verification suite. `detail` is a short
// human-readable summary of the measured quantity (max deviation, counts...).
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct VerifyOptions {
  // Rank-one suites: restrict to one multiplicity in {1,2,3}; 0 = all three.
  int m = 0;
  // Monte-Carlo suite.
  long long samples = 1000000;
  std::uint64_t seed = 20260823;
  int streams = 8;
  double tol = 3.0;  // sigma multiplier for ratio agreement
  // Structural sampling sizes.
  int projection_samples = 10000;
  int contraction_samples = 1000;
  int positive_system_samples = 100;
  // Catalog location; empty = default resolution order.
  std::string data_dir;
};

// Quadrature-vs-formula ratio constancy on the causal rank-one models and
// the sharp behaviour at the domain boundary.
SuiteReport verify_rank1(const VerifyOptions& opt);

// Compact-factor convention: Riemannian rank-one ratio constancy plus the
// two closed-form spot values.
SuiteReport verify_rank1_riemannian(const VerifyOptions& opt);

// Product formula against the Sp(4,R) Monte-Carlo shell integral:
// formula/estimate ratios agree across lambda within tol combined sigmas.
SuiteReport verify_sp4_mc(const VerifyOptions& opt);

// Catalog validators, factorization bookkeeping, signature generation,
// simple-root sampling, and the special-function kernel identities.
SuiteReport verify_structure(const VerifyOptions& opt);

// Domain projections stay inside, contraction scalings stay inside, and the
// rank-one slice of the Sp(4,R) model matches the SL(2,R) closed form.
SuiteReport verify_projection(const VerifyOptions& opt);

// Dispatch by suite name {rank1, rank1-riemannian, sp4-mc, structure,
// projection}. Errors: Error on an unknown name.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt);

std::vector<std::string> suite_names();

}  // namespace cfn
