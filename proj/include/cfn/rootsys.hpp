#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cfn/errors.hpp"

namespace cfn {

// Comparison tolerances used across the combinatorial layer.
constexpr double kRootTol = 1e-10;
constexpr double kConeTol = 1e-9;

enum class CartanType { A, B, C, D };

CartanType cartan_type_from_string(const std::string& s);
std::string to_string(CartanType t);

struct Multiplicities {
  int long_mult = 0;
  std::optional<int> short_mult;  // required iff the system has two lengths
};

struct Root {
  Eigen::VectorXd coords;  // in the Euclidean-normalized basis of a*
  int multiplicity = 1;
  bool compact = false;  // alpha(x0) == 0
};

// A restricted root system with a distinguished grading element x0, the
// induced compact/noncompact split, a positive system, and the cascade of
// strongly orthogonal long noncompact roots gamma_1..gamma_r.
//
// Conventions baked into construction:
//  - alpha(x0) must lie in {-1, 0, +1} for every root.
//  - Delta_n^+ = {alpha : alpha(x0) = +1}; the compact positive system is
//    chosen so that restrictions to span{H_gamma_i} follow the pattern
//    {(gamma_i - gamma_j)/2 : j < i} and {-gamma_i/2}.
//  - gamma is the size-maximal strongly orthogonal set of long roots in
//    Delta_n^+, exhaustive search, ties broken lexicographically.
class RootSystem {
 public:
  int rank() const { return rank_; }
  int size() const { return int(roots_.size()); }
  const Root& root(int i) const { return roots_[i]; }
  const std::vector<Root>& roots() const { return roots_; }
  const Eigen::VectorXd& x0() const { return x0_; }
  CartanType cartan_type() const { return type_; }
  const Multiplicities& multiplicities() const { return mult_; }

  // index sets (into roots())
  const std::vector<int>& positive() const { return positive_; }
  const std::vector<int>& noncompact_positive() const { return ncpos_; }
  const std::vector<int>& compact_positive() const { return cpos_; }
  const std::vector<int>& gamma() const { return gamma_; }
  const std::vector<int>& basis() const { return basis_; }  // simple in Delta^+

  std::optional<int> find_root(const Eigen::VectorXd& v) const;
  bool is_root(const Eigen::VectorXd& v) const;
  bool is_long(int i) const;

  double value_on(int i, const Eigen::VectorXd& X) const {
    return roots_[i].coords.dot(X);
  }

  // Bypasses every structural check; for validator tests that need to inject
  // malformed data. `positive`/`gamma` may be left empty.
  static RootSystem from_raw(int rank, std::vector<Root> roots,
                             Eigen::VectorXd x0, std::vector<int> positive,
                             std::vector<int> gamma);

 private:
  RootSystem() = default;
  friend RootSystem build_root_system(CartanType, int, const Multiplicities&,
                                      const Eigen::VectorXd&);

  int rank_ = 0;
  CartanType type_ = CartanType::A;
  Multiplicities mult_;
  std::vector<Root> roots_;
  Eigen::VectorXd x0_;
  std::vector<int> positive_, ncpos_, cpos_, gamma_, basis_;
  void refresh_index_sets();
};

// Errors: NonReduced, BadX0, InconsistentMultiplicity.
RootSystem build_root_system(CartanType type, int rank,
                             const Multiplicities& mult,
                             const Eigen::VectorXd& x0);

// Recomputes the cascade from scratch (the builder already stores one).
// Errors: EmptyNoncompact.
std::vector<int> strongly_orthogonal_cascade(const RootSystem& rs);

// H_alpha = 2 alpha / <alpha, alpha>. Errors: NotARoot.
Eigen::VectorXd coroot(const RootSystem& rs, const Eigen::VectorXd& alpha);

// Orthogonal split of X along span{H_gamma_1, ..} and its complement.
struct CBSplit {
  Eigen::VectorXd c, b;
};
CBSplit cb_split(const RootSystem& rs, const Eigen::VectorXd& X);

enum class Cone { Max, Min };
struct ConeMembership {
  bool member = false;
  // Max: min over Delta_n^+ of alpha(X); Min: distance to the coroot cone.
  double margin = 0.0;
};
ConeMembership cone_member(const RootSystem& rs, const Eigen::VectorXd& X,
                           Cone which, double tol = kConeTol);

// Multiplicative sign character on the root lattice, determined by its values
// on the simple basis; eps(-alpha) = eps(alpha) by construction.
struct Signature {
  std::vector<int> on_basis;  // aligned with rs.basis()
  std::vector<int> on_roots;  // aligned with rs.roots()
  int sign_of(int root_index) const { return on_roots[root_index]; }
};
// Errors: IncompleteAssignment (wrong size or entries other than +-1).
Signature make_signature(const RootSystem& rs, const std::vector<int>& eps);

// R is a set of root indices forming a positive system (one of each +-pair,
// closed under root addition). Errors: NotPositiveSystem.
std::vector<int> simple_roots(const RootSystem& rs, const std::vector<int>& R);
bool has_simple_noncompact(const RootSystem& rs, const std::vector<int>& R);

// {alpha : alpha(v) > 0} for regular v. Errors: NotPositiveSystem when v is
// orthogonal to some root.
std::vector<int> positive_system_from_vector(const RootSystem& rs,
                                             const Eigen::VectorXd& v);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool hard = true;
  std::string detail;
};
struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::string note;
  bool hard_failures() const;
  bool is_ncc() const;  // the soft flag
};

// Structural validation:
//  (a) reduced, (b) long noncompact roots form one orbit of the compact
//  reflection group, (c) short noncompact positives are the gamma half-sums,
//  (d) restrictions to the cascade span match the expected patterns,
//  (e) the compact simple basis has the expected shape, (f) soft flag: the
//  grading is genuinely causal (some noncompact root exists).
ValidationReport validate_structure(const RootSystem& rs);

}  // namespace cfn
