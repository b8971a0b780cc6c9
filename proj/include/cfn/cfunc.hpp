#pragma once

#include <string>
#include <vector>

#include "cfn/rootsys.hpp"
#include "cfn/special.hpp"

namespace cfn {

// Complex-valued linear functional on a, stored as coordinate vectors in the
// same basis as the root system.
struct Functional {
  Eigen::VectorXd re, im;

  Functional() = default;
  explicit Functional(Eigen::VectorXd real_part)
      : re(std::move(real_part)), im(Eigen::VectorXd::Zero(re.size())) {}
  Functional(Eigen::VectorXd real_part, Eigen::VectorXd imag_part)
      : re(std::move(real_part)), im(std::move(imag_part)) {}

  int dim() const { return int(re.size()); }
  cplx operator()(const Eigen::VectorXd& H) const {
    return {re.dot(H), im.dot(H)};
  }
};

// Meromorphic-continuation value of a c-function factor or product.
// Invariants: pole implies !in_domain (value is NaN at a pole); in_domain
// implies !pole. `trivial` marks an empty product.
struct CValue {
  cplx value{1.0, 0.0};
  bool in_domain = true;
  bool pole = false;
  bool trivial = false;
};

// Half sum of positive roots weighted by multiplicities.
Functional rho(const RootSystem& rs);

// Rank-one factor for a noncompact positive root:
//   2^(m-1) * B(m/2, -z/2 - m/2 + 1),  z = lambda(H_alpha),
// absolutely convergent for Re z < 2 - m. Errors: NotNoncompactPositive.
CValue c_alpha_noncompact(const RootSystem& rs, const Eigen::VectorXd& alpha,
                          const Functional& lambda);

// Rank-one factor for a compact positive root: B(m/2, z/2), convergent for
// Re z > 0. Errors: NotCompactPositive.
CValue c_alpha_compact(const RootSystem& rs, const Eigen::VectorXd& alpha,
                       const Functional& lambda);

// Product of rank-one factors over R intersected with the positive system,
// dispatching on compactness. R is a set of root indices.
CValue c_R(const RootSystem& rs, const std::vector<int>& R,
           const Functional& lambda);

CValue c_omega(const RootSystem& rs, const Functional& lambda);  // noncompact
CValue c_zero(const RootSystem& rs, const Functional& lambda);   // compact
CValue c_full(const RootSystem& rs, const Functional& lambda);   // product

enum class PoleFamily { Noncompact, Compact };

// Pole levels of one factor in the variable v = lambda(H_alpha):
// v = offset + step*k for k = 0, 1, 2, ...
struct PoleSheet {
  int root_index = -1;
  PoleFamily family = PoleFamily::Noncompact;
  double offset = 0.0;
  double step = 0.0;
  std::string formula;  // human-readable description of the level set
};

std::vector<PoleSheet> pole_sheets(const RootSystem& rs);

}  // namespace cfn
