#include "cfn/cfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace cfn {

namespace {

CValue make_pole() {
  double nan = std::numeric_limits<double>::quiet_NaN();
  CValue v;
  v.value = cplx(nan, nan);
  v.in_domain = false;
  v.pole = true;
  v.trivial = false;
  return v;
}

CValue combine(const CValue& a, const CValue& b) {
  CValue out;
  out.pole = a.pole || b.pole;
  out.in_domain = a.in_domain && b.in_domain && !out.pole;
  out.trivial = a.trivial && b.trivial;
  if (out.pole) {
    double nan = std::numeric_limits<double>::quiet_NaN();
    out.value = cplx(nan, nan);
  } else {
    out.value = a.value * b.value;
  }
  return out;
}

int positive_index_of(const RootSystem& rs, const Eigen::VectorXd& alpha,
                      bool want_noncompact) {
  auto idx = rs.find_root(alpha);
  if (idx) {
    const auto& pos = rs.positive();
    bool is_pos = std::find(pos.begin(), pos.end(), *idx) != pos.end();
    if (is_pos && rs.root(*idx).compact != want_noncompact) return *idx;
  }
  if (want_noncompact)
    throw NotNoncompactPositive("factor requires a noncompact positive root");
  throw NotCompactPositive("factor requires a compact positive root");
}

CValue factor_noncompact(const RootSystem& rs, int idx,
                         const Functional& lambda) {
  int m = rs.root(idx).multiplicity;
  cplx z = lambda(coroot(rs, rs.root(idx).coords));
  auto B = beta(0.5 * m, -0.5 * z - 0.5 * m + 1.0);
  if (B.pole) return make_pole();
  CValue out;
  out.value = std::pow(2.0, m - 1) * B.value;
  out.in_domain = z.real() < 2.0 - m;
  out.trivial = false;
  return out;
}

CValue factor_compact(const RootSystem& rs, int idx, const Functional& lambda) {
  int m = rs.root(idx).multiplicity;
  cplx z = lambda(coroot(rs, rs.root(idx).coords));
  auto B = beta(0.5 * m, 0.5 * z);
  if (B.pole) return make_pole();
  CValue out;
  out.value = B.value;
  out.in_domain = z.real() > 0.0;
  out.trivial = false;
  return out;
}

}  // namespace

Functional rho(const RootSystem& rs) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(rs.rank());
  for (int i : rs.positive())
    v += 0.5 * rs.root(i).multiplicity * rs.root(i).coords;
  return Functional(v);
}

CValue c_alpha_noncompact(const RootSystem& rs, const Eigen::VectorXd& alpha,
                          const Functional& lambda) {
  return factor_noncompact(rs, positive_index_of(rs, alpha, true), lambda);
}

CValue c_alpha_compact(const RootSystem& rs, const Eigen::VectorXd& alpha,
                       const Functional& lambda) {
  return factor_compact(rs, positive_index_of(rs, alpha, false), lambda);
}

CValue c_R(const RootSystem& rs, const std::vector<int>& R,
           const Functional& lambda) {
  std::set<int> pos(rs.positive().begin(), rs.positive().end());
  CValue out;
  out.trivial = true;
  for (int i : R) {
    if (i < 0 || i >= rs.size()) throw NotARoot("bad root index in R");
    if (!pos.count(i)) continue;
    CValue f = rs.root(i).compact ? factor_compact(rs, i, lambda)
                                  : factor_noncompact(rs, i, lambda);
    out = combine(out, f);
  }
  return out;
}

CValue c_omega(const RootSystem& rs, const Functional& lambda) {
  CValue out;
  out.trivial = true;
  for (int i : rs.noncompact_positive())
    out = combine(out, factor_noncompact(rs, i, lambda));
  return out;
}

CValue c_zero(const RootSystem& rs, const Functional& lambda) {
  CValue out;
  out.trivial = true;
  for (int i : rs.compact_positive())
    out = combine(out, factor_compact(rs, i, lambda));
  return out;
}

CValue c_full(const RootSystem& rs, const Functional& lambda) {
  return combine(c_zero(rs, lambda), c_omega(rs, lambda));
}

std::vector<PoleSheet> pole_sheets(const RootSystem& rs) {
  std::vector<PoleSheet> out;
  for (int i : rs.positive()) {
    PoleSheet ps;
    ps.root_index = i;
    int m = rs.root(i).multiplicity;
    if (rs.root(i).compact) {
      ps.family = PoleFamily::Compact;
      ps.offset = 0.0;
      ps.step = -2.0;
    } else {
      ps.family = PoleFamily::Noncompact;
      ps.offset = 2.0 - m;
      ps.step = 2.0;
    }
    std::ostringstream f;
    f << "lambda(H_alpha) = " << ps.offset
      << (ps.step >= 0 ? " + " : " - ") << std::abs(ps.step)
      << "*k, k = 0, 1, 2, ...";
    ps.formula = f.str();
    out.push_back(ps);
  }
  return out;
}

}  // namespace cfn
