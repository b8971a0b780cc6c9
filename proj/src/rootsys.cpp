#include "cfn/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace cfn {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

bool same_vec(const VectorXd& a, const VectorXd& b, double tol = kRootTol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

// strict lexicographic comparison with tolerance; true when a > b
bool lex_greater(const VectorXd& a, const VectorXd& b, double tol = kRootTol) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + tol) return true;
    if (a[i] < b[i] - tol) return false;
  }
  return false;
}

std::vector<VectorXd> generate_coords(CartanType t, int n) {
  if (n < 1 || n > 8) throw Error("rank out of supported range [1, 8]");
  auto unit = [n](int i) {
    VectorXd v = VectorXd::Zero(n);
    v[i] = 1.0;
    return v;
  };
  std::vector<VectorXd> out;
  auto push_pm = [&out](const VectorXd& v) {
    out.push_back(v);
    out.push_back(-v);
  };
  switch (t) {
    case CartanType::A: {
      if (n == 1) {
        // long-root normalization so that H_alpha = e_1 exactly
        push_pm(2.0 * unit(0));
        break;
      }
      // Gram-matrix embedding of the simply laced system, norm^2 = 2
      MatrixXd G = MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        G(i, i) = 2.0;
        if (i + 1 < n) G(i, i + 1) = G(i + 1, i) = -1.0;
      }
      MatrixXd L = G.llt().matrixL();
      std::vector<VectorXd> simples;
      for (int i = 0; i < n; ++i) simples.push_back(L.row(i).transpose());
      // reflection closure
      std::vector<VectorXd> roots = simples;
      for (const auto& s : simples) roots.push_back(-s);
      auto known = [&roots](const VectorXd& v) {
        for (const auto& r : roots)
          if (same_vec(r, v)) return true;
        return false;
      };
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t i = 0; i < roots.size(); ++i) {
          for (const auto& s : simples) {
            VectorXd ref =
                roots[i] - (2.0 * roots[i].dot(s) / s.dot(s)) * s;
            if (!known(ref)) {
              roots.push_back(ref);
              grew = true;
            }
          }
        }
      }
      out = roots;
      break;
    }
    case CartanType::B:
    case CartanType::C:
    case CartanType::D: {
      if (t != CartanType::C && n < 2)
        throw Error("rank out of supported range for this type");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          push_pm(unit(i) + unit(j));
          push_pm(unit(i) - unit(j));
        }
      for (int i = 0; i < n; ++i) {
        if (t == CartanType::B) push_pm(unit(i));
        if (t == CartanType::C) push_pm(2.0 * unit(i));
      }
      break;
    }
  }
  return out;
}

double max_norm2(const std::vector<Root>& roots) {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, r.coords.squaredNorm());
  return m;
}

// internal simple-root computation for a set assumed closed; no validation
std::vector<int> simples_of(const RootSystem& rs, const std::vector<int>& R) {
  std::vector<int> out;
  for (int a : R) {
    bool decomposable = false;
    for (int b : R) {
      if (decomposable) break;
      for (int c : R) {
        if (same_vec(rs.root(b).coords + rs.root(c).coords,
                     rs.root(a).coords)) {
          decomposable = true;
          break;
        }
      }
    }
    if (!decomposable) out.push_back(a);
  }
  return out;
}

struct CascadeSearch {
  const RootSystem* rs;
  std::vector<int> candidates;  // long noncompact positives, lex-descending
  std::vector<int> best, current;

  bool strongly_orthogonal(int a, int b) const {
    const VectorXd& va = rs->root(a).coords;
    const VectorXd& vb = rs->root(b).coords;
    return !rs->is_root(va + vb) && !rs->is_root(va - vb);
  }

  void dfs(size_t start) {
    if (current.size() > best.size()) best = current;
    if (current.size() + (candidates.size() - start) <= best.size()) return;
    for (size_t i = start; i < candidates.size(); ++i) {
      bool ok = true;
      for (int c : current)
        if (!strongly_orthogonal(c, candidates[i])) {
          ok = false;
          break;
        }
      if (ok) {
        current.push_back(candidates[i]);
        dfs(i + 1);
        current.pop_back();
      }
    }
  }
};

std::vector<int> cascade_search(const RootSystem& rs) {
  CascadeSearch cs;
  cs.rs = &rs;
  for (int i : rs.noncompact_positive())
    if (rs.is_long(i)) cs.candidates.push_back(i);
  std::sort(cs.candidates.begin(), cs.candidates.end(), [&rs](int a, int b) {
    return lex_greater(rs.root(a).coords, rs.root(b).coords);
  });
  cs.dfs(0);
  return cs.best;
}

// Lawson-Hanson nonnegative least squares, min ||Ax - y|| with x >= 0.
VectorXd nnls(const MatrixXd& A, const VectorXd& y) {
  int n = int(A.cols());
  std::vector<char> passive(n, 0);
  VectorXd x = VectorXd::Zero(n);
  VectorXd resid = y;
  double enter_tol = 1e-11 * (1.0 + y.lpNorm<Eigen::Infinity>());
  auto solve_passive = [&](VectorXd* z) {
    std::vector<int> idx;
    for (int k = 0; k < n; ++k)
      if (passive[k]) idx.push_back(k);
    MatrixXd Ap(A.rows(), idx.size());
    for (size_t c = 0; c < idx.size(); ++c) Ap.col(c) = A.col(idx[c]);
    VectorXd zp = Ap.colPivHouseholderQr().solve(y);
    *z = VectorXd::Zero(n);
    for (size_t c = 0; c < idx.size(); ++c) (*z)[idx[c]] = zp[c];
  };
  for (int outer = 0; outer < 4 * n + 16; ++outer) {
    VectorXd grad = A.transpose() * resid;
    int j = -1;
    double bestw = enter_tol;
    for (int k = 0; k < n; ++k)
      if (!passive[k] && grad[k] > bestw) {
        bestw = grad[k];
        j = k;
      }
    if (j < 0) break;
    passive[j] = 1;
    for (int inner = 0; inner < 4 * n + 16; ++inner) {
      VectorXd z;
      solve_passive(&z);
      bool feasible = true;
      for (int k = 0; k < n; ++k)
        if (passive[k] && z[k] <= 0.0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (int k = 0; k < n; ++k)
        if (passive[k] && z[k] <= 0.0)
          alpha = std::min(alpha, x[k] / (x[k] - z[k]));
      x += alpha * (z - x);
      for (int k = 0; k < n; ++k)
        if (passive[k] && x[k] <= 1e-13) {
          passive[k] = 0;
          x[k] = 0.0;
        }
    }
    resid = y - A * x;
  }
  return x;
}

}  // namespace

CartanType cartan_type_from_string(const std::string& s) {
  if (s == "A") return CartanType::A;
  if (s == "B") return CartanType::B;
  if (s == "C") return CartanType::C;
  if (s == "D") return CartanType::D;
  throw ParseError("unknown cartan_type '" + s + "'");
}

std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::A: return "A";
    case CartanType::B: return "B";
    case CartanType::C: return "C";
    case CartanType::D: return "D";
  }
  return "?";
}

std::optional<int> RootSystem::find_root(const VectorXd& v) const {
  for (int i = 0; i < size(); ++i)
    if (same_vec(roots_[i].coords, v)) return i;
  return std::nullopt;
}

bool RootSystem::is_root(const VectorXd& v) const {
  return find_root(v).has_value();
}

bool RootSystem::is_long(int i) const {
  return roots_[i].coords.squaredNorm() >= max_norm2(roots_) - kRootTol;
}

void RootSystem::refresh_index_sets() {
  ncpos_.clear();
  cpos_.clear();
  for (int i : positive_) {
    if (roots_[i].compact)
      cpos_.push_back(i);
    else
      ncpos_.push_back(i);
  }
}

RootSystem RootSystem::from_raw(int rank, std::vector<Root> roots,
                                VectorXd x0, std::vector<int> positive,
                                std::vector<int> gamma) {
  RootSystem rs;
  rs.rank_ = rank;
  rs.roots_ = std::move(roots);
  rs.x0_ = std::move(x0);
  rs.positive_ = std::move(positive);
  rs.gamma_ = std::move(gamma);
  rs.refresh_index_sets();
  if (!rs.positive_.empty()) rs.basis_ = simples_of(rs, rs.positive_);
  return rs;
}

RootSystem build_root_system(CartanType type, int rank,
                             const Multiplicities& mult,
                             const VectorXd& x0) {
  RootSystem rs;
  rs.rank_ = rank;
  rs.type_ = type;
  rs.mult_ = mult;

  auto coords = generate_coords(type, rank);
  for (auto& c : coords) rs.roots_.push_back({c, 1, false});

  // reduced sanity; generated data always passes but keep the gate explicit
  for (const auto& r : rs.roots_)
    if (rs.is_root(2.0 * r.coords))
      throw NonReduced("root system contains a doubled root");

  // multiplicities constant on length classes
  double maxn2 = max_norm2(rs.roots_);
  bool two_lengths = false;
  for (const auto& r : rs.roots_)
    if (r.coords.squaredNorm() < maxn2 - kRootTol) two_lengths = true;
  if (mult.long_mult < 1)
    throw InconsistentMultiplicity("long multiplicity must be >= 1");
  if (two_lengths && (!mult.short_mult || *mult.short_mult < 1))
    throw InconsistentMultiplicity(
        "system has two root lengths; short multiplicity required");
  if (!two_lengths && mult.short_mult)
    throw InconsistentMultiplicity(
        "system has a single root length; short multiplicity not allowed");
  for (int i = 0; i < rs.size(); ++i)
    rs.roots_[i].multiplicity =
        rs.is_long(i) ? mult.long_mult : *mult.short_mult;

  // grading element
  if (x0.size() != rank) throw BadX0("x0 has wrong dimension");
  rs.x0_ = x0;
  for (auto& r : rs.roots_) {
    double v = r.coords.dot(x0);
    if (std::abs(v) > kRootTol && std::abs(std::abs(v) - 1.0) > kRootTol)
      throw BadX0("alpha(x0) must lie in {-1, 0, +1}; got " +
                  std::to_string(v));
    r.compact = std::abs(v) <= kRootTol;
  }

  // noncompact positives are fixed by the grading
  std::vector<int> ncpos;
  for (int i = 0; i < rs.size(); ++i)
    if (rs.roots_[i].coords.dot(x0) > 0.5) ncpos.push_back(i);
  rs.positive_ = ncpos;
  rs.refresh_index_sets();

  rs.gamma_ = cascade_search(rs);
  int r = int(rs.gamma_.size());

  // compact positive system: pick a regular functional that realizes the
  // cascade restriction patterns; primary key u in span{H_i} with
  // gamma_i(u) = i - r - 1, secondary key a generic vector in the complement.
  VectorXd u = VectorXd::Zero(rank);
  MatrixXd H(rank, std::max(r, 1));
  H.setZero();
  for (int j = 0; j < r; ++j) {
    VectorXd Hj = coroot(rs, rs.roots_[rs.gamma_[j]].coords);
    H.col(j) = Hj;
    u += 0.5 * double(j - r) * Hj;
  }
  Eigen::JacobiSVD<MatrixXd> svd(H, Eigen::ComputeFullU);
  MatrixXd B = svd.matrixU().rightCols(rank - (r > 0 ? svd.rank() : 0));
  VectorXd w = VectorXd::Zero(rank);
  std::vector<int> compacts;
  for (int i = 0; i < rs.size(); ++i)
    if (rs.roots_[i].compact) compacts.push_back(i);
  for (int attempt = 0; attempt < 64; ++attempt) {
    w.setZero();
    for (int k = 0; k < B.cols(); ++k)
      w += std::pow(3.0, -(k + 1)) * (1.0 + attempt * 0.6180339887 * (k + 1)) *
           B.col(k);
    bool ok = true;
    for (int i : compacts) {
      const VectorXd& a = rs.roots_[i].coords;
      if (std::abs(a.dot(u)) <= kRootTol && std::abs(a.dot(w)) <= 1e-8)
        ok = false;
    }
    if (ok || compacts.empty() || B.cols() == 0) break;
    if (attempt == 63)
      throw Error("failed to find a regular compact tie-break vector");
  }
  std::vector<int> kpos;
  for (int i : compacts) {
    double pu = rs.roots_[i].coords.dot(u);
    double pw = rs.roots_[i].coords.dot(w);
    if (pu > kRootTol || (std::abs(pu) <= kRootTol && pw > 0.0))
      kpos.push_back(i);
  }

  rs.positive_ = ncpos;
  rs.positive_.insert(rs.positive_.end(), kpos.begin(), kpos.end());
  std::sort(rs.positive_.begin(), rs.positive_.end());
  rs.refresh_index_sets();
  rs.basis_ = simples_of(rs, rs.positive_);
  return rs;
}

std::vector<int> strongly_orthogonal_cascade(const RootSystem& rs) {
  if (rs.noncompact_positive().empty())
    throw EmptyNoncompact("no noncompact positive roots");
  return cascade_search(rs);
}

VectorXd coroot(const RootSystem& rs, const VectorXd& alpha) {
  auto idx = rs.find_root(alpha);
  if (!idx) throw NotARoot("coroot of a vector that is not a root");
  const VectorXd& a = rs.root(*idx).coords;
  return 2.0 * a / a.squaredNorm();
}

CBSplit cb_split(const RootSystem& rs, const VectorXd& X) {
  int r = int(rs.gamma().size());
  if (r == 0) return {VectorXd::Zero(rs.rank()), X};
  MatrixXd H(rs.rank(), r);
  for (int j = 0; j < r; ++j)
    H.col(j) = coroot(rs, rs.root(rs.gamma()[j]).coords);
  VectorXd coef = (H.transpose() * H).ldlt().solve(H.transpose() * X);
  VectorXd c = H * coef;
  return {c, X - c};
}

ConeMembership cone_member(const RootSystem& rs, const VectorXd& X,
                           Cone which, double tol) {
  const auto& nc = rs.noncompact_positive();
  if (which == Cone::Max) {
    if (nc.empty()) return {true, 0.0};
    double margin = std::numeric_limits<double>::infinity();
    for (int i : nc) margin = std::min(margin, rs.value_on(i, X));
    return {margin >= -tol, margin};
  }
  if (nc.empty()) return {X.norm() <= tol, X.norm()};
  MatrixXd A(rs.rank(), nc.size());
  for (size_t j = 0; j < nc.size(); ++j)
    A.col(j) = coroot(rs, rs.root(nc[j]).coords);
  VectorXd c = nnls(A, X);
  double resid = (A * c - X).norm();
  return {resid <= tol, resid};
}

namespace {

// expansion of a root in the simple basis, rounded to integers
std::vector<int> basis_expansion(const RootSystem& rs, const VectorXd& alpha) {
  const auto& basis = rs.basis();
  MatrixXd P(rs.rank(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    P.col(j) = rs.root(basis[j]).coords;
  VectorXd n = P.colPivHouseholderQr().solve(alpha);
  if ((P * n - alpha).norm() > 1e-8)
    throw Error("root does not lie in the span of the simple basis");
  std::vector<int> out(basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    double rounded = std::round(n[j]);
    if (std::abs(n[j] - rounded) > 1e-6)
      throw Error("non-integral simple-basis expansion");
    out[j] = int(rounded);
  }
  return out;
}

}  // namespace

Signature make_signature(const RootSystem& rs, const std::vector<int>& eps) {
  if (eps.size() != rs.basis().size())
    throw IncompleteAssignment("signature must assign every simple root");
  for (int e : eps)
    if (e != 1 && e != -1)
      throw IncompleteAssignment("signature values must be +-1");
  Signature sig;
  sig.on_basis = eps;
  sig.on_roots.resize(rs.size());
  std::set<int> pos(rs.positive().begin(), rs.positive().end());
  for (int i = 0; i < rs.size(); ++i) {
    VectorXd a = rs.root(i).coords;
    if (!pos.count(i)) a = -a;  // eps(-alpha) = eps(alpha)
    auto n = basis_expansion(rs, a);
    int s = 1;
    for (size_t j = 0; j < n.size(); ++j)
      if ((std::abs(n[j]) % 2) == 1) s *= eps[j];
    sig.on_roots[i] = s;
  }
  return sig;
}

std::vector<int> simple_roots(const RootSystem& rs, const std::vector<int>& R) {
  if (int(R.size()) * 2 != rs.size())
    throw NotPositiveSystem("wrong number of roots for a positive system");
  std::set<int> in(R.begin(), R.end());
  if (in.size() != R.size()) throw NotPositiveSystem("duplicate roots");
  for (int i : R) {
    if (i < 0 || i >= rs.size()) throw NotPositiveSystem("bad root index");
    auto neg = rs.find_root(-rs.root(i).coords);
    if (!neg || in.count(*neg))
      throw NotPositiveSystem("set contains a +- root pair");
  }
  for (int a : R)
    for (int b : R) {
      auto s = rs.find_root(rs.root(a).coords + rs.root(b).coords);
      if (s && !in.count(*s))
        throw NotPositiveSystem("set not closed under root addition");
    }
  return simples_of(rs, R);
}

bool has_simple_noncompact(const RootSystem& rs, const std::vector<int>& R) {
  for (int i : simple_roots(rs, R))
    if (!rs.root(i).compact) return true;
  return false;
}

std::vector<int> positive_system_from_vector(const RootSystem& rs,
                                             const VectorXd& v) {
  std::vector<int> out;
  for (int i = 0; i < rs.size(); ++i) {
    double x = rs.value_on(i, v);
    if (std::abs(x) <= kRootTol)
      throw NotPositiveSystem("vector is orthogonal to a root");
    if (x > 0.0) out.push_back(i);
  }
  return out;
}

bool ValidationReport::hard_failures() const {
  for (const auto& c : checks)
    if (c.hard && !c.passed) return true;
  return false;
}

bool ValidationReport::is_ncc() const {
  for (const auto& c : checks)
    if (c.name == "ncc") return c.passed;
  return false;
}

ValidationReport validate_structure(const RootSystem& rs) {
  ValidationReport rep;
  rep.note =
      "orbit check uses the reflection group generated by the compact roots "
      "as a stand-in for the isotropy Weyl group";
  auto add = [&rep](const std::string& name, bool pass, bool hard,
                    const std::string& detail) {
    rep.checks.push_back({name, pass, hard, detail});
  };

  // (a) reduced
  {
    bool ok = true;
    for (const auto& r : rs.roots())
      if (rs.is_root(2.0 * r.coords)) ok = false;
    add("reduced", ok, true, ok ? "" : "doubled root present");
  }

  std::vector<int> long_nc;
  for (int i : rs.noncompact_positive())
    if (rs.is_long(i)) long_nc.push_back(i);
  const auto& gamma = rs.gamma();
  int r = int(gamma.size());

  // (b) one compact-reflection orbit of long noncompact positives
  {
    bool ok = true;
    std::string detail;
    if (long_nc.empty()) {
      detail = "vacuous";
    } else {
      std::set<int> orbit;
      std::vector<int> queue{long_nc.front()};
      orbit.insert(long_nc.front());
      while (!queue.empty()) {
        int cur = queue.back();
        queue.pop_back();
        for (int k : rs.compact_positive()) {
          const VectorXd& a = rs.root(k).coords;
          const VectorXd& b = rs.root(cur).coords;
          VectorXd ref = b - (2.0 * b.dot(a) / a.dot(a)) * a;
          auto idx = rs.find_root(ref);
          if (idx && !orbit.count(*idx)) {
            orbit.insert(*idx);
            queue.push_back(*idx);
          }
        }
      }
      for (int i : long_nc)
        if (!orbit.count(i)) ok = false;
      if (!ok) detail = "long noncompact positives split into several orbits";
    }
    add("long-noncompact-orbit", ok, true, detail);
  }

  auto gcoord = [&](int j) { return rs.root(gamma[j]).coords; };

  // (c) short noncompact positives are exactly the half-sums of the cascade
  {
    std::vector<int> short_nc;
    for (int i : rs.noncompact_positive())
      if (!rs.is_long(i)) short_nc.push_back(i);
    bool ok = true;
    std::string detail;
    if (short_nc.empty()) {
      detail = "vacuous";
    } else {
      std::vector<VectorXd> expect;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          expect.push_back(0.5 * (gcoord(i) + gcoord(j)));
      if (expect.size() != short_nc.size()) ok = false;
      for (int i : short_nc) {
        bool found = false;
        for (const auto& e : expect)
          if (same_vec(rs.root(i).coords, e)) found = true;
        if (!found) ok = false;
      }
      if (!ok) detail = "short noncompact positives are not the half-sums";
    }
    add("short-noncompact-pattern", ok, true, detail);
  }

  // (d) restrictions to the cascade span
  {
    bool ok = true;
    std::string detail;
    if (rs.noncompact_positive().empty()) {
      detail = "vacuous";
    } else {
      auto match_any = [&](const VectorXd& v,
                           const std::vector<VectorXd>& pool) {
        for (const auto& p : pool)
          if (same_vec(v, p, 1e-8)) return true;
        return false;
      };
      std::vector<VectorXd> nc_pool, k_pool;
      for (int i = 0; i < r; ++i) {
        nc_pool.push_back(0.5 * gcoord(i));
        k_pool.push_back(-0.5 * gcoord(i));
        for (int j = 0; j < r; ++j)
          nc_pool.push_back(0.5 * (gcoord(i) + gcoord(j)));
        for (int j = 0; j < i; ++j)
          k_pool.push_back(0.5 * (gcoord(i) - gcoord(j)));
      }
      for (int i : rs.noncompact_positive())
        if (!match_any(cb_split(rs, rs.root(i).coords).c, nc_pool)) ok = false;
      for (int i : rs.compact_positive()) {
        VectorXd pc = cb_split(rs, rs.root(i).coords).c;
        if (pc.norm() <= 1e-8) continue;
        if (!match_any(pc, k_pool)) ok = false;
      }
      if (!ok) detail = "restriction to the cascade span off-pattern";
    }
    add("c-restriction-pattern", ok, true, detail);
  }

  // (e) compact simple basis shape
  {
    bool ok = true;
    std::string detail;
    bool have_short_nc = false;
    for (int i : rs.noncompact_positive())
      if (!rs.is_long(i)) have_short_nc = true;
    if (!have_short_nc || rs.compact_positive().empty()) {
      detail = "vacuous";
    } else {
      auto pik = simples_of(rs, rs.compact_positive());
      std::vector<VectorXd> steps;
      for (int i = 0; i + 1 < r; ++i)
        steps.push_back(0.5 * (gcoord(i + 1) - gcoord(i)));
      for (const auto& s : steps) {
        bool found = false;
        for (int p : pik)
          if (same_vec(rs.root(p).coords, s)) found = true;
        if (!found) ok = false;
      }
      for (int p : pik) {
        bool is_step = false;
        for (const auto& s : steps)
          if (same_vec(rs.root(p).coords, s)) is_step = true;
        if (is_step) continue;
        VectorXd pc = cb_split(rs, rs.root(p).coords).c;
        bool flat = pc.norm() <= 1e-8;
        bool half = r > 0 && same_vec(pc, -0.5 * gcoord(r - 1), 1e-8);
        if (!flat && !half) ok = false;
      }
      if (!ok) detail = "compact simple basis off-pattern";
    }
    add("compact-basis-pattern", ok, true, detail);
  }

  // (f) soft causal flag
  {
    bool vals_ok = true;
    for (const auto& root : rs.roots()) {
      double v = root.coords.dot(rs.x0());
      if (std::abs(v) > kRootTol && std::abs(std::abs(v) - 1.0) > kRootTol)
        vals_ok = false;
    }
    bool ok = vals_ok && !rs.noncompact_positive().empty();
    add("ncc", ok, false,
        ok ? "" : "grading has no noncompact roots (or bad x0 values)");
  }

  return rep;
}

}  // namespace cfn
