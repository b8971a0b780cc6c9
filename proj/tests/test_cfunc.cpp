#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "cfn/cfunc.hpp"
#include "cfn/rng.hpp"
#include "cfn/special.hpp"
#include "doctest.h"

using cfn::build_root_system;
using cfn::CartanType;
using cfn::cplx;
using cfn::CValue;
using cfn::Functional;
using cfn::Multiplicities;
using cfn::RootSystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

RootSystem make_a1(double x0 = 0.5) {
  Multiplicities m;
  m.long_mult = 1;
  return build_root_system(CartanType::A, 1, m, vec({x0}));
}

RootSystem make_c2() {
  Multiplicities m;
  m.long_mult = 1;
  m.short_mult = 1;
  return build_root_system(CartanType::C, 2, m, vec({0.5, 0.5}));
}

Functional lam1(cplx z) {
  return Functional(vec({z.real()}), vec({z.imag()}));
}

Functional lam2(cplx a, cplx b) {
  return Functional(vec({a.real(), b.real()}), vec({a.imag(), b.imag()}));
}

std::vector<int> flipped_noncompact(const RootSystem& rs) {
  std::vector<int> R;
  for (int i : rs.noncompact_positive())
    R.push_back(rs.find_root(-rs.root(i).coords).value());
  for (int i : rs.compact_positive()) R.push_back(i);
  return R;
}

}  // namespace

TEST_CASE("half sum of positive roots") {
  CHECK((cfn::rho(make_a1()).re - vec({1.0})).norm() <= 1e-14);
  CHECK((cfn::rho(make_c2()).re - vec({1.0, 2.0})).norm() <= 1e-14);
}

TEST_CASE("rank-one factors: values and domains") {
  RootSystem a1 = make_a1();
  Eigen::VectorXd alpha = vec({2.0});

  CValue at_m1 = cfn::c_alpha_noncompact(a1, alpha, lam1(-1.0));
  CHECK(std::abs(at_m1.value - cplx(2.0, 0)) <= 1e-13);
  CHECK(at_m1.in_domain);
  CHECK_FALSE(at_m1.pole);

  CValue at_0 = cfn::c_alpha_noncompact(a1, alpha, lam1(0.0));
  CHECK(std::abs(at_0.value - cplx(kPi, 0)) <= 1e-12);

  CValue at_1 = cfn::c_alpha_noncompact(a1, alpha, lam1(1.0));
  CHECK(at_1.pole);
  CHECK_FALSE(at_1.in_domain);
  CHECK(std::isnan(at_1.value.real()));

  // continued value past the boundary: finite, flagged out of domain
  CValue past = cfn::c_alpha_noncompact(a1, alpha, lam1(1.1));
  CHECK_FALSE(past.in_domain);
  CHECK_FALSE(past.pole);
  CHECK(std::isfinite(past.value.real()));

  RootSystem c2 = make_c2();
  // compact factor at lambda(H) = 1: B(1/2, 1/2) = pi
  CValue comp = cfn::c_alpha_compact(c2, vec({-1.0, 1.0}), lam2(0.5, 1.5));
  // z = lambda(H_{e2-e1}) = -0.5 + 1.5 = 1
  CHECK(std::abs(comp.value - cplx(kPi, 0)) <= 1e-12);
  CHECK(comp.in_domain);

  CHECK_THROWS_AS(cfn::c_alpha_noncompact(c2, vec({-1.0, 1.0}), lam2(0, 0)),
                  cfn::NotNoncompactPositive);
  CHECK_THROWS_AS(cfn::c_alpha_compact(c2, vec({2.0, 0.0}), lam2(0, 0)),
                  cfn::NotCompactPositive);
  CHECK_THROWS_AS(cfn::c_alpha_noncompact(c2, vec({-2.0, 0.0}), lam2(0, 0)),
                  cfn::NotNoncompactPositive);
}

TEST_CASE("shell product equals the explicit factor product") {
  RootSystem c2 = make_c2();
  Functional lam = lam2(-2.0, -3.0);
  // coroot values: z(2e1) = -2, z(2e2) = -3, z(e1+e2) = -5; each factor is
  // B(1/2, -z/2 + 1/2) with multiplicity one
  cplx expect = cfn::beta(0.5, 1.5).value * cfn::beta(0.5, 2.0).value *
                cfn::beta(0.5, 3.0).value;
  CValue got = cfn::c_omega(c2, lam);
  CHECK(std::abs(got.value - expect) <= 1e-14 * std::abs(expect));
  CHECK(got.in_domain);
}

TEST_CASE("product bookkeeping across regroupings") {
  RootSystem c2 = make_c2();
  std::vector<int> flip = flipped_noncompact(c2);
  cfn::CounterRng rng(20260823, 3);
  for (int n = 0; n < 100; ++n) {
    Functional lam = lam2(cplx(rng.next_uniform(-3, 3), rng.next_uniform(-3, 3)),
                          cplx(rng.next_uniform(-3, 3), rng.next_uniform(-3, 3)));
    CValue full = cfn::c_full(c2, lam);
    CValue as_r = cfn::c_R(c2, c2.positive(), lam);
    CValue flipv = cfn::c_R(c2, flip, lam);
    CValue zero = cfn::c_zero(c2, lam);

    CHECK(full.pole == as_r.pole);
    CHECK(full.in_domain == as_r.in_domain);
    CHECK(flipv.pole == zero.pole);
    CHECK(flipv.in_domain == zero.in_domain);
    if (full.pole || zero.pole) continue;
    CHECK(std::abs(full.value - as_r.value) <=
          1e-13 * std::max(1e-300, std::abs(full.value)));
    CHECK(std::abs(flipv.value - zero.value) <=
          1e-13 * std::max(1e-300, std::abs(zero.value)));
  }
}

TEST_CASE("index-set products are order independent") {
  RootSystem c2 = make_c2();
  Functional lam = lam2(cplx(-1.2, 0.4), cplx(-2.1, -0.7));
  std::vector<int> R = c2.positive();
  std::reverse(R.begin(), R.end());
  CValue fwd = cfn::c_R(c2, c2.positive(), lam);
  CValue bwd = cfn::c_R(c2, R, lam);
  CHECK(std::abs(fwd.value - bwd.value) <= 1e-14 * std::abs(fwd.value));

  // negative-root indices contribute nothing
  std::vector<int> with_neg = c2.positive();
  with_neg.push_back(c2.find_root(vec({-2.0, 0.0})).value());
  CValue padded = cfn::c_R(c2, with_neg, lam);
  CHECK(std::abs(padded.value - fwd.value) <= 1e-14 * std::abs(fwd.value));

  CHECK_THROWS_AS(cfn::c_R(c2, {99}, lam), cfn::NotARoot);

  // single-factor set agrees with the dedicated entry point
  std::vector<int> single = {c2.noncompact_positive()[0]};
  CValue one = cfn::c_R(c2, single, lam);
  CValue direct = cfn::c_alpha_noncompact(
      c2, c2.root(single[0]).coords, lam);
  CHECK(std::abs(one.value - direct.value) <= 1e-15 * std::abs(one.value));
}

TEST_CASE("domain flags of products") {
  RootSystem c2 = make_c2();
  // z(2e1) = 0.5 < 1, z(2e2) = 0.6 < 1, but z(e1+e2) = 1.1 >= 1
  CValue v = cfn::c_omega(c2, lam2(0.5, 0.6));
  CHECK_FALSE(v.in_domain);
  CHECK_FALSE(v.pole);
  CHECK(std::isfinite(v.value.real()));

  CValue pole = cfn::c_omega(c2, lam2(1.0, -2.0));
  CHECK(pole.pole);
  CHECK(std::isnan(pole.value.real()));

  // compact side needs positive real part on the compact coroot
  CValue zp = cfn::c_zero(c2, lam2(-1.0, 2.0));  // z(e2-e1) = 3 > 0
  CHECK(zp.in_domain);
  CValue zn = cfn::c_zero(c2, lam2(2.0, -1.0));  // z(e2-e1) = -3 < 0
  CHECK_FALSE(zn.in_domain);
}

TEST_CASE("empty products are the trivial value") {
  RootSystem a1 = make_a1();
  CValue z = cfn::c_zero(a1, lam1(0.3));  // no compact roots
  CHECK(z.trivial);
  CHECK(z.value == cplx(1.0, 0.0));
  CHECK(z.in_domain);

  CValue full = cfn::c_full(a1, lam1(-0.5));
  CValue om = cfn::c_omega(a1, lam1(-0.5));
  CHECK(std::abs(full.value - om.value) <= 1e-15 * std::abs(om.value));
  CHECK_FALSE(full.trivial);

  RootSystem flat = make_a1(0.0);  // no noncompact roots
  CValue omega_flat = cfn::c_omega(flat, lam1(0.7));
  CHECK(omega_flat.trivial);
  CHECK(omega_flat.value == cplx(1.0, 0.0));
}

TEST_CASE("pole sheet enumeration") {
  RootSystem a1 = make_a1();
  std::vector<cfn::PoleSheet> sa = cfn::pole_sheets(a1);
  REQUIRE(sa.size() == 1);
  CHECK(sa[0].family == cfn::PoleFamily::Noncompact);
  CHECK(sa[0].offset == doctest::Approx(1.0));
  CHECK(sa[0].step == doctest::Approx(2.0));
  CHECK(sa[0].formula.find("1 + 2*k") != std::string::npos);

  RootSystem c2 = make_c2();
  std::vector<cfn::PoleSheet> sc = cfn::pole_sheets(c2);
  CHECK(sc.size() == 4);
  int noncompact = 0, compact = 0;
  for (const cfn::PoleSheet& s : sc) {
    if (s.family == cfn::PoleFamily::Noncompact) {
      ++noncompact;
      CHECK(s.offset == doctest::Approx(1.0));
      CHECK(s.step == doctest::Approx(2.0));
    } else {
      ++compact;
      CHECK(s.offset == doctest::Approx(0.0));
      CHECK(s.step == doctest::Approx(-2.0));
    }
  }
  CHECK(noncompact == 3);
  CHECK(compact == 1);
}
