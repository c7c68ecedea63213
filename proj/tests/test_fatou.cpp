#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fatoulab/fatou.hpp"

using namespace fatoulab;
using R = Real128;
using C = Complex<R>;

namespace {
std::mt19937_64 rng(20260810);
R uni(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return R(d(rng));
}
}  // namespace

TEST_CASE("tau: deck periodicity, half-period value, decay") {
  for (auto kind : {MapKind::Quadratic, MapKind::CubicModel}) {
    R alpha("0.05");
    auto m = kind == MapKind::Quadratic ? MapSpec<R>::quadratic(alpha)
                                        : MapSpec<R>::cubic_model(alpha);
    FatouFrame<R> fr(m);
    C half(R(1) / (2 * alpha), R(0));
    REQUIRE(abs(fr.tau(half) - fr.sigma() / R(2)) < R("1e-35"));
    for (int k = 0; k < 12; ++k) {
      C w(uni(0.3, 19.0), uni(-8.0, 8.0));
      if (deck_distance(alpha, w) < R("0.05")) continue;
      C t1 = fr.tau(w);
      REQUIRE(abs(fr.tau(w + C(R(1) / alpha)) - t1) < R("1e-30") * (R(1) + abs(t1)));
    }
    // |tau| ~ |sigma| e^{-2 pi alpha Im w} high up
    C high(R(3), R(20) / alpha);
    R expect = abs(fr.sigma()) * exp(-2 * const_pi<R>() * alpha * high.im);
    REQUIRE(abs(fr.tau(high)) < 2 * expect);
    REQUIRE(abs(fr.tau(high)) > expect / 2);
    REQUIRE_THROWS_AS(fr.tau(C(R(1) / alpha)), PoleHit);
  }
}

TEST_CASE("semiconjugacy h(tau(w)) = tau(F(w)) and deck commutation") {
  for (auto kind : {MapKind::Quadratic, MapKind::CubicModel}) {
    for (double a : {0.2, 0.05, 0.01}) {
      R alpha(a);
      auto m = kind == MapKind::Quadratic ? MapSpec<R>::quadratic(alpha)
                                          : MapSpec<R>::cubic_model(alpha);
      FatouFrame<R> fr(m);
      R sup(0), supT(0);
      for (int k = 0; k < 40; ++k) {
        C w(uni(0.5, 1 / a - 0.5), uni(a > 0.1 ? -1.5 : -6.0, 8.0));
        if (deck_distance(alpha, w) < R("0.6")) continue;
        try {
          C lhs = m.eval(fr.tau(w));
          C rhs = fr.tau(fr.lift_F(w));
          R e1 = abs(lhs - rhs);
          if (e1 > sup) sup = e1;
          C c1 = fr.lift_F(w + C(R(1) / alpha));
          R e2 = abs(c1 - fr.lift_F(w) - C(R(1) / alpha));
          if (e2 > supT) supT = e2;
        } catch (const std::runtime_error&) {
          continue;
        }
      }
      REQUIRE(sup < R("1e-25"));
      REQUIRE(supT < R("1e-25"));
    }
  }
}

TEST_CASE("theta and sigma-strip membership") {
  R alpha("0.1");
  ThetaSpec<R> th{R(1), alpha};
  REQUIRE_FALSE(theta_contains(th, C(R("0.5"))));
  REQUIRE_FALSE(theta_contains(th, C(R("0.5") + 1 / alpha)));
  REQUIRE(theta_contains(th, C(R(5), R(0))));
  REQUIRE(theta_contains(th, C(R("0.5"), R(3))));

  SigmaStrip<R> st{R(2), alpha};
  REQUIRE(sigma_contains(st, C(R(5))));          // 2 <= 5 <= 8
  REQUIRE_FALSE(sigma_contains(st, C(R(1))));    // notch: |Im| < -Re+2Q = 3
  REQUIRE(sigma_contains(st, C(R(1), R(4))));    // above the notch
  REQUIRE(sigma_contains(st, C(R(9), R("-6")))); // right notch, below
  REQUIRE_FALSE(sigma_contains(st, C(R(9), R(1))));
}

TEST_CASE("inverse of the lifted map") {
  FatouFrame<R> fr(MapSpec<R>::quadratic(R("0.05")));
  for (int k = 0; k < 10; ++k) {
    C w(uni(1.0, 18.0), uni(-4.0, 6.0));
    if (deck_distance(fr.alpha(), w) < R(1)) continue;
    C fw = fr.lift_F(w);
    REQUIRE(abs(fr.lift_F_inverse(fw) - w) < R("1e-28"));
  }
}

TEST_CASE("phi: normalization, Abel equation, round trip") {
  for (auto kind : {MapKind::Quadratic, MapKind::CubicModel}) {
    for (double a : {0.05, 0.01}) {
      R alpha(a);
      auto m = kind == MapKind::Quadratic ? MapSpec<R>::quadratic(alpha)
                                          : MapSpec<R>::cubic_model(alpha);
      FatouFrame<R> fr(m);
      REQUIRE(abs(fr.phi(fr.cp_lift())) < R("1e-12"));
      R supAbel(0), supRt(0);
      int used = 0;
      for (int k = 0; k < 60 && used < 30; ++k) {
        C w(uni(0.7, 1 / a - 3.0), uni(0.0, 2.0 / a));
        if (deck_distance(alpha, w) < fr.fitted_c2() + 0.3) continue;
        try {
          C p1 = fr.phi(fr.lift_F(w));
          C p0 = fr.phi(w);
          R e = abs(p1 - p0 - C(R(1)));
          if (e > supAbel) supAbel = e;
          R rt = abs(fr.phi_inverse(p0) - w);
          if (rt > supRt) supRt = rt;
          ++used;
        } catch (const std::runtime_error&) {
        }
      }
      REQUIRE(used >= 20);
      REQUIRE(supAbel < R("1e-15"));
      REQUIRE(supRt < R("1e-15"));
    }
  }
}

TEST_CASE("phi image: shifted targets step by F, high targets land near 0") {
  R alpha("0.05");
  FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
  C zeta(R(3), R("1.5"));
  C w0 = fr.phi_inverse(zeta);
  C w1 = fr.phi_inverse(zeta + C(R(1)));
  REQUIRE(abs(w1 - fr.lift_F(w0)) < R("1e-20"));
  // Im zeta = +30: the covering image sits within the strip-image decay scale
  C high = fr.phi_inverse(C(R(3), R(30)));
  REQUIRE(abs(fr.tau(high)) < R("1e-3"));
  REQUIRE_THROWS_AS(fr.phi_inverse_banded(C(R(-1), R(1))), OutsideImageBand);
  REQUIRE_THROWS_AS(fr.phi_inverse_banded(C(R(1) / alpha, R(1))), OutsideImageBand);
}

TEST_CASE("near-translation report at small alpha") {
  R alpha("0.01");
  FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
  REQUIRE(fr.fitted_c2() < 1e3);
  ThetaSpec<R> region{R(fr.fitted_c2()), alpha};
  auto rep = fr.near_translation_report(region, 48);
  REQUIRE(rep.pass());
  REQUIRE(rep.samples > 1000);
  // decay form: deviation at height 40 within the fitted-C3 envelope
  double c3 = rep.fitted[0].value;
  C w(R(17), R(40));
  R dev = abs(fr.lift_F(w) - (w + C(R(1))));
  R r = alpha * (R(fr.fitted_c2()));
  REQUIRE(dev <= R(c3 * 1.0001) * (alpha / r) * exp(-2 * const_pi<R>() * alpha * w.im));
  // a single-point grid still reports
  auto tiny = fr.near_translation_report(region, 1);
  REQUIRE(tiny.samples <= 1);
}

TEST_CASE("dilatation of the interpolation stays below 1/3 where audited") {
  for (double a : {0.05, 0.01, 0.002}) {
    FatouFrame<R> fr(MapSpec<R>::quadratic(R(a)));
    auto rep = fr.dilatation_report(200, fr.im_audit_floor(), std::max(R(8), R("1.2") / R(a)));
    INFO("alpha = " << a);
    REQUIRE(rep.pass());
  }
}

TEST_CASE("frames at large alpha fall back to mid-domain base lines") {
  FatouFrame<R> fr(MapSpec<R>::quadratic(sqrt(R(2)) - 1));
  REQUIRE_FALSE(fr.base_in_paper_range());
  REQUIRE(abs(fr.phi(fr.cp_lift())) < R("1e-12"));
  // Abel equation still exact in the upper band used by the return map
  C w = fr.phi_inverse(C(R("0.7"), R("0.9")));
  REQUIRE(abs(fr.phi(fr.lift_F(w)) - fr.phi(w) - C(R(1))) < R("1e-15"));
}
