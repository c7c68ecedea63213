#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fatoulab/domain_u.hpp"
#include "fatoulab/exp_coords.hpp"
#include "fatoulab/maps.hpp"
#include "oracle_values.hpp"

using namespace fatoulab;
using R = Real128;
using C = Complex<R>;

TEST_CASE("eval: fixed point at 0 and cubic critical orbit") {
  auto quad = MapSpec<R>::quadratic(R("0.3"));
  REQUIRE(abs(quad.eval(C(R(0)))) == 0);

  auto cubic = MapSpec<R>::cubic_model(R("0.05"));
  C lam = cubic.multiplier();
  REQUIRE(abs(cubic.eval(C(R(-1)) / 3) - lam * (R(-4) / 27)) < R("1e-35"));
  REQUIRE(abs(cubic.eval(C(R(-1)))) < R("1e-35"));
}

TEST_CASE("multiplier at the origin has argument 2 pi alpha") {
  for (auto kind : {MapKind::Quadratic, MapKind::CubicModel}) {
    for (const R& alpha : {R("0.1"), R("0.01"), R("0.001")}) {
      auto m = kind == MapKind::Quadratic ? MapSpec<R>::quadratic(alpha)
                                          : MapSpec<R>::cubic_model(alpha);
      C d = m.derivative(C(R(0)));
      REQUIRE(abs(abs(d) - 1) < R("1e-35"));
      REQUIRE(abs(arg(d) - 2 * const_pi<R>() * alpha) < R("1e-35"));
    }
  }
}

TEST_CASE("sigma fixed point") {
  for (const R& alpha : {R("0.1"), R("0.01"), R("0.001")}) {
    auto quad = MapSpec<R>::quadratic(alpha);
    C sq = quad.sigma();
    REQUIRE(abs(sq - (C(R(1)) - quad.multiplier())) < R("1e-36"));
    REQUIRE(abs(quad.eval(sq) - sq) < R("1e-28"));

    auto cubic = MapSpec<R>::cubic_model(alpha);
    C sc = cubic.sigma();
    REQUIRE(abs(cubic.eval(sc) - sc) < R("1e-28"));
    // root of lambda z^2 + 2 lambda z + (lambda - 1) tending to 0
    C lam = cubic.multiplier();
    REQUIRE(abs(lam * sc * sc + 2 * lam * sc + lam - C(R(1))) < R("1e-30"));
  }
  // sigma/alpha -> -4 pi i / h''(0): for the quadratic h''= 2, so -2 pi i
  R alpha("1e-9");
  C ratio = MapSpec<R>::quadratic(alpha).sigma() / alpha;
  REQUIRE(abs(ratio - C(R(0), -2 * const_pi<R>())) < R("1e-7"));
  REQUIRE_THROWS_AS(MapSpec<R>::quadratic(R(0)).sigma(), ParabolicCase);
}

TEST_CASE("u factor and the sigma identity") {
  R alpha("0.05");
  auto quad = MapSpec<R>::quadratic(alpha);
  REQUIRE(abs(quad.u_at_zero() - C(R(1))) == 0);

  auto cubic = MapSpec<R>::cubic_model(alpha);
  // frozen from tests/oracles/gen_expected.py
  C u0 = cubic.u_at_zero();
  REQUIRE(abs(u0 - C(R("1.93874485689029129830647958107"),
                     R("0.46545145941517829311239873665"))) < R("1e-28"));
  C sc = cubic.sigma();
  REQUIRE(abs(sc - C(R("-0.0123116594048622738099597523066"),
                     R("-0.156434465040230869010105319467"))) < R("1e-28"));
  for (auto m : {quad, cubic}) {
    REQUIRE(abs(m.sigma() * m.u_at_zero() - (C(R(1)) - m.multiplier())) < R("1e-35"));
    // u(z) agrees with the quotient (h(z)-z)/(z(z-sigma)) off the singular points
    for (double x : {0.21, -0.4}) {
      C z(R(x), R("0.13"));
      C quotient = (m.eval(z) - z) / (z * (z - m.sigma()));
      REQUIRE(abs(quotient - m.u_factor(z)) < R("1e-33"));
    }
  }
}

TEST_CASE("critical points kill the derivative") {
  for (auto m : {MapSpec<R>::quadratic(R("0.17")), MapSpec<R>::cubic_model(R("0.17"))}) {
    for (const C& cp : m.critical_points()) REQUIRE(abs(m.derivative(cp)) < R("1e-28"));
  }
  auto quad = MapSpec<R>::quadratic(R("0.17"));
  REQUIRE(abs(quad.critical_point() + quad.multiplier() / 2) == 0);
}

TEST_CASE("orbits record escapes") {
  auto quad = MapSpec<R>::quadratic(R("0.3"));
  auto fixed = orbit(quad, C(R(0)), 10, R(4));
  REQUIRE_FALSE(fixed.escaped_at.has_value());
  REQUIRE(fixed.points.size() == 11);
  for (const auto& p : fixed.points) REQUIRE(abs(p) == 0);

  auto esc = orbit(quad, C(R(10)), 10, R(4));
  REQUIRE(esc.escaped_at == 1);
  REQUIRE(esc.points.size() == 2);

  // bounded critical orbit for a Brjuno rotation number at desk depth
  auto siegel = MapSpec<R>::quadratic(sqrt(R(2)) - 1);
  auto crit = orbit(siegel, siegel.critical_point(), 2000, R(4));
  REQUIRE_FALSE(crit.escaped_at.has_value());
}

TEST_CASE("domain U membership") {
  DomainU u(512);
  REQUIRE(u.contains(std::complex<double>(0.0, 0.0)));
  REQUIRE_FALSE(u.contains(std::complex<double>(-2.0, 0.0)));  // slit
  REQUIRE_FALSE(u.contains(std::complex<double>(-1.0, 0.0)));  // B component / slit end
  REQUIRE_FALSE(u.contains(std::complex<double>(-1.0, 2e-4)));
}

TEST_CASE("domain U radii match the oracle") {
  REQUIRE(std::abs(DomainU::outer_radius() - 42481.67602024493) < 1e-8);
  REQUIRE(std::abs(DomainU::inner_radius() - 5.166433120309623e-7) < 1e-19);
}

TEST_CASE("domain U mask stable under resolution doubling") {
  DomainU coarse(256), fine(512);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int changed = 0;
  for (int k = 0; k < 1000; ++k) {
    // probe set concentrated where the mask decides: near -1
    std::complex<double> z(-1.0 + 2.5e-3 * uni(rng), 2.5e-3 * uni(rng));
    if (coarse.contains(z) != fine.contains(z)) {
      ++changed;
      // disagreements may only happen within two coarse pixels of the edge
      double p = std::abs(std::abs(z * (1.0 + z) * (1.0 + z))) - DomainU::inner_radius();
      REQUIRE(std::abs(p) < 2.0 * coarse.pixel_size());
    }
  }
  REQUIRE(changed < 50);
}

TEST_CASE("exp projection and lifts") {
  REQUIRE(abs(exp_project(C(R(0))) - C(R(-4) / 27)) < R("1e-37"));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    C w(R(3 * uni(rng)), R(3 * uni(rng)));
    C z = exp_project(w);
    REQUIRE(abs(exp_project(w + C(R(1))) - z) < R("1e-34") * (R(1) + abs(z)));
    for (long b : {-2L, 0L, 3L}) {
      C lift = exp_lift(z, b, true);
      REQUIRE(abs(exp_project(lift) - z) < R("1e-33") * abs(z));
      // lifts differ by integer translation and recover w up to one
      R d = lift.re - w.re;
      REQUIRE(abs(d - nearest_int(d)) < R("1e-30"));
      REQUIRE(abs(lift.im - w.im) < R("1e-30"));
    }
    // holomorphic variant round trip
    C zh = exp_project_holo(w);
    REQUIRE(abs(exp_project_holo(exp_lift(zh, 0, false)) - zh) < R("1e-33") * abs(zh));
  }
  // decay: Im w -> +inf sends the projection to 0
  REQUIRE(abs(exp_project(C(R(0), R(20)))) < R("1e-54"));
  REQUIRE_THROWS_AS(exp_lift(C(R(0)), 0, true), ZeroNotInImage);
}
