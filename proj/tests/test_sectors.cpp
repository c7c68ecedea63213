#include <catch2/catch_amalgamated.hpp>

#include "fatoulab/sectors.hpp"

using namespace fatoulab;
using R = Real128;
using C = Complex<R>;

TEST_CASE("sector C contains the critical value (cubic model)") {
  R alpha("0.02");
  FatouFrame<R> fr(MapSpec<R>::cubic_model(alpha));
  SectorSpec<R> spec;
  spec.kind = SectorKind::C;
  auto cloud = sector_extract(fr, spec, 160);
  C cv = fr.map().critical_value();
  REQUIRE(sector_contains(cloud, cv));
  // and the cubic critical value is e^{2 pi i alpha} (-4/27)
  REQUIRE(abs(cv - fr.map().multiplier() * (R(-4) / 27)) < R("1e-30"));
  REQUIRE_FALSE(sector_contains(cloud, C(R(10))));
}

TEST_CASE("mid-domain gate has diameter of scale alpha") {
  for (double a : {0.02, 0.01}) {
    R alpha(a);
    FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
    double m = fit_sector_constant(fr, 64);
    INFO("alpha=" << a << " fitted M=" << m);
    REQUIRE(m > 0.1);
    REQUIRE(m < 400.0);
    // re-extract and confirm the recorded bound reproduces
    SectorSpec<R> gate;
    gate.kind = SectorKind::S0;
    gate.translate = floor(R(1) / (2 * alpha));
    gate.im_cap = R(8);
    auto cloud = sector_extract(fr, gate, 64);
    REQUIRE(cloud.diameter <= R(m) * alpha * R("1.0001"));
  }
}

TEST_CASE("truncated Csharp reaches the fixed point scale") {
  R alpha("0.02");
  FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
  SectorSpec<R> spec;
  spec.kind = SectorKind::Csharp;
  spec.im_cap = R(20);
  auto cloud = sector_extract(fr, spec, 120);
  // top edge sits within the covering decay scale of 0
  R bound = abs(fr.sigma()) * exp(-2 * const_pi<R>() * alpha * R(20)) * 4;
  R closest("1e30");
  for (const auto& z : cloud.boundary_z) closest = std::min(closest, abs(z));
  REQUIRE(closest < bound);
  REQUIRE(closest > 0);
}

TEST_CASE("pullback past the image band is refused") {
  R alpha("0.05");
  FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
  SectorSpec<R> spec;
  spec.kind = SectorKind::C;
  spec.pullback_depth = 4;  // 1/2 - 4 < 0
  REQUIRE_THROWS_AS(sector_extract(fr, spec, 32), PullbackBranchLost);
  SectorSpec<R> far;
  far.translate = R(30);  // 3/2 + 30 > floor(1/alpha) - k
  REQUIRE_THROWS_AS(sector_extract(fr, far, 32), PullbackBranchLost);
}

TEST_CASE("shallow pullbacks track the Abel translation") {
  R alpha("0.04");
  FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
  SectorSpec<R> spec;
  spec.kind = SectorKind::C;
  spec.translate = R(6);
  spec.pullback_depth = 2;
  auto pulled = sector_extract(fr, spec, 40);
  // forward-iterating a pulled-back sample twice recovers the unshifted band
  SectorSpec<R> base = spec;
  base.pullback_depth = 0;
  auto plain = sector_extract(fr, base, 40);
  C sample = pulled.boundary_z[3];
  C image = fr.map().eval(fr.map().eval(sample));
  REQUIRE(abs(image - plain.boundary_z[3]) < R("1e-22"));
}
