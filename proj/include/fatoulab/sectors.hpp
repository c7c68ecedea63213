#pragma once

#include <stdexcept>
#include <vector>

#include "fatoulab/fatou.hpp"

namespace fatoulab {

struct PullbackBranchLost : std::runtime_error {
  PullbackBranchLost() : std::runtime_error("sector band left the coordinate image band") {}
};

enum class SectorKind { C, Csharp, S0 };

// Region cut out by coordinate inequalities on Phi:
//   C       1/2 <= Re <= 3/2, -2 < Im <= 2
//   Csharp  1/2 <= Re <= 3/2,  2 <= Im   (truncated at im_cap for sampling)
//   S0      C union Csharp pulled back `pullback_depth` times along the
//           branch with 0 on its boundary (a -depth translation in Phi)
template <class R>
struct SectorSpec {
  SectorKind kind = SectorKind::C;
  int pullback_depth = 0;
  R translate = R(0);  // forward gate offset, e.g. floor(1/(2 alpha))
  R im_cap = R(12);    // sampling truncation for the unbounded top
};

template <class R>
struct SectorCloud {
  std::vector<Complex<R>> boundary_z;  // ordered boundary samples, dynamical plane
  std::vector<Complex<R>> interior_z;
  R diameter{0};
};

namespace detail {

// winding number of an ordered closed polyline around p
template <class R>
long winding_number(const std::vector<Complex<R>>& poly, const Complex<R>& p) {
  R total(0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Complex<R> a = poly[i] - p;
    Complex<R> b = poly[(i + 1) % poly.size()] - p;
    total += arg(b / a);
  }
  return static_cast<long>(nearest_int(total / (2 * const_pi<R>())));
}

}  // namespace detail

template <class R>
SectorCloud<R> sector_extract(const FatouFrame<R>& frame, const SectorSpec<R>& spec,
                              int samples) {
  using C = Complex<R>;
  R lo, hi;
  switch (spec.kind) {
    case SectorKind::C: lo = R(-2); hi = R(2); break;
    case SectorKind::Csharp: lo = R(2); hi = spec.im_cap; break;
    case SectorKind::S0: lo = R(-2); hi = spec.im_cap; break;
  }
  C offset(spec.translate - R(spec.pullback_depth), R(0));
  R k_fit = R(*frame.constants().get("k"));
  R right_edge = floor(R(1) / frame.alpha()) - k_fit;
  if (R(0.5) + offset.re < 0 || R(1.5) + offset.re > right_edge) throw PullbackBranchLost();

  SectorCloud<R> out;
  auto push = [&](std::vector<C>& dst, const R& x, const R& y) {
    C w = frame.phi_inverse(C(x, y) + offset);
    dst.push_back(frame.tau(w));
  };
  int n = std::max(samples / 4, 2);
  // ordered boundary: bottom, right, top, left
  for (int i = 0; i < n; ++i) push(out.boundary_z, R(1) / 2 + R(i) / n, lo);
  for (int i = 0; i < n; ++i) push(out.boundary_z, R(3) / 2, lo + (hi - lo) * R(i) / n);
  for (int i = 0; i < n; ++i) push(out.boundary_z, R(3) / 2 - R(i) / n, hi);
  for (int i = 0; i < n; ++i) push(out.boundary_z, R(1) / 2, hi - (hi - lo) * R(i) / n);
  int g = std::max(2, samples / 16);
  for (int i = 1; i < g; ++i)
    for (int j = 1; j < g; ++j)
      push(out.interior_z, R(1) / 2 + R(i) / g, lo + (hi - lo) * R(j) / g);

  for (std::size_t i = 0; i < out.boundary_z.size(); ++i)
    for (std::size_t j = i + 1; j < out.boundary_z.size(); ++j) {
      R d = abs(out.boundary_z[i] - out.boundary_z[j]);
      if (d > out.diameter) out.diameter = d;
    }
  return out;
}

template <class R>
bool sector_contains(const SectorCloud<R>& cloud, const Complex<R>& p) {
  return detail::winding_number(cloud.boundary_z, p) != 0;
}

// Fits the sector-size constant M: the translated fundamental gate at
// Re ~ floor(1/(2 alpha)) has Euclidean diameter <= M alpha.
template <class R>
double fit_sector_constant(FatouFrame<R>& frame, int samples = 64) {
  SectorSpec<R> gate;
  gate.kind = SectorKind::S0;
  gate.translate = floor(R(1) / (2 * frame.alpha()));
  gate.im_cap = R(8);
  auto cloud = sector_extract(frame, gate, samples);
  double m = static_cast<double>(cloud.diameter / frame.alpha());
  frame.constants().put("M", m, "fitted",
                        "diameter/alpha of the mid-domain gate band sampled at " +
                            std::to_string(samples) + " boundary points");
  return m;
}

}  // namespace fatoulab
