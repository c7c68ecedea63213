#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "fatoulab/domain_u.hpp"
#include "fatoulab/maps.hpp"
#include "fatoulab/parallel.hpp"

namespace fatoulab {

struct Image {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : rgb) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Binary PPM (P6), the canonical bit-exact output format.
inline void write_ppm(const Image& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IOFailure("cannot open " + path);
  os << "P6\n" << img.width << " " << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  if (!os) throw IOFailure("short write to " + path);
}

enum class Coloring { EscapeTime, OrbitTrapOrigin };

struct RenderJob {
  MapKind kind = MapKind::Quadratic;
  double alpha = 0.4142135623730951;
  double center_x = 0, center_y = 0;
  double width = 3.0;
  int resolution = 512;
  int max_iter = 500;
  double escape_radius = 4.0;
  Coloring coloring = Coloring::EscapeTime;
};

namespace detail {

inline void put_pixel(Image& img, int i, int j, double v) {
  // smooth monotone palette; v in [0,1]
  double r = std::pow(v, 0.45), g = std::pow(v, 0.85), b = std::pow(v, 1.6);
  std::size_t at = 3 * (static_cast<std::size_t>(j) * img.width + i);
  img.rgb[at] = static_cast<std::uint8_t>(255.0 * r);
  img.rgb[at + 1] = static_cast<std::uint8_t>(255.0 * g);
  img.rgb[at + 2] = static_cast<std::uint8_t>(255.0 * b);
}

}  // namespace detail

// Escape-time render at hardware doubles (flagged as such in reports); rows
// are computed into disjoint slots, so thread count cannot change the bytes.
inline Image render_julia(const RenderJob& job, int threads = 0) {
  Image img;
  img.width = job.resolution;
  img.height = job.resolution;
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
  const double two_pi = 6.283185307179586476925287;
  const std::complex<double> lambda(std::cos(two_pi * job.alpha), std::sin(two_pi * job.alpha));
  const double step = job.width / job.resolution;
  const double x0 = job.center_x - job.width / 2;
  const double y0 = job.center_y - job.width / 2;
  const double esc2 = job.escape_radius * job.escape_radius;

  parallel_for(static_cast<std::size_t>(img.height), [&](std::size_t j) {
    for (int i = 0; i < img.width; ++i) {
      std::complex<double> z(x0 + (i + 0.5) * step, y0 + (j + 0.5) * step);
      double trap = std::abs(z);
      int n = 0;
      for (; n < job.max_iter; ++n) {
        z = job.kind == MapKind::Quadratic ? lambda * z + z * z
                                           : lambda * z * (1.0 + z) * (1.0 + z);
        double a2 = std::norm(z);
        if (a2 < trap * trap) trap = std::sqrt(a2);
        if (a2 > esc2) break;
      }
      double v;
      if (job.coloring == Coloring::EscapeTime) {
        v = job.max_iter == 0 ? 0.0 : 1.0 - static_cast<double>(n) / job.max_iter;
      } else {
        v = 1.0 / (1.0 + 8.0 * trap);
      }
      detail::put_pixel(img, i, static_cast<int>(j), v);
    }
  }, threads);
  return img;
}

// Density plot of the critical-value orbit at 128-bit precision, log-shaded.
template <class R>
Image render_postcritical(const R& alpha, std::size_t budget, double center_x, double center_y,
                          double width, int resolution) {
  Image img;
  img.width = resolution;
  img.height = resolution;
  img.rgb.assign(static_cast<std::size_t>(resolution) * resolution * 3, 0);
  std::vector<std::uint32_t> hits(static_cast<std::size_t>(resolution) * resolution, 0);

  auto map = MapSpec<R>::quadratic(alpha);
  Complex<R> z = map.critical_value();
  const double x0 = center_x - width / 2, y0 = center_y - width / 2;
  const double inv_step = resolution / width;
  std::uint32_t peak = 0;
  for (std::size_t k = 0; k <= budget; ++k) {
    double x = static_cast<double>(z.re), y = static_cast<double>(z.im);
    int i = static_cast<int>((x - x0) * inv_step);
    int j = static_cast<int>((y - y0) * inv_step);
    if (i >= 0 && j >= 0 && i < resolution && j < resolution) {
      std::uint32_t& c = hits[static_cast<std::size_t>(j) * resolution + i];
      if (++c > peak) peak = c;
    }
    if (k < budget) z = map.eval(z);
  }
  double denom = std::log1p(static_cast<double>(peak));
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      std::uint32_t c = hits[static_cast<std::size_t>(j) * resolution + i];
      double v = peak == 0 ? 0.0 : std::log1p(static_cast<double>(c)) / denom;
      detail::put_pixel(img, i, j, v);
    }
  return img;
}

}  // namespace fatoulab
