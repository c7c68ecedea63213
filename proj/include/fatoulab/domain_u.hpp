#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatoulab/complex.hpp"
#include "fatoulab/precision.hpp"

namespace fatoulab {

struct IOFailure : std::runtime_error {
  IOFailure(const std::string& what) : std::runtime_error(what) {}
};

// Domain of the cubic model: preimage of B(0, 4/27 e^{4 pi}) under
// P(z) = z(1+z)^2, minus the slit (-inf, -1] and minus the component B of
// P^{-1}(B(0, 4/27 e^{-4 pi})) containing -1.
//
// B is a sub-milli-scale disk-like set around -1 (|1+z| ~ sqrt(4/27 e^{-4 pi})
// ~ 7e-4), so the component mask is flood-filled on a fine window centered at
// -1 rather than on a whole-plane grid; everything else is closed-form.
class DomainU {
 public:
  explicit DomainU(int resolution = 2048)
      : res_(resolution), half_width_(0.01),
        mask_(static_cast<std::size_t>(res_) * res_, 0) {
    build_mask();
  }

  static double outer_radius() { return 4.0 / 27.0 * std::exp(4.0 * kPi); }
  static double inner_radius() { return 4.0 / 27.0 * std::exp(-4.0 * kPi); }

  bool contains(const std::complex<double>& z) const {
    if (z.imag() == 0.0 && z.real() <= -1.0) return false;  // the slit
    std::complex<double> pz = z * (1.0 + z) * (1.0 + z);
    if (std::abs(pz) >= outer_radius()) return false;
    if (std::abs(pz) < inner_radius() && in_b_component(z)) return false;
    return true;
  }

  template <class R>
  bool contains(const Complex<R>& z) const {
    return contains(std::complex<double>(static_cast<double>(z.re), static_cast<double>(z.im)));
  }

  int resolution() const { return res_; }
  double pixel_size() const { return 2.0 * half_width_ / res_; }

  // PGM (P5) export of the window mask around -1 for visual audit.
  void write_mask_pgm(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IOFailure("cannot open " + path);
    os << "P5\n" << res_ << " " << res_ << "\n255\n";
    std::vector<std::uint8_t> row(res_);
    for (int j = 0; j < res_; ++j) {
      for (int i = 0; i < res_; ++i) row[i] = mask_[idx(i, j)] ? 255 : 0;
      os.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!os) throw IOFailure("short write to " + path);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * res_ + i; }

  std::complex<double> pixel_center(int i, int j) const {
    return {-1.0 - half_width_ + (i + 0.5) * pixel_size(),
            -half_width_ + (j + 0.5) * pixel_size()};
  }

  bool small_preimage(int i, int j) const {
    std::complex<double> z = pixel_center(i, j);
    return std::abs(z * (1.0 + z) * (1.0 + z)) < inner_radius();
  }

  void build_mask() {
    std::vector<std::pair<int, int>> stack{{res_ / 2, res_ / 2}};
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      if (i < 0 || j < 0 || i >= res_ || j >= res_) continue;
      if (mask_[idx(i, j)] || !small_preimage(i, j)) continue;
      mask_[idx(i, j)] = 1;
      stack.push_back({i + 1, j});
      stack.push_back({i - 1, j});
      stack.push_back({i, j + 1});
      stack.push_back({i, j - 1});
    }
  }

  bool in_b_component(const std::complex<double>& z) const {
    double x = z.real() + 1.0, y = z.imag();
    if (std::abs(x) >= half_width_ || std::abs(y) >= half_width_) return false;
    int i = static_cast<int>((x + half_width_) / pixel_size());
    int j = static_cast<int>((y + half_width_) / pixel_size());
    i = std::min(std::max(i, 0), res_ - 1);
    j = std::min(std::max(j, 0), res_ - 1);
    return mask_[idx(i, j)] != 0;
  }

  int res_;
  double half_width_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace fatoulab
