#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatoulab/complex.hpp"
#include "fatoulab/precision.hpp"

namespace fatoulab {

struct ParabolicCase : std::runtime_error {
  ParabolicCase() : std::runtime_error("alpha = 0: sigma merges with the origin") {}
};
struct OutsideDomain : std::runtime_error {
  OutsideDomain(const std::string& what) : std::runtime_error(what) {}
};

enum class MapKind { Quadratic, CubicModel, NumericalRenorm };

// Return-map handle for numerically produced renormalizations; implemented in
// renorm.hpp, referenced here so MapSpec can dispatch on it.
template <class R>
struct ReturnMapHandle {
  virtual ~ReturnMapHandle() = default;
  virtual Complex<R> eval(const Complex<R>& z) const = 0;
  virtual R validated_radius() const = 0;
};

// A member of the implemented family:
//   Quadratic   z -> e^{2 pi i alpha} z + z^2
//   CubicModel  z -> e^{2 pi i alpha} z (1+z)^2
//   NumericalRenorm: delegated return-map evaluation on a validated disk
template <class R>
class MapSpec {
 public:
  using C = Complex<R>;

  static MapSpec quadratic(const R& alpha) { return MapSpec(MapKind::Quadratic, alpha); }
  static MapSpec cubic_model(const R& alpha) { return MapSpec(MapKind::CubicModel, alpha); }
  static MapSpec numerical_renorm(const R& alpha, std::shared_ptr<const ReturnMapHandle<R>> h) {
    MapSpec m(MapKind::NumericalRenorm, alpha);
    m.handle_ = std::move(h);
    return m;
  }

  MapKind kind() const { return kind_; }
  const R& alpha() const { return alpha_; }
  const C& multiplier() const { return lambda_; }

  C eval(const C& z) const {
    switch (kind_) {
      case MapKind::Quadratic:
        return lambda_ * z + z * z;
      case MapKind::CubicModel: {
        C w = C(R(1)) + z;
        return lambda_ * z * w * w;
      }
      default: {
        if (abs(z) > handle_->validated_radius())
          throw OutsideDomain("point outside the validated renormalization disk");
        return handle_->eval(z);
      }
    }
  }

  C derivative(const C& z) const {
    switch (kind_) {
      case MapKind::Quadratic:
        return lambda_ + R(2) * z;
      case MapKind::CubicModel: {
        // d/dz [lambda z (1+z)^2] = lambda (1+z)(1+3z)
        C w = C(R(1)) + z;
        return lambda_ * w * (C(R(1)) + R(3) * z);
      }
      default:
        return step_derivative([this](const C& x) { return eval(x); }, z,
                               ldexp(R(1), -(mantissa_bits<R>() * 3 / 4)));
    }
  }

  // The nonzero fixed point tending to 0 as alpha -> 0.
  C sigma() const {
    require_polynomial();
    if (alpha_ == 0) throw ParabolicCase();
    if (kind_ == MapKind::Quadratic) return C(R(1)) - lambda_;
    // cubic: lambda (1+z)^2 = 1, branch 1+z = e^{-pi i alpha}
    return unit_circle(-alpha_ / 2) - C(R(1));
  }

  // u(z) = (h(z)-z)/(z(z-sigma)), holomorphic and nonvanishing near 0;
  // closed forms avoid the removable singularities.
  C u_factor(const C& z) const {
    require_polynomial();
    if (kind_ == MapKind::Quadratic) return C(R(1));
    return lambda_ * (z + C(R(1)) + unit_circle(-alpha_ / 2));
  }

  C u_at_zero() const { return u_factor(C(R(0))); }

  std::vector<C> critical_points() const {
    require_polynomial();
    if (kind_ == MapKind::Quadratic) return {-lambda_ / R(2)};
    return {C(R(-1)) / R(3), C(R(-1))};
  }

  // The critical point interacting with the neutral fixed point.
  C critical_point() const { return critical_points().front(); }
  C critical_value() const { return eval(critical_point()); }

 private:
  MapSpec(MapKind k, R alpha) : kind_(k), alpha_(std::move(alpha)), lambda_(unit_circle(alpha_)) {}
  void require_polynomial() const {
    if (kind_ == MapKind::NumericalRenorm)
      throw OutsideDomain("operation defined for the polynomial families only");
  }

  MapKind kind_;
  R alpha_;
  C lambda_;
  std::shared_ptr<const ReturnMapHandle<R>> handle_;
};

template <class R>
struct OrbitRecord {
  std::vector<Complex<R>> points;  // points[0] = z0
  std::optional<std::size_t> escaped_at;
  R escape_radius;
};

template <class R>
OrbitRecord<R> orbit(const MapSpec<R>& map, const Complex<R>& z0, std::size_t n_max,
                     const R& escape_radius) {
  OrbitRecord<R> rec;
  rec.escape_radius = escape_radius;
  rec.points.reserve(std::min<std::size_t>(n_max + 1, 1 << 20));
  Complex<R> z = z0;
  rec.points.push_back(z);
  for (std::size_t n = 1; n <= n_max; ++n) {
    z = map.eval(z);
    rec.points.push_back(z);
    if (abs(z) > escape_radius) {
      rec.escaped_at = n;
      break;
    }
  }
  return rec;
}

}  // namespace fatoulab
