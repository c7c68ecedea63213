#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fatoulab/cf.hpp"
#include "fatoulab/exp_coords.hpp"
#include "fatoulab/fatou.hpp"
#include "fatoulab/verify.hpp"

namespace fatoulab {

struct NoReturn : std::runtime_error {
  NoReturn() : std::runtime_error("orbit left the validated region before returning") {}
};
struct DiskTooLarge : std::runtime_error {
  DiskTooLarge() : std::runtime_error("point outside the validated renormalization disk") {}
};

// Iterate-count bookkeeping for the renormalization tower.
struct TowerLevel {
  double alpha_n = 0;
  long a_next = 0;
  std::string q_n;
  long k_n = 0;
  std::string sector_count;
  std::string omega_bound;
};

struct TowerLedger {
  std::vector<TowerLevel> levels;
  std::vector<long> return_times;   // recorded ell_z values
  std::vector<std::string> transfer_log;
};

// The return map in the projected coordinate: lift through the exponential
// covering, invert Phi, run the lifted flow until first return to the base
// window one deck-translation later, reapply Phi and project. Conjugated by
// s(z) = conj(z) exactly when eps_1 = +1, so the rotation number at 0 is the
// nearest-integer reduction of 1/alpha in (0, 1/2).
template <class R>
class NumericalRenormMap : public ReturnMapHandle<R> {
 public:
  using C = Complex<R>;

  NumericalRenormMap(std::shared_ptr<const FatouFrame<R>> frame, R im_floor = R("0.35"))
      : frame_(std::move(frame)), im_floor_(im_floor) {
    const R& alpha = frame_->alpha();
    R inv = R(1) / alpha;
    R a1 = nearest_int(inv);
    eps1_ = inv - a1 >= 0 ? 1 : -1;
    child_alpha_ = abs(inv - a1);
    pre_conj_ = (eps1_ == 1);
    radius_ = (R(4) / 27) * exp(-2 * const_pi<R>() * im_floor_);
  }

  R validated_radius() const override { return radius_; }
  const R& child_alpha_expected() const { return child_alpha_; }
  int eps1() const { return eps1_; }
  bool conjugated() const { return pre_conj_; }
  TowerLedger& ledger() const { return ledger_; }

  C eval(const C& zeta) const override {
    if (zeta.re == 0 && zeta.im == 0) throw ZeroNotInImage();
    if (abs(zeta) > radius_) throw DiskTooLarge();
    C zin = pre_conj_ ? conj(zeta) : zeta;
    // holomorphic lift with Re in [1/2, 3/2)
    C xi = exp_lift(zin, 0, false);
    xi.re -= floor(xi.re - R(1) / 2);
    const R inv = R(1) / frame_->alpha();
    C w = frame_->phi_inverse(xi);
    long max_steps = static_cast<long>(inv) + 12;
    for (long j = 1; j <= max_steps; ++j) {
      w = frame_->lift_F(w);
      R predicted = xi.re + R(j) - inv;
      if (predicted < R(-2)) continue;
      C back;
      try {
        back = frame_->phi(w - C(inv));
      } catch (const std::runtime_error&) {
        continue;
      }
      if (back.re >= R(1) / 2 && back.re < R(3) / 2 && j >= 2) {
        ledger_.return_times.push_back(j);
        C zout = exp_project_holo(back);
        return pre_conj_ ? conj(zout) : zout;
      }
      if (predicted > R(4)) break;
    }
    throw NoReturn();
  }

  // Deck increment Lambda = Phi(w) - Phi(w - 1/alpha) measured at the band.
  R deck_increment() const {
    C w = frame_->phi_inverse(C(R(1), R("2.5")));
    C hi = frame_->phi(w);
    C lo = frame_->phi(w - C(R(1) / frame_->alpha()));
    return hi.re - lo.re;
  }

  // Smallest k >= 1 placing the once-wrapped band [1/2-k+Lambda, 3/2-k+Lambda]
  // strictly inside the window (0, 1/alpha - 1/2).
  long first_return_offset() const {
    R lambda = deck_increment();
    R window_right = R(1) / frame_->alpha() - R(1) / 2;
    for (long k = 1; k < 64; ++k) {
      R left = R(1) / 2 - R(k) + lambda;
      R right = R(3) / 2 - R(k) + lambda;
      if (left > 0 && right < window_right) return k;
    }
    return -1;
  }

 private:
  std::shared_ptr<const FatouFrame<R>> frame_;
  R im_floor_;
  int eps1_ = 1;
  R child_alpha_;
  bool pre_conj_ = true;
  R radius_;
  mutable TowerLedger ledger_;
};

template <class R>
struct RenormResult {
  std::shared_ptr<NumericalRenormMap<R>> map;
  R child_alpha_expected;
  long k_h = -1;
  R validated_disk;
  std::optional<R> rotation_estimate;
};

template <class R>
RenormResult<R> make_renormalization(std::shared_ptr<const FatouFrame<R>> frame) {
  RenormResult<R> out;
  out.map = std::make_shared<NumericalRenormMap<R>>(std::move(frame));
  out.child_alpha_expected = out.map->child_alpha_expected();
  out.validated_disk = out.map->validated_radius();
  out.k_h = out.map->first_return_offset();
  return out;
}

struct RotationEstimate {
  double value = 0;
  bool low_confidence = false;
  std::size_t steps_used = 0;
};

// Average unwrapped angular increment of the return map along an orbit.
template <class R>
RotationEstimate rotation_number_estimate(const ReturnMapHandle<R>& map, const R& radius,
                                          std::size_t steps) {
  using C = Complex<R>;
  C z(radius, R(0));
  R total(0);
  std::size_t used = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    C z1 = map.eval(z);
    R inc = arg(z1 / z) / (2 * const_pi<R>());
    total += inc - nearest_int(inc);
    z = z1;
    ++used;
  }
  RotationEstimate est;
  est.value = used ? static_cast<double>(abs(total / R(static_cast<int>(used)))) : 0.0;
  est.low_confidence = used <= 1;
  est.steps_used = used;
  return est;
}

// Exact sector-count arithmetic:
//   (k_n q_n + q_{n-1}) + q_n (a_next - k - 1)  <=  q_{n+1} + q_n (k_n - k - 1)
// with equality exactly when q_{n+1} = a_next q_n + q_{n-1}.
struct SectorCountCheck {
  BigInt lhs, rhs;
  bool holds = false;
  bool equality = false;
  bool equality_expected = false;
};

inline SectorCountCheck sector_count_check(const BigInt& q_prev, const BigInt& q_n,
                                           const BigInt& q_next, long k_n, long k,
                                           const BigInt& a_next) {
  SectorCountCheck out;
  out.lhs = (k_n * q_n + q_prev) + q_n * (a_next - k - 1);
  out.rhs = q_next + q_n * (k_n - k - 1);
  out.holds = out.lhs <= out.rhs;
  out.equality = out.lhs == out.rhs;
  out.equality_expected = (q_next == a_next * q_n + q_prev);
  return out;
}

// Gate-diameter bound C * alpha_1 alpha_2^{alpha_1} ... alpha_m^{...} with the
// closure constant C = M^{1/(1 - sup alpha)} <= M^2.
template <class R>
R gate_diameter_bound(const BrjunoLedger<R>& ledger, std::size_t m, const R& big_m) {
  R sup_alpha(0);
  for (std::size_t j = 1; j < ledger.beta.size() && j <= m; ++j) {
    R aj = ledger.beta[j] / ledger.beta[j - 1];
    if (aj > sup_alpha) sup_alpha = aj;
  }
  if (sup_alpha >= R(1) / 2 || sup_alpha == 0) sup_alpha = R(1) / 2;
  R closure = std::min(pow(big_m, R(1) / (R(1) - sup_alpha)), big_m * big_m);
  if (big_m < 1) closure = big_m;  // closure powers only make sense for M >= 1
  return closure * ledger.product_sequence(m);
}

// ---- gate experiment -------------------------------------------------------

template <class R>
struct GateVariantResult {
  std::size_t depth = 0;
  R alpha;
  std::size_t budget = 0;
  R min_abs;
  std::size_t argmin_iter = 0;
  R gate_bound;
};

// Classical continued fraction value with explicit leading quotients and the
// all-ones (golden) tail.
template <class R>
R classical_cf_with_golden_tail(const std::vector<BigInt>& quotients) {
  R x = (sqrt(R(5)) - 1) / 2;
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it)
    x = R(1) / (R(it->str()) + x);
  return x;
}

// Iterates the quadratic critical value and tracks the closest approach to 0.
// `inflations[v]` lists the quotients spliced after the base quotient for
// variant v; deeper, larger entries pull the orbit closer to the fixed point.
template <class R>
std::vector<GateVariantResult<R>> critical_gate_experiment(
    const BigInt& base_quotient, const std::vector<std::vector<BigInt>>& inflations,
    std::size_t iter_budget, const R& fitted_m) {
  std::vector<GateVariantResult<R>> results;
  for (const auto& extra : inflations) {
    std::vector<BigInt> qs{base_quotient};
    qs.insert(qs.end(), extra.begin(), extra.end());
    R alpha = classical_cf_with_golden_tail<R>(qs);
    auto map = MapSpec<R>::quadratic(alpha);
    Complex<R> z = map.critical_value();
    R best = abs(z);
    std::size_t arg_best = 0;
    for (std::size_t k = 1; k <= iter_budget; ++k) {
      z = map.eval(z);
      R a = abs(z);
      if (a < best) {
        best = a;
        arg_best = k;
      }
      if (a > R(8)) throw NoReturn();
    }
    GateVariantResult<R> res;
    res.depth = qs.size();
    res.alpha = alpha;
    res.budget = iter_budget;
    res.min_abs = best;
    res.argmin_iter = arg_best;
    auto ledger = brjuno_ledger(expand_cf(alpha, qs.size() + 4));
    res.gate_bound = gate_diameter_bound(ledger, qs.size(), fitted_m);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace fatoulab
