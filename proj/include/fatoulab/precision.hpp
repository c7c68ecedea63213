#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace fatoulab {

namespace mp = boost::multiprecision;

// Fixed-precision ladder. Each rung is a distinct mpfr-backed type with the
// mantissa chosen so the nominal bit count is met or exceeded; no runtime
// default-precision state, so values are safe to share across threads.
template <unsigned Digits10>
using real_t = mp::number<mp::mpfr_float_backend<Digits10>, mp::et_off>;

using Real64 = real_t<19>;
using Real128 = real_t<38>;
using Real256 = real_t<77>;
using Real512 = real_t<154>;
using Real1024 = real_t<308>;

using BigInt = mp::cpp_int;

template <class R>
constexpr int mantissa_bits() {
  return std::numeric_limits<R>::digits;
}

template <class R>
R real_epsilon() {
  return std::numeric_limits<R>::epsilon();
}

template <class R>
R const_pi() {
  static const R value = acos(R(-1));
  return value;
}

// Distance to the nearest integer, min{|x-n| : n in Z}. Ties at half-integers
// round toward the even integer.
template <class R>
R nearest_int(const R& x) {
  R lo = floor(x);
  R frac = x - lo;
  if (frac < R(0.5)) return lo;
  if (frac > R(0.5)) return lo + 1;
  R cand = lo;
  if (fmod(cand, R(2)) != 0) cand = lo + 1;
  return cand;
}

template <class R>
R int_dist(const R& x) {
  return abs(x - nearest_int(x));
}

// Snaps a requested bit count up to the next ladder rung.
inline int snap_precision_bits(int bits) {
  for (int rung : {64, 128, 256, 512, 1024})
    if (bits <= rung) return rung;
  throw std::invalid_argument("precision-bits above 1024 is not supported");
}

// Dispatches f.template operator()<R>() on the rung matching `bits`.
template <class F>
auto with_precision(int bits, F&& f) {
  switch (snap_precision_bits(bits)) {
    case 64: return f.template operator()<Real64>();
    case 128: return f.template operator()<Real128>();
    case 256: return f.template operator()<Real256>();
    case 512: return f.template operator()<Real512>();
    default: return f.template operator()<Real1024>();
  }
}

template <class R>
std::string to_decimal_string(const R& x) {
  return x.str(std::numeric_limits<R>::max_digits10, std::ios_base::scientific);
}

}  // namespace fatoulab
