#pragma once

#include <stdexcept>

#include "fatoulab/complex.hpp"
#include "fatoulab/precision.hpp"

namespace fatoulab {

struct ZeroNotInImage : std::runtime_error {
  ZeroNotInImage() : std::runtime_error("0 has no lift under the exponential covering") {}
};

// Holomorphic covering (-4/27) e^{2 pi i w} of the punctured plane.
template <class R>
Complex<R> exp_project_holo(const Complex<R>& w) {
  R two_pi = R(2) * const_pi<R>();
  return (R(-4) / 27) * exp(Complex<R>(-two_pi * w.im, two_pi * w.re));
}

// The projection (-4/27) e^{-2 pi i conj(w)}: the holomorphic covering with
// the plane conjugation s(z) = conj(z) built in. 1-periodic; Im w -> +inf
// corresponds to 0.
template <class R>
Complex<R> exp_project(const Complex<R>& w) {
  return conj(exp_project_holo(w));
}

// Lift through the covering; branches differ by integer translation of Re w.
// conjugate=true inverts exp_project, false inverts exp_project_holo.
template <class R>
Complex<R> exp_lift(const Complex<R>& z, long branch = 0, bool conjugate = true) {
  if (z.re == 0 && z.im == 0) throw ZeroNotInImage();
  R two_pi = R(2) * const_pi<R>();
  Complex<R> l = log((conjugate ? conj(z) : z) * (R(-27) / 4));
  return {l.im / two_pi + R(branch), -l.re / two_pi};
}

}  // namespace fatoulab
