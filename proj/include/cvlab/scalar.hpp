// Copyright 2026 The cvlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVLAB_SCALAR_HPP
#define CVLAB_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvlab {

// Exact rational scalar, the default arithmetic of the whole library.
// All geometry is templated on the scalar; `double` is the opt-in float
// mode used for smoke tests only.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct falsified_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static int sign(const Rational& x) { return x.sign(); }
  static Rational from_long(long v) { return Rational(v); }
  static double to_double(const Rational& x) {
    return x.template convert_to<double>();
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  // Desk-scale coordinates; absolute tolerance is adequate for smoke use.
  static constexpr double eps = 1e-9;
  static int sign(double x) { return x > eps ? 1 : (x < -eps ? -1 : 0); }
  static double from_long(long v) { return static_cast<double>(v); }
  static double to_double(double x) { return x; }
};

template <class S>
int sgn(const S& x) {
  return scalar_traits<S>::sign(x);
}

// GMP does not canonicalize rationals assigned from strings, so parsing
// goes through integer division, which always reduces.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  const auto slash = text.find('/');
  try {
    using Int = boost::multiprecision::mpz_int;
    if (slash == std::string::npos) {
      Int p(text);
      return Rational(p);
    }
    Int p(text.substr(0, slash));
    Int q(text.substr(slash + 1));
    if (q == 0) throw input_error("zero denominator: " + text);
    return Rational(p) / Rational(q);
  } catch (const std::exception&) {
    throw input_error("malformed rational literal: " + text);
  }
}

inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <class S>
S rational_of(long p, long q = 1) {
  return scalar_traits<S>::from_long(p) / scalar_traits<S>::from_long(q);
}

template <class S>
S factorial(int k) {
  S r = scalar_traits<S>::from_long(1);
  for (int i = 2; i <= k; ++i) r *= scalar_traits<S>::from_long(i);
  return r;
}

template <class S>
S pow_int(const S& base, int e) {
  S r = scalar_traits<S>::from_long(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Rational upper bound for sqrt(n), n <= 8. Enlarging a truncation region
// by replacing sqrt(n) with an upper bound never hurts correctness.
template <class S>
S sqrt_upper_bound(int n) {
  static const long num[] = {1, 1, 3, 7, 2, 9, 5, 8, 17};
  static const long den[] = {1, 1, 2, 4, 1, 4, 2, 3, 6};
  if (n < 0 || n > 8) throw precondition_error("sqrt bound out of range");
  return rational_of<S>(num[n], den[n]);
}

template <class S>
VecX<S> vec_of(std::initializer_list<S> xs) {
  VecX<S> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

}  // namespace cvlab

#endif  // CVLAB_SCALAR_HPP
