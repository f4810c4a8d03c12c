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

#ifndef CVLAB_VALUATION_ANALYSIS_HPP
#define CVLAB_VALUATION_ANALYSIS_HPP

#include <functional>
#include <utility>

#include "cvlab/generators.hpp"
#include "cvlab/valuation.hpp"

namespace cvlab {

template <class S>
struct FittedPoly {
  int nvars = 0;
  int degree = 0;             // fitted per-axis degree (= declared bound)
  SparsePoly<S> coeffs;       // exponent vector -> nonzero coefficient
  bool total_degree_ok = true;

  S eval(const VecX<S>& x) const {
    S total = scalar_traits<S>::from_long(0);
    for (const auto& [e, c] : coeffs) {
      S term = c;
      for (size_t i = 0; i < e.size(); ++i) term *= pow_int(x(static_cast<Eigen::Index>(i)), e[i]);
      total += term;
    }
    return total;
  }

  SparsePoly<S> part_of_total_degree(int k) const {
    SparsePoly<S> out;
    for (const auto& [e, c] : coeffs) {
      int t = 0;
      for (int ei : e) t += ei;
      if (t == k) out.emplace(e, c);
    }
    return out;
  }
};

template <class S>
std::vector<S> zero_based_nodes(int count) {
  std::vector<S> nodes;
  for (int j = 0; j < count; ++j) nodes.push_back(scalar_traits<S>::from_long(j));
  return nodes;
}

// Exact interpolation on the tensor grid {0, ..., d}^nvars by successive
// one-dimensional inverse-Vandermonde sweeps. The fit is declared clean when
// no recovered term exceeds total degree d.
template <class S>
FittedPoly<S> fit_polynomial(int nvars, int degree,
                             const std::function<S(const VecX<S>&)>& evalfn) {
  const int base = degree + 1;
  size_t total = 1;
  for (int i = 0; i < nvars; ++i) total *= static_cast<size_t>(base);

  std::vector<S> values(total);
  std::vector<int> digits(static_cast<size_t>(nvars), 0);
  for (size_t idx = 0; idx < total; ++idx) {
    VecX<S> x(nvars);
    for (int i = 0; i < nvars; ++i) x(i) = scalar_traits<S>::from_long(digits[static_cast<size_t>(i)]);
    values[idx] = evalfn(x);
    for (int i = 0; i < nvars; ++i) {
      if (++digits[static_cast<size_t>(i)] < base) break;
      digits[static_cast<size_t>(i)] = 0;
    }
  }

  const MatX<S> inv = inverse_vandermonde(zero_based_nodes<S>(base));
  size_t stride = 1;
  for (int axis = 0; axis < nvars; ++axis) {
    for (size_t start = 0; start < total; ++start) {
      if ((start / stride) % static_cast<size_t>(base) != 0) continue;
      VecX<S> line(base);
      for (int t = 0; t < base; ++t) line(t) = values[start + static_cast<size_t>(t) * stride];
      VecX<S> coef = inv * line;
      for (int t = 0; t < base; ++t) values[start + static_cast<size_t>(t) * stride] = coef(t);
    }
    stride *= static_cast<size_t>(base);
  }

  FittedPoly<S> out;
  out.nvars = nvars;
  out.degree = degree;
  for (size_t idx = 0; idx < total; ++idx) {
    if (sgn(values[idx]) == 0) continue;
    std::vector<int> e(static_cast<size_t>(nvars));
    size_t rem = idx;
    int tdeg = 0;
    for (int i = 0; i < nvars; ++i) {
      e[static_cast<size_t>(i)] = static_cast<int>(rem % static_cast<size_t>(base));
      tdeg += e[static_cast<size_t>(i)];
      rem /= static_cast<size_t>(base);
    }
    if (tdeg > degree) out.total_degree_ok = false;
    out.coeffs.emplace(std::move(e), values[idx]);
  }
  return out;
}

// Z(f + l) as an exact polynomial in l = (y, c); the remainder flags are a
// falsification report, not an error.
template <class S>
struct AffinePolynomial {
  FittedPoly<S> poly;        // variables (y_1, ..., y_n, c)
  bool heldout_exact = true;
};

template <class S>
AffinePolynomial<S> affine_poly_fit(const Valuation<S>& z,
                                    const PolyConvexFunction<S>& f) {
  if (z.m != 1) throw precondition_error("fit supports scalar valuations");
  const Eigen::Index n = z.n;
  auto evalfn = [&](const VecX<S>& w) {
    AffineForm<S> l;
    l.y = w.head(n);
    l.c = w(n);
    return z.evaluate(add(f, affine_as_function(n, l)))(0);
  };
  AffinePolynomial<S> out;
  out.poly = fit_polynomial<S>(static_cast<int>(n) + 1, z.d, evalfn);
  for (int probe = 0; probe < 3 && out.heldout_exact; ++probe) {
    VecX<S> w(n + 1);
    for (Eigen::Index i = 0; i < n + 1; ++i)
      w(i) = scalar_traits<S>::from_long(z.d + 1 + probe * (i + 1));
    if (!(out.poly.eval(w) == evalfn(w))) out.heldout_exact = false;
  }
  return out;
}

template <class S>
struct DecompositionResult {
  std::vector<std::pair<int, VecX<S>>> components;  // degree -> value
  std::vector<S> nodes;
  bool exact = scalar_traits<S>::is_exact;
  bool sum_matches = false;
  bool top_slot_zero = false;
};

// Z = Z_0 + ... + Z_{n+1+d} by evaluating at dilates and inverting the
// Vandermonde system exactly; the slot k = n+1+d must come out zero.
template <class S>
DecompositionResult<S> decompose_homogeneous(const Valuation<S>& z,
                                             const PolyConvexFunction<S>& f,
                                             std::vector<S> nodes = {}) {
  const int slots = static_cast<int>(z.n) + z.d + 2;
  if (nodes.empty()) nodes = default_dilation_nodes<S>(slots);
  if (static_cast<int>(nodes.size()) != slots)
    throw precondition_error("need n + d + 2 dilation nodes");
  const MatX<S> inv = inverse_vandermonde(nodes);

  std::vector<VecX<S>> vals;
  for (const auto& t : nodes) vals.push_back(z.evaluate(scale(f, t)));

  DecompositionResult<S> out;
  out.nodes = nodes;
  VecX<S> sum = VecX<S>::Zero(z.m);
  for (int k = 0; k < slots; ++k) {
    VecX<S> comp = VecX<S>::Zero(z.m);
    for (int j = 0; j < slots; ++j) comp += inv(k, j) * vals[static_cast<size_t>(j)];
    sum += comp;
    out.components.emplace_back(k, std::move(comp));
  }
  const VecX<S> direct = z.evaluate(f);
  out.sum_matches = vec_eq(sum, direct);
  out.top_slot_zero = true;
  for (Eigen::Index i = 0; i < z.m; ++i)
    if (sgn(out.components.back().second(i)) != 0) out.top_slot_zero = false;
  return out;
}

// Polarization by inclusion-exclusion over nonempty subsets, anchored at
// I_A (whose value vanishes for k >= 1).
template <class S>
VecX<S> polarize(const Valuation<S>& z,
                 const std::vector<PolyConvexFunction<S>>& fs) {
  if (!z.homogeneity || *z.homogeneity < 1)
    throw precondition_error("polarize needs a homogeneous valuation, k >= 1");
  const int k = *z.homogeneity;
  if (static_cast<int>(fs.size()) != k)
    throw precondition_error("polarize needs exactly k arguments");
  VecX<S> total = VecX<S>::Zero(z.m);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::optional<PolyConvexFunction<S>> sum;
    int bits = 0;
    for (int i = 0; i < k; ++i) {
      if (!((mask >> i) & 1u)) continue;
      ++bits;
      sum = sum ? add(*sum, fs[static_cast<size_t>(i)]) : fs[static_cast<size_t>(i)];
    }
    const VecX<S> v = z.evaluate(*sum);
    if (((k - bits) % 2) == 0)
      total += v;
    else
      total -= v;
  }
  return total / factorial<S>(k);
}

template <class S>
struct DCPair {
  PolyConvexFunction<S> g;
  PolyConvexFunction<S> h;
};

// Goodey-Weil pairing of a k-homogeneous valuation with k test functions
// given as DC pairs phi_i = g_i - h_i. Alternating sum over which slots
// carry the bump; independent of the decomposition by multi-additivity.
template <class S>
VecX<S> gw_evaluate(const Valuation<S>& z, const std::vector<DCPair<S>>& pairs) {
  if (!z.homogeneity || *z.homogeneity < 1)
    throw precondition_error("gw_evaluate needs a homogeneous valuation, k >= 1");
  const int k = *z.homogeneity;
  if (static_cast<int>(pairs.size()) != k)
    throw precondition_error("gw_evaluate needs exactly k DC pairs");
  std::vector<PolyConvexFunction<S>> with_bump, without_bump;
  for (const auto& pr : pairs) {
    if (!pr.g.domain_is_all() || !pr.h.domain_is_all())
      throw precondition_error("DC parts must have full domain");
    if (z.cone.A_is_all()) {
      with_bump.push_back(pr.g);
      without_bump.push_back(pr.h);
    } else {
      const auto ia = indicator(z.cone.A);
      with_bump.push_back(add(pr.g, ia));
      without_bump.push_back(add(pr.h, ia));
    }
  }
  VecX<S> total = VecX<S>::Zero(z.m);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<PolyConvexFunction<S>> slots;
    int bits = 0;
    for (int i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) {
        slots.push_back(with_bump[static_cast<size_t>(i)]);
        ++bits;
      } else {
        slots.push_back(without_bump[static_cast<size_t>(i)]);
      }
    }
    const VecX<S> v = polarize(z, slots);
    if (((k - bits) % 2) == 0)
      total += v;
    else
      total -= v;
  }
  return total;
}

template <class S>
struct ProbeSpec {
  VecX<S> x0;
  S delta;
};

template <class S>
struct ProbeCertificates {
  ProbeSpec<S> probe;
  std::vector<std::pair<int, VecX<S>>> certificates;  // degree -> pairing
  bool flagged = false;
};

template <class S>
struct SupportEstimate {
  std::vector<ProbeCertificates<S>> probes;
  // Certified-positive cells only; probing at resolution delta can miss
  // cancellation, so an empty report is evidence, not proof.
  std::string label = "lower bound on support at resolution delta";
};

template <class S>
SupportEstimate<S> support_estimate(const Valuation<S>& z,
                                    const std::vector<ProbeSpec<S>>& probes) {
  SupportEstimate<S> out;
  for (const auto& probe : probes) {
    if (!z.cone.O.interior_contains_polyhedron(
            bump_support_box(probe.x0, probe.delta)))
      throw precondition_error("probe escaping int O");
    ProbeCertificates<S> cert;
    cert.probe = probe;
    const auto dc = dc_decompose_catalog<S>(z.n, probe.x0, probe.delta);
    for (int k = 1; k <= static_cast<int>(z.n) + z.d; ++k) {
      const auto comp = homogeneous_component(z, k);
      const std::vector<DCPair<S>> pairs(static_cast<size_t>(k),
                                         DCPair<S>{dc.first, dc.second});
      VecX<S> v = gw_evaluate(comp, pairs);
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (sgn(v(i)) != 0) cert.flagged = true;
      cert.certificates.emplace_back(k, std::move(v));
    }
    out.probes.push_back(std::move(cert));
  }
  return out;
}

template <class S>
struct IdentityViolation {
  Polyhedron<S> body;
  VecX<S> direction;
  S offset;
  VecX<S> lhs, rhs;
};

template <class S>
struct IdentityReport {
  int trials = 0;
  std::vector<IdentityViolation<S>> violations;
};

// Z(f v h) + Z(f ^ h) = Z(f) + Z(h) on hyperplane-cut body pairs: the cut
// guarantees the minimum is convex, so the quadruple stays in the cone.
// Dualized valuations are probed with the conjugated quadruple.
template <class S>
IdentityReport<S> verify_valuation_identity(const Valuation<S>& z, int trials,
                                            uint64_t seed) {
  Rng rng(seed);
  IdentityReport<S> report;
  report.trials = trials;
  const bool dual = std::holds_alternative<DualizedKernel<S>>(z.kernel);
  const ConeSpec<S>& lift_cone =
      dual ? std::get<DualizedKernel<S>>(z.kernel).inner->cone : z.cone;
  for (int t = 0; t < trials; ++t) {
    const auto cut =
        random_body_cut<S>(rng, z.n + 1, 2 * static_cast<int>(z.n) + 3);
    auto f = lift_HA(cut.below, lift_cone);
    auto h = lift_HA(cut.above, lift_cone);
    if (dual) {
      f = conjugate(f);
      h = conjugate(h);
    }
    const auto vmax = pointwise_max(f, h);
    const auto vmin = pointwise_min_checked(f, h);
    if (!vmin) throw std::logic_error("cut pair produced a non-convex minimum");
    const VecX<S> lhs = z.evaluate(vmax) + z.evaluate(*vmin);
    const VecX<S> rhs = z.evaluate(f) + z.evaluate(h);
    if (!vec_eq(lhs, rhs))
      report.violations.push_back(
          IdentityViolation<S>{cut.body, cut.direction, cut.offset, lhs, rhs});
  }
  return report;
}

// Recovers the degree-d coefficient density of a top-degree valuation at a
// probe point from the translation-invariant top part Y_d of the affine
// polynomial, using a single-atom cone input.
template <class S>
std::map<std::pair<std::vector<int>, int>, S> reconstruct_density_at(
    const Valuation<S>& z, const VecX<S>& x0) {
  if (!z.cone.A_is_all())
    throw precondition_error("reconstruction needs full-domain inputs");
  const Eigen::Index n = z.n;
  const S delta = rational_of<S>(1, 2);
  const auto dc = dc_decompose_catalog<S>(n, x0, delta);
  const auto& cone_fn = dc.second;  // |x - x0|_1 / delta, single atom at x0
  const S atom_volume = pow_int(rational_of<S>(2) / delta, static_cast<int>(n));

  const auto fit = affine_poly_fit(z, cone_fn);
  const auto top = fit.poly.part_of_total_degree(z.d);

  // Substitute c = s - <x0, y>: variables become (y_1, ..., y_n, s).
  SparsePoly<S> subst;
  {
    SparsePoly<S> linear;
    std::vector<int> se(static_cast<size_t>(n) + 1, 0);
    se[static_cast<size_t>(n)] = 1;
    linear[se] = scalar_traits<S>::from_long(1);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sgn(x0(i)) == 0) continue;
      std::vector<int> ye(static_cast<size_t>(n) + 1, 0);
      ye[static_cast<size_t>(i)] = 1;
      linear[ye] = -x0(i);
    }
    for (const auto& [e, c] : top) {
      SparsePoly<S> term;
      std::vector<int> ye(e.begin(), e.end());
      const int cexp = ye.back();
      ye.back() = 0;
      term[ye] = c;
      term = poly_mul(term, poly_pow(linear, cexp, static_cast<size_t>(n) + 1));
      for (const auto& [e2, c2] : term) {
        auto it = subst.find(e2);
        if (it == subst.end())
          subst.emplace(e2, c2);
        else
          it->second += c2;
      }
    }
  }

  std::map<std::pair<std::vector<int>, int>, S> out;
  for (const auto& [e, c] : subst) {
    if (sgn(c) == 0) continue;
    std::vector<int> yexp(e.begin(), e.end() - 1);
    out[{yexp, e.back()}] = c / atom_volume;
  }
  return out;
}

}  // namespace cvlab

#endif  // CVLAB_VALUATION_ANALYSIS_HPP
