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

#ifndef CVLAB_INTEGRATION_HPP
#define CVLAB_INTEGRATION_HPP

#include <map>
#include <vector>

#include "cvlab/polyhedron.hpp"

namespace cvlab {

// Sparse multivariate polynomial, exponent vector -> coefficient.
template <class S>
using SparsePoly = std::map<std::vector<int>, S>;

template <class S>
SparsePoly<S> poly_mul(const SparsePoly<S>& p, const SparsePoly<S>& q) {
  SparsePoly<S> out;
  for (const auto& [ea, ca] : p)
    for (const auto& [eb, cb] : q) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto it = out.find(e);
      if (it == out.end())
        out.emplace(std::move(e), ca * cb);
      else
        it->second += ca * cb;
    }
  return out;
}

template <class S>
SparsePoly<S> poly_pow(const SparsePoly<S>& p, int e, size_t nvars) {
  SparsePoly<S> out;
  out[std::vector<int>(nvars, 0)] = scalar_traits<S>::from_long(1);
  for (int i = 0; i < e; ++i) out = poly_mul(out, p);
  return out;
}

namespace detail {

template <class S>
std::vector<std::vector<VecX<S>>> triangulate_rec(const Polyhedron<S>& p) {
  const auto& verts = p.vertices();
  const int adim = p.affine_dim();
  if (static_cast<int>(verts.size()) == adim + 1)
    return {verts};  // already a simplex

  // Cone over the facets not containing the lexicographically least vertex.
  const VecX<S>& apex = verts[0];
  std::vector<std::vector<VecX<S>>> out;
  for (const auto& row : p.halfspaces().rows()) {
    if (sgn(S(row.a.dot(apex) - row.b)) == 0) continue;
    std::vector<VecX<S>> fverts;
    for (const auto& v : verts)
      if (sgn(S(row.a.dot(v) - row.b)) == 0) fverts.push_back(v);
    if (fverts.empty()) continue;
    const auto facet = convex_hull(fverts);
    if (facet.affine_dim() != adim - 1) continue;  // an equality row, not a facet
    for (auto sub : triangulate_rec(facet)) {
      sub.push_back(apex);
      out.push_back(std::move(sub));
    }
  }
  return out;
}

}  // namespace detail

// Decomposes a bounded polytope into simplices with disjoint interiors.
// Deterministic: canonical facet order, lexicographically least apex.
template <class S>
std::vector<std::vector<VecX<S>>> triangulate(const Polyhedron<S>& p) {
  if (!p.is_bounded()) throw precondition_error("not a polytope");
  if (p.is_empty() || p.affine_dim() < static_cast<int>(p.dim())) return {};
  return detail::triangulate_rec(p);
}

// Exact integral of x^alpha over a full-dimensional simplex, via the
// barycentric substitution and the Dirichlet formula
//   int_T lambda^beta = (prod beta_i!) / (d + |beta|)!.
template <class S>
S integrate_monomial_simplex(const std::vector<VecX<S>>& simplex,
                             const std::vector<int>& alpha) {
  const Eigen::Index d = simplex[0].size();
  MatX<S> m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m.col(i) = simplex[static_cast<size_t>(i) + 1] - simplex[0];
  S adet = det_exact(m);
  if (sgn(adet) < 0) adet = -adet;
  if (sgn(adet) == 0) return scalar_traits<S>::from_long(0);

  SparsePoly<S> prod;
  prod[std::vector<int>(static_cast<size_t>(d), 0)] = scalar_traits<S>::from_long(1);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (alpha[static_cast<size_t>(j)] == 0) continue;
    SparsePoly<S> lin;
    lin[std::vector<int>(static_cast<size_t>(d), 0)] = simplex[0](j);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (sgn(m(j, i)) == 0) continue;
      std::vector<int> e(static_cast<size_t>(d), 0);
      e[static_cast<size_t>(i)] = 1;
      lin[e] = m(j, i);
    }
    prod = poly_mul(prod, poly_pow(lin, alpha[static_cast<size_t>(j)], static_cast<size_t>(d)));
  }

  S total = scalar_traits<S>::from_long(0);
  for (const auto& [beta, coef] : prod) {
    int bsum = 0;
    S num = scalar_traits<S>::from_long(1);
    for (int bi : beta) {
      bsum += bi;
      num *= factorial<S>(bi);
    }
    total += coef * num / factorial<S>(static_cast<int>(d) + bsum);
  }
  return adet * total;
}

template <class S>
S integrate_monomial(const Polyhedron<S>& p, const std::vector<int>& alpha) {
  if (!p.is_bounded()) throw precondition_error("not a polytope");
  if (alpha.size() != static_cast<size_t>(p.dim()))
    throw precondition_error("multi-index length mismatch");
  S total = scalar_traits<S>::from_long(0);
  for (const auto& simplex : triangulate(p))
    total += integrate_monomial_simplex(simplex, alpha);
  return total;
}

template <class S>
S volume(const Polyhedron<S>& p) {
  if (!p.is_bounded()) throw precondition_error("not a polytope");
  return integrate_monomial(p, std::vector<int>(static_cast<size_t>(p.dim()), 0));
}

}  // namespace cvlab

#endif  // CVLAB_INTEGRATION_HPP
