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

#ifndef CVLAB_HESSIAN_MEASURE_HPP
#define CVLAB_HESSIAN_MEASURE_HPP

#include <map>
#include <utility>
#include <vector>

#include "cvlab/convex_function.hpp"
#include "cvlab/integration.hpp"

namespace cvlab {

// conv{gradients of active pieces} + normal cone of the domain at x.
template <class S>
Polyhedron<S> subdifferential(const PolyConvexFunction<S>& f, const VecX<S>& x) {
  if (!f.eval(x)) throw precondition_error("outside domain");
  std::vector<VecX<S>> pts;
  for (size_t i : f.active_pieces(x)) pts.push_back(f.pieces()[i].y);
  std::vector<VecX<S>> rays;
  if (!f.domain_is_all()) {
    for (const auto& row : f.domain()->halfspaces().rows())
      if (sgn(S(row.a.dot(x) - row.b)) == 0) rays.push_back(row.a);
  }
  return Polyhedron<S>::from_generators(f.n(), pts, rays);
}

// The order-0 Hessian measure of a PL convex function over a region in the
// interior of its domain: one atom (x, subdifferential polytope, f(x)) per
// cell-complex vertex whose subdifferential is full-dimensional. The fiber
// measure on {x} x S is Lebesgue.
template <class S>
struct Theta0Atom {
  VecX<S> x;
  Polyhedron<S> s;
  S fx;
};

template <class S>
struct Theta0Atoms {
  Eigen::Index n = 0;
  std::vector<Theta0Atom<S>> atoms;

  S total_mass() const {
    S m = scalar_traits<S>::from_long(0);
    for (const auto& a : atoms) m += volume(a.s);
    return m;
  }
};

template <class S>
Theta0Atoms<S> theta0(const PolyConvexFunction<S>& f,
                      const Polyhedron<S>& region) {
  if (region.dim() != f.n()) throw precondition_error("dimension mismatch");
  if (!region.is_bounded())
    throw precondition_error("region must be a polytope");
  if (!f.domain_is_all() &&
      !f.domain()->interior_contains_polyhedron(region))
    throw precondition_error("region escaping the domain interior");

  std::vector<VecX<S>> candidates;
  for (size_t i = 0; i < f.pieces().size(); ++i) {
    const auto r = f.piece_region(i);
    for (const auto& v : r.vertices()) candidates.push_back(v);
  }
  detail::sort_dedupe(candidates);

  Theta0Atoms<S> out;
  out.n = f.n();
  for (const auto& x : candidates) {
    if (!region.contains(x)) continue;
    if (!f.domain_is_all() && !f.domain()->contains_in_interior(x)) continue;
    std::vector<VecX<S>> grads;
    for (size_t i : f.active_pieces(x)) grads.push_back(f.pieces()[i].y);
    auto s = Polyhedron<S>::from_generators(f.n(), grads, {});
    if (s.affine_dim() != static_cast<int>(f.n())) continue;
    out.atoms.push_back(Theta0Atom<S>{x, std::move(s), *f.eval(x)});
  }
  return out;
}

// phi in C_c(R^n, Sym^d(R^n x R)), discretized: polytope cells carrying
// polynomials in x whose coefficients are polynomials in (y, s). Continuity
// across shared cell facets is enforced on facet vertices.
template <class S>
struct DensityTerm {
  std::vector<int> xexp;  // length n
  std::vector<int> yexp;  // length n
  int sexp = 0;
  S coef;
};

template <class S>
struct DensityCell {
  Polyhedron<S> cell;
  std::vector<DensityTerm<S>> terms;
};

template <class S>
class PiecewisePolyDensity {
 public:
  PiecewisePolyDensity() = default;
  PiecewisePolyDensity(Eigen::Index n, std::vector<DensityCell<S>> cells)
      : n_(n), cells_(std::move(cells)) {
    validate();
  }

  Eigen::Index n() const { return n_; }
  const std::vector<DensityCell<S>>& density_cells() const { return cells_; }

  int tensor_degree() const {
    int d = 0;
    for (const auto& c : cells_)
      for (const auto& t : c.terms) d = std::max(d, ys_degree(t));
    return d;
  }
  bool tensor_homogeneous() const {
    const int d = tensor_degree();
    for (const auto& c : cells_)
      for (const auto& t : c.terms)
        if (ys_degree(t) != d) return false;
    return true;
  }

  Polyhedron<S> support_hull() const {
    std::vector<VecX<S>> pts;
    for (const auto& c : cells_)
      for (const auto& v : c.cell.vertices()) pts.push_back(v);
    return convex_hull(pts);
  }

  // Coefficient polynomial in (y, s) at the point x, keyed by (yexp, sexp).
  std::map<std::pair<std::vector<int>, int>, S> coefficients_at(
      const VecX<S>& x) const {
    std::map<std::pair<std::vector<int>, int>, S> out;
    for (const auto& c : cells_) {
      if (!c.cell.contains(x)) continue;
      for (const auto& t : c.terms) {
        S xval = t.coef;
        for (Eigen::Index i = 0; i < n_; ++i)
          xval *= pow_int(x(i), t.xexp[static_cast<size_t>(i)]);
        auto key = std::make_pair(t.yexp, t.sexp);
        auto it = out.find(key);
        if (it == out.end())
          out.emplace(std::move(key), xval);
        else
          it->second += xval;
      }
      return out;
    }
    return out;  // outside the support: zero
  }

 private:
  static int ys_degree(const DensityTerm<S>& t) {
    int d = t.sexp;
    for (int e : t.yexp) d += e;
    return d;
  }

  void validate() const {
    for (const auto& c : cells_) {
      if (c.cell.dim() != n_) throw input_error("density cell dimension");
      if (!c.cell.is_bounded())
        throw input_error("density support must be compact");
      for (const auto& t : c.terms)
        if (t.xexp.size() != static_cast<size_t>(n_) ||
            t.yexp.size() != static_cast<size_t>(n_) || t.sexp < 0)
          throw input_error("density term exponents");
    }
    // Continuity across shared facets, checked on facet vertices (exact for
    // the affine x-dependence used here).
    for (size_t i = 0; i < cells_.size(); ++i)
      for (size_t j = i + 1; j < cells_.size(); ++j) {
        const auto shared = intersect(cells_[i].cell, cells_[j].cell);
        if (shared.is_empty()) continue;
        if (shared.affine_dim() != static_cast<int>(n_) - 1) continue;
        for (const auto& v : shared.vertices()) {
          if (!(cell_coefficients(cells_[i], v) ==
                cell_coefficients(cells_[j], v)))
            throw input_error("density discontinuous across cell facet");
        }
      }
  }

  static std::map<std::pair<std::vector<int>, int>, S> cell_coefficients(
      const DensityCell<S>& c, const VecX<S>& x) {
    std::map<std::pair<std::vector<int>, int>, S> out;
    for (const auto& t : c.terms) {
      S xval = t.coef;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        xval *= pow_int(x(i), t.xexp[static_cast<size_t>(i)]);
      if (sgn(xval) == 0) continue;
      auto key = std::make_pair(t.yexp, t.sexp);
      auto it = out.find(key);
      if (it == out.end())
        out.emplace(std::move(key), xval);
      else
        it->second += xval;
    }
    for (auto it = out.begin(); it != out.end();) {
      if (sgn(it->second) == 0)
        it = out.erase(it);
      else
        ++it;
    }
    return out;
  }

  Eigen::Index n_ = 0;
  std::vector<DensityCell<S>> cells_;
};

// sum over atoms of sum over terms  coef(x) * f(x)^sexp * int_S y^yexp dy.
template <class S>
S integrate_against_theta0(const PolyConvexFunction<S>& f,
                           const PiecewisePolyDensity<S>& phi,
                           const Polyhedron<S>& region) {
  for (const auto& c : phi.density_cells())
    if (!region.contains_polyhedron(c.cell))
      throw precondition_error("density support escapes region");
  const auto atoms = theta0(f, region);
  S total = scalar_traits<S>::from_long(0);
  for (const auto& atom : atoms.atoms) {
    const auto coeffs = phi.coefficients_at(atom.x);
    for (const auto& [key, coef] : coeffs) {
      const auto& [yexp, sexp] = key;
      total += coef * pow_int(atom.fx, sexp) * integrate_monomial(atom.s, yexp);
    }
  }
  return total;
}

// DC split of the hinge bump b(x) = max(0, 1 - |x - x0|_1 / delta):
// b = g - h with g = max(c, 1), h = c, c(x) = |x - x0|_1 / delta.
template <class S>
std::pair<PolyConvexFunction<S>, PolyConvexFunction<S>> dc_decompose_catalog(
    Eigen::Index n, const VecX<S>& x0, const S& delta) {
  if (x0.size() != n) throw precondition_error("dimension mismatch");
  if (sgn(delta) <= 0) throw precondition_error("delta must be positive");
  std::vector<AffineForm<S>> cone_pieces;
  for (long mask = 0; mask < (1L << n); ++mask) {
    AffineForm<S> p;
    p.y = VecX<S>(n);
    for (Eigen::Index i = 0; i < n; ++i)
      p.y(i) = ((mask >> i) & 1) ? scalar_traits<S>::from_long(1) / delta
                                 : scalar_traits<S>::from_long(-1) / delta;
    p.c = -p.y.dot(x0);
    cone_pieces.push_back(p);
  }
  auto h = PolyConvexFunction<S>::make(n, cone_pieces, std::nullopt);
  AffineForm<S> one;
  one.y = VecX<S>::Zero(n);
  one.c = scalar_traits<S>::from_long(1);
  cone_pieces.push_back(one);
  auto g = PolyConvexFunction<S>::make(n, std::move(cone_pieces), std::nullopt);
  return {std::move(g), std::move(h)};
}

// Closed support box of the catalog bump at (x0, delta).
template <class S>
Polyhedron<S> bump_support_box(const VecX<S>& x0, const S& delta) {
  return Polyhedron<S>::box(x0.size(), -delta, delta).translated(x0);
}

}  // namespace cvlab

#endif  // CVLAB_HESSIAN_MEASURE_HPP
