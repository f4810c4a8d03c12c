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

#ifndef CVLAB_EPI_CALCULUS_HPP
#define CVLAB_EPI_CALCULUS_HPP

#include <vector>

#include "cvlab/body_dictionary.hpp"
#include "cvlab/convex_function.hpp"

namespace cvlab {

// Infimal convolution via epi(f [] g) = epi(f) + epi(g).
template <class S>
PolyConvexFunction<S> inf_conv(const PolyConvexFunction<S>& f,
                               const PolyConvexFunction<S>& g) {
  if (f.n() != g.n()) throw precondition_error("dimension mismatch");
  return floor_of_polyhedron(minkowski_sum(epigraph(f), epigraph(g)));
}

// lambda * f scaled epigraph-wise; lambda = 0 yields the recession function.
template <class S>
PolyConvexFunction<S> epi_mult(const PolyConvexFunction<S>& f, const S& lambda) {
  if (sgn(lambda) < 0) throw precondition_error("lambda must be nonnegative");
  if (sgn(lambda) == 0) return recession_function(f);
  std::vector<AffineForm<S>> pieces;
  for (const auto& p : f.pieces()) {
    AffineForm<S> s;
    s.y = p.y;
    s.c = lambda * p.c;
    pieces.push_back(s);
  }
  std::optional<Polyhedron<S>> dom;
  if (!f.domain_is_all()) dom = f.domain()->scaled(lambda);
  return PolyConvexFunction<S>::make(f.n(), std::move(pieces), std::move(dom));
}

namespace detail {

inline double dist_point_hull(const Eigen::VectorXd& x,
                              const std::vector<Eigen::VectorXd>& verts) {
  const int dim = static_cast<int>(x.size());
  double best = std::numeric_limits<double>::infinity();
  const int nv = static_cast<int>(verts.size());
  const int maxk = std::min(nv, dim + 1);
  std::vector<int> idx;
  // Enumerate candidate faces by vertex subsets of size <= dim + 1.
  std::function<void(int, int)> rec = [&](int start, int want) {
    if (want == 0) {
      const int k = static_cast<int>(idx.size());
      const Eigen::VectorXd& v0 = verts[static_cast<size_t>(idx[0])];
      Eigen::MatrixXd a(dim, k - 1);
      for (int i = 1; i < k; ++i) a.col(i - 1) = verts[static_cast<size_t>(idx[i])] - v0;
      Eigen::VectorXd lambda;
      if (k > 1) {
        Eigen::MatrixXd g = a.transpose() * a;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
        if (lu.rank() < k - 1) return;
        lambda = lu.solve(a.transpose() * (x - v0));
      } else {
        lambda.resize(0);
      }
      double sum = 0;
      for (int i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < -1e-9) return;
        sum += lambda(i);
      }
      if (sum > 1 + 1e-9) return;
      Eigen::VectorXd proj = v0;
      for (int i = 1; i < k; ++i) proj += lambda(i - 1) * (verts[static_cast<size_t>(idx[i])] - v0);
      best = std::min(best, (x - proj).norm());
      return;
    }
    for (int i = start; i <= nv - want; ++i) {
      idx.push_back(i);
      rec(i + 1, want - 1);
      idx.pop_back();
    }
  };
  for (int k = 1; k <= maxk; ++k) rec(0, k);
  return best;
}

}  // namespace detail

// Hausdorff distance between epi(f) and epi(g), both truncated to the box
// |.|_inf <= rho in R^{n+1}. Float-mode smoke metric; exact work never
// depends on it.
template <class S>
double epi_distance(const PolyConvexFunction<S>& f,
                    const PolyConvexFunction<S>& g, const S& rho) {
  if (f.n() != g.n()) throw precondition_error("dimension mismatch");
  if (sgn(rho) <= 0) throw precondition_error("rho must be positive");
  const auto box = Polyhedron<S>::box(f.n() + 1, -rho, rho);
  const auto pf = intersect(epigraph(f), box);
  const auto pg = intersect(epigraph(g), box);
  if (pf.is_empty() || pg.is_empty())
    throw precondition_error("increase rho");
  auto to_dbl = [](const std::vector<VecX<S>>& vs) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& v : vs) {
      Eigen::VectorXd w(v.size());
      for (Eigen::Index i = 0; i < v.size(); ++i)
        w(i) = scalar_traits<S>::to_double(v(i));
      out.push_back(std::move(w));
    }
    return out;
  };
  const auto vf = to_dbl(pf.vertices());
  const auto vg = to_dbl(pg.vertices());
  double h = 0;
  for (const auto& v : vf) h = std::max(h, detail::dist_point_hull(v, vg));
  for (const auto& v : vg) h = std::max(h, detail::dist_point_hull(v, vf));
  return h;
}

// The cones frakA = epi(h_A), frakO = epi(h_O) of the dual description,
// materialized as polyhedra in R^{n+1}.
template <class S>
Polyhedron<S> support_epigraph_polyhedron(const Polyhedron<S>& d) {
  const auto cone = support_epigraph_cone(d);
  std::vector<VecX<S>> origin{VecX<S>::Zero(d.dim() + 1)};
  return Polyhedron<S>::from_generators(d.dim() + 1, origin, cone.rays,
                                        cone.lineality);
}

template <class S>
Polyhedron<S> recession_cone_of_epigraph(const PolyConvexFunction<S>& f) {
  const auto epi = epigraph(f);
  std::vector<VecX<S>> origin{VecX<S>::Zero(f.n() + 1)};
  return Polyhedron<S>::from_generators(f.n() + 1, origin, epi.extreme_rays(),
                                        epi.lines());
}

// Membership in the dual (frakA, frakO)-cone: frakA <= rec(epi f) <= frakO.
template <class S>
MembershipResult<S> dual_cone_membership(const PolyConvexFunction<S>& f,
                                         const ConeSpec<S>& primal) {
  if (f.n() != primal.n) return {false, "ambient dimension mismatch"};
  const auto rec = recession_cone_of_epigraph(f);
  const auto fraka = support_epigraph_polyhedron(primal.A);
  const auto frako = support_epigraph_polyhedron(primal.O);
  if (!rec.contains_polyhedron(fraka))
    return {false, "epi(h_A) not contained in rec(epi f)"};
  if (!frako.contains_polyhedron(rec))
    return {false, "rec(epi f) not contained in epi(h_O)"};
  return {true, "member"};
}

}  // namespace cvlab

#endif  // CVLAB_EPI_CALCULUS_HPP
