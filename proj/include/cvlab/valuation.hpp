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

#ifndef CVLAB_VALUATION_HPP
#define CVLAB_VALUATION_HPP

#include <memory>
#include <variant>
#include <vector>

#include "cvlab/epi_calculus.hpp"
#include "cvlab/hessian_measure.hpp"

namespace cvlab {

template <class S>
class Valuation;

template <class S>
using ValuationPtr = std::shared_ptr<const Valuation<S>>;

// Z(f) = int phi(x)[y, f(x)] dTheta_0(f; (x, y))
template <class S>
struct TopDegreeKernel {
  PiecewisePolyDensity<S> density;
  Polyhedron<S> region;  // hull of the density cells, inside int O
};

// Z(f) = sum over cells |grad|^2 vol(cell n B)
template <class S>
struct DirichletKernel {
  Polyhedron<S> b;
};

// Z~(f) = Z(f^*) on the dual cone
template <class S>
struct DualizedKernel {
  ValuationPtr<S> inner;
};

// Z~(f) = Z(h_{K_{f,A,eps}}(., -1))
template <class S>
struct ExtendedKernel {
  ValuationPtr<S> inner;
  Polyhedron<S> a;
  S eps;
};

// Z_k(f) = sum_j c_kj Z(t_j f), the k-homogeneous component
template <class S>
struct ComponentKernel {
  ValuationPtr<S> inner;
  int k = 0;
  std::vector<S> nodes;
  std::vector<S> coeffs;
};

// Deliberately not a valuation: max of point evaluations. Negative control.
template <class S>
struct BrokenMaxKernel {
  std::vector<VecX<S>> probes;
};

template <class S>
using ValuationKernel =
    std::variant<TopDegreeKernel<S>, DirichletKernel<S>, DualizedKernel<S>,
                 ExtendedKernel<S>, ComponentKernel<S>, BrokenMaxKernel<S>>;

template <class S>
class Valuation {
 public:
  Eigen::Index n = 0;
  int d = 0;  // polynomial degree bound w.r.t. Aff(n)
  int m = 1;  // output dimension
  ConeSpec<S> cone;
  std::optional<int> homogeneity;
  ValuationKernel<S> kernel;

  VecX<S> evaluate(const PolyConvexFunction<S>& f) const {
    return std::visit([&](const auto& k) { return eval_kernel(k, f); },
                      kernel);
  }

  const char* kind() const {
    if (std::holds_alternative<TopDegreeKernel<S>>(kernel)) return "top_degree";
    if (std::holds_alternative<DirichletKernel<S>>(kernel)) return "dirichlet";
    if (std::holds_alternative<DualizedKernel<S>>(kernel)) return "dualized";
    if (std::holds_alternative<ExtendedKernel<S>>(kernel)) return "extended";
    if (std::holds_alternative<ComponentKernel<S>>(kernel)) return "component";
    return "broken_max";
  }

 private:
  void require_member(const PolyConvexFunction<S>& f) const {
    const auto r = cone_membership(f, cone);
    if (!r.member)
      throw precondition_error(std::string("cone violation: ") + r.reason);
  }

  VecX<S> scalar_result(const S& v) const {
    VecX<S> out(1);
    out(0) = v;
    return out;
  }

  VecX<S> eval_kernel(const TopDegreeKernel<S>& k,
                      const PolyConvexFunction<S>& f) const {
    require_member(f);
    return scalar_result(integrate_against_theta0(f, k.density, k.region));
  }

  VecX<S> eval_kernel(const DirichletKernel<S>& k,
                      const PolyConvexFunction<S>& f) const {
    require_member(f);
    S total = scalar_traits<S>::from_long(0);
    for (const auto& cell : cells(f)) {
      const auto part = intersect(cell.region, k.b);
      if (part.is_empty() ||
          part.affine_dim() < static_cast<int>(f.n()))
        continue;
      total += cell.form.y.squaredNorm() * volume(part);
    }
    return scalar_result(total);
  }

  VecX<S> eval_kernel(const DualizedKernel<S>& k,
                      const PolyConvexFunction<S>& f) const {
    // A doubly dualized valuation lives on the primal cone again; its inner
    // evaluation applies the right check to conjugate(f).
    if (!std::holds_alternative<DualizedKernel<S>>(k.inner->kernel)) {
      const auto membership = dual_cone_membership(f, k.inner->cone);
      if (!membership.member)
        throw precondition_error(std::string("outside dual cone: ") +
                                 membership.reason);
    }
    return k.inner->evaluate(conjugate(f));
  }

  VecX<S> eval_kernel(const ExtendedKernel<S>& k,
                      const PolyConvexFunction<S>& f) const {
    if (!f.domain_is_all() &&
        !f.domain()->interior_contains_polyhedron(k.a))
      throw precondition_error("outside maximal cone Gamma_Z");
    const auto body = replace_by_body(f, k.a, k.eps);
    return k.inner->evaluate(support_lift(body));
  }

  VecX<S> eval_kernel(const ComponentKernel<S>& k,
                      const PolyConvexFunction<S>& f) const {
    VecX<S> total = VecX<S>::Zero(m);
    for (size_t j = 0; j < k.nodes.size(); ++j)
      total += k.coeffs[j] * k.inner->evaluate(scale(f, k.nodes[j]));
    return total;
  }

  VecX<S> eval_kernel(const BrokenMaxKernel<S>& k,
                      const PolyConvexFunction<S>& f) const {
    require_member(f);
    S best = *f.eval(k.probes[0]);
    for (const auto& p : k.probes) {
      const S v = *f.eval(p);
      if (best < v) best = v;
    }
    return scalar_result(best);
  }
};

template <class S>
Valuation<S> make_top_degree(PiecewisePolyDensity<S> phi, ConeSpec<S> cone) {
  if (phi.n() != cone.n) throw precondition_error("dimension mismatch");
  for (const auto& c : phi.density_cells())
    if (!cone.O.interior_contains_polyhedron(c.cell))
      throw precondition_error("density support escapes int O");
  Valuation<S> z;
  z.n = cone.n;
  z.d = phi.tensor_degree();
  z.m = 1;
  if (phi.tensor_homogeneous())
    z.homogeneity = static_cast<int>(cone.n) + z.d;
  z.cone = std::move(cone);
  auto region = phi.support_hull();
  z.kernel = TopDegreeKernel<S>{std::move(phi), std::move(region)};
  return z;
}

template <class S>
Valuation<S> make_dirichlet(Polyhedron<S> b, ConeSpec<S> cone) {
  if (b.dim() != cone.n) throw precondition_error("dimension mismatch");
  if (!cone.O.interior_contains_polyhedron(b))
    throw precondition_error("B escapes int O");
  Valuation<S> z;
  z.n = cone.n;
  z.d = 2;
  z.m = 1;
  z.homogeneity = 2;
  z.cone = std::move(cone);
  z.kernel = DirichletKernel<S>{std::move(b)};
  return z;
}

template <class S>
Valuation<S> make_broken_max(std::vector<VecX<S>> probes, ConeSpec<S> cone) {
  if (probes.empty()) throw precondition_error("need at least one probe");
  for (const auto& p : probes)
    if (!cone.O.contains_in_interior(p))
      throw precondition_error("probe escapes int O");
  Valuation<S> z;
  z.n = cone.n;
  z.d = 1;
  z.m = 1;
  z.cone = std::move(cone);
  z.kernel = BrokenMaxKernel<S>{std::move(probes)};
  return z;
}

// Z~(f) = Z(f^*). The carried cone is the primal one; membership is tested
// against the derived epigraph cones.
template <class S>
Valuation<S> dualize_valuation(const Valuation<S>& z) {
  Valuation<S> out;
  out.n = z.n;
  out.d = z.d;
  out.m = z.m;
  out.cone = z.cone;
  out.homogeneity = z.homogeneity;  // epi-homogeneity on the dual side
  out.kernel = DualizedKernel<S>{std::make_shared<Valuation<S>>(z)};
  return out;
}

// The unique valuation agreeing with Z on lifts of bodies: evaluate on the
// truncated-epigraph body whose lift agrees with f near A. A must contain a
// certified superset of supp Z and sit inside int O of the target cone with
// an eps margin.
template <class S>
Valuation<S> extend_valuation(const Valuation<S>& z, Polyhedron<S> a,
                              ConeSpec<S> cone_target, const S& eps) {
  if (!z.cone.A_is_all())
    throw precondition_error(
        "extension needs Z defined on full-domain inputs (A = R^n)");
  if (a.dim() != cone_target.n) throw precondition_error("dimension mismatch");
  const auto padded =
      minkowski_sum(a, Polyhedron<S>::box(a.dim(), -eps, eps));
  if (!cone_target.O.interior_contains_polyhedron(padded))
    throw precondition_error("A + eps box escapes int O of the target cone");
  Valuation<S> out;
  out.n = z.n;
  out.d = z.d;
  out.m = z.m;
  out.cone = std::move(cone_target);
  out.homogeneity = z.homogeneity;
  out.kernel =
      ExtendedKernel<S>{std::make_shared<Valuation<S>>(z), std::move(a), eps};
  return out;
}

template <class S>
std::vector<S> default_dilation_nodes(int count) {
  std::vector<S> nodes;
  for (int j = 0; j < count; ++j)
    nodes.push_back(scalar_traits<S>::from_long(j + 1));
  return nodes;
}

// Inverse Vandermonde rows: component k of Z from evaluations at dilates.
template <class S>
MatX<S> inverse_vandermonde(const std::vector<S>& nodes) {
  const Eigen::Index nn = static_cast<Eigen::Index>(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw precondition_error("duplicate nodes");
  MatX<S> v(nn, nn);
  for (Eigen::Index j = 0; j < nn; ++j) {
    S p = scalar_traits<S>::from_long(1);
    for (Eigen::Index k = 0; k < nn; ++k) {
      v(j, k) = p;
      p *= nodes[static_cast<size_t>(j)];
    }
  }
  Eigen::FullPivLU<MatX<S>> lu(v);
  return lu.inverse();
}

// The k-homogeneous component of Z as an evaluatable valuation.
template <class S>
Valuation<S> homogeneous_component(const Valuation<S>& z, int k,
                                   std::vector<S> nodes = {}) {
  const int slots = static_cast<int>(z.n) + z.d + 2;
  if (nodes.empty()) nodes = default_dilation_nodes<S>(slots);
  if (static_cast<int>(nodes.size()) != slots)
    throw precondition_error("need n + d + 2 dilation nodes");
  if (k < 0 || k >= slots) throw precondition_error("component out of range");
  const MatX<S> inv = inverse_vandermonde(nodes);
  std::vector<S> coeffs;
  for (Eigen::Index j = 0; j < inv.cols(); ++j) coeffs.push_back(inv(k, j));
  Valuation<S> out;
  out.n = z.n;
  out.d = z.d;
  out.m = z.m;
  out.cone = z.cone;
  out.homogeneity = k;
  out.kernel = ComponentKernel<S>{std::make_shared<Valuation<S>>(z), k,
                                  std::move(nodes), std::move(coeffs)};
  return out;
}

}  // namespace cvlab

#endif  // CVLAB_VALUATION_HPP
