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

#ifndef CVLAB_CONVEX_FUNCTION_HPP
#define CVLAB_CONVEX_FUNCTION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cvlab/polyhedron.hpp"

namespace cvlab {

// l(x) = <y, x> + c
template <class S>
struct AffineForm {
  VecX<S> y;
  S c;

  S eval(const VecX<S>& x) const { return y.dot(x) + c; }

  VecX<S> packed() const {
    VecX<S> v(y.size() + 1);
    v.head(y.size()) = y;
    v(y.size()) = c;
    return v;
  }
  static AffineForm unpack(const VecX<S>& v) {
    AffineForm f;
    f.y = v.head(v.size() - 1);
    f.c = v(v.size() - 1);
    return f;
  }
  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return vec_eq(a.packed(), b.packed());
  }
};

template <class S>
struct EpiPoint {
  VecX<S> x;
  S t;
};

template <class S>
class PolyConvexFunction;

template <class S>
PolyConvexFunction<S> affine_as_function(Eigen::Index n, const AffineForm<S>& l);

// f(x) = max_i l_i(x) + I_dom(x), canonical: pieces sorted, each active on a
// relatively full-dimensional subset of the domain; std::nullopt domain means
// all of R^n. Evaluation value std::nullopt encodes +infinity.
template <class S>
class PolyConvexFunction {
 public:
  static PolyConvexFunction make(Eigen::Index n,
                                 std::vector<AffineForm<S>> pieces,
                                 std::optional<Polyhedron<S>> domain) {
    if (pieces.empty()) throw precondition_error("improper: no pieces");
    for (const auto& p : pieces)
      if (p.y.size() != n) throw input_error("inconsistent dimensions");
    if (domain) {
      if (domain->dim() != n) throw input_error("inconsistent dimensions");
      if (domain->is_empty()) throw precondition_error("improper: empty domain");
      if (domain->affine_dim() == static_cast<int>(n) &&
          domain->halfspaces().rows().empty())
        domain.reset();  // the whole space
    }
    PolyConvexFunction f;
    f.n_ = n;
    f.pieces_ = std::move(pieces);
    f.domain_ = std::move(domain);
    f.canonicalize();
    return f;
  }

  Eigen::Index n() const { return n_; }
  const std::vector<AffineForm<S>>& pieces() const { return pieces_; }
  bool domain_is_all() const { return !domain_.has_value(); }
  const std::optional<Polyhedron<S>>& domain() const { return domain_; }

  Polyhedron<S> domain_polyhedron() const {
    return domain_ ? *domain_ : Polyhedron<S>::full_space(n_);
  }

  std::optional<S> eval(const VecX<S>& x) const {
    if (x.size() != n_) throw precondition_error("dimension mismatch");
    if (domain_ && !domain_->contains(x)) return std::nullopt;
    S best = pieces_[0].eval(x);
    for (size_t i = 1; i < pieces_.size(); ++i) {
      const S v = pieces_[i].eval(x);
      if (best < v) best = v;
    }
    return best;
  }

  // Indices of pieces attaining the max at x (x must be in the domain).
  std::vector<size_t> active_pieces(const VecX<S>& x) const {
    std::vector<size_t> act;
    const S fx = *eval(x);
    for (size_t i = 0; i < pieces_.size(); ++i)
      if (sgn(S(pieces_[i].eval(x) - fx)) == 0) act.push_back(i);
    return act;
  }

  friend bool operator==(const PolyConvexFunction& f,
                         const PolyConvexFunction& g) {
    if (f.n_ != g.n_ || f.pieces_.size() != g.pieces_.size()) return false;
    for (size_t i = 0; i < f.pieces_.size(); ++i)
      if (!(f.pieces_[i] == g.pieces_[i])) return false;
    if (f.domain_.has_value() != g.domain_.has_value()) return false;
    return !f.domain_ || *f.domain_ == *g.domain_;
  }
  friend bool operator!=(const PolyConvexFunction& f,
                         const PolyConvexFunction& g) {
    return !(f == g);
  }

  // The closed region where piece i is maximal, intersected with the domain.
  Polyhedron<S> piece_region(size_t i) const {
    std::vector<Halfspace<S>> rows;
    if (domain_) rows = domain_->halfspaces().rows();
    for (size_t j = 0; j < pieces_.size(); ++j) {
      if (j == i) continue;
      Halfspace<S> h;
      h.a = pieces_[j].y - pieces_[i].y;
      h.b = pieces_[i].c - pieces_[j].c;
      rows.push_back(h);
    }
    return Polyhedron<S>::from_halfspaces(HalfspaceSystem<S>(n_, rows));
  }

 private:
  void canonicalize() {
    const bool thin =
        domain_ && domain_->affine_dim() < static_cast<int>(n_);
    if (thin) {
      const auto basis = direction_basis(*domain_);
      const VecX<S>& base = domain_->vertices()[0];
      for (auto& p : pieces_) {
        const VecX<S> yp = project_onto_span(p.y, basis);
        p.c += (p.y - yp).dot(base);
        p.y = yp;
      }
    }
    std::vector<VecX<S>> packed;
    for (const auto& p : pieces_) packed.push_back(p.packed());
    detail::sort_dedupe(packed);
    pieces_.clear();
    for (const auto& v : packed) pieces_.push_back(AffineForm<S>::unpack(v));

    if (pieces_.size() > 1) {
      if (!thin)
        prune_by_conjugate_vertices();
      else
        prune_by_regions();
    }

    std::vector<VecX<S>> repacked;
    for (const auto& p : pieces_) repacked.push_back(p.packed());
    detail::sort_dedupe(repacked);
    pieces_.clear();
    for (const auto& v : repacked) pieces_.push_back(AffineForm<S>::unpack(v));
  }

  static std::vector<VecX<S>> direction_basis(const Polyhedron<S>& d) {
    std::vector<VecX<S>> dirs;
    const auto& vs = d.vertices();
    for (size_t i = 1; i < vs.size(); ++i) dirs.push_back(vs[i] - vs[0]);
    for (const auto& r : d.extreme_rays()) dirs.push_back(r);
    for (const auto& l : d.lines()) dirs.push_back(l);
    return row_space_basis(dirs, d.dim());
  }

  // A piece is active on a full-dimensional set iff its lifted point
  // (y, -c) is a vertex of epi(f^*) = conv{(y_i, -c_i)} + R_{>=0} e_t +
  // epi(h_dom). Valid whenever the domain is full-dimensional.
  void prune_by_conjugate_vertices();

  void prune_by_regions() {
    const int ddim = domain_->affine_dim();
    std::vector<AffineForm<S>> kept;
    for (size_t i = 0; i < pieces_.size(); ++i) {
      if (piece_region(i).affine_dim() == ddim) kept.push_back(pieces_[i]);
    }
    pieces_ = std::move(kept);
  }

  Eigen::Index n_ = 0;
  std::vector<AffineForm<S>> pieces_;
  std::optional<Polyhedron<S>> domain_;

  template <class T>
  friend Polyhedron<T> conjugate_epigraph(const PolyConvexFunction<T>& f);
};

// Generators of the cone epi(h_D) in R^{n+1}: pairs (lineality, rays).
template <class S>
ConeGenerators<S> support_epigraph_cone(const Polyhedron<S>& d) {
  const Eigen::Index n = d.dim();
  std::vector<VecX<S>> rows;
  for (const auto& v : d.vertices()) {
    VecX<S> r(n + 1);
    r.head(n) = v;
    r(n) = scalar_traits<S>::from_long(-1);
    rows.push_back(r);
  }
  for (const auto& g : d.recession_generators()) {
    VecX<S> r(n + 1);
    r.head(n) = g;
    r(n) = scalar_traits<S>::from_long(0);
    rows.push_back(r);
  }
  return dual_cone_generators(rows, n + 1);
}

// epi(f^*) as a polyhedron in R^{n+1}; exact.
template <class S>
Polyhedron<S> conjugate_epigraph(const PolyConvexFunction<S>& f) {
  const Eigen::Index n = f.n();
  std::vector<VecX<S>> pts;
  for (const auto& p : f.pieces()) {
    VecX<S> v(n + 1);
    v.head(n) = p.y;
    v(n) = -p.c;
    pts.push_back(v);
  }
  std::vector<VecX<S>> rays, lines;
  VecX<S> et = VecX<S>::Zero(n + 1);
  et(n) = scalar_traits<S>::from_long(1);
  rays.push_back(et);
  const auto cone = support_epigraph_cone(f.domain_polyhedron());
  for (const auto& r : cone.rays) rays.push_back(r);
  for (const auto& l : cone.lineality) lines.push_back(l);
  return Polyhedron<S>::from_generators(n + 1, pts, rays, lines);
}

template <class S>
void PolyConvexFunction<S>::prune_by_conjugate_vertices() {
  const auto q = conjugate_epigraph(*this);
  std::vector<AffineForm<S>> kept;
  for (const auto& p : pieces_) {
    VecX<S> v(n_ + 1);
    v.head(n_) = p.y;
    v(n_) = -p.c;
    for (const auto& w : q.vertices()) {
      if (vec_eq(v, w)) {
        kept.push_back(p);
        break;
      }
    }
  }
  pieces_ = std::move(kept);
}

// Lower envelope of a polyhedron in R^{n+1} whose recession cone contains
// the upward vertical ray, as a PL function of the first n coordinates.
template <class S>
PolyConvexFunction<S> floor_of_polyhedron(const Polyhedron<S>& p) {
  const Eigen::Index n = p.dim() - 1;
  if (p.is_empty()) throw precondition_error("improper: empty epigraph");
  for (const auto& l : p.lines()) {
    bool horizontal = false;
    for (Eigen::Index i = 0; i < n; ++i)
      if (sgn(l(i)) != 0) horizontal = true;
    if (!horizontal && sgn(l(n)) != 0)
      throw precondition_error("improper: vertical line in epigraph");
  }
  std::vector<AffineForm<S>> pieces;
  std::vector<Halfspace<S>> domrows;
  for (const auto& row : p.halfspaces().rows()) {
    const S at = row.a(n);
    if (sgn(at) < 0) {
      AffineForm<S> f;
      f.y = (row.a.head(n) / -at).eval();
      f.c = row.b / at;
      pieces.push_back(f);
    } else if (sgn(at) == 0) {
      Halfspace<S> h;
      h.a = row.a.head(n);
      h.b = row.b;
      domrows.push_back(h);
    } else {
      throw precondition_error("improper: epigraph not closed upward");
    }
  }
  if (pieces.empty()) throw precondition_error("improper: unbounded below");
  std::optional<Polyhedron<S>> dom;
  if (!domrows.empty())
    dom = Polyhedron<S>::from_halfspaces(HalfspaceSystem<S>(n, domrows));
  return PolyConvexFunction<S>::make(n, std::move(pieces), std::move(dom));
}

// Fenchel-Legendre transform. epi(f^*) is assembled from the lifted piece
// points, the vertical ray and the recession cone epi(h_dom); the conjugate
// is its lower envelope. Exact, and an involution on canonical functions.
template <class S>
PolyConvexFunction<S> conjugate(const PolyConvexFunction<S>& f) {
  return floor_of_polyhedron(conjugate_epigraph(f));
}

template <class S>
Polyhedron<S> epigraph(const PolyConvexFunction<S>& f) {
  const Eigen::Index n = f.n();
  std::vector<Halfspace<S>> rows;
  if (!f.domain_is_all()) {
    for (const auto& r : f.domain()->halfspaces().rows()) {
      Halfspace<S> h;
      h.a = VecX<S>::Zero(n + 1);
      h.a.head(n) = r.a;
      h.b = r.b;
      rows.push_back(h);
    }
  }
  for (const auto& p : f.pieces()) {
    Halfspace<S> h;
    h.a = VecX<S>::Zero(n + 1);
    h.a.head(n) = p.y;
    h.a(n) = scalar_traits<S>::from_long(-1);
    h.b = -p.c;
    rows.push_back(h);
  }
  return Polyhedron<S>::from_halfspaces(HalfspaceSystem<S>(n + 1, rows));
}

template <class S>
PolyConvexFunction<S> pointwise_max(const PolyConvexFunction<S>& f,
                                    const PolyConvexFunction<S>& g) {
  if (f.n() != g.n()) throw precondition_error("dimension mismatch");
  std::vector<AffineForm<S>> pieces = f.pieces();
  for (const auto& p : g.pieces()) pieces.push_back(p);
  std::optional<Polyhedron<S>> dom;
  if (f.domain_is_all()) {
    dom = g.domain();
  } else if (g.domain_is_all()) {
    dom = f.domain();
  } else {
    dom = intersect(*f.domain(), *g.domain());
    if (dom->is_empty()) throw precondition_error("improper result");
  }
  return PolyConvexFunction<S>::make(f.n(), std::move(pieces), std::move(dom));
}

template <class S>
PolyConvexFunction<S> add(const PolyConvexFunction<S>& f,
                          const PolyConvexFunction<S>& g) {
  if (f.n() != g.n()) throw precondition_error("dimension mismatch");
  std::vector<AffineForm<S>> pieces;
  for (const auto& p : f.pieces())
    for (const auto& q : g.pieces()) {
      AffineForm<S> s;
      s.y = p.y + q.y;
      s.c = p.c + q.c;
      pieces.push_back(s);
    }
  std::optional<Polyhedron<S>> dom;
  if (f.domain_is_all()) {
    dom = g.domain();
  } else if (g.domain_is_all()) {
    dom = f.domain();
  } else {
    dom = intersect(*f.domain(), *g.domain());
    if (dom->is_empty()) throw precondition_error("improper result");
  }
  return PolyConvexFunction<S>::make(f.n(), std::move(pieces), std::move(dom));
}

template <class S>
PolyConvexFunction<S> scale(const PolyConvexFunction<S>& f, const S& t) {
  if (sgn(t) <= 0) throw precondition_error("scale factor must be positive");
  std::vector<AffineForm<S>> pieces;
  for (const auto& p : f.pieces()) {
    AffineForm<S> s;
    s.y = (t * p.y).eval();
    s.c = t * p.c;
    pieces.push_back(s);
  }
  return PolyConvexFunction<S>::make(f.n(), std::move(pieces), f.domain());
}

// (tau_X f)(y) = f(y - x) + t
template <class S>
PolyConvexFunction<S> epi_translate(const PolyConvexFunction<S>& f,
                                    const EpiPoint<S>& X) {
  if (X.x.size() != f.n()) throw precondition_error("dimension mismatch");
  std::vector<AffineForm<S>> pieces;
  for (const auto& p : f.pieces()) {
    AffineForm<S> s;
    s.y = p.y;
    s.c = p.c - p.y.dot(X.x) + X.t;
    pieces.push_back(s);
  }
  std::optional<Polyhedron<S>> dom;
  if (!f.domain_is_all()) dom = f.domain()->translated(X.x);
  return PolyConvexFunction<S>::make(f.n(), std::move(pieces), std::move(dom));
}

template <class S>
PolyConvexFunction<S> indicator(const Polyhedron<S>& p) {
  if (p.is_empty() || p.affine_dim() < static_cast<int>(p.dim()))
    throw precondition_error("indicator requires nonempty interior");
  AffineForm<S> zero;
  zero.y = VecX<S>::Zero(p.dim());
  zero.c = scalar_traits<S>::from_long(0);
  return PolyConvexFunction<S>::make(p.dim(), {zero}, p);
}

// max_i <y_i, x>, restricted to the recession cone of the domain.
template <class S>
PolyConvexFunction<S> recession_function(const PolyConvexFunction<S>& f) {
  std::vector<AffineForm<S>> pieces;
  for (const auto& p : f.pieces()) {
    AffineForm<S> s;
    s.y = p.y;
    s.c = scalar_traits<S>::from_long(0);
    pieces.push_back(s);
  }
  std::optional<Polyhedron<S>> dom;
  if (!f.domain_is_all()) {
    const auto& d = *f.domain();
    std::vector<VecX<S>> origin{VecX<S>::Zero(f.n())};
    dom = Polyhedron<S>::from_generators(f.n(), origin, d.extreme_rays(),
                                         d.lines());
  }
  return PolyConvexFunction<S>::make(f.n(), std::move(pieces), std::move(dom));
}

template <class S>
struct Cell {
  AffineForm<S> form;
  Polyhedron<S> region;
};

// Full-dimensional linearity regions of f.
template <class S>
std::vector<Cell<S>> cells(const PolyConvexFunction<S>& f) {
  std::vector<Cell<S>> out;
  for (size_t i = 0; i < f.pieces().size(); ++i) {
    auto r = f.piece_region(i);
    if (r.affine_dim() == static_cast<int>(f.n()))
      out.push_back(Cell<S>{f.pieces()[i], std::move(r)});
  }
  return out;
}

template <class S>
std::vector<Cell<S>> refine_cells(const std::vector<Cell<S>>& a,
                                  const std::vector<Cell<S>>& b,
                                  bool subtract) {
  std::vector<Cell<S>> out;
  for (const auto& ca : a)
    for (const auto& cb : b) {
      auto r = intersect(ca.region, cb.region);
      if (r.affine_dim() != static_cast<int>(r.dim())) continue;
      AffineForm<S> form;
      form.y = subtract ? (ca.form.y - cb.form.y).eval()
                        : (ca.form.y + cb.form.y).eval();
      form.c = subtract ? ca.form.c - cb.form.c : ca.form.c + cb.form.c;
      out.push_back(Cell<S>{form, std::move(r)});
    }
  return out;
}

template <class S>
bool affine_nonneg_on(const AffineForm<S>& h, const Polyhedron<S>& c) {
  for (const auto& v : c.vertices())
    if (sgn(S(h.eval(v))) < 0) return false;
  for (const auto& r : c.recession_generators())
    if (sgn(S(h.y.dot(r))) < 0) return false;
  return true;
}

// f <= g on region (exact, checked cellwise on the common refinement).
template <class S>
bool le_on(const PolyConvexFunction<S>& f, const PolyConvexFunction<S>& g,
           const Polyhedron<S>& region) {
  for (const auto& cf : cells(f))
    for (const auto& cg : cells(g)) {
      auto r = intersect(intersect(cf.region, cg.region), region);
      if (r.is_empty()) continue;
      AffineForm<S> diff;
      diff.y = cg.form.y - cf.form.y;
      diff.c = cg.form.c - cf.form.c;
      if (!affine_nonneg_on(diff, r)) return false;
    }
  return true;
}

template <class S>
bool eq_on(const PolyConvexFunction<S>& f, const PolyConvexFunction<S>& g,
           const Polyhedron<S>& region) {
  return le_on(f, g, region) && le_on(g, f, region);
}

// Pointwise minimum if convex, std::nullopt otherwise. The test is the
// epigraph identity: min is convex iff conv(epi f u epi g) adds no points
// beyond the union, checked row by row against epi(f).
template <class S>
std::optional<PolyConvexFunction<S>> pointwise_min_checked(
    const PolyConvexFunction<S>& f, const PolyConvexFunction<S>& g) {
  if (f.n() != g.n()) throw precondition_error("dimension mismatch");
  const auto ef = epigraph(f);
  const auto eg = epigraph(g);
  std::vector<VecX<S>> pts = ef.vertices();
  for (const auto& v : eg.vertices()) pts.push_back(v);
  std::vector<VecX<S>> rays = ef.extreme_rays();
  for (const auto& r : eg.extreme_rays()) rays.push_back(r);
  std::vector<VecX<S>> lines = ef.lines();
  for (const auto& l : eg.lines()) lines.push_back(l);
  const auto hull =
      Polyhedron<S>::from_generators(f.n() + 1, pts, rays, lines);
  for (const auto& row : ef.halfspaces().rows()) {
    const auto beyond = clip_beyond(hull, row);
    if (beyond && !eg.contains_polyhedron(*beyond)) return std::nullopt;
  }
  return floor_of_polyhedron(hull);
}

// (A, O)-cone data: closed convex O <= A with nonempty interior.
template <class S>
struct ConeSpec {
  Eigen::Index n = 0;
  Polyhedron<S> A;
  Polyhedron<S> O;

  static ConeSpec make(Polyhedron<S> a, Polyhedron<S> o) {
    if (a.dim() != o.dim()) throw precondition_error("dimension mismatch");
    if (o.affine_dim() != static_cast<int>(o.dim()) ||
        a.affine_dim() != static_cast<int>(a.dim()))
      throw precondition_error("cone sets need nonempty interior");
    if (!a.contains_polyhedron(o))
      throw precondition_error("O must be contained in A");
    ConeSpec c;
    c.n = a.dim();
    c.A = std::move(a);
    c.O = std::move(o);
    return c;
  }

  static ConeSpec full(Eigen::Index n) {
    auto all = Polyhedron<S>::full_space(n);
    return make(all, all);
  }

  bool A_is_all() const { return A.halfspaces().rows().empty(); }

  friend bool operator==(const ConeSpec& x, const ConeSpec& y) {
    return x.n == y.n && x.A == y.A && x.O == y.O;
  }
};

template <class S>
PolyConvexFunction<S> affine_as_function(Eigen::Index n, const AffineForm<S>& l) {
  return PolyConvexFunction<S>::make(n, {l}, std::nullopt);
}

template <class S>
struct MembershipResult {
  bool member;
  std::string reason;
};

template <class S>
MembershipResult<S> cone_membership(const PolyConvexFunction<S>& f,
                                    const ConeSpec<S>& cone) {
  if (f.n() != cone.n) return {false, "ambient dimension mismatch"};
  if (!f.domain_is_all() && !f.domain()->contains_polyhedron(cone.O))
    return {false, "O not contained in dom f"};
  if (!cone.A_is_all()) {
    if (f.domain_is_all()) return {false, "dom f not contained in A"};
    if (!cone.A.contains_polyhedron(*f.domain()))
      return {false, "dom f not contained in A"};
  }
  return {true, "member"};
}

}  // namespace cvlab

#endif  // CVLAB_CONVEX_FUNCTION_HPP
