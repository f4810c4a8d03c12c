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

#ifndef CVLAB_POLYHEDRON_HPP
#define CVLAB_POLYHEDRON_HPP

#include <algorithm>
#include <atomic>
#include <optional>
#include <vector>

#include "cvlab/linalg.hpp"
#include "cvlab/scalar.hpp"

namespace cvlab {

// Double description is exponential in the dimension; this is a desk-scale
// lab, so representation conversion refuses to run above the cap unless the
// caller raises it.
inline std::atomic<int>& dimension_limit_ref() {
  static std::atomic<int> limit{4};
  return limit;
}
inline int dimension_limit() { return dimension_limit_ref().load(); }
inline void set_dimension_limit(int d) { dimension_limit_ref().store(d); }

inline void check_dimension(Eigen::Index dim) {
  if (dim > dimension_limit())
    throw precondition_error("dimension limit: ambient dimension " +
                             std::to_string(dim) + " exceeds cap " +
                             std::to_string(dimension_limit()));
}

namespace detail {

template <class S>
void primitive_scale(VecX<S>& v);

template <>
inline void primitive_scale<Rational>(VecX<Rational>& v) {
  using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                            boost::multiprecision::et_off>;
  Int l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    l = boost::multiprecision::lcm(l, Int(denominator(v(i))));
  Int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Int scaled = Int(numerator(v(i))) * (l / Int(denominator(v(i))));
    g = boost::multiprecision::gcd(g, scaled);
  }
  if (g == 0) return;
  const Rational f = Rational(l) / Rational(g);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= f;
}

template <>
inline void primitive_scale<double>(VecX<double>& v) {
  double mx = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) mx = std::max(mx, std::abs(v(i)));
  if (mx > scalar_traits<double>::eps) v /= mx;
}

template <class S>
void sign_normalize(VecX<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const int s = sgn(v(i));
    if (s > 0) return;
    if (s < 0) {
      v = -v;
      return;
    }
  }
}

template <class S>
void sort_dedupe(std::vector<VecX<S>>& vs) {
  std::sort(vs.begin(), vs.end(), [](const VecX<S>& a, const VecX<S>& b) {
    return lex_less(a, b);
  });
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](const VecX<S>& a, const VecX<S>& b) {
                         return vec_eq(a, b);
                       }),
           vs.end());
}

}  // namespace detail

template <class S>
struct ConeGenerators {
  std::vector<VecX<S>> lineality;  // canonical basis, first nonzero positive
  std::vector<VecX<S>> rays;       // extreme rays in the lineality complement
};

// Generators of the cone {x in R^dim : <row, x> <= 0 for all rows}.
// Incremental double description with exact arithmetic; lineality handled
// by basis reduction, adjacency by the combinatorial zero-set test.
template <class S>
ConeGenerators<S> dual_cone_generators(const std::vector<VecX<S>>& rows_in,
                                       Eigen::Index dim) {
  std::vector<VecX<S>> rows;
  rows.reserve(rows_in.size());
  for (const auto& r : rows_in) {
    bool zero = true;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (sgn(r(i)) != 0) zero = false;
    if (!zero) rows.push_back(r);
  }
  const size_t m = rows.size();

  std::vector<VecX<S>> lin;
  for (Eigen::Index i = 0; i < dim; ++i) {
    VecX<S> e = VecX<S>::Zero(dim);
    e(i) = scalar_traits<S>::from_long(1);
    lin.push_back(e);
  }

  struct Rec {
    VecX<S> v;
    std::vector<char> act;
  };
  std::vector<Rec> rays;

  auto recompute_act = [&](Rec& rec, size_t upto) {
    rec.act.assign(m, 0);
    for (size_t i = 0; i < upto; ++i)
      rec.act[i] = (sgn(S(rows[i].dot(rec.v))) == 0) ? 1 : 0;
  };

  for (size_t ci = 0; ci < m; ++ci) {
    const VecX<S>& a = rows[ci];

    int hit = -1;
    for (size_t j = 0; j < lin.size(); ++j)
      if (sgn(S(a.dot(lin[j]))) != 0) {
        hit = static_cast<int>(j);
        break;
      }
    if (hit >= 0) {
      VecX<S> l0 = lin[static_cast<size_t>(hit)];
      lin.erase(lin.begin() + hit);
      S alpha = a.dot(l0);
      if (sgn(alpha) > 0) {
        l0 = -l0;
        alpha = -alpha;
      }
      for (auto& l : lin) {
        const S t = a.dot(l);
        if (sgn(t) != 0) l -= (t / alpha) * l0;
      }
      for (auto& r : rays) {
        const S t = a.dot(r.v);
        if (sgn(t) != 0) r.v -= (t / alpha) * l0;
        detail::primitive_scale(r.v);
        recompute_act(r, ci + 1);
      }
      Rec nr;
      nr.v = l0;
      detail::primitive_scale(nr.v);
      recompute_act(nr, ci + 1);
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<int> sig(rays.size());
    bool has_pos = false;
    for (size_t j = 0; j < rays.size(); ++j) {
      sig[j] = sgn(S(a.dot(rays[j].v)));
      if (sig[j] > 0) has_pos = true;
    }
    if (!has_pos) {
      for (auto& r : rays) recompute_act(r, ci + 1);
      continue;
    }

    auto adjacent = [&](size_t u, size_t v) {
      for (size_t w = 0; w < rays.size(); ++w) {
        if (w == u || w == v) continue;
        bool super = true;
        for (size_t i = 0; i < ci && super; ++i)
          if (rays[u].act[i] && rays[v].act[i] && !rays[w].act[i]) super = false;
        if (super) return false;
      }
      return true;
    };

    std::vector<Rec> next;
    for (size_t j = 0; j < rays.size(); ++j)
      if (sig[j] <= 0) next.push_back(rays[j]);
    for (size_t u = 0; u < rays.size(); ++u) {
      if (sig[u] <= 0) continue;
      for (size_t v = 0; v < rays.size(); ++v) {
        if (sig[v] >= 0) continue;
        if (!adjacent(u, v)) continue;
        Rec nr;
        nr.v = S(a.dot(rays[u].v)) * rays[v].v - S(a.dot(rays[v].v)) * rays[u].v;
        detail::primitive_scale(nr.v);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
    for (auto& r : rays) recompute_act(r, ci + 1);
  }

  ConeGenerators<S> out;
  out.lineality = row_space_basis(lin, dim);
  for (auto& l : out.lineality) {
    detail::primitive_scale(l);
    detail::sign_normalize(l);
  }
  std::sort(out.lineality.begin(), out.lineality.end(),
            [](const VecX<S>& x, const VecX<S>& y) { return lex_less(x, y); });
  for (auto& r : rays) {
    VecX<S> p = r.v - project_onto_span(r.v, out.lineality);
    bool zero = true;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (sgn(p(i)) != 0) zero = false;
    if (zero) continue;
    detail::primitive_scale(p);
    out.rays.push_back(p);
  }
  detail::sort_dedupe(out.rays);
  return out;
}

template <class S>
struct Halfspace {
  VecX<S> a;
  S b;  // <a, x> <= b
};

template <class S>
class HalfspaceSystem {
 public:
  HalfspaceSystem() : dim_(0) {}
  HalfspaceSystem(Eigen::Index dim, std::vector<Halfspace<S>> rows)
      : dim_(dim), rows_(std::move(rows)) {
    normalize();
  }

  Eigen::Index dim() const { return dim_; }
  const std::vector<Halfspace<S>>& rows() const { return rows_; }

  bool contains(const VecX<S>& x) const {
    for (const auto& r : rows_)
      if (sgn(S(r.a.dot(x) - r.b)) > 0) return false;
    return true;
  }
  bool contains_strictly(const VecX<S>& x) const {
    for (const auto& r : rows_)
      if (sgn(S(r.a.dot(x) - r.b)) >= 0) return false;
    return true;
  }
  bool recession_contains(const VecX<S>& d) const {
    for (const auto& r : rows_)
      if (sgn(S(r.a.dot(d))) > 0) return false;
    return true;
  }

 private:
  void normalize() {
    std::vector<VecX<S>> packed;
    for (const auto& r : rows_) {
      VecX<S> v(dim_ + 1);
      v.head(dim_) = r.a;
      v(dim_) = r.b;
      detail::primitive_scale(v);
      packed.push_back(v);
    }
    detail::sort_dedupe(packed);
    rows_.clear();
    for (const auto& v : packed) {
      Halfspace<S> h;
      h.a = v.head(dim_);
      h.b = v(dim_);
      rows_.push_back(h);
    }
  }

  Eigen::Index dim_;
  std::vector<Halfspace<S>> rows_;
};

// Closed convex polyhedron conv(vertices) + cone(rays) + span(lines), kept
// canonical: minimal generators modulo the lineality space, H-representation
// attached at construction. The empty set is a first-class value.
template <class S>
class Polyhedron {
 public:
  Polyhedron() : dim_(0) {}

  static Polyhedron from_generators(Eigen::Index dim,
                                    std::vector<VecX<S>> points,
                                    std::vector<VecX<S>> rays,
                                    std::vector<VecX<S>> lines = {}) {
    check_dimension(dim);
    Polyhedron p;
    p.dim_ = dim;
    if (points.empty()) {
      p.set_empty();
      return p;
    }
    for (const auto& v : points)
      if (v.size() != dim) throw input_error("inconsistent dimensions");
    for (const auto& v : rays)
      if (v.size() != dim) throw input_error("inconsistent dimensions");
    p.build_hrep_from(points, rays, lines);
    p.rebuild_generators_from_hrep();
    return p;
  }

  static Polyhedron from_halfspaces(const HalfspaceSystem<S>& hs) {
    check_dimension(hs.dim());
    Polyhedron p;
    p.dim_ = hs.dim();
    p.hrep_ = hs;
    p.rebuild_generators_from_hrep();
    if (!p.is_empty()) {
      // Re-derive an irredundant system from the canonical generators.
      p.build_hrep_from(p.verts_, p.rays_, p.lines_);
    }
    return p;
  }

  static Polyhedron full_space(Eigen::Index dim) {
    return from_halfspaces(HalfspaceSystem<S>(dim, {}));
  }

  static Polyhedron box(Eigen::Index dim, const S& lo, const S& hi) {
    std::vector<Halfspace<S>> rows;
    for (Eigen::Index i = 0; i < dim; ++i) {
      Halfspace<S> up, dn;
      up.a = VecX<S>::Zero(dim);
      up.a(i) = scalar_traits<S>::from_long(1);
      up.b = hi;
      dn.a = VecX<S>::Zero(dim);
      dn.a(i) = scalar_traits<S>::from_long(-1);
      dn.b = -lo;
      rows.push_back(up);
      rows.push_back(dn);
    }
    return from_halfspaces(HalfspaceSystem<S>(dim, rows));
  }

  Eigen::Index dim() const { return dim_; }
  bool is_empty() const { return verts_.empty(); }
  const std::vector<VecX<S>>& vertices() const { return verts_; }
  const std::vector<VecX<S>>& extreme_rays() const { return rays_; }
  const std::vector<VecX<S>>& lines() const { return lines_; }
  const HalfspaceSystem<S>& halfspaces() const { return hrep_; }

  // All recession generators, lineality expanded into opposite pairs.
  std::vector<VecX<S>> recession_generators() const {
    std::vector<VecX<S>> out = rays_;
    for (const auto& l : lines_) {
      out.push_back(l);
      out.push_back(-l);
    }
    return out;
  }

  bool is_bounded() const { return rays_.empty() && lines_.empty(); }

  int affine_dim() const {
    if (is_empty()) return -1;
    std::vector<VecX<S>> dirs;
    for (size_t i = 1; i < verts_.size(); ++i) dirs.push_back(verts_[i] - verts_[0]);
    for (const auto& r : rays_) dirs.push_back(r);
    for (const auto& l : lines_) dirs.push_back(l);
    return rank_of(dirs, dim_);
  }

  bool is_full_dim() const { return affine_dim() == static_cast<int>(dim_); }

  bool contains(const VecX<S>& x) const {
    return !is_empty() && hrep_.contains(x);
  }
  bool contains_in_interior(const VecX<S>& x) const {
    return !is_empty() && hrep_.contains_strictly(x);
  }
  bool recession_contains(const VecX<S>& d) const {
    return !is_empty() && hrep_.recession_contains(d);
  }
  bool contains_polyhedron(const Polyhedron& q) const {
    if (q.is_empty()) return true;
    if (is_empty()) return false;
    for (const auto& v : q.verts_)
      if (!contains(v)) return false;
    for (const auto& r : q.recession_generators())
      if (!recession_contains(r)) return false;
    return true;
  }
  // Every point of q strictly inside: vertices strict, and recession
  // directions non-escaping (<a, r> = 0 preserves strictness).
  bool interior_contains_polyhedron(const Polyhedron& q) const {
    if (q.is_empty()) return true;
    if (is_empty()) return false;
    for (const auto& v : q.verts_)
      if (!contains_in_interior(v)) return false;
    for (const auto& r : q.recession_generators())
      if (!recession_contains(r)) return false;
    return true;
  }

  friend bool operator==(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim_ != q.dim_) return false;
    auto eq_list = [](const std::vector<VecX<S>>& a,
                      const std::vector<VecX<S>>& b) {
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (!vec_eq(a[i], b[i])) return false;
      return true;
    };
    return eq_list(p.verts_, q.verts_) && eq_list(p.rays_, q.rays_) &&
           eq_list(p.lines_, q.lines_);
  }
  friend bool operator!=(const Polyhedron& p, const Polyhedron& q) {
    return !(p == q);
  }

  Polyhedron translated(const VecX<S>& x0) const {
    if (is_empty()) return *this;
    std::vector<VecX<S>> pts;
    for (const auto& v : verts_) pts.push_back(v + x0);
    return from_generators(dim_, pts, rays_, lines_);
  }

  Polyhedron scaled(const S& t) const {
    if (is_empty()) return *this;
    if (sgn(t) <= 0) throw precondition_error("scale factor must be positive");
    std::vector<VecX<S>> pts;
    for (const auto& v : verts_) pts.push_back(t * v);
    return from_generators(dim_, pts, rays_, lines_);
  }

 private:
  void set_empty() {
    verts_.clear();
    rays_.clear();
    lines_.clear();
    Halfspace<S> bad;
    bad.a = VecX<S>::Zero(dim_);
    bad.b = scalar_traits<S>::from_long(-1);
    hrep_ = HalfspaceSystem<S>(dim_, {bad});
  }

  void build_hrep_from(const std::vector<VecX<S>>& points,
                       const std::vector<VecX<S>>& rays,
                       const std::vector<VecX<S>>& lines) {
    std::vector<VecX<S>> wrows;
    for (const auto& v : points) {
      VecX<S> r(dim_ + 1);
      r.head(dim_) = v;
      r(dim_) = scalar_traits<S>::from_long(-1);
      wrows.push_back(r);
    }
    for (const auto& d : rays) {
      VecX<S> r(dim_ + 1);
      r.head(dim_) = d;
      r(dim_) = scalar_traits<S>::from_long(0);
      wrows.push_back(r);
    }
    for (const auto& l : lines) {
      VecX<S> r(dim_ + 1);
      r.head(dim_) = l;
      r(dim_) = scalar_traits<S>::from_long(0);
      wrows.push_back(r);
      r.head(dim_) = -l;
      wrows.push_back(r);
    }
    const auto w = dual_cone_generators(wrows, dim_ + 1);
    std::vector<Halfspace<S>> rows;
    for (const auto& g : w.rays) {
      bool azero = true;
      for (Eigen::Index i = 0; i < dim_; ++i)
        if (sgn(g(i)) != 0) azero = false;
      if (azero) continue;  // the trivial inequality 0 <= 1
      Halfspace<S> h;
      h.a = g.head(dim_);
      h.b = g(dim_);
      rows.push_back(h);
    }
    for (const auto& g : w.lineality) {
      Halfspace<S> h;
      h.a = g.head(dim_);
      h.b = g(dim_);
      rows.push_back(h);
      h.a = -h.a;
      h.b = -h.b;
      rows.push_back(h);
    }
    hrep_ = HalfspaceSystem<S>(dim_, rows);
  }

  void rebuild_generators_from_hrep() {
    std::vector<VecX<S>> crows;
    for (const auto& r : hrep_.rows()) {
      VecX<S> c(dim_ + 1);
      c.head(dim_) = r.a;
      c(dim_) = -r.b;
      crows.push_back(c);
    }
    VecX<S> spos = VecX<S>::Zero(dim_ + 1);
    spos(dim_) = scalar_traits<S>::from_long(-1);  // -s <= 0
    crows.push_back(spos);
    const auto g = dual_cone_generators(crows, dim_ + 1);

    verts_.clear();
    rays_.clear();
    lines_.clear();
    for (const auto& l : g.lineality) lines_.push_back(l.head(dim_).eval());
    for (const auto& r : g.rays) {
      const S s = r(dim_);
      if (sgn(s) > 0) {
        verts_.push_back((r.head(dim_) / s).eval());
      } else {
        rays_.push_back(r.head(dim_).eval());
      }
    }
    if (verts_.empty()) {
      set_empty();
      return;
    }
    detail::sort_dedupe(verts_);
    detail::sort_dedupe(rays_);
    std::sort(lines_.begin(), lines_.end(),
              [](const VecX<S>& x, const VecX<S>& y) { return lex_less(x, y); });
  }

  Eigen::Index dim_ = 0;
  std::vector<VecX<S>> verts_, rays_, lines_;
  HalfspaceSystem<S> hrep_;
};

template <class S>
Polyhedron<S> convex_hull(const std::vector<VecX<S>>& points) {
  if (points.empty()) throw precondition_error("convex hull of empty input");
  const Eigen::Index dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim) throw input_error("inconsistent dimensions");
  return Polyhedron<S>::from_generators(dim, points, {});
}

template <class S>
HalfspaceSystem<S> to_halfspaces(const Polyhedron<S>& p) {
  return p.halfspaces();
}

template <class S>
Polyhedron<S> from_halfspaces(const HalfspaceSystem<S>& hs) {
  return Polyhedron<S>::from_halfspaces(hs);
}

template <class S>
Polyhedron<S> intersect(const Polyhedron<S>& p, const HalfspaceSystem<S>& hs) {
  if (p.dim() != hs.dim()) throw precondition_error("dimension mismatch");
  if (p.is_empty()) return p;
  std::vector<Halfspace<S>> rows = p.halfspaces().rows();
  for (const auto& r : hs.rows()) rows.push_back(r);
  return Polyhedron<S>::from_halfspaces(HalfspaceSystem<S>(p.dim(), rows));
}

template <class S>
Polyhedron<S> intersect(const Polyhedron<S>& p, const Polyhedron<S>& q) {
  if (q.is_empty()) return q;
  return intersect(p, q.halfspaces());
}

template <class S>
Polyhedron<S> minkowski_sum(const Polyhedron<S>& p, const Polyhedron<S>& q) {
  if (p.dim() != q.dim()) throw precondition_error("dimension mismatch");
  if (p.is_empty() || q.is_empty())
    return Polyhedron<S>::from_generators(p.dim(), {}, {});
  std::vector<VecX<S>> pts;
  for (const auto& v : p.vertices())
    for (const auto& w : q.vertices()) pts.push_back(v + w);
  std::vector<VecX<S>> rays = p.extreme_rays();
  for (const auto& r : q.extreme_rays()) rays.push_back(r);
  std::vector<VecX<S>> lines = p.lines();
  for (const auto& l : q.lines()) lines.push_back(l);
  return Polyhedron<S>::from_generators(p.dim(), pts, rays, lines);
}

// Closure of the set of points of p strictly violating row; empty result is
// signalled by the optional. Used for union-containment arguments.
template <class S>
std::optional<Polyhedron<S>> clip_beyond(const Polyhedron<S>& p,
                                         const Halfspace<S>& row) {
  std::vector<Halfspace<S>> rows = p.halfspaces().rows();
  Halfspace<S> rev;
  rev.a = -row.a;
  rev.b = -row.b;
  rows.push_back(rev);
  auto c = Polyhedron<S>::from_halfspaces(HalfspaceSystem<S>(p.dim(), rows));
  if (c.is_empty()) return std::nullopt;
  // Contained in the boundary hyperplane: nothing strictly beyond.
  bool on_plane = true;
  for (const auto& v : c.vertices())
    if (sgn(S(row.a.dot(v) - row.b)) != 0) on_plane = false;
  for (const auto& r : c.recession_generators())
    if (sgn(S(row.a.dot(r))) != 0) on_plane = false;
  if (on_plane) return std::nullopt;
  return c;
}

}  // namespace cvlab

#endif  // CVLAB_POLYHEDRON_HPP
