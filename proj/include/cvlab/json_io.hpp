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

#ifndef CVLAB_JSON_IO_HPP
#define CVLAB_JSON_IO_HPP

#include <json.hpp>

#include "cvlab/valuation_analysis.hpp"

namespace cvlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "cvlab/1";

template <class S>
const char* mode_name() {
  return scalar_traits<S>::is_exact ? "rational" : "float";
}

template <class S>
Json scalar_to_json(const S& v) {
  if constexpr (scalar_traits<S>::is_exact)
    return to_string(v);
  else
    return v == 0 ? 0.0 : v;  // no negative zero in reports
}

template <class S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if constexpr (scalar_traits<S>::is_exact)
      return r;
    else
      return scalar_traits<Rational>::to_double(r);
  }
  if (j.is_number()) {
    if constexpr (scalar_traits<S>::is_exact)
      throw input_error("rational mode requires \"p/q\" strings");
    else
      return j.get<double>();
  }
  throw input_error("expected a scalar");
}

template <class S>
Json vec_to_json(const VecX<S>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

template <class S>
VecX<S> vec_from_json(const Json& j) {
  if (!j.is_array()) throw input_error("expected an array of scalars");
  VecX<S> v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& e : j) v(i++) = scalar_from_json<S>(e);
  return v;
}

template <class S>
Json polyhedron_to_json(const Polyhedron<S>& p) {
  Json out;
  out["dim"] = static_cast<long>(p.dim());
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back(vec_to_json(v));
  out["vertices"] = std::move(vs);
  Json rs = Json::array();
  for (const auto& r : p.recession_generators()) rs.push_back(vec_to_json(r));
  out["rays"] = std::move(rs);
  return out;
}

template <class S>
Polyhedron<S> polyhedron_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) throw input_error("expected a polyhedron object");
  const Eigen::Index dim = j.at("dim").get<long>();
  std::vector<VecX<S>> verts, rays;
  for (const auto& v : j.value("vertices", Json::array())) {
    auto p = vec_from_json<S>(v);
    if (p.size() != dim) throw input_error("vertex dimension mismatch");
    verts.push_back(std::move(p));
  }
  for (const auto& r : j.value("rays", Json::array())) {
    auto d = vec_from_json<S>(r);
    if (d.size() != dim) throw input_error("ray dimension mismatch");
    rays.push_back(std::move(d));
  }
  return Polyhedron<S>::from_generators(dim, std::move(verts), std::move(rays));
}

template <class S>
Json halfspaces_to_json(const HalfspaceSystem<S>& h) {
  Json rows = Json::array();
  for (const auto& r : h.rows()) {
    Json row;
    row["a"] = vec_to_json(r.a);
    row["b"] = scalar_to_json(r.b);
    rows.push_back(std::move(row));
  }
  Json out;
  out["dim"] = static_cast<long>(h.dim());
  out["rows"] = std::move(rows);
  return out;
}

template <class S>
HalfspaceSystem<S> halfspaces_from_json(const Json& j) {
  std::vector<Halfspace<S>> rows;
  for (const auto& r : j.at("rows")) {
    Halfspace<S> h;
    h.a = vec_from_json<S>(r.at("a"));
    h.b = scalar_from_json<S>(r.at("b"));
    rows.push_back(std::move(h));
  }
  Eigen::Index dim;
  if (j.contains("dim"))
    dim = j.at("dim").get<long>();
  else if (!rows.empty())
    dim = rows.front().a.size();
  else
    throw input_error("halfspace system needs a dimension");
  for (const auto& r : rows)
    if (r.a.size() != dim) throw input_error("row dimension mismatch");
  return HalfspaceSystem<S>(dim, std::move(rows));
}

template <class S>
Json function_to_json(const PolyConvexFunction<S>& f) {
  Json out;
  out["n"] = static_cast<long>(f.n());
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json piece;
    piece["y"] = vec_to_json(p.y);
    piece["c"] = scalar_to_json(p.c);
    pieces.push_back(std::move(piece));
  }
  out["pieces"] = std::move(pieces);
  if (f.domain_is_all())
    out["domain"] = "all";
  else
    out["domain"] = polyhedron_to_json(*f.domain());
  return out;
}

template <class S>
PolyConvexFunction<S> function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("pieces"))
    throw input_error("expected a function object");
  const Eigen::Index n = j.at("n").get<long>();
  std::vector<AffineForm<S>> pieces;
  for (const auto& p : j.at("pieces")) {
    AffineForm<S> a;
    a.y = vec_from_json<S>(p.at("y"));
    a.c = scalar_from_json<S>(p.at("c"));
    pieces.push_back(std::move(a));
  }
  std::optional<Polyhedron<S>> dom;
  if (j.contains("domain") && !(j.at("domain").is_string() &&
                                j.at("domain").get<std::string>() == "all"))
    dom = polyhedron_from_json<S>(j.at("domain"));
  return PolyConvexFunction<S>::make(n, std::move(pieces), std::move(dom));
}

template <class S>
Json cone_to_json(const ConeSpec<S>& c) {
  Json out;
  out["n"] = static_cast<long>(c.n);
  out["A"] = c.A_is_all() ? Json("all") : polyhedron_to_json(c.A);
  out["O"] = c.O.halfspaces().rows().empty() ? Json("all")
                                             : polyhedron_to_json(c.O);
  return out;
}

template <class S>
ConeSpec<S> cone_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("O"))
    throw input_error("expected a cone object");
  const Eigen::Index n = j.at("n").get<long>();
  auto read = [&](const Json& side) {
    if (side.is_string() && side.get<std::string>() == "all")
      return Polyhedron<S>::full_space(n);
    return polyhedron_from_json<S>(side);
  };
  return ConeSpec<S>::make(read(j.at("A")), read(j.at("O")));
}

template <class S>
Json epipoint_to_json(const EpiPoint<S>& x) {
  Json out;
  out["x"] = vec_to_json(x.x);
  out["t"] = scalar_to_json(x.t);
  return out;
}

template <class S>
EpiPoint<S> epipoint_from_json(const Json& j) {
  EpiPoint<S> x;
  x.x = vec_from_json<S>(j.at("x"));
  x.t = scalar_from_json<S>(j.at("t"));
  return x;
}

template <class S>
Json atoms_to_json(const Theta0Atoms<S>& a) {
  Json atoms = Json::array();
  for (const auto& atom : a.atoms) {
    Json rec;
    rec["x"] = vec_to_json(atom.x);
    rec["S"] = polyhedron_to_json(atom.s);
    rec["fx"] = scalar_to_json(atom.fx);
    atoms.push_back(std::move(rec));
  }
  Json out;
  out["n"] = static_cast<long>(a.n);
  out["atoms"] = std::move(atoms);
  out["total_mass"] = scalar_to_json(a.total_mass());
  return out;
}

template <class S>
Json density_to_json(const PiecewisePolyDensity<S>& phi) {
  Json cells = Json::array();
  for (const auto& c : phi.density_cells()) {
    Json cell;
    cell["cell"] = polyhedron_to_json(c.cell);
    Json terms = Json::array();
    for (const auto& t : c.terms) {
      Json term;
      term["x"] = t.xexp;
      term["y"] = t.yexp;
      term["s"] = t.sexp;
      term["coef"] = scalar_to_json(t.coef);
      terms.push_back(std::move(term));
    }
    cell["terms"] = std::move(terms);
    cells.push_back(std::move(cell));
  }
  Json out;
  out["n"] = static_cast<long>(phi.n());
  out["cells"] = std::move(cells);
  return out;
}

template <class S>
PiecewisePolyDensity<S> density_from_json(const Json& j) {
  const Eigen::Index n = j.at("n").get<long>();
  std::vector<DensityCell<S>> cells;
  for (const auto& c : j.at("cells")) {
    DensityCell<S> cell;
    cell.cell = polyhedron_from_json<S>(c.at("cell"));
    for (const auto& t : c.value("terms", Json::array())) {
      DensityTerm<S> term;
      term.xexp = t.at("x").get<std::vector<int>>();
      term.yexp = t.at("y").get<std::vector<int>>();
      term.sexp = t.at("s").get<int>();
      term.coef = scalar_from_json<S>(t.at("coef"));
      cell.terms.push_back(std::move(term));
    }
    cells.push_back(std::move(cell));
  }
  return PiecewisePolyDensity<S>(n, std::move(cells));
}

template <class S>
Json valuation_to_json(const Valuation<S>& z) {
  Json out;
  out["kind"] = z.kind();
  out["n"] = static_cast<long>(z.n);
  out["d"] = z.d;
  out["m"] = z.m;
  if (z.homogeneity) out["homogeneity"] = *z.homogeneity;
  out["cone"] = cone_to_json(z.cone);
  Json params;
  if (const auto* k = std::get_if<TopDegreeKernel<S>>(&z.kernel)) {
    params["density"] = density_to_json(k->density);
  } else if (const auto* k = std::get_if<DirichletKernel<S>>(&z.kernel)) {
    params["B"] = polyhedron_to_json(k->b);
  } else if (const auto* k = std::get_if<DualizedKernel<S>>(&z.kernel)) {
    params["inner"] = valuation_to_json(*k->inner);
  } else if (const auto* k = std::get_if<ExtendedKernel<S>>(&z.kernel)) {
    params["inner"] = valuation_to_json(*k->inner);
    params["A"] = polyhedron_to_json(k->a);
    params["eps"] = scalar_to_json(k->eps);
  } else if (const auto* k = std::get_if<ComponentKernel<S>>(&z.kernel)) {
    params["inner"] = valuation_to_json(*k->inner);
    params["k"] = k->k;
    Json nodes = Json::array();
    for (const auto& t : k->nodes) nodes.push_back(scalar_to_json(t));
    params["nodes"] = std::move(nodes);
  } else if (const auto* k = std::get_if<BrokenMaxKernel<S>>(&z.kernel)) {
    Json probes = Json::array();
    for (const auto& p : k->probes) probes.push_back(vec_to_json(p));
    params["probes"] = std::move(probes);
  }
  out["params"] = std::move(params);
  return out;
}

template <class S>
Valuation<S> valuation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw input_error("expected a valuation object");
  const std::string kind = j.at("kind").get<std::string>();
  const Json& params = j.at("params");
  auto cone = cone_from_json<S>(j.at("cone"));
  if (kind == "top_degree")
    return make_top_degree(density_from_json<S>(params.at("density")),
                           std::move(cone));
  if (kind == "dirichlet")
    return make_dirichlet(polyhedron_from_json<S>(params.at("B")),
                          std::move(cone));
  if (kind == "dualized")
    return dualize_valuation(valuation_from_json<S>(params.at("inner")));
  if (kind == "extended")
    return extend_valuation(valuation_from_json<S>(params.at("inner")),
                            polyhedron_from_json<S>(params.at("A")),
                            std::move(cone),
                            scalar_from_json<S>(params.at("eps")));
  if (kind == "component") {
    auto inner = valuation_from_json<S>(params.at("inner"));
    std::vector<S> nodes;
    for (const auto& t : params.at("nodes"))
      nodes.push_back(scalar_from_json<S>(t));
    return homogeneous_component(inner, params.at("k").get<int>(),
                                 std::move(nodes));
  }
  if (kind == "broken_max") {
    std::vector<VecX<S>> probes;
    for (const auto& p : params.at("probes"))
      probes.push_back(vec_from_json<S>(p));
    return make_broken_max(std::move(probes), std::move(cone));
  }
  throw input_error("unknown valuation kind: " + kind);
}

template <class S>
Json value_report(const VecX<S>& v) {
  Json out;
  out["schema"] = kSchema;
  out["type"] = "value";
  out["mode"] = mode_name<S>();
  out["value"] = vec_to_json(v);
  return out;
}

template <class S>
Json decomposition_to_json(const DecompositionResult<S>& d) {
  Json out;
  out["schema"] = kSchema;
  out["type"] = "decomposition";
  out["mode"] = mode_name<S>();
  Json nodes = Json::array();
  for (const auto& t : d.nodes) nodes.push_back(scalar_to_json(t));
  out["nodes"] = std::move(nodes);
  Json comps = Json::array();
  for (const auto& [k, v] : d.components) {
    Json c;
    c["k"] = k;
    c["value"] = vec_to_json(v);
    comps.push_back(std::move(c));
  }
  out["components"] = std::move(comps);
  out["exact"] = d.exact;
  out["sum_matches"] = d.sum_matches;
  out["top_slot_zero"] = d.top_slot_zero;
  return out;
}

template <class S>
Json affine_polynomial_to_json(const AffinePolynomial<S>& a) {
  Json out;
  out["schema"] = kSchema;
  out["type"] = "affine_polynomial";
  out["mode"] = mode_name<S>();
  out["nvars"] = a.poly.nvars;
  out["degree"] = a.poly.degree;
  Json terms = Json::array();
  for (const auto& [e, c] : a.poly.coeffs) {
    Json t;
    t["exp"] = e;
    t["coef"] = scalar_to_json(c);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  out["total_degree_ok"] = a.poly.total_degree_ok;
  out["heldout_exact"] = a.heldout_exact;
  return out;
}

template <class S>
Json identity_report_to_json(const IdentityReport<S>& r) {
  Json out;
  out["schema"] = kSchema;
  out["type"] = "identity_report";
  out["mode"] = mode_name<S>();
  out["trials"] = r.trials;
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json rec;
    rec["reason"] = "valuation identity violated";
    rec["body"] = polyhedron_to_json(v.body);
    rec["direction"] = vec_to_json(v.direction);
    rec["offset"] = scalar_to_json(v.offset);
    rec["lhs"] = vec_to_json(v.lhs);
    rec["rhs"] = vec_to_json(v.rhs);
    vs.push_back(std::move(rec));
  }
  out["violations"] = std::move(vs);
  return out;
}

template <class S>
Json support_estimate_to_json(const SupportEstimate<S>& e) {
  Json out;
  out["schema"] = kSchema;
  out["type"] = "support_estimate";
  out["mode"] = mode_name<S>();
  out["label"] = e.label;
  Json probes = Json::array();
  for (const auto& p : e.probes) {
    Json rec;
    rec["x0"] = vec_to_json(p.probe.x0);
    rec["delta"] = scalar_to_json(p.probe.delta);
    rec["flagged"] = p.flagged;
    Json certs = Json::array();
    for (const auto& [k, v] : p.certificates) {
      Json c;
      c["k"] = k;
      c["value"] = vec_to_json(v);
      certs.push_back(std::move(c));
    }
    rec["certificates"] = std::move(certs);
    probes.push_back(std::move(rec));
  }
  out["probes"] = std::move(probes);
  return out;
}

template <class S>
std::vector<ProbeSpec<S>> probes_from_json(const Json& j) {
  std::vector<ProbeSpec<S>> out;
  for (const auto& p : j) {
    ProbeSpec<S> spec;
    spec.x0 = vec_from_json<S>(p.at("x0"));
    spec.delta = scalar_from_json<S>(p.at("delta"));
    out.push_back(std::move(spec));
  }
  return out;
}

template <class S>
std::vector<DCPair<S>> dc_pairs_from_json(const Json& j) {
  std::vector<DCPair<S>> out;
  for (const auto& p : j)
    out.push_back(DCPair<S>{function_from_json<S>(p.at("g")),
                            function_from_json<S>(p.at("h"))});
  return out;
}

}  // namespace cvlab

#endif  // CVLAB_JSON_IO_HPP
