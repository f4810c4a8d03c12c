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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cvlab/json_io.hpp"
#include "cvlab/suites.hpp"

namespace {

using cvlab::Json;

constexpr int kExitMalformed = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitFalsified = 4;

struct Options {
  std::string mode = "rational";
  uint64_t seed = 0;
  int dim_limit = 4;

  std::string group, op;
  std::vector<std::string> files;
  std::string scalar;   // --t / --lambda / --rho / --eps
  std::string kind;     // val make
  std::string density_file, b_file, probes_file, a_file, cone_file;
  std::string suite = "all";
  int trials = 200;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cvlab::input_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Json::parse(buf.str());
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit_error(const char* code, const std::string& message, int exit_code) {
  Json err;
  err["schema"] = cvlab::kSchema;
  err["type"] = "error";
  err["code"] = code;
  err["message"] = message;
  std::cerr << err.dump(2) << "\n";
  return exit_code;
}

template <class S>
int run_fn(const Options& opt) {
  using namespace cvlab;
  if (opt.op == "eval") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto x = vec_from_json<S>(read_json(opt.files.at(1)));
    const auto v = f.eval(x);
    Json out;
    out["schema"] = kSchema;
    out["type"] = "eval";
    out["mode"] = mode_name<S>();
    out["finite"] = v.has_value();
    if (v) out["value"] = scalar_to_json(*v);
    emit(out);
    return 0;
  }
  if (opt.op == "max" || opt.op == "add") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto g = function_from_json<S>(read_json(opt.files.at(1)));
    emit(function_to_json(opt.op == "max" ? pointwise_max(f, g) : add(f, g)));
    return 0;
  }
  if (opt.op == "min") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto g = function_from_json<S>(read_json(opt.files.at(1)));
    const auto m = pointwise_min_checked(f, g);
    if (m) {
      emit(function_to_json(*m));
    } else {
      Json out;
      out["schema"] = kSchema;
      out["type"] = "marker";
      out["marker"] = "not convex";
      emit(out);
    }
    return 0;
  }
  if (opt.op == "scale") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    emit(function_to_json(scale(f, scalar_from_json<S>(Json(opt.scalar)))));
    return 0;
  }
  if (opt.op == "conj") {
    emit(function_to_json(
        conjugate(function_from_json<S>(read_json(opt.files.at(0))))));
    return 0;
  }
  if (opt.op == "translate") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto x = epipoint_from_json<S>(read_json(opt.files.at(1)));
    emit(function_to_json(epi_translate(f, x)));
    return 0;
  }
  throw cvlab::input_error("unknown fn operation: " + opt.op);
}

template <class S>
int run_body(const Options& opt) {
  using namespace cvlab;
  if (opt.op == "lift") {
    emit(function_to_json(
        support_lift(polyhedron_from_json<S>(read_json(opt.files.at(0))))));
    return 0;
  }
  if (opt.op == "floor") {
    emit(function_to_json(
        floor_body(polyhedron_from_json<S>(read_json(opt.files.at(0))))));
    return 0;
  }
  if (opt.op == "replace") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto a = polyhedron_from_json<S>(read_json(opt.files.at(1)));
    const auto k = replace_by_body(f, a, scalar_from_json<S>(Json(opt.scalar)));
    emit(polyhedron_to_json(k));
    return 0;
  }
  throw cvlab::input_error("unknown body operation: " + opt.op);
}

template <class S>
int run_dual(const Options& opt) {
  using namespace cvlab;
  if (opt.op == "conj") {
    emit(function_to_json(
        conjugate(function_from_json<S>(read_json(opt.files.at(0))))));
    return 0;
  }
  if (opt.op == "infconv") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto g = function_from_json<S>(read_json(opt.files.at(1)));
    emit(function_to_json(inf_conv(f, g)));
    return 0;
  }
  if (opt.op == "epimult") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    emit(function_to_json(epi_mult(f, scalar_from_json<S>(Json(opt.scalar)))));
    return 0;
  }
  if (opt.op == "dist") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto g = function_from_json<S>(read_json(opt.files.at(1)));
    Json out;
    out["schema"] = kSchema;
    out["type"] = "epi_distance";
    out["mode"] = "float";
    out["value"] = epi_distance(f, g, scalar_from_json<S>(Json(opt.scalar)));
    emit(out);
    return 0;
  }
  if (opt.op == "dualize") {
    emit(valuation_to_json(dualize_valuation(
        valuation_from_json<S>(read_json(opt.files.at(0))))));
    return 0;
  }
  throw cvlab::input_error("unknown dual operation: " + opt.op);
}

template <class S>
int run_measure(const Options& opt) {
  using namespace cvlab;
  if (opt.op == "subdiff") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto x = vec_from_json<S>(read_json(opt.files.at(1)));
    emit(polyhedron_to_json(subdifferential(f, x)));
    return 0;
  }
  if (opt.op == "theta0") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto region = polyhedron_from_json<S>(read_json(opt.files.at(1)));
    emit(atoms_to_json(theta0(f, region)));
    return 0;
  }
  if (opt.op == "integrate") {
    const auto f = function_from_json<S>(read_json(opt.files.at(0)));
    const auto phi = density_from_json<S>(read_json(opt.files.at(1)));
    const auto region = polyhedron_from_json<S>(read_json(opt.files.at(2)));
    VecX<S> v(1);
    v(0) = integrate_against_theta0(f, phi, region);
    emit(value_report(v));
    return 0;
  }
  throw cvlab::input_error("unknown measure operation: " + opt.op);
}

template <class S>
int run_val(const Options& opt) {
  using namespace cvlab;
  if (opt.op == "make") {
    const auto cone = cone_from_json<S>(read_json(opt.cone_file));
    if (opt.kind == "top_degree") {
      emit(valuation_to_json(make_top_degree(
          density_from_json<S>(read_json(opt.density_file)), cone)));
    } else if (opt.kind == "dirichlet") {
      emit(valuation_to_json(make_dirichlet(
          polyhedron_from_json<S>(read_json(opt.b_file)), cone)));
    } else if (opt.kind == "broken_max") {
      std::vector<VecX<S>> probes;
      for (const auto& p : read_json(opt.probes_file))
        probes.push_back(vec_from_json<S>(p));
      emit(valuation_to_json(make_broken_max(std::move(probes), cone)));
    } else {
      throw cvlab::input_error("val make supports kinds top_degree, dirichlet, broken_max");
    }
    return 0;
  }
  const auto z = valuation_from_json<S>(read_json(opt.files.at(0)));
  if (opt.op == "eval") {
    emit(value_report(
        z.evaluate(function_from_json<S>(read_json(opt.files.at(1))))));
    return 0;
  }
  if (opt.op == "fit") {
    const auto fit =
        affine_poly_fit(z, function_from_json<S>(read_json(opt.files.at(1))));
    emit(affine_polynomial_to_json(fit));
    return 0;
  }
  if (opt.op == "decompose") {
    const auto res = decompose_homogeneous(
        z, function_from_json<S>(read_json(opt.files.at(1))));
    emit(decomposition_to_json(res));
    if (!res.sum_matches || !res.top_slot_zero) return kExitFalsified;
    return 0;
  }
  if (opt.op == "polarize") {
    std::vector<PolyConvexFunction<S>> fs;
    for (const auto& f : read_json(opt.files.at(1)))
      fs.push_back(function_from_json<S>(f));
    emit(value_report(polarize(z, fs)));
    return 0;
  }
  if (opt.op == "gw") {
    emit(value_report(
        gw_evaluate(z, dc_pairs_from_json<S>(read_json(opt.files.at(1))))));
    return 0;
  }
  if (opt.op == "support") {
    emit(support_estimate_to_json(
        support_estimate(z, probes_from_json<S>(read_json(opt.files.at(1))))));
    return 0;
  }
  if (opt.op == "extend") {
    emit(valuation_to_json(extend_valuation(
        z, polyhedron_from_json<S>(read_json(opt.a_file)),
        cone_from_json<S>(read_json(opt.cone_file)),
        scalar_from_json<S>(Json(opt.scalar)))));
    return 0;
  }
  if (opt.op == "verify") {
    const auto rep = verify_valuation_identity(z, opt.trials, opt.seed);
    emit(identity_report_to_json(rep));
    if (!rep.violations.empty()) return kExitFalsified;
    return 0;
  }
  throw cvlab::input_error("unknown val operation: " + opt.op);
}

int run_suite_cmd(const Options& opt) {
  using namespace cvlab;
  if (opt.mode != "rational")
    throw precondition_error("suites are exact and run in rational mode");
  const auto results = run_suite(opt.suite, opt.seed);
  Json out;
  out["schema"] = kSchema;
  out["type"] = "suite_report";
  out["mode"] = "rational";
  out["suite"] = opt.suite;
  out["seed"] = opt.seed;
  bool all_pass = true;
  Json criteria = Json::array();
  for (const auto& r : results) {
    Json c;
    c["id"] = r.id;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["details"] = r.details;
    criteria.push_back(std::move(c));
    all_pass = all_pass && r.pass;
  }
  out["criteria"] = std::move(criteria);
  emit(out);
  return all_pass ? 0 : kExitFalsified;
}

int dispatch(const Options& opt) {
  cvlab::set_dimension_limit(opt.dim_limit);
  const bool rational = (opt.mode == "rational");
  if (!rational && opt.mode != "float")
    throw cvlab::input_error("mode must be rational or float");
  if (opt.group == "fn")
    return rational ? run_fn<cvlab::Rational>(opt) : run_fn<double>(opt);
  if (opt.group == "body")
    return rational ? run_body<cvlab::Rational>(opt) : run_body<double>(opt);
  if (opt.group == "dual")
    return rational ? run_dual<cvlab::Rational>(opt) : run_dual<double>(opt);
  if (opt.group == "measure")
    return rational ? run_measure<cvlab::Rational>(opt)
                    : run_measure<double>(opt);
  if (opt.group == "val")
    return rational ? run_val<cvlab::Rational>(opt) : run_val<double>(opt);
  if (opt.group == "suite") return run_suite_cmd(opt);
  throw cvlab::input_error("unknown command group: " + opt.group);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("CVLAB_MODE")) opt.mode = env;

  CLI::App app{"cvlab: exact polyhedral lab for valuations on convex functions"};
  app.require_subcommand(1);
  app.add_option("--mode", opt.mode, "rational (default) or float");
  app.add_option("--seed", opt.seed, "seed for generators");
  app.add_option("--dim-limit", opt.dim_limit,
                 "ambient dimension cap for representation conversion");

  struct Leaf {
    const char* group;
    const char* op;
    int files;
    const char* scalar_flag;
  };
  static const Leaf leaves[] = {
      {"fn", "eval", 2, nullptr},      {"fn", "max", 2, nullptr},
      {"fn", "min", 2, nullptr},       {"fn", "add", 2, nullptr},
      {"fn", "scale", 1, "--t"},       {"fn", "conj", 1, nullptr},
      {"fn", "translate", 2, nullptr}, {"body", "lift", 1, nullptr},
      {"body", "floor", 1, nullptr},   {"body", "replace", 2, "--eps"},
      {"dual", "conj", 1, nullptr},    {"dual", "infconv", 2, nullptr},
      {"dual", "epimult", 1, "--lambda"}, {"dual", "dist", 2, "--rho"},
      {"dual", "dualize", 1, nullptr}, {"measure", "subdiff", 2, nullptr},
      {"measure", "theta0", 2, nullptr}, {"measure", "integrate", 3, nullptr},
      {"val", "eval", 2, nullptr},     {"val", "fit", 2, nullptr},
      {"val", "decompose", 2, nullptr}, {"val", "polarize", 2, nullptr},
      {"val", "gw", 2, nullptr},       {"val", "support", 2, nullptr},
      {"val", "verify", 1, nullptr},
  };

  std::map<std::string, CLI::App*> groups;
  for (const char* g : {"fn", "body", "dual", "measure", "val", "suite"}) {
    groups[g] = app.add_subcommand(g);
    groups[g]->require_subcommand(1);
    groups[g]->fallthrough();
  }
  for (const auto& leaf : leaves) {
    auto* sub = groups[leaf.group]->add_subcommand(leaf.op);
    sub->fallthrough();
    sub->add_option("files", opt.files)->expected(leaf.files);
    if (leaf.scalar_flag)
      sub->add_option(leaf.scalar_flag, opt.scalar)->required();
    if (std::string(leaf.op) == "verify") {
      sub->add_option("--trials", opt.trials);
    }
    sub->callback([&opt, &leaf] {
      opt.group = leaf.group;
      opt.op = leaf.op;
    });
  }
  {
    auto* mk = groups["val"]->add_subcommand("make");
    mk->fallthrough();
    mk->add_option("--kind", opt.kind)->required();
    mk->add_option("--cone", opt.cone_file)->required();
    mk->add_option("--density", opt.density_file);
    mk->add_option("--B", opt.b_file);
    mk->add_option("--probes", opt.probes_file);
    mk->callback([&opt] {
      opt.group = "val";
      opt.op = "make";
    });
    auto* ex = groups["val"]->add_subcommand("extend");
    ex->fallthrough();
    ex->add_option("valuation", opt.files)->expected(1);
    ex->add_option("--A", opt.a_file)->required();
    ex->add_option("--cone", opt.cone_file)->required();
    ex->add_option("--eps", opt.scalar)->required();
    ex->callback([&opt] {
      opt.group = "val";
      opt.op = "extend";
    });
    auto* run = groups["suite"]->add_subcommand("run");
    run->fallthrough();
    run->add_option("name", opt.suite)->required();
    run->callback([&opt] {
      opt.group = "suite";
      opt.op = "run";
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return dispatch(opt);
  } catch (const cvlab::input_error& e) {
    return emit_error("malformed_input", e.what(), kExitMalformed);
  } catch (const Json::exception& e) {
    return emit_error("malformed_input", e.what(), kExitMalformed);
  } catch (const cvlab::precondition_error& e) {
    return emit_error("precondition", e.what(), kExitPrecondition);
  } catch (const cvlab::falsified_error& e) {
    return emit_error("falsified", e.what(), kExitFalsified);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
}
