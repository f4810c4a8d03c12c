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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cvlab/json_io.hpp"
#include "cvlab/suites.hpp"

using namespace cvlab;
using R = Rational;
using Fn = PolyConvexFunction<R>;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CVLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("cvlab_test_") + name + ".json";
  std::ofstream f(path);
  f << content;
  return path;
}

const char* kAbsJson =
    R"({"n":1,"pieces":[{"y":["1"],"c":"0"},{"y":["-1"],"c":"0"}],"domain":"all"})";

}  // namespace

TEST_CASE("scalars parse to canonical form") {
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("5")) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK_THROWS_AS(parse_rational("x"), input_error);
  CHECK_THROWS_AS(scalar_from_json<R>(Json(0.5)), input_error);
}

TEST_CASE("json round-trips preserve canonical values") {
  Rng rng(211);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_polytope<R>(rng, 2, 6);
    CHECK(polyhedron_from_json<R>(polyhedron_to_json(p)) == p);

    const auto f = random_pl_function<R>(rng, 1 + (t % 2));
    CHECK(function_from_json<R>(function_to_json(f)) == f);
  }
  // polyhedra with rays and lineality survive the ray-pair encoding
  const auto strip = Polyhedron<R>::from_generators(
      2, {VecX<R>::Zero(2).eval()},
      {vec_of<R>({R(0), R(1)})}, {vec_of<R>({R(1), R(0)})});
  CHECK(polyhedron_from_json<R>(polyhedron_to_json(strip)) == strip);

  const auto cone = suites::lab_cone(2);
  CHECK(cone_from_json<R>(cone_to_json(cone)) == cone);
}

TEST_CASE("valuation json round-trips through re-validation") {
  const auto cone = suites::lab_cone(1);
  const auto z = make_top_degree(suites::tent_density(1), cone);
  const auto z2 = valuation_from_json<R>(valuation_to_json(z));
  CHECK(z2.d == z.d);
  CHECK(*z2.homogeneity == *z.homogeneity);
  const auto f = suites::abs_fn(1);
  CHECK(vec_eq(z2.evaluate(f), z.evaluate(f)));

  const auto dz = make_dirichlet(Polyhedron<R>::box(1, R(-1), R(1)), cone);
  const auto dual = dualize_valuation(dz);
  const auto dual2 = valuation_from_json<R>(valuation_to_json(dual));
  const auto g = conjugate(suites::abs_fn(1));
  CHECK(vec_eq(dual2.evaluate(g), dual.evaluate(g)));

  const auto target = ConeSpec<R>::make(Polyhedron<R>::full_space(1),
                                        Polyhedron<R>::box(1, R(-2), R(2)));
  const auto ze = extend_valuation(
      z, Polyhedron<R>::box(1, R(-5) / R(4), R(5) / R(4)), target, R(1) / R(4));
  const auto ze2 = valuation_from_json<R>(valuation_to_json(ze));
  Rng rng(217);
  const auto k = random_polytope<R>(rng, 2, 5);
  CHECK(vec_eq(ze2.evaluate(support_lift(k)), ze.evaluate(support_lift(k))));
}

TEST_CASE("float mode parses rational files and flags its outputs") {
  const auto j = Json::parse(kAbsJson);
  const auto f = function_from_json<double>(j);
  CHECK(*f.eval(vec_of<double>({3.0})) == doctest::Approx(3.0));
  CHECK(std::string(mode_name<double>()) == "float");
  CHECK(value_report(vec_of<double>({0.5}))["mode"] == "float");
}

TEST_CASE("cli: fn conj maps |x| to the indicator of [-1,1]") {
  const auto path = write_temp("abs", kAbsJson);
  const auto res = run_cli("fn conj " + path);
  REQUIRE(res.exit_code == 0);
  const auto parsed = function_from_json<R>(Json::parse(res.out));
  CHECK(parsed == conjugate(suites::abs_fn(1)));
  // determinism: identical bytes on a second run
  CHECK(run_cli("fn conj " + path).out == res.out);
  std::remove(path.c_str());
}

TEST_CASE("cli: fn eval inside and outside the domain") {
  const auto fpath = write_temp("ind", R"({"n":1,"pieces":[{"y":["0"],"c":"0"}],)"
                                       R"("domain":{"dim":1,"vertices":[["-1"],["1"]],"rays":[]}})");
  const auto xin = write_temp("xin", R"(["0"])");
  const auto xout = write_temp("xout", R"(["2"])");
  auto res = run_cli("fn eval " + fpath + " " + xin);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["finite"] == true);
  res = run_cli("fn eval " + fpath + " " + xout);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["finite"] == false);
  std::remove(fpath.c_str());
  std::remove(xin.c_str());
  std::remove(xout.c_str());
}

TEST_CASE("cli: exit codes for malformed input and precondition violations") {
  const auto bad = write_temp("bad", "{ not json");
  CHECK(run_cli("fn conj " + bad).exit_code == 2);
  std::remove(bad.c_str());

  // scale with t = 0 violates a precondition
  const auto fpath = write_temp("absf", kAbsJson);
  CHECK(run_cli("fn scale " + fpath + " --t 0").exit_code == 3);
  CHECK(run_cli("fn scale " + fpath + " --t 1/0").exit_code == 2);
  std::remove(fpath.c_str());
}

TEST_CASE("cli: verify flags the broken kernel with exit code 4") {
  const auto cone = suites::lab_cone(1);
  const auto broken = make_broken_max(
      std::vector<VecX<R>>{vec_of<R>({R(-1)}), vec_of<R>({R(1)})}, cone);
  const auto zpath = write_temp("broken", valuation_to_json(broken).dump());
  const auto res = run_cli("val verify " + zpath + " --trials 40 --seed 7");
  CHECK(res.exit_code == 4);
  const auto rep = Json::parse(res.out);
  CHECK(rep["type"] == "identity_report");
  CHECK(!rep["violations"].empty());
  // the reproducer carries the body and the cut
  CHECK(rep["violations"][0].contains("body"));
  CHECK(rep["violations"][0].contains("direction"));
  std::remove(zpath.c_str());
}

TEST_CASE("cli: dirichlet pipeline through files") {
  const auto cone = suites::lab_cone(1);
  const auto conep = write_temp("cone", cone_to_json(cone).dump());
  const auto bpath = write_temp(
      "B", polyhedron_to_json(Polyhedron<R>::box(1, R(-1), R(1))).dump());
  auto res = run_cli("val make --kind dirichlet --B " + bpath + " --cone " + conep);
  REQUIRE(res.exit_code == 0);
  const auto zpath = write_temp("dirichlet", res.out);

  const auto fpath = write_temp("absd", kAbsJson);
  res = run_cli("val eval " + zpath + " " + fpath);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["value"][0] == "2");

  res = run_cli("val decompose " + zpath + " " + fpath);
  REQUIRE(res.exit_code == 0);
  const auto dec = Json::parse(res.out);
  CHECK(dec["top_slot_zero"] == true);
  CHECK(dec["sum_matches"] == true);

  res = run_cli("val verify " + zpath + " --trials 25 --seed 3");
  CHECK(res.exit_code == 0);

  for (const auto& p : {conep, bpath, zpath, fpath}) std::remove(p.c_str());
}

TEST_CASE("cli: body, measure, dual and fn subcommands round through files") {
  const auto abs_path = write_temp("absp", kAbsJson);
  const auto box_path = write_temp(
      "box", polyhedron_to_json(Polyhedron<R>::box(2, R(-1), R(1))).dump());

  // body lift: |x| + 1, then a floor back down
  auto res = run_cli("body lift " + box_path);
  REQUIRE(res.exit_code == 0);
  const auto lift_path = write_temp("lift", res.out);
  CHECK(function_from_json<R>(Json::parse(res.out)) ==
        support_lift(Polyhedron<R>::box(2, R(-1), R(1))));
  res = run_cli("body floor " + box_path);
  REQUIRE(res.exit_code == 0);

  // fn max / add / min / translate
  res = run_cli("fn max " + abs_path + " " + lift_path);
  CHECK(res.exit_code == 0);
  res = run_cli("fn add " + abs_path + " " + lift_path);
  CHECK(res.exit_code == 0);
  const auto pos = write_temp(
      "pos", R"({"n":1,"pieces":[{"y":["1"],"c":"0"}],"domain":"all"})");
  const auto neg = write_temp(
      "neg", R"({"n":1,"pieces":[{"y":["-1"],"c":"0"}],"domain":"all"})");
  res = run_cli("fn min " + pos + " " + neg);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out).value("marker", "") == "not convex");
  res = run_cli("fn min " + abs_path + " " + neg);  // min(|x|, -x) = -x
  REQUIRE(res.exit_code == 0);
  CHECK(function_from_json<R>(Json::parse(res.out)) ==
        function_from_json<R>(Json::parse(
            R"({"n":1,"pieces":[{"y":["-1"],"c":"0"}],"domain":"all"})")));
  const auto shift = write_temp("shift", R"({"x":["1"],"t":"2"})");
  res = run_cli("fn translate " + abs_path + " " + shift);
  REQUIRE(res.exit_code == 0);
  CHECK(function_from_json<R>(Json::parse(res.out)) ==
        epi_translate(suites::abs_fn(1), EpiPoint<R>{vec_of<R>({R(1)}), R(2)}));

  // dual infconv / epimult / dualize
  res = run_cli("dual infconv " + abs_path + " " + abs_path);
  REQUIRE(res.exit_code == 0);
  CHECK(function_from_json<R>(Json::parse(res.out)) == suites::abs_fn(1));
  res = run_cli("dual epimult " + abs_path + " --lambda 0");
  REQUIRE(res.exit_code == 0);
  CHECK(function_from_json<R>(Json::parse(res.out)) == suites::abs_fn(1));

  // measure subdiff / theta0 / integrate
  const auto origin = write_temp("origin", R"(["0"])");
  res = run_cli("measure subdiff " + abs_path + " " + origin);
  REQUIRE(res.exit_code == 0);
  CHECK(polyhedron_from_json<R>(Json::parse(res.out)) ==
        Polyhedron<R>::box(1, R(-1), R(1)));
  const auto region = write_temp(
      "region", polyhedron_to_json(Polyhedron<R>::box(1, R(-2), R(2))).dump());
  res = run_cli("measure theta0 " + abs_path + " " + region);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["total_mass"] == "2");
  const auto phi = write_temp(
      "phi", density_to_json(suites::tent_density(0)).dump());
  res = run_cli("measure integrate " + abs_path + " " + phi + " " + region);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["value"][0] == "2");

  // body replace: the worked truncation example
  const auto a_path = write_temp(
      "A", polyhedron_to_json(Polyhedron<R>::box(1, R(-1), R(1))).dump());
  res = run_cli("body replace " + abs_path + " " + a_path + " --eps 1/2");
  REQUIRE(res.exit_code == 0);
  CHECK(polyhedron_from_json<R>(Json::parse(res.out)) ==
        replace_by_body(suites::abs_fn(1),
                        Polyhedron<R>::box(1, R(-1), R(1)), R(1) / R(2)));

  for (const auto& p : {abs_path, box_path, lift_path, pos, neg, shift, origin,
                        region, phi, a_path})
    std::remove(p.c_str());
}

TEST_CASE("cli: valuation analysis subcommands") {
  const auto cone = suites::lab_cone(1);
  const auto zt = make_top_degree(suites::tent_density(0), cone);
  const auto z_path = write_temp("ztop", valuation_to_json(zt).dump());
  const auto abs_path = write_temp("absv", kAbsJson);

  auto res = run_cli("val fit " + z_path + " " + abs_path);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["heldout_exact"] == true);

  const auto fns = write_temp("fns", "[" + std::string(kAbsJson) + "]");
  res = run_cli("val polarize " + z_path + " " + fns);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["value"][0] == "2");

  const auto dc = dc_decompose_catalog<R>(1, vec_of<R>({R(0)}), R(1) / R(4));
  Json pair;
  pair["g"] = function_to_json(dc.first);
  pair["h"] = function_to_json(dc.second);
  const auto pairs = write_temp("pairs", Json::array({pair}).dump());
  res = run_cli("val gw " + z_path + " " + pairs);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["value"][0] == "-2");

  const auto probes = write_temp(
      "probes",
      R"([{"x0":["-2"],"delta":"1/4"},{"x0":["0"],"delta":"1/4"},{"x0":["2"],"delta":"1/4"}])");
  res = run_cli("val support " + z_path + " " + probes);
  REQUIRE(res.exit_code == 0);
  {
    const auto rep = Json::parse(res.out);
    CHECK(rep["probes"][0]["flagged"] == false);
    CHECK(rep["probes"][1]["flagged"] == true);
    CHECK(rep["probes"][2]["flagged"] == false);
  }

  const auto target = ConeSpec<R>::make(Polyhedron<R>::full_space(1),
                                        Polyhedron<R>::box(1, R(-2), R(2)));
  const auto tcone = write_temp("tcone", cone_to_json(target).dump());
  const auto a_path = write_temp(
      "Aext",
      polyhedron_to_json(Polyhedron<R>::box(1, R(-5) / R(4), R(5) / R(4))).dump());
  res = run_cli("val extend " + z_path + " --A " + a_path + " --cone " + tcone +
                " --eps 1/4");
  REQUIRE(res.exit_code == 0);
  const auto ze_path = write_temp("zext", res.out);
  res = run_cli("val eval " + ze_path + " " + abs_path);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["value"][0] == "2");

  res = run_cli("dual dualize " + z_path);
  REQUIRE(res.exit_code == 0);
  CHECK(Json::parse(res.out)["kind"] == "dualized");

  for (const auto& p : {z_path, abs_path, fns, pairs, probes, tcone, a_path,
                        ze_path})
    std::remove(p.c_str());
}

TEST_CASE("cli: suite run emits a machine-readable report") {
  const auto res = run_cli("suite run hessian --seed 7");
  REQUIRE(res.exit_code == 0);
  const auto rep = Json::parse(res.out);
  CHECK(rep["schema"] == "cvlab/1");
  CHECK(rep["type"] == "suite_report");
  CHECK(rep["criteria"].size() == 1);
  CHECK(rep["criteria"][0]["pass"] == true);
  // byte-identical on a second run with the same seed
  CHECK(run_cli("suite run hessian --seed 7").out == res.out);
}

TEST_CASE("cli: dual dist runs in float mode by construction") {
  const auto f = write_temp("f", kAbsJson);
  const auto res = run_cli("dual dist " + f + " " + f + " --rho 10");
  REQUIRE(res.exit_code == 0);
  const auto j = Json::parse(res.out);
  CHECK(j["mode"] == "float");
  CHECK(j["value"].get<double>() == doctest::Approx(0.0));
  std::remove(f.c_str());
}
