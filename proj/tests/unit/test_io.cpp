#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "ctphs/error.hpp"
#include "ctphs/io.hpp"
#include "ctphs/report.hpp"
#include "oracles.hpp"

using namespace ctphs;

TEST_CASE("spec round trip and consistency") {
  for (auto [kind, d] : {std::pair{Kind::Sphere, 4}, std::pair{Kind::RealProjective, 3},
                         std::pair{Kind::ComplexProjective, 7}, std::pair{Kind::QuaternionProjective, 13},
                         std::pair{Kind::CayleyPlane, 17}}) {
    const auto s = make_spec(kind, d);
    CHECK(spec_from_json(to_json(s)) == s);
  }
  auto j = to_json(make_spec(Kind::Sphere, 3));
  j["b"] = 5;
  CHECK_THROWS_AS(spec_from_json(j), ParameterError);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json{{"kind", "sphere"}}), ParameterError);
  CHECK(spec_from_json(nlohmann::json{{"kind", "cp"}, {"d", 5}}).b == 1);
}

TEST_CASE("points and zonal sums") {
  const auto s = make_spec(Kind::ComplexProjective, 5);
  const Point p = sample_uniform(s, 3);
  CHECK(point_from_json(s, to_json(p)) == p);
  CHECK_THROWS_AS(point_from_json(s, nlohmann::json::array({1.0, 0.0})), ParameterError);
  CHECK_THROWS_AS(point_from_json(s, nlohmann::json::array({2.0, 0, 0, 0, 0, 0})), ParameterError);

  const ZonalSum f = ZonalSum(s, 3, {sample_uniform(s, 1), sample_uniform(s, 2)}, {0.5, -1.25})
                         .scale_spectral({1.0, 0.5, 0.25, 0.125});
  const ZonalSum g = zonal_from_json(nlohmann::json::parse(dump_artifact(to_json(f))));
  CHECK(g.degree() == f.degree());
  CHECK(g.coeffs() == f.coeffs());
  CHECK(g.spectral() == f.spectral());
  const Point x = sample_uniform(s, 9);
  CHECK(zonal_eval(g, x) == zonal_eval(f, x));
}

TEST_CASE("covering and rule artifacts are lossless") {
  const auto s = make_spec(Kind::Sphere, 3);
  CoveringOptions co;
  co.verify_probes = 2000;
  const auto cov = build_covering(s, 0.6, 4, co);
  const std::string text = dump_artifact(to_json(cov));
  CHECK(text.back() == '\n');
  const auto back = covering_from_json(nlohmann::json::parse(text));
  CHECK(back.nodes == cov.nodes);
  CHECK(back.r == cov.r);
  CHECK(back.separation == cov.separation);
  CHECK(back.multiplicity_observed == cov.multiplicity_observed);
  CHECK(back.seed == cov.seed);
  CHECK(back.verification.max_gap == cov.verification.max_gap);
  CHECK(dump_artifact(to_json(back)) == text);

  const auto rule = build_rule(cov, 3, 2);
  const std::string rtext = dump_artifact(to_json(rule));
  const auto rback = rule_from_json(nlohmann::json::parse(rtext));
  CHECK(rback.weights == rule.weights);
  CHECK(rback.nodes == rule.nodes);
  CHECK(rback.residual == rule.residual);
  CHECK(rback.tolerance == rule.tolerance);
  CHECK(rback.converged == rule.converged);
  CHECK(dump_artifact(to_json(rback)) == rtext);

  auto bad = to_json(rule);
  bad["weights"][0] = -0.1;
  CHECK_THROWS_AS(rule_from_json(bad), ParameterError);
  bad = to_json(rule);
  bad["weights"].erase(bad["weights"].size() - 1);
  CHECK_THROWS_AS(rule_from_json(bad), ParameterError);
  CHECK_THROWS_AS(rule_from_json(to_json(cov)), ParameterError);
  CHECK_THROWS_AS(covering_from_json(to_json(rule)), ParameterError);
}

TEST_CASE("sha256 and files") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto path = (std::filesystem::temp_directory_path() / "ctphs_io_test.bin").string();
  const std::string bytes("a\0b\nc", 5);
  write_file(path, bytes);
  CHECK(read_file(path) == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file(path), ParameterError);
}

TEST_CASE("experiment reports") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e300) == "1e+300");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(NAN) == "nan");
  for (double v : {1.0 / 3.0, 6.02214076e23, -2.5e-310}) {
    const std::string t = format_double(v);
    double back = 0.0;
    std::from_chars(t.data(), t.data() + t.size(), back);
    CHECK(back == v);
  }

  ExperimentReport rep;
  rep.experiment = "demo";
  rep.key_columns = {"n", "p"};
  rep.provenance = {{"seed", 7}};
  rep.add({8, 2}, "band", 1.25);
  rep.add({8, INFINITY}, "band", 1.5);
  CHECK_THROWS_AS(rep.add({1}, "x", 0), ParameterError);
  CHECK(*rep.find({8, INFINITY}, "band") == 1.5);
  CHECK_FALSE(rep.find({8, 1}, "band"));

  std::ostringstream os;
  rep.write_csv(os);
  CHECK(os.str() ==
        "# schema: ctphs-report/1\n# experiment: demo\n# provenance: {\"seed\":7}\n"
        "n,p,statistic,value\n8,2,band,1.25\n8,inf,band,1.5\n");

  const auto back = ExperimentReport::from_json(nlohmann::json::parse(rep.to_json().dump()));
  CHECK(back.experiment == rep.experiment);
  CHECK(back.key_columns == rep.key_columns);
  REQUIRE(back.rows.size() == 2);
  CHECK(std::isinf(back.rows[1].keys[1]));
  CHECK(back.rows[1].value == 1.5);
  CHECK(back.provenance == rep.provenance);
}
