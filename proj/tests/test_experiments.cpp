#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "cnplab/experiments.hpp"

using namespace cnplab;

namespace {

Json parse(const char* text) { return Json::parse(text); }

Report run_json(const char* text, std::optional<std::uint64_t> seed = std::nullopt) {
  return run(parse_config(parse(text), seed));
}

bool assertion(const Report& r, const std::string& name) {
  for (const Assertion& a : r.assertions)
    if (a.name == name) return a.passed;
  FAIL("no assertion named " << name);
  return false;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a cnplab::Error");
  return ErrorCode::InvalidArgument;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("cnplab-test-" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing rejects what it does not understand") {
  CHECK(code_of([] { parse_config(parse(R"({"experiment": "pick", "colour": 1})")); }) == ErrorCode::Config);
  CHECK(code_of([] { parse_config(parse(R"({"experiment": "nope"})")); }) == ErrorCode::Config);
  CHECK(code_of([] { parse_config(parse(R"({"name": "x"})")); }) == ErrorCode::Config);
  CHECK(code_of([] {
          parse_config(parse(R"({"experiment": "pick", "tolerances": {"psd": 1e-9, "speed": 2}})"));
        }) == ErrorCode::Config);
  // Unknown keys below the top level are caught when the experiment reads them.
  CHECK(code_of([] {
          run_json(R"({"experiment": "mate", "symbol": "zero", "params": {"grid_size": 64, "extra": 1}})");
        }) == ErrorCode::Config);
  CHECK(code_of([] {
          run_json(R"({"experiment": "mate", "symbol": {"name": "constant", "value": 1, "phase": 0}})");
        }) == ErrorCode::Config);
  CHECK(code_of([] { run_json(R"({"experiment": "mate", "symbol": "no_such_symbol"})"); }) == ErrorCode::Config);
}

TEST_CASE("generated point sets need a seed") {
  const char* text = R"({"experiment": "multnorm", "points": {"generator": "fejer", "n": 10}})";
  CHECK(code_of([&] { parse_config(parse(text)); }) == ErrorCode::Config);
  const ExperimentConfig c = parse_config(parse(text), 3);
  REQUIRE(c.seed);
  CHECK(*c.seed == 3);
  CHECK(c.echo["seed"] == 3);
}

TEST_CASE("command line seed wins over the config") {
  const ExperimentConfig c = parse_config(parse(R"({"experiment": "pick", "seed": 1})"), 99);
  CHECK(*c.seed == 99);
}

TEST_CASE("experiment list") {
  const auto names = experiment_names();
  CHECK(names.size() == 11);
  for (const char* want : {"identity-suite", "cnp-check", "pick", "multnorm", "corona", "containment", "approx",
                           "mate", "counterexample", "hyponormal", "growth"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("identity-suite on the two point Szego sample") {
  const Report r = run_json(R"({
    "experiment": "identity-suite",
    "points": {"explicit": [[0, 0], [0.5, 0]]},
    "symbol": "z",
    "params": {
      "expect_dom_tstar": [[1, 1], [1, 1.1666666666666667]],
      "expect_gram": [[1, 1], [1, 1.6666666666666667]]
    }})");
  CHECK(r.passed());
  CHECK(assertion(r, "Dom T* kernel (closed form) equals expected"));
  CHECK(assertion(r, "Dom T* kernel (projection) equals expected"));
  CHECK(assertion(r, "G_B from the projection route equals expected"));
  const Json& res = r.payload["results"];
  // (1 + |h(x)|^2 ...) hand values: K^{T*}(1/2, 1/2) = 7/6.
  CHECK(res["dom_tstar"][1][1][0].get<double>() == doctest::Approx(7.0 / 6.0).epsilon(1e-13));
  CHECK(res["gram"][1][1][0].get<double>() == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("identity-suite flags a wrong expectation") {
  const Report r = run_json(R"({
    "experiment": "identity-suite",
    "points": {"explicit": [[0, 0], [0.5, 0]]},
    "symbol": "z",
    "params": {"expect_dom_tstar": [[1, 1], [1, 1.2]]}})");
  CHECK_FALSE(r.passed());
}

TEST_CASE("identity-suite global check") {
  const Report r = run_json(R"({
    "experiment": "identity-suite",
    "params": {"global_check": {"degrees": [16, 32, 64]}}})");
  CHECK(r.passed());
}

TEST_CASE("cnp-check rejects the Bergman probe with eigenvalue -1/8") {
  const Report r = run_json(R"({
    "experiment": "cnp-check",
    "kernel": "bergman_probe",
    "points": {"explicit": [[0.5, 0], [-0.5, 0]]},
    "params": {"base_point": [0, 0], "expect": "reject", "witness_eigenvalue": -0.125}})");
  CHECK(r.passed());
  CHECK_FALSE(r.payload["results"]["accepted"].get<bool>());
}

TEST_CASE("cnp-check accepts Drury-Arveson samples") {
  const Report r = run_json(R"({
    "experiment": "cnp-check",
    "kernel": {"name": "drury_arveson", "dim": 2},
    "points": {"generator": "random", "n": 12, "dim": 2, "radius": 0.9, "min_separation": 0.3},
    "params": {"expect": "accept"}})", 11);
  CHECK(r.passed());
}

TEST_CASE("pick feasibility of the desk data") {
  // w = (0, 1/2) at (0, 1/2) is interpolated by z itself.
  const Report ok = run_json(R"({
    "experiment": "pick",
    "points": {"explicit": [[0, 0], [0.5, 0]]},
    "symbol": {"name": "table", "values": [0, 0.5]},
    "params": {"expect": true}})");
  CHECK(ok.passed());
  // Schwarz: |phi(1/2)| <= 1/2 when phi(0) = 0, so 0.9 is out of reach.
  const Report bad = run_json(R"({
    "experiment": "pick",
    "points": {"explicit": [[0, 0], [0.5, 0]]},
    "symbol": {"name": "table", "values": [0, 0.9]},
    "params": {"expect": false}})");
  CHECK(bad.passed());
  CHECK(bad.payload["results"].contains("witness"));
}

TEST_CASE("multnorm of z on the desk sample") {
  const Report r = run_json(R"({
    "experiment": "multnorm",
    "points": {"explicit": [[0, 0], [0.5, 0]]},
    "symbol": "z",
    "params": {"expect": 1.0, "tol": 1e-10}})");
  CHECK(r.passed());
}

TEST_CASE("corona of the trivial pair is 1") {
  const Report r = run_json(R"({
    "experiment": "corona",
    "points": {"explicit": [[0, 0], [0.5, 0], [0, -0.4]]},
    "pair": {"a": "one", "b": "zero"},
    "params": {"expect": 1.0, "tol": 1e-12}})");
  CHECK(r.passed());
}

TEST_CASE("corona refinement and certification") {
  const Report r = run_json(R"({
    "experiment": "corona",
    "points": {"generator": "fejer", "n": 40},
    "pair": {"a": {"name": "poly", "coeffs": [0.5, -0.5]}, "b": {"name": "constant", "value": 0.5}},
    "params": {"prefixes": [5, 10, 20, 40]}})", 1);
  CHECK(r.passed());
  CHECK(r.payload["results"]["identity_residual"].get<double>() <= 1e-10);
}

TEST_CASE("containment of Dom T* in H for h = z") {
  // K - K^{T*} is PSD because the graph norm dominates the H norm.
  const Report r = run_json(R"({
    "experiment": "containment",
    "points": {"explicit": [[0, 0], [0.5, 0], [0, 0.3]]},
    "symbol": "z",
    "params": {"m1": "KTstar", "m2": "K", "expect": true}})");
  CHECK(r.passed());
  const Report rev = run_json(R"({
    "experiment": "containment",
    "points": {"explicit": [[0, 0], [0.5, 0], [0, 0.3]]},
    "symbol": "z",
    "params": {"m1": "K", "m2": {"matrix": "KTstar", "scale": 0.5}, "expect": false}})");
  CHECK(rev.passed());
}

TEST_CASE("mate with h = 0 is (1, 0)") {
  const Report r = run_json(R"({"experiment": "mate", "symbol": "zero", "params": {"grid_size": 256}})");
  CHECK(r.passed());
  const Json& res = r.payload["results"];
  CHECK(res["max_pythagorean_residual"].get<double>() == 0.0);
  CHECK(res["a"][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(res["b"][0][0].get<double>()) == 0.0);
}

TEST_CASE("counterexample experiment") {
  const Report r = run_json(R"({"experiment": "counterexample", "params": {"N": [100, 1000]}})");
  CHECK(r.passed());
}

TEST_CASE("hyponormal probe for z1 stays nonnegative") {
  const Report r = run_json(R"({
    "experiment": "hyponormal",
    "params": {"phi": [{"alpha": [1, 0]}], "cap": 5, "expect_nonnegative": true}})");
  CHECK(r.passed());
  CHECK(r.payload["results"]["gap"].get<double>() >= -1e-12);
}

TEST_CASE("growth experiment reproduces C = 2, 10, 100") {
  const Report r = run_json(R"({
    "experiment": "growth",
    "points": {"explicit": [[0.5, 0], [0.9, 0], [0.99, 0]]},
    "symbol": "exp_inv_sq",
    "params": {"expect": [2, 10, 100]}})");
  CHECK(r.passed());
}

TEST_CASE("module errors carry the experiment name") {
  try {
    run_json(R"({"experiment": "pick", "name": "broken", "points": {"explicit": [[0.5, 0], [0.5, 0]]}})");
    FAIL("repeated points should not factor");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("broken") != std::string::npos);
  }
}

TEST_CASE("payload is byte identical across runs") {
  const char* text = R"({
    "experiment": "identity-suite",
    "params": {"sweep": {"samples": 6, "n_max": 12}}})";
  const Report a = run_json(text, 42);
  const Report b = run_json(text, 42);
  CHECK(a.payload_json() == b.payload_json());
  const Report c = run_json(text, 43);
  CHECK(a.payload_json() != c.payload_json());
}

TEST_CASE("reports land in their own directory with CSV tables") {
  const auto dir = scratch_dir("report");
  const Report r = run_json(R"({"experiment": "growth", "name": "g",
    "points": {"explicit": [[0.5, 0]]}, "symbol": "exp_inv_sq"})");
  const auto out = write_report(r, dir);
  CHECK(out == dir / "g");
  CHECK(std::filesystem::exists(out / "report.json"));
  CHECK(std::filesystem::exists(out / "growth.csv"));
  const Json back = Json::parse(read_file(out / "report.json"));
  CHECK(back["payload"] == r.payload);
  CHECK(back.contains("wall_seconds"));
  std::size_t leftovers = 0;
  for (const auto& e : std::filesystem::directory_iterator(out))
    leftovers += e.path().string().find(".tmp") != std::string::npos;
  CHECK(leftovers == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel runs each own their report") {
  const auto dir = scratch_dir("parallel");
  std::vector<std::thread> threads;
  std::vector<std::string> payloads(4);
  for (int i = 0; i < 4; ++i)
    threads.emplace_back([&, i] {
      Json j = Json::parse(R"({"experiment": "mate", "symbol": {"name": "constant", "value": 0.5},
                               "params": {"grid_size": 128}})");
      j["name"] = "mate" + std::to_string(i);
      const Report r = run(parse_config(j));
      write_report(r, dir);
      payloads[static_cast<std::size_t>(i)] = r.payload["results"].dump();
    });
  for (auto& t : threads) t.join();
  for (int i = 0; i < 4; ++i) {
    CHECK(std::filesystem::exists(dir / ("mate" + std::to_string(i)) / "report.json"));
    CHECK(payloads[static_cast<std::size_t>(i)] == payloads[0]);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("default output directory follows the environment") {
  ::setenv("CNPLAB_OUT_DIR", "/tmp/somewhere-else", 1);
  CHECK(default_output_dir() == std::filesystem::path("/tmp/somewhere-else"));
  ::unsetenv("CNPLAB_OUT_DIR");
  CHECK(default_output_dir() == std::filesystem::path("cnplab-out"));
}

TEST_CASE("points from a file") {
  const auto dir = scratch_dir("points");
  const auto file = dir / "pts.json";
  std::ofstream(file) << R"({"kernel": "szego", "points": [[0, 0], [0.5, 0]]})";
  Json j = Json::parse(R"({"experiment": "multnorm", "symbol": "z", "params": {"expect": 1.0}})");
  j["points"] = Json{{"file", file.string()}};
  const Report r = run(parse_config(j));
  CHECK(r.passed());
  std::filesystem::remove_all(dir);
}
