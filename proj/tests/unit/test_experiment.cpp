#include <gtest/gtest.h>

#include <filesystem>
#include <regex>
#include <sstream>

#include "pcops/errors.hpp"
#include "pcops/experiment.hpp"
#include "pcops/trace_io.hpp"

using namespace pcops;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = PCOPS_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "pcops_experiment_test" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

struct Captured {
  int status;
  std::string out;
  std::string err;
};

Captured run_text(const std::string& text, const fs::path& out_dir, bool quiet = true) {
  std::ostringstream out, err;
  RunOptions o;
  o.out_dir = out_dir;
  o.quiet = quiet;
  o.out = &out;
  o.err = &err;
  o.clock = [] { return std::string("fixed"); };
  const fs::path cfg = out_dir / "config.json";
  write_text_file(cfg, text);
  const int status = run_experiment_file(cfg, o);
  return {status, out.str(), err.str()};
}

const char* kGd = R"({
  "method": {"kind": "gradient_descent"},
  "problem": {"smooth": {"kind": "spd_quadratic", "n": 4, "seed": 1, "spectrum": [0.5, 2]}},
  "run": {"N": 200, "seed": 5},
  "checks": ["lemma1", "thm2", "thm4", "definition", "nu-estimate"],
  "pairs": 500
})";

std::string strip_timestamp(std::string s) {
  return std::regex_replace(s, std::regex("\"generated_at\": \"[^\"]*\""), "");
}

void expect_config_error(const std::string& text, const std::string& needle,
                         std::size_t line = 0) {
  try {
    parse_config(text);
    ADD_FAILURE() << "expected ConfigError containing '" << needle << "'";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    if (line) EXPECT_EQ(e.line(), line) << e.what();
  }
}

}  // namespace

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(ParseConfig, AliasesAndDefaults) {
  const ExperimentConfig c = parse_config(kGd, "gd");
  EXPECT_EQ(c.name, "gd");
  EXPECT_EQ(c.iterations, 200u);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.pairs, 500u);
  const std::vector<std::string> expected = {"monotone-decrease", "rate-bound", "small-o", "definition",
                                             "nu-estimate"};
  EXPECT_EQ(c.checks, expected);
  EXPECT_TRUE(std::holds_alternative<RandomStart>(c.start));
  EXPECT_EQ(c.config_hash, fnv1a_hex(kGd));
  const auto& gd = std::get<method::GradientDescent>(c.method);
  EXPECT_EQ(gd.gamma, 1.0 / gd.f.lipschitz());
}

TEST(ParseConfig, MalformedJsonReportsLine) {
  expect_config_error("{\n  \"method\": {\"kind\": \"identity\"},\n  oops\n}", "malformed JSON", 3);
}

TEST(ParseConfig, MissingAndUnknownFields) {
  expect_config_error("{}", "field 'method'");
  expect_config_error(R"({"method": {"kind": "newton"}, "problem": {"dim": 2}})", "unknown method kind");
  expect_config_error(R"({"method": {"kind": "gradient_descent"}})", "needs problem.smooth");
  expect_config_error(R"({"method": {"kind": "identity"}, "problem": {"dim": 2}, "checks": ["thm9"]})",
                      "unknown claim id 'thm9'");
}

TEST(ParseConfig, FieldPathAndLine) {
  const std::string text =
      "{\n"
      "  \"method\": {\"kind\": \"identity\"},\n"
      "  \"problem\": {\"dim\": 2},\n"
      "  \"run\": {\"N\": -4}\n"
      "}";
  try {
    parse_config(text);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "run.N");
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseConfig, EveryWindowRejectedWithIntervalNamed) {
  const std::string smooth =
      R"("problem": {"smooth": {"kind": "quadratic", "A": [[2, 0], [0, 1]], "b": [1, 1], "L": 2},
                     "prox": {"kind": "l1", "weight": 0.1},
                     "prox_f": {"kind": "half_norm_sq"}, "prox_g": {"kind": "half_norm_sq"},
                     "sets": [{"kind": "ball", "center": [0, 0], "radius": 1}], "dim": 2})";
  auto cfg = [&](const std::string& method) { return "{\"method\": " + method + ", " + smooth + "}"; };
  expect_config_error(cfg(R"({"kind": "gradient_descent", "gamma": 1.0})"), "(0, 2/L)");
  expect_config_error(cfg(R"({"kind": "gradient_descent", "gamma_L": 2.0})"), "(0, 2/L)");
  expect_config_error(cfg(R"({"kind": "projected_gd", "gamma": 0})"), "(0, 2/L)");
  expect_config_error(cfg(R"({"kind": "forward_backward", "gamma": 1.5})"), "(0, 2/L)");
  expect_config_error(cfg(R"({"kind": "relaxed_projection", "omega": 2})"), "(0, 2)");
  expect_config_error(cfg(R"({"kind": "relaxed_prox", "omega": 0})"), "(0, 2)");
  expect_config_error(cfg(R"({"kind": "forward_backward", "omega": 2.5})"), "(0, 2)");
  expect_config_error(cfg(R"({"kind": "proximal_point", "lambda": 0})"), "lambda must lie in the open interval (0, inf)");
  expect_config_error(cfg(R"({"kind": "admm", "lambda": -1})"), "lambda must lie in the open interval (0, inf)");
  expect_config_error(cfg(R"({"kind": "generalized_admm", "alpha": 1})"), "(0, 1)");
  expect_config_error(cfg(R"({"kind": "generalized_admm", "alpha": 0})"), "(0, 1)");
}

TEST(ParseConfig, ProxInclusionNeedsProx) {
  expect_config_error(
      R"({"method": {"kind": "identity"}, "problem": {"dim": 2}, "checks": ["prox-inclusion"]})",
      "prox-inclusion");
}

TEST(ParseConfig, ProblemValidation) {
  expect_config_error(
      R"({"method": {"kind": "gradient_descent"},
          "problem": {"smooth": {"kind": "quadratic", "A": [[1, 0], [0, -1]], "b": [0, 0], "L": 1}}})",
      "field 'problem.smooth'");
  expect_config_error(
      R"({"method": {"kind": "relaxed_projection"},
          "problem": {"sets": [{"kind": "box", "lo": [1, 1], "hi": [0, 0]}]}})",
      "problem.sets[0]");
  expect_config_error(
      R"({"method": {"kind": "identity"}, "problem": {"dim": 2}, "start": [1, 2, 3]})", "start");
}

TEST(RunExperiment, GdRunPassesAndWritesOutputs) {
  const fs::path dir = scratch("gd");
  const Captured r = run_text(kGd, dir, false);
  EXPECT_EQ(r.status, exit_status::kOk) << r.out << r.err;
  EXPECT_TRUE(fs::exists(dir / "config.trace.csv"));
  EXPECT_TRUE(fs::exists(dir / "config.trace.json"));
  EXPECT_TRUE(fs::exists(dir / "config.report.json"));
  // One line per check, prefixed with its status.
  for (const char* id : {"monotone-decrease", "rate-bound", "small-o-hard-bound", "definition", "nu-estimate"})
    EXPECT_NE(r.out.find(std::string("PASS ") + id), std::string::npos) << r.out;
  const IterationTrace t = trace_from_json(read_text_file(dir / "config.trace.json"));
  EXPECT_EQ(t.iterations(), 200u);
}

TEST(RunExperiment, ReportSchema) {
  const fs::path dir = scratch("schema");
  ASSERT_EQ(run_text(kGd, dir).status, 0);
  const std::string rep = read_text_file(dir / "config.report.json");
  for (const char* key : {"\"generated_at\": \"fixed\"", "\"config_hash\"", "\"build\": \"pcops ",
                          "\"claim_id\"", "\"passed\"", "\"worst_residual\"", "\"tolerance\"",
                          "\"samples\"", "\"seed\"", "\"summary\""})
    EXPECT_NE(rep.find(key), std::string::npos) << key;
}

TEST(RunExperiment, DeterministicAcrossRuns) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(run_text(kGd, a).status, 0);
  ASSERT_EQ(run_text(kGd, b).status, 0);
  for (const char* f : {"config.trace.csv", "config.trace.json"})
    EXPECT_EQ(read_text_file(a / f), read_text_file(b / f)) << f;
  EXPECT_EQ(strip_timestamp(read_text_file(a / "config.report.json")),
            strip_timestamp(read_text_file(b / "config.report.json")));
}

TEST(RunExperiment, SeedOverrideChangesRandomStart) {
  const fs::path a = scratch("seed_a"), b = scratch("seed_b");
  std::ostringstream sink;
  RunOptions o;
  o.quiet = true;
  o.out = o.err = &sink;
  ExperimentConfig c = parse_config(kGd, "s");
  o.out_dir = a;
  const ExperimentResult ra = execute(c, o);
  o.out_dir = b;
  o.seed = 77;
  const ExperimentResult rb = execute(c, o);
  EXPECT_NE(ra.trace.points[0], rb.trace.points[0]);
  EXPECT_EQ(rb.report.seed, 77u);
}

TEST(RunExperiment, IdentityAllResidualsZero) {
  const fs::path dir = scratch("identity");
  const Captured r = run_text(
      R"({"method": {"kind": "identity"}, "problem": {"dim": 3}, "start": [1, 2, 3],
          "checks": ["definition", "nu-estimate", "lemma1", "thm2", "thm4"]})",
      dir);
  EXPECT_EQ(r.status, 0) << r.err;
  const IterationTrace t = trace_from_json(read_text_file(dir / "config.trace.json"));
  EXPECT_EQ(t.iterations(), 1000u);
  for (double v : t.residual_sq) EXPECT_EQ(v, 0.0);
}

TEST(RunExperiment, BundledQuadraticGd) {
  const fs::path dir = scratch("bundled");
  std::ostringstream sink;
  RunOptions o;
  o.out_dir = dir;
  o.quiet = true;
  o.out = o.err = &sink;
  EXPECT_EQ(run_experiment_file(kConfigs / "quadratic_gd.json", o), 0) << sink.str();
  const std::string csv = read_text_file(dir / "quadratic_gd.trace.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1001);
}

TEST(RunExperiment, BadGammaExitsTwoNamingInterval) {
  std::ostringstream out, err;
  RunOptions o;
  o.out_dir = scratch("bad");
  o.out = &out;
  o.err = &err;
  EXPECT_EQ(run_experiment_file(kConfigs / "bad_gamma.json", o), exit_status::kConfigError);
  EXPECT_NE(err.str().find("open interval (0, 2/L)"), std::string::npos) << err.str();
}

TEST(RunExperiment, MissingConfigFileExitsTwo) {
  std::ostringstream sink;
  RunOptions o;
  o.out = o.err = &sink;
  EXPECT_EQ(run_experiment_file("/nonexistent/config.json", o), exit_status::kConfigError);
}

TEST(RunExperiment, NumericBlowUpExitsThree) {
  const Captured r = run_text(
      R"({"method": {"kind": "gradient_descent"},
          "problem": {"smooth": {"kind": "quadratic", "A": [[2, 0], [0, 2]], "b": [0, 0], "L": 2}},
          "start": [1e308, 1e308], "checks": ["lemma1"]})",
      scratch("blowup"));
  EXPECT_EQ(r.status, exit_status::kNumericError) << r.err;
  EXPECT_NE(r.err.find("iteration 0"), std::string::npos) << r.err;
}

TEST(RunExperiment, UnwritableOutputExitsFour) {
  std::ostringstream sink;
  RunOptions o;
  o.out_dir = "/proc/pcops-cannot-write-here";
  o.quiet = true;
  o.out = o.err = &sink;
  EXPECT_EQ(run_experiment(parse_config(kGd), o), exit_status::kIoError);
}

TEST(RunExperiment, FailingCheckExitsOne) {
  VerificationReport rep;
  rep.checks = {make_check("a", 0, 1, 1, 0, "")};
  EXPECT_EQ(status_for(rep), exit_status::kOk);
  rep.checks.push_back(make_check("b", 2, 1, 1, 0, ""));
  EXPECT_EQ(status_for(rep), exit_status::kCheckFailed);
  rep.checks.clear();
  EXPECT_EQ(status_for(rep), exit_status::kOk);
}

TEST(RunExperiment, CheckFailureThroughPipelineExitsOne) {
  // A 5-step trace is too short for the small-o check.
  const Captured r = run_text(
      R"({"method": {"kind": "gradient_descent"},
          "problem": {"smooth": {"kind": "spd_quadratic", "n": 3, "seed": 2, "spectrum": [1, 2]}},
          "run": {"N": 5}, "checks": ["thm4"]})",
      scratch("short"));
  EXPECT_EQ(r.status, exit_status::kCheckFailed);
}

TEST(ResolveOutputDir, Precedence) {
  ExperimentConfig c;
  RunOptions o;
  ::unsetenv("PCOPS_OUT");
  EXPECT_EQ(resolve_output_dir(c, o), fs::path("pcops_out"));
  ::setenv("PCOPS_OUT", "/tmp/env_out", 1);
  EXPECT_EQ(resolve_output_dir(c, o), fs::path("/tmp/env_out"));
  c.output_dir = "cfg_out";
  EXPECT_EQ(resolve_output_dir(c, o), fs::path("cfg_out"));
  o.out_dir = "cli_out";
  EXPECT_EQ(resolve_output_dir(c, o), fs::path("cli_out"));
  ::unsetenv("PCOPS_OUT");
}
