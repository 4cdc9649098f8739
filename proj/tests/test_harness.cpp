#include <catch_amalgamated.hpp>

#include <string>

#include "dirosc/harness/acceptance.hpp"
#include "dirosc/harness/config.hpp"
#include "dirosc/harness/output.hpp"
#include "dirosc/harness/runs.hpp"

using namespace dirosc;
using namespace dirosc::harness;

TEST_CASE("config parse then serialize is idempotent") {
  const std::string text = "# comment\nmode = sweep\nm = 2.5\nalpha=0.75 \ngamma_steps = 9\nn_range = -1:4\nformat = json\n";
  const RunConfig c = parse_config(text);
  CHECK(c.mode == Mode::sweep);
  CHECK(c.params.m == 2.5);
  CHECK(c.n_range_min == -1);
  const std::string once = serialize_config(c);
  const RunConfig again = parse_config(once);
  CHECK(again == c);
  CHECK(serialize_config(again) == once);
}

TEST_CASE("default config round trips bit for bit") {
  RunConfig c;
  c.params.gamma = 0.1 + 0.2;
  c.theta = 1.0 / 3.0;
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("dimension resets the convention unless one is given") {
  CHECK(parse_config("dimension = 2\n").params.convention == LadderConvention::doubled());
  CHECK(parse_config("convention = unit\ndimension = 2\n").params.convention == LadderConvention::unit());
  CHECK(parse_config("convention = 1.5\n").params.convention.scale == 1.5);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("m = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("unknown = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("m = 1\nm = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t_min = 5\nt_max = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("format = xml\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dimension = 4\n"), ConfigError);
}

TEST_CASE("CSV layout") {
  Table t;
  t.columns = {"a", "b", "c"};
  t.add({std::string("x,y"), 0.1, std::monostate{}});
  CHECK(render_csv(t) == "a,b,c\n\"x,y\",0.10000000000000001,\n");
  CHECK_THROWS(t.add({1.0}));
}

TEST_CASE("spectrum table rows and schema") {
  RunConfig c;
  c.params.gamma = 1.5;
  c.n_range_max = 3;
  const auto t = run_spectrum(c);
  CHECK(t.columns == std::vector<std::string>{"sector", "branch", "E_closed", "E_numeric", "abs_dev"});
  CHECK(t.rows.size() == 1 + 3 + 4 * 4);
  for (const auto& row : t.rows) {
    REQUIRE(std::holds_alternative<double>(row[4]));
    CHECK(std::get<double>(row[4]) < 1e-10);
  }
  const std::string csv = render_csv(t);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.rfind("sector,branch,E_closed,E_numeric,abs_dev\n", 0) == 0);
  const auto doc = nlohmann::json::parse(render_json(t));
  CHECK(doc.contains("metadata"));
  CHECK(doc["rows"].size() == t.rows.size());
}

TEST_CASE("spectrum without a closed form leaves E_closed empty") {
  RunConfig c;
  c.params.A = 0.3;
  c.params.B = 0.6;
  c.n_range_min = 0;
  c.n_range_max = 1;
  const auto t = run_spectrum(c);
  for (const auto& row : t.rows) CHECK(std::holds_alternative<std::monostate>(row[2]));
  RunConfig d3;
  d3.params = ModelParams::for_dimension(3);
  d3.n_range_max = 2;
  CHECK_FALSE(run_spectrum(d3).rows.empty());
}

TEST_CASE("sweep output does not depend on the worker count") {
  RunConfig c;
  c.mode = Mode::sweep;
  c.t_max = 5.0;
  c.t_steps = 11;
  c.gamma_steps = 9;
  c.workers = 1;
  const std::string one = render_csv(run_sweep(c));
  c.workers = 4;
  const std::string four = render_csv(run_sweep(c));
  CHECK(one == four);
  CHECK(one.rfind("gamma,t,purity,entropy\n", 0) == 0);
}

TEST_CASE("evolve schema and repeatability") {
  RunConfig c;
  c.mode = Mode::evolve;
  c.params.gamma = 3.2;
  c.t_steps = 21;
  const std::string a = render_csv(run_evolve(c));
  CHECK(a == render_csv(run_evolve(c)));
  CHECK(a.rfind("t,purity,entropy\n", 0) == 0);
  c.params.dimension = 2;
  c.params.convention = LadderConvention::doubled();
  CHECK_THROWS_AS(run_evolve(c), DimensionMismatch);
}

TEST_CASE("seeded checks are reproducible") {
  AcceptanceOptions o;
  o.draws = 200;
  const auto a = checks::gauge_closed_form(o);
  const auto b = checks::gauge_closed_form(o);
  CHECK(a.measured == b.measured);
  CHECK(a.passed);
  o.seed = 99;
  CHECK(checks::eigenvector_formulas(o).passed);
}
