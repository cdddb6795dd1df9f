#include <doctest.h>

#include <sstream>

#include "mollify/config.hpp"
#include "mollify/error.hpp"
#include "mollify/presets.hpp"
#include "mollify/record.hpp"

using namespace mollify;

namespace {

const char* kLinear = R"(# one piece
[run]
command = eval
convention = one-piece
strict = false

[spec]
R = 1.3
nu = 1/2

[P1]
coeffs = 0, 1

[Q]
odd = 0.5
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a one-piece config") {
  const auto c = parse_config(kLinear);
  CHECK(c.command == "eval");
  CHECK(c.convention == Convention::one_piece);
  CHECK_FALSE(c.strict);
  CHECK(*c.R == 1.3);
  CHECK(c.nu == std::vector<double>{0.5});
  REQUIRE(c.pieces.size() == 1);
  CHECK(c.pieces[0] == std::vector<double>{0, 1});
  const auto spec = to_spec(c);
  CHECK(spec.q.monomial() == Polynomial({1.0, -1.0}));
  CHECK(combine(spec).c_total == doctest::Approx(c11_closed_form(1.3, 0.5)).epsilon(1e-12));
}

TEST_CASE("errors carry file and line") {
  CHECK(error_of("[run]\nbogus = 1\n").rfind("t.cfg:2: unknown key 'bogus'", 0) == 0);
  CHECK(error_of("[nope]\n").rfind("t.cfg:1: unknown section [nope]", 0) == 0);
  CHECK(error_of("R = 1\n").rfind("t.cfg:1:", 0) == 0);
  CHECK(error_of("[spec]\nR = 1\nR = 2\n").rfind("t.cfg:3: duplicate key", 0) == 0);
  CHECK(error_of("[spec]\nR = abc\n").rfind("t.cfg:2: bad value for 'R'", 0) == 0);
  CHECK(error_of("[spec]\n\nnu = 1/0\n").rfind("t.cfg:3:", 0) == 0);
  CHECK(error_of("[run]\ncommand = fly\n").find("unknown command") != std::string::npos);
  CHECK(error_of("[P2]\ncoeffs = 0,0,0,1\n").rfind("t.cfg:1: [P2] given without [P1]", 0) == 0);
  CHECK(error_of("[P1]\nvalues = 1\n").find("expected coeffs") != std::string::npos);
  CHECK(error_of("[spec\n").find("unterminated") != std::string::npos);
  CHECK(error_of("[run]\nstrict = maybe\n").find("not a boolean") != std::string::npos);
  CHECK(error_of("[spec]\nR\n").find("expected 'key = value'") != std::string::npos);
}

TEST_CASE("config round trip") {
  RunConfig c = parse_config(kLinear);
  c.freeze = {"Q", "P1"};
  c.degrees = {5, 5};
  c.q_odd_terms = 4;
  c.seed = 99;
  c.surface_nu = {0.5, 5.0 / 54};
  c.record_path = "out.json";
  c.q_a0 = 0.5;
  c.preset = "ramanujan";
  const auto text = serialize_config(c);
  CHECK(parse_config(text) == c);
  CHECK(serialize_config(parse_config(text)) == text);

  for (const auto& name : preset_names()) {
    const RunConfig pc = config_from_spec(preset(name).spec);
    const RunConfig back = parse_config(serialize_config(pc));
    CHECK(back == pc);
    const auto spec = to_spec(back);
    CHECK(spec.R == preset(name).spec.R);
    CHECK(spec.q.monomial() == preset(name).spec.q.monomial());
  }
  CHECK(parse_config("") == RunConfig{});
}

TEST_CASE("missing spec parts") {
  CHECK_THROWS_AS(to_spec(parse_config("[spec]\nnu = 0.25\n")), ConfigError);
  CHECK_THROWS_AS(to_spec(parse_config("[spec]\nR = 1\n[Q]\nodd = 0.5\n")), ConfigError);
  CHECK_THROWS_AS(to_spec(parse_config("[spec]\nR = 1\n[P1]\ncoeffs = 0, 1\n")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("strict configs check polynomial constraints") {
  const std::string text = "[spec]\nR = 1\nnu = 0.25\n[P1]\ncoeffs = 0, 0.5\n[Q]\nodd = 0.5\n";
  CHECK_THROWS_AS(to_spec(parse_config(text)), SpecError);
  CHECK_NOTHROW(to_spec(parse_config("[run]\nstrict = false\n" + text)));
}

TEST_CASE("result record echoes a reproducible spec") {
  const auto p = preset("zeta-farmer");
  const auto tm = combine(p.spec);
  const auto rec = evaluation_record("reproduce", p.spec, tm, {}, 0.1);
  CHECK(rec["kappa"].get<double>() == tm.kappa);
  CHECK(rec["terms"]["c_diag"].size() == 2);
  CHECK(rec["version"] == kToolVersion);
  const auto text = rec.dump();
  const auto again = spec_from_json(nlohmann::json::parse(text)["spec"]);
  const auto tm2 = combine(again);
  CHECK(std::abs(tm2.kappa - tm.kappa) <= std::max(1e-12, tm.kappa_error));

  ConvergenceOptions f;
  f.fixed_order = 12;
  const auto fixed_rec = evaluation_record("eval", p.spec, combine(p.spec, f), f, 0.0);
  CHECK(fixed_rec["terms"]["c_error"].is_null());
}

TEST_CASE("csv writers") {
  std::ostringstream s;
  write_surface_csv(s, {{1.3, 0.5, 0.25}});
  CHECK(s.str() == "R,nu,kappa\n1.3,0.5,0.25\n");
  std::ostringstream t;
  write_trace_csv(t, {{1, 0.5}, {2, 0.75}});
  CHECK(t.str() == "iter,kappa\n1,0.5\n2,0.75\n");
  std::ostringstream n;
  write_series_csv(n, CoefficientSeries({1.0, -0.5}));
  CHECK(n.str() == "n,value\n1,1\n2,-0.5\n");
}
