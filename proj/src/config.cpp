#include "mollify/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mollify/error.hpp"

namespace mollify {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_plain_real(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::invalid_argument("'" + s + "' is not a real number");
  }
  return v;
}

double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_plain_real(s);
  const double num = parse_plain_real(trim(s.substr(0, slash)));
  const double den = parse_plain_real(trim(s.substr(slash + 1)));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return num / den;
}

long long parse_integer(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::invalid_argument("'" + s + "' is not an integer");
  }
  return v;
}

std::size_t parse_count(const std::string& s) {
  const long long v = parse_integer(s);
  if (v < 0) throw std::invalid_argument("'" + s + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw std::invalid_argument("'" + s + "' is not a boolean");
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(parse_real(item));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  return out.str();
}

struct Field {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;  // empty result skips the key
  bool optional_value = false;
};

using Section = std::vector<std::pair<std::string, Field>>;

const std::vector<std::pair<std::string, Section>>& schema() {
  static const std::vector<std::pair<std::string, Section>> s = {
      {"run",
       {{"command",
         {[](RunConfig& c, const std::string& v) {
            const auto& cmds = config_commands();
            if (!v.empty() && std::find(cmds.begin(), cmds.end(), v) == cmds.end()) {
              throw std::invalid_argument("unknown command '" + v + "'");
            }
            c.command = v;
          },
          [](const RunConfig& c) { return c.command; }, true}},
        {"preset", {[](RunConfig& c, const std::string& v) { c.preset = v; },
                    [](const RunConfig& c) { return c.preset; }, true}},
        {"convention",
         {[](RunConfig& c, const std::string& v) { c.convention = convention_from_string(v); },
          [](const RunConfig& c) { return to_string(c.convention); }}},
        {"strict", {[](RunConfig& c, const std::string& v) { c.strict = parse_bool(v); },
                    [](const RunConfig& c) { return std::string(c.strict ? "true" : "false"); }}},
        {"tol", {[](RunConfig& c, const std::string& v) { c.tol = parse_real(v); },
                 [](const RunConfig& c) { return fmt(c.tol); }}}}},
      {"spec",
       {{"R", {[](RunConfig& c, const std::string& v) { c.R = parse_real(v); },
               [](const RunConfig& c) { return c.R ? fmt(*c.R) : std::string(); }}},
        {"theta", {[](RunConfig& c, const std::string& v) { c.theta = parse_real(v); },
                   [](const RunConfig& c) { return fmt(c.theta); }}},
        {"nu", {[](RunConfig& c, const std::string& v) { c.nu = parse_reals(v); },
                [](const RunConfig& c) { return fmt_list(c.nu); }, true}}}},
      {"Q",
       {{"a0", {[](RunConfig& c, const std::string& v) { c.q_a0 = parse_real(v); },
                [](const RunConfig& c) { return c.q_a0 ? fmt(*c.q_a0) : std::string(); }}},
        {"odd", {[](RunConfig& c, const std::string& v) { c.q_odd = parse_reals(v); },
                 [](const RunConfig&) { return std::string(); }, true}}}},
      {"surface",
       {{"nu", {[](RunConfig& c, const std::string& v) { c.surface_nu = parse_reals(v); },
                [](const RunConfig& c) { return fmt_list(c.surface_nu); }, true}},
        {"R_min", {[](RunConfig& c, const std::string& v) { c.surface_R_min = parse_real(v); },
                   [](const RunConfig& c) { return fmt(c.surface_R_min); }}},
        {"R_max", {[](RunConfig& c, const std::string& v) { c.surface_R_max = parse_real(v); },
                   [](const RunConfig& c) { return fmt(c.surface_R_max); }}},
        {"R_count",
         {[](RunConfig& c, const std::string& v) {
            c.surface_R_count = static_cast<int>(parse_integer(v));
          },
          [](const RunConfig& c) { return std::to_string(c.surface_R_count); }}}}},
      {"optimize",
       {{"budget",
         {[](RunConfig& c, const std::string& v) { c.budget = static_cast<int>(parse_integer(v)); },
          [](const RunConfig& c) { return std::to_string(c.budget); }}},
        {"restarts",
         {[](RunConfig& c, const std::string& v) { c.restarts = static_cast<int>(parse_integer(v)); },
          [](const RunConfig& c) { return std::to_string(c.restarts); }}},
        {"seed", {[](RunConfig& c, const std::string& v) { c.seed = parse_count(v); },
                  [](const RunConfig& c) { return std::to_string(c.seed); }}},
        {"R_min", {[](RunConfig& c, const std::string& v) { c.opt_R_min = parse_real(v); },
                   [](const RunConfig& c) { return fmt(c.opt_R_min); }}},
        {"R_max", {[](RunConfig& c, const std::string& v) { c.opt_R_max = parse_real(v); },
                   [](const RunConfig& c) { return fmt(c.opt_R_max); }}},
        {"freeze", {[](RunConfig& c, const std::string& v) { c.freeze = split_list(v); },
                    [](const RunConfig& c) { return join(c.freeze); }, true}},
        {"degrees",
         {[](RunConfig& c, const std::string& v) {
            c.degrees.clear();
            for (const auto& item : split_list(v)) c.degrees.push_back(static_cast<int>(parse_integer(item)));
          },
          [](const RunConfig& c) { return join(c.degrees); }, true}},
        {"q_odd_terms",
         {[](RunConfig& c, const std::string& v) { c.q_odd_terms = static_cast<int>(parse_integer(v)); },
          [](const RunConfig& c) { return c.q_odd_terms ? std::to_string(*c.q_odd_terms) : std::string(); }}},
        {"objective_order",
         {[](RunConfig& c, const std::string& v) {
            c.objective_order = static_cast<int>(parse_integer(v));
          },
          [](const RunConfig& c) { return std::to_string(c.objective_order); }}}}},
      {"arithmetic",
       {{"N", {[](RunConfig& c, const std::string& v) { c.arith_N = parse_count(v); },
               [](const RunConfig& c) { return std::to_string(c.arith_N); }}},
        {"max_ell",
         {[](RunConfig& c, const std::string& v) { c.max_ell = static_cast<int>(parse_integer(v)); },
          [](const RunConfig& c) { return std::to_string(c.max_ell); }}},
        {"deligne_N", {[](RunConfig& c, const std::string& v) { c.deligne_N = parse_count(v); },
                       [](const RunConfig& c) { return std::to_string(c.deligne_N); }}},
        {"identity_tol", {[](RunConfig& c, const std::string& v) { c.identity_tol = parse_real(v); },
                          [](const RunConfig& c) { return fmt(c.identity_tol); }}},
        {"rankin_X", {[](RunConfig& c, const std::string& v) { c.rankin_X = parse_count(v); },
                      [](const RunConfig& c) { return std::to_string(c.rankin_X); }}}}},
      {"output",
       {{"record", {[](RunConfig& c, const std::string& v) { c.record_path = v; },
                    [](const RunConfig& c) { return c.record_path; }, true}},
        {"csv", {[](RunConfig& c, const std::string& v) { c.csv_path = v; },
                 [](const RunConfig& c) { return c.csv_path; }, true}},
        {"trace", {[](RunConfig& c, const std::string& v) { c.trace_path = v; },
                   [](const RunConfig& c) { return c.trace_path; }, true}}}},
  };
  return s;
}

const Field* find_field(const std::string& section, const std::string& key) {
  for (const auto& [name, fields] : schema()) {
    if (name != section) continue;
    for (const auto& [k, f] : fields) {
      if (k == key) return &f;
    }
  }
  return nullptr;
}

bool known_section(const std::string& section) {
  return std::any_of(schema().begin(), schema().end(),
                     [&](const auto& s) { return s.first == section; });
}

// Piece index for section names P1, P2, ...; 0 otherwise.
int piece_section(const std::string& section) {
  if (section.size() < 2 || section[0] != 'P') return 0;
  for (std::size_t i = 1; i < section.size(); ++i) {
    if (section[i] < '0' || section[i] > '9') return 0;
  }
  if (section[1] == '0') return 0;
  return std::atoi(section.c_str() + 1);
}

}  // namespace

const std::vector<std::string>& config_commands() {
  static const std::vector<std::string> c = {"reproduce", "eval", "optimize", "surface",
                                             "verify-arithmetic"};
  return c;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  std::map<int, std::vector<double>> pieces;
  std::map<int, int> piece_lines;
  std::set<std::string> seen;
  std::string section;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + msg);
  };

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      const int p = piece_section(section);
      if (!known_section(section) && p == 0) fail("unknown section [" + section + "]");
      if (p > 0) piece_lines[p] = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail("key '" + key + "' appears before any section header");
    if (key.empty()) fail("missing key before '='");
    if (!seen.insert(section + "." + key).second) {
      fail("duplicate key '" + key + "' in [" + section + "]");
    }
    try {
      if (const int p = piece_section(section); p > 0) {
        if (key != "coeffs") fail("unknown key '" + key + "' in [" + section + "] (expected coeffs)");
        pieces[p] = parse_reals(value);
        continue;
      }
      const Field* f = find_field(section, key);
      if (f == nullptr) fail("unknown key '" + key + "' in [" + section + "]");
      if (value.empty() && !f->optional_value) fail("key '" + key + "' needs a value");
      f->set(cfg, value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(std::string("bad value for '") + key + "': " + e.what());
    }
  }

  int expected = 1;
  for (const auto& [p, coeffs] : pieces) {
    if (p != expected) {
      line_no = piece_lines[p];
      fail("[P" + std::to_string(p) + "] given without [P" + std::to_string(expected) + "]");
    }
    cfg.pieces.push_back(coeffs);
    ++expected;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ":0: cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  auto write_section = [&](const std::string& name) {
    for (const auto& [sname, fields] : schema()) {
      if (sname != name) continue;
      out << "[" << name << "]\n";
      for (const auto& [key, f] : fields) {
        const std::string v = f.get(config);
        if (v.empty() && !f.optional_value) continue;
        out << key << " = " << v << "\n";
      }
      out << "\n";
    }
  };
  write_section("run");
  write_section("spec");
  for (std::size_t i = 0; i < config.pieces.size(); ++i) {
    out << "[P" << i + 1 << "]\ncoeffs = " << fmt_list(config.pieces[i]) << "\n\n";
  }
  if (config.q_odd || config.q_a0) {
    out << "[Q]\n";
    if (config.q_a0) out << "a0 = " << fmt(*config.q_a0) << "\n";
    if (config.q_odd) out << "odd = " << fmt_list(*config.q_odd) << "\n";
    out << "\n";
  }
  write_section("surface");
  write_section("optimize");
  write_section("arithmetic");
  write_section("output");
  return out.str();
}

MollifierSpec to_spec(const RunConfig& config) {
  if (!config.R) throw ConfigError("config: [spec] R is required");
  if (config.pieces.empty()) throw ConfigError("config: at least [P1] is required");
  if (!config.q_odd) throw ConfigError("config: [Q] odd is required");
  MollifierSpec spec;
  spec.R = *config.R;
  spec.theta = config.theta;
  spec.nu = config.nu;
  spec.strict = config.strict;
  spec.convention = config.convention;
  for (std::size_t i = 0; i < config.pieces.size(); ++i) {
    spec.pieces.emplace_back(static_cast<int>(i) + 1, Polynomial(config.pieces[i]), config.strict);
  }
  spec.q = config.q_a0 ? SmoothingPolynomial(*config.q_a0, *config.q_odd, config.strict)
                       : SmoothingPolynomial::from_odd(*config.q_odd);
  return spec;
}

RunConfig config_from_spec(const MollifierSpec& spec) {
  RunConfig cfg;
  cfg.R = spec.R;
  cfg.theta = spec.theta;
  cfg.nu = spec.nu;
  cfg.strict = spec.strict;
  cfg.convention = spec.convention;
  for (const auto& p : spec.pieces) {
    const auto c = p.poly().coeffs();
    cfg.pieces.emplace_back(c.begin(), c.end());
  }
  cfg.q_a0 = spec.q.constant_term();
  const auto odd = spec.q.odd_coeffs();
  cfg.q_odd = std::vector<double>(odd.begin(), odd.end());
  return cfg;
}

}  // namespace mollify
