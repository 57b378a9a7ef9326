#include "lqgame/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <set>

namespace lqgame {

using nlohmann::json;

namespace {

void require_known_keys(const json& obj, const std::string& path,
                        std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigParseError(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigParseError(path, "expected an object");
  return j;
}

double parse_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigParseError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t parse_unsigned(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  throw ConfigParseError(path, "expected a non-negative integer");
}

std::vector<double> parse_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigParseError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Matrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw ConfigParseError(path, "expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw ConfigParseError(row_path, "expected a row array");
    if (i == 0) {
      cols = j[i].size();
      if (cols == 0) throw ConfigParseError(row_path, "empty row");
    } else if (j[i].size() != cols) {
      throw ConfigParseError(row_path, "ragged matrix: row has " +
                                           std::to_string(j[i].size()) +
                                           " entries, expected " +
                                           std::to_string(cols));
    }
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = parse_number(
          j[i][c], path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

GameSpec parse_game(const json& j) {
  require_object(j, "game");
  require_known_keys(j, "game", {"A", "B1", "B2", "Q1", "Q2", "Q1N", "Q2N",
                                 "R1", "R2", "N", "x0"});
  GameSpec g;
  auto field = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw ConfigParseError(std::string("game.") + key, "missing");
    return j.at(key);
  };
  g.A = parse_matrix(field("A"), "game.A");
  g.B1 = parse_matrix(field("B1"), "game.B1");
  g.B2 = parse_matrix(field("B2"), "game.B2");
  g.Q1 = parse_matrix(field("Q1"), "game.Q1");
  g.Q2 = parse_matrix(field("Q2"), "game.Q2");
  g.Q1N = parse_matrix(field("Q1N"), "game.Q1N");
  g.Q2N = parse_matrix(field("Q2N"), "game.Q2N");
  g.R1 = parse_matrix(field("R1"), "game.R1");
  g.R2 = parse_matrix(field("R2"), "game.R2");
  g.N = static_cast<std::size_t>(parse_unsigned(field("N"), "game.N"));
  if (j.contains("x0")) {
    const std::vector<double> x0 = parse_number_array(j.at("x0"), "game.x0");
    g.x0 = Eigen::Map<const Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
  } else {
    g.x0 = Vector::Zero(g.A.rows());
  }
  try {
    g.validate();
  } catch (const Error& e) {
    throw ConfigValidationError("game", e.what());
  }
  return g;
}

ParamValues parse_param(const json& ar1, const std::string& name,
                        const ParamValues& fallback) {
  const std::string grid_name = name + "_grid";
  const bool has_scalar = ar1.contains(name);
  const bool has_grid = ar1.contains(grid_name);
  if (has_scalar && has_grid) {
    throw ConfigParseError("ar1." + name,
                           "specify exactly one of '" + name + "' or '" +
                               grid_name + "'");
  }
  if (!has_scalar && !has_grid) return fallback;
  ParamValues p;
  if (has_scalar) {
    p.values = {parse_number(ar1.at(name), "ar1." + name)};
    p.is_grid = false;
  } else {
    p.values = parse_number_array(ar1.at(grid_name), "ar1." + grid_name);
    p.is_grid = true;
    if (p.values.empty()) throw ConfigValidationError("ar1." + grid_name, "empty grid");
  }
  return p;
}

void validate_rho(double rho, const std::string& path) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ConfigValidationError(path, "rho must lie in [0, 1)");
  }
}

void validate_sigma0(double s0, const std::string& path) {
  if (!(s0 > 0.0) || !std::isfinite(s0)) {
    throw ConfigValidationError(path, "sigma0 must be positive and finite");
  }
}

std::string element_path(const ParamValues& p, const std::string& name,
                         std::size_t i) {
  return p.is_grid ? "ar1." + name + "_grid[" + std::to_string(i) + "]"
                   : "ar1." + name;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  auto same = [](const Matrix& x, const Matrix& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  const GameSpec& g = a.game;
  const GameSpec& h = b.game;
  return same(g.A, h.A) && same(g.B1, h.B1) && same(g.B2, h.B2) &&
         same(g.Q1, h.Q1) && same(g.Q2, h.Q2) && same(g.Q1N, h.Q1N) &&
         same(g.Q2N, h.Q2N) && same(g.R1, h.R1) && same(g.R2, h.R2) &&
         g.N == h.N && same(g.x0, h.x0) && a.ar1 == b.ar1 && a.mc == b.mc &&
         a.output == b.output;
}

RunConfig default_config(Command command) {
  RunConfig c;
  c.game = benchmark_game();
  switch (command) {
    case Command::kNash:
      c.ar1.rho = {{0.5}, false};
      c.ar1.sigma0 = {{0.06}, false};
      break;
    case Command::kMoments:
      c.ar1.rho = {{0.5}, false};
      c.ar1.sigma0 = {{0.15, 0.30, 0.45, 0.60}, true};
      break;
    case Command::kSweep:
      c.ar1.rho = {{0.0, 0.2, 0.4, 0.6, 0.8, 0.9}, true};
      c.ar1.sigma0 = {{0.02, 0.04, 0.06, 0.08}, true};
      break;
  }
  return c;
}

RunConfig parse_config(const json& j) {
  require_object(j, "<document>");
  require_known_keys(j, "", {"game", "ar1", "mc", "output"});
  if (!j.contains("game")) throw ConfigParseError("game", "missing");

  RunConfig c;
  c.game = parse_game(j.at("game"));

  const RunConfig defaults = default_config(Command::kNash);
  if (j.contains("ar1")) {
    const json& ar1 = require_object(j.at("ar1"), "ar1");
    require_known_keys(ar1, "ar1", {"rho", "rho_grid", "sigma0", "sigma0_grid"});
    c.ar1.rho = parse_param(ar1, "rho", defaults.ar1.rho);
    c.ar1.sigma0 = parse_param(ar1, "sigma0", defaults.ar1.sigma0);
  } else {
    c.ar1 = defaults.ar1;
  }
  for (std::size_t i = 0; i < c.ar1.rho.values.size(); ++i) {
    validate_rho(c.ar1.rho.values[i], element_path(c.ar1.rho, "rho", i));
  }
  for (std::size_t i = 0; i < c.ar1.sigma0.values.size(); ++i) {
    validate_sigma0(c.ar1.sigma0.values[i], element_path(c.ar1.sigma0, "sigma0", i));
  }

  if (j.contains("mc")) {
    const json& mc = require_object(j.at("mc"), "mc");
    require_known_keys(mc, "mc", {"trials", "base_seed", "threads", "trace_rho",
                                  "trace_sigma0", "deltax_trials"});
    if (mc.contains("trials")) {
      c.mc.trials = static_cast<std::size_t>(parse_unsigned(mc.at("trials"), "mc.trials"));
    }
    if (mc.contains("base_seed")) {
      c.mc.base_seed = parse_unsigned(mc.at("base_seed"), "mc.base_seed");
    }
    if (mc.contains("threads")) {
      c.mc.threads = static_cast<unsigned>(parse_unsigned(mc.at("threads"), "mc.threads"));
    }
    if (mc.contains("trace_rho")) {
      c.mc.trace_rho = parse_number(mc.at("trace_rho"), "mc.trace_rho");
    }
    if (mc.contains("trace_sigma0")) {
      c.mc.trace_sigma0 = parse_number(mc.at("trace_sigma0"), "mc.trace_sigma0");
    }
    if (mc.contains("deltax_trials")) {
      c.mc.deltax_trials = static_cast<std::size_t>(
          parse_unsigned(mc.at("deltax_trials"), "mc.deltax_trials"));
    }
  }
  if (c.mc.trials < 1) throw ConfigValidationError("mc.trials", "must be >= 1");
  if (c.mc.threads < 1) throw ConfigValidationError("mc.threads", "must be >= 1");
  validate_rho(c.mc.trace_rho, "mc.trace_rho");
  validate_sigma0(c.mc.trace_sigma0, "mc.trace_sigma0");

  if (j.contains("output")) {
    const json& out = require_object(j.at("output"), "output");
    require_known_keys(out, "output", {"directory", "format"});
    if (out.contains("directory")) {
      if (!out.at("directory").is_string()) {
        throw ConfigParseError("output.directory", "expected a string");
      }
      c.output.directory = out.at("directory").get<std::string>();
    }
    if (out.contains("format")) {
      if (!out.at("format").is_string()) {
        throw ConfigParseError("output.format", "expected a string");
      }
      c.output.format = out.at("format").get<std::string>();
    }
  }
  if (c.output.format != "csv") {
    throw ConfigValidationError("output.format", "only 'csv' is supported");
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError("<document>", e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

json to_json(const RunConfig& c) {
  json j;
  const GameSpec& g = c.game;
  j["game"] = {{"A", matrix_to_json(g.A)},     {"B1", matrix_to_json(g.B1)},
               {"B2", matrix_to_json(g.B2)},   {"Q1", matrix_to_json(g.Q1)},
               {"Q2", matrix_to_json(g.Q2)},   {"Q1N", matrix_to_json(g.Q1N)},
               {"Q2N", matrix_to_json(g.Q2N)}, {"R1", matrix_to_json(g.R1)},
               {"R2", matrix_to_json(g.R2)},   {"N", g.N},
               {"x0", vector_to_json(g.x0)}};
  auto put_param = [&](const ParamValues& p, const std::string& name) {
    if (p.is_grid) {
      j["ar1"][name + "_grid"] = p.values;
    } else {
      j["ar1"][name] = p.values.front();
    }
  };
  put_param(c.ar1.rho, "rho");
  put_param(c.ar1.sigma0, "sigma0");
  j["mc"] = {{"trials", c.mc.trials},
             {"base_seed", c.mc.base_seed},
             {"threads", c.mc.threads},
             {"trace_rho", c.mc.trace_rho},
             {"trace_sigma0", c.mc.trace_sigma0},
             {"deltax_trials", c.mc.deltax_trials}};
  j["output"] = {{"directory", c.output.directory}, {"format", c.output.format}};
  return j;
}

}  // namespace lqgame
