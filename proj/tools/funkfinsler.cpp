// Command-line front end: eval, field, distance, verify, zermelo.
//
// Exit codes: 0 success, 1 failed verification, 2 usage or domain error.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "funkfinsler/funkfinsler.hpp"

namespace ff = funkfinsler;
using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (v == 0.0) return "0";  // no "-0" in the output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann's own dump prints shortest round-trip digits; numbers here are
// always written with 17 significant digits instead.
void write_json(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      // Arrays of scalars stay on one line; nested ones get one row per element.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return !e.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

json to_json(const ff::Vec2<double>& v) { return json::array({v[0], v[1]}); }
json to_json(const ff::Point2& p) { return json::array({p.x1, p.x2}); }
json to_json(const ff::Mat2<double>& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

// Flattens an object into key,value rows for --format csv ("g.0.1" style keys).
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, j);
  }
}

std::string scalar_text(const json& j) {
  if (j.is_number_float()) {
    const std::string s = format_number(j.get<double>());
    return s.front() == '"' ? s.substr(1, s.size() - 2) : s;
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

struct Config {
  int eps = 0;
  double r = 1.0;
  std::string x;
  std::string y;
  std::string xi;
  std::string quantity = "F";
  int nx = 32;
  int ny = 0;
  int ntheta = 8;
  std::uint64_t seed = 7;
  std::string format;
  std::string out;
};

std::pair<double, double> parse_pair(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing required --") + flag);
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(std::string("--") + flag + " expects two comma-separated numbers");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double va = std::stod(a, &used_a);
    const double vb = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || !std::isfinite(va) || !std::isfinite(vb)) throw std::invalid_argument("");
    return {va, vb};
  } catch (const std::logic_error&) {
    throw UsageError(std::string("--") + flag + " expects two comma-separated numbers, got '" + text + "'");
  }
}

ff::Point2 point_arg(const std::string& text, const char* flag) {
  const auto [a, b] = parse_pair(text, flag);
  return {a, b};
}

ff::Tangent2 tangent_arg(const std::string& text, const char* flag) {
  const auto [a, b] = parse_pair(text, flag);
  return {a, b};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_object(const Config& cfg, const json& doc) {
  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (cfg.format == "csv") {
    std::vector<std::pair<std::string, json>> rows;
    flatten(doc, "", rows);
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << scalar_text(v) << '\n';
  } else {
    write_json(os, doc);
    os << '\n';
  }
}

json config_echo(const Config& cfg) { return {{"eps", cfg.eps}, {"r", cfg.r}}; }

int cmd_eval(const Config& cfg) {
  const ff::DiscChart chart(cfg.eps, cfg.r);
  const ff::TangentSample s{point_arg(cfg.x, "x"), tangent_arg(cfg.xi, "xi")};
  const ff::MetricEval m = ff::evaluate_metric(chart, s);
  const ff::CurvatureReport c = ff::riemann(chart, s);
  const ff::ZermeloData z = ff::to_zermelo(chart, s.base);
  json doc = config_echo(cfg);
  doc["x"] = to_json(s.base);
  doc["xi"] = json::array({s.dir.xi1, s.dir.xi2});
  doc["F"] = m.F;
  doc["alpha"] = m.alpha;
  doc["beta"] = m.beta;
  doc["g"] = to_json(m.g);
  doc["G"] = to_json(c.G);
  doc["S"] = c.S;
  doc["ric"] = c.ric;
  doc["K"] = c.K;
  doc["s_gap"] = c.s_gap;
  doc["k_gap"] = c.k_gap;
  doc["h"] = to_json(z.h);
  doc["W"] = to_json(z.W);
  doc["c"] = z.c;
  emit_object(cfg, doc);
  return 0;
}

double field_value(const ff::DiscChart& chart, const ff::TangentSample& s, const std::string& q) {
  if (q == "F") return ff::eval_F(chart, s);
  if (q == "bh_density") return ff::bh_density(chart, s.base);
  const ff::CurvatureReport c = ff::riemann(chart, s);
  if (q == "S") return c.S;
  if (q == "K") return c.K;
  if (q == "s_gap") return c.s_gap;
  return c.k_gap;
}

int cmd_field(const Config& cfg) {
  static const std::vector<std::string> kQuantities{"F", "S", "K", "s_gap", "k_gap", "bh_density"};
  if (std::find(kQuantities.begin(), kQuantities.end(), cfg.quantity) == kQuantities.end())
    throw UsageError("unknown quantity '" + cfg.quantity + "' (expected F, S, K, s_gap, k_gap or bh_density)");
  const int n_angular = cfg.ny > 0 ? cfg.ny : cfg.nx;
  if (cfg.nx <= 0 || n_angular <= 0 || cfg.ntheta <= 0) throw UsageError("empty grid: --nx, --ny and --ntheta must be positive");
  const ff::DiscChart chart(cfg.eps, cfg.r);

  // Radii (i + 1)/nx * 0.95 r keep the origin out so every row has p != 0.
  std::vector<ff::TangentSample> rows;
  rows.reserve(static_cast<std::size_t>(cfg.nx) * n_angular * cfg.ntheta);
  const auto dirs = ff::circle_directions(cfg.ntheta);
  for (int i = 0; i < cfg.nx; ++i) {
    const double rho = 0.95 * chart.r() * (i + 1) / cfg.nx;
    for (int j = 0; j < n_angular; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_angular;
      const ff::Point2 x{rho * std::cos(phi), rho * std::sin(phi)};
      for (const ff::Tangent2& d : dirs) rows.push_back({x, d});
    }
  }
  std::vector<double> values(rows.size());
  ff::parallel_for(rows.size(), [&](std::size_t k) { values[k] = field_value(chart, rows[k], cfg.quantity); });

  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    json doc = config_echo(cfg);
    doc["quantity"] = cfg.quantity;
    doc["columns"] = json::array({"x1", "x2", "xi1", "xi2", "value"});
    json data = json::array();
    for (std::size_t k = 0; k < rows.size(); ++k)
      data.push_back({rows[k].base.x1, rows[k].base.x2, rows[k].dir.xi1, rows[k].dir.xi2, values[k]});
    doc["rows"] = std::move(data);
    write_json(os, doc);
    os << '\n';
    return 0;
  }
  os << "x1,x2,xi1,xi2,value\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const ff::TangentSample& s = rows[k];
    os << scalar_text(s.base.x1) << ',' << scalar_text(s.base.x2) << ',' << scalar_text(s.dir.xi1) << ','
       << scalar_text(s.dir.xi2) << ',' << scalar_text(values[k]) << '\n';
  }
  return 0;
}

int cmd_distance(const Config& cfg) {
  const ff::DiscChart chart(cfg.eps, cfg.r);
  const ff::Point2 x = point_arg(cfg.x, "x");
  const ff::Point2 y = point_arg(cfg.y, "y");
  const double d_xy = ff::funk_distance(chart, x, y);
  json doc = config_echo(cfg);
  doc["x"] = to_json(x);
  doc["y"] = to_json(y);
  doc["d_xy"] = d_xy;
  doc["d_yx"] = ff::funk_distance(chart, y, x);
  const bool same = x.x1 == y.x1 && x.x2 == y.x2;
  doc["boundary_point_xy"] = same ? json(nullptr) : to_json(ff::geodesic_segment(chart, x, y).boundary_point);
  doc["quadrature_check"] = std::abs(d_xy - ff::integrate_F_along_segment(chart, x, y, 512));
  emit_object(cfg, doc);
  return 0;
}

int cmd_zermelo(const Config& cfg) {
  const ff::DiscChart chart(cfg.eps, cfg.r);
  const ff::Point2 x = point_arg(cfg.x, "x");
  const ff::ZermeloData z = ff::to_zermelo(chart, x);
  json doc = config_echo(cfg);
  doc["x"] = to_json(x);
  doc["h"] = to_json(z.h);
  doc["W"] = to_json(z.W);
  doc["c"] = z.c;
  doc["wind_norm_sq"] = z.wind_norm_sq();
  emit_object(cfg, doc);
  return 0;
}

int cmd_verify(const Config& cfg) {
  const ff::DiscChart chart(cfg.eps, cfg.r);
  ff::VerificationReport rep = ff::run_verification(chart, cfg.seed);
  rep.sort();
  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (cfg.format == "csv") {
    os << "name,samples,max_violation,tolerance,pass\n";
    for (const ff::CheckRecord& c : rep.records)
      os << '"' << c.name << "\"," << c.samples << ',' << scalar_text(c.max_violation) << ','
         << scalar_text(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  } else {
    json doc;
    doc["version"] = rep.version;
    doc["config"] = {{"eps", rep.eps}, {"r", rep.r}, {"seed", rep.seed}, {"generator", rep.generator}};
    doc["pass"] = rep.pass();
    json records = json::array();
    for (const ff::CheckRecord& c : rep.records) {
      json rec = {{"name", c.name},           {"samples", c.samples}, {"max_violation", c.max_violation},
                  {"tolerance", c.tolerance}, {"pass", c.pass},       {"strict", c.strict}};
      if (!c.note.empty()) rec["note"] = c.note;
      records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    write_json(os, doc);
    os << '\n';
  }
  for (const ff::CheckRecord& c : rep.records)
    if (!c.pass) std::cerr << "FAILED " << c.name << ": max violation " << c.max_violation << " > " << c.tolerance << '\n';
  return rep.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Funk-Finsler Randers metrics on constant-curvature discs", "funkfinsler"};
  app.set_version_flag("--version", std::string(ff::kVersion));
  app.require_subcommand(1);
  Config cfg;

  auto add_chart = [&cfg](CLI::App* sub) {
    sub->add_option("--eps", cfg.eps, "curvature sign")->check(CLI::IsMember({-1, 0, 1}));
    sub->add_option("--r", cfg.r, "disc radius");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };
  auto add_format = [&cfg](CLI::App* sub, const char* fallback) {
    sub->add_option("--format", cfg.format, std::string("json or csv (default ") + fallback + ")")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* eval = app.add_subcommand("eval", "metric, curvature and Zermelo data at one tangent vector");
  add_chart(eval);
  add_format(eval, "json");
  eval->add_option("--x", cfg.x, "base point x1,x2");
  eval->add_option("--xi", cfg.xi, "direction xi1,xi2");

  CLI::App* field = app.add_subcommand("field", "a quantity on a polar grid of base points and directions");
  add_chart(field);
  add_format(field, "csv");
  field->add_option("--quantity", cfg.quantity, "F, S, K, s_gap, k_gap or bh_density");
  field->add_option("--nx", cfg.nx, "number of radii (and angles unless --ny is given)");
  field->add_option("--ny", cfg.ny, "number of angles");
  field->add_option("--ntheta", cfg.ntheta, "directions per base point");

  CLI::App* distance = app.add_subcommand("distance", "Funk distance in both directions");
  add_chart(distance);
  add_format(distance, "json");
  distance->add_option("--x", cfg.x, "first point");
  distance->add_option("--y", cfg.y, "second point");

  CLI::App* verify = app.add_subcommand("verify", "run every invariant check and report");
  add_chart(verify);
  add_format(verify, "json");
  verify->add_option("--seed", cfg.seed, "sampling seed");

  CLI::App* zermelo = app.add_subcommand("zermelo", "navigation data (h, W) at a point");
  add_chart(zermelo);
  add_format(zermelo, "json");
  zermelo->add_option("--x", cfg.x, "base point");

  // Values such as "-0.5,0.2" would otherwise be taken for flags.
  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  for (std::size_t i = args.size(); i-- > 1;) {
    const std::string& flag = args[i];
    if ((flag == "--x" || flag == "--y" || flag == "--xi") && !args[i - 1].empty() && args[i - 1][0] == '-') {
      args[i] = flag + "=" + args[i - 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i - 1));
    }
  }

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool csv_default = field->parsed();
  if (cfg.format.empty()) cfg.format = csv_default ? "csv" : "json";

  try {
    if (eval->parsed()) return cmd_eval(cfg);
    if (field->parsed()) return cmd_field(cfg);
    if (distance->parsed()) return cmd_distance(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (zermelo->parsed()) return cmd_zermelo(cfg);
  } catch (const std::exception& e) {
    // Domain, chart and usage problems all map to the usage exit code.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
