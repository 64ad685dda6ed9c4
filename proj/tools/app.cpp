#include "app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "glv/analysis.hpp"
#include "glv/csv.hpp"
#include "glv/ensemble.hpp"
#include "glv/models.hpp"

namespace glv::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number '" + std::string(text) + "' for " + std::string(what));
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_sized(std::string_view text, std::string_view what, std::size_t lo,
                                std::size_t hi) {
  auto v = parse_list(text, what);
  if (v.size() < lo || v.size() > hi) {
    throw ConfigError(std::string(what) + " expects " + std::to_string(lo) +
                      (lo == hi ? "" : "-" + std::to_string(hi)) + " comma-separated values");
  }
  return v;
}

State3 parse_state(std::string_view text, std::string_view what) {
  const auto v = parse_sized(text, what, 3, 3);
  return {v[0], v[1], v[2]};
}

bool parse_bool(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(what));
}

std::string join(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_number(v);
  }
  return s;
}

std::string join_state(const State3& x) { return join({x.x1, x.x2, x.x3}); }

/// Assigns one config entry. Used by both the file parser and the flags.
bool is_known_section(std::string_view s) {
  for (std::string_view k : {"run", "params", "integration", "initial", "control", "sync", "lyapunov"}) {
    if (s == k) return true;
  }
  return false;
}

void set_entry(RunConfig& c, std::string_view section, std::string_view key, std::string_view value) {
  const std::string name = std::string(section) + "." + std::string(key);
  const std::string_view v = trim(value);
  if (section == "run") {
    if (key == "command") {
      const auto& names = command_names();
      if (std::find(names.begin(), names.end(), v) == names.end()) {
        throw ConfigError("unknown command '" + std::string(v) + "'");
      }
      c.command = std::string(v);
    } else if (key == "model") {
      c.model = parse_model_kind(v);
    } else if (key == "out") {
      c.out = std::string(v);
    } else if (key == "format") {
      c.format = std::string(v);
    } else if (key == "coupled") {
      c.coupled = parse_bool(v, name);
    } else if (key == "update_law") {
      c.update_law = parse_update_law(v);
    } else {
      throw ConfigError("unknown key " + name);
    }
  } else if (section == "params") {
    if (key == "p") c.params.p = parse_number(v, name);
    else if (key == "q") c.params.q = parse_number(v, name);
    else if (key == "r") c.params.r = parse_number(v, name);
    else if (key == "d") c.params.d = parse_number(v, name);
    else throw ConfigError("unknown key " + name);
  } else if (section == "integration") {
    if (key == "step") c.integration.step = parse_number(v, name);
    else if (key == "t_end") c.integration.t_end = parse_number(v, name);
    else if (key == "transient") c.integration.transient = parse_number(v, name);
    else if (key == "record_every") {
      const double n = parse_number(v, name);
      if (n < 1.0 || n != std::floor(n) || n > 1e15) throw ConfigError(name + " must be a positive integer");
      c.integration.record_every = static_cast<std::size_t>(n);
    } else {
      throw ConfigError("unknown key " + name);
    }
  } else if (section == "initial") {
    if (key == "x0") {
      c.x0 = parse_state(v, name);
    } else if (key == "x0b") {
      if (v.empty()) c.x0b.reset();
      else c.x0b = parse_state(v, name);
    } else if (key == "response_x0") {
      const auto r = parse_sized(v, name, 2, 2);
      c.response_x0 = {r[0], r[1]};
    } else if (key == "estimates_x0") {
      const auto r = parse_sized(v, name, 2, 2);
      c.estimates_x0 = {r[0], r[1]};
    } else {
      throw ConfigError("unknown key " + name);
    }
  } else if (section == "control") {
    if (key == "gains") {
      const auto g = parse_sized(v, name, 3, 3);
      c.feedback_gains = {g[0], g[1], g[2]};
    } else if (key == "target") {
      if (v.empty()) c.target.reset();
      else c.target = parse_state(v, name);
    } else {
      throw ConfigError("unknown key " + name);
    }
  } else if (section == "sync") {
    if (key == "gains") {
      const auto g = parse_sized(v, name, 2, 2);
      c.sync_gains = {g[0], g[1]};
    } else {
      throw ConfigError("unknown key " + name);
    }
  } else if (section == "lyapunov") {
    if (key == "renorm_interval") c.renorm_interval = parse_number(v, name);
    else throw ConfigError("unknown key " + name);
  } else {
    throw ConfigError("unknown section [" + std::string(section) + "]");
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate",  "lyapunov",    "equilibria",
                                              "stabilize", "sync-active", "sync-adaptive"};
  return names;
}

RunConfig RunConfig::defaults(std::string_view command) {
  RunConfig c;
  c.command = std::string(command);
  if (command == "lyapunov") {
    c.integration.t_end = 5000.0;
    c.integration.transient = 200.0;
  } else if (command == "stabilize") {
    c.integration.t_end = 200.0;
  } else if (command == "sync-active") {
    c.integration.t_end = 500.0;
  } else if (command == "sync-adaptive") {
    c.integration.t_end = 500.0;
    c.x0 = kAdaptiveReferenceInitial.s.drive();
    c.response_x0 = {kAdaptiveReferenceInitial.s.x2r, kAdaptiveReferenceInitial.s.x3r};
    c.estimates_x0 = {kAdaptiveReferenceInitial.P, kAdaptiveReferenceInitial.Q};
    c.sync_gains = kAdaptiveReferenceGains;
  }
  return c;
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig c;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!is_known_section(section)) throw ConfigError("unknown section [" + section + "]");
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
      }
      if (section.empty()) throw ConfigError("line " + std::to_string(line_no) + ": key outside a section");
      set_entry(c, section, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    if (end == text.size()) break;
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream s;
  s << "[run]\n"
    << "command = " << command << '\n'
    << "model = " << to_string(model) << '\n'
    << "out = " << out << '\n'
    << "format = " << format << '\n'
    << "coupled = " << (coupled ? "true" : "false") << '\n'
    << "update_law = " << to_string(update_law) << '\n'
    << "\n[params]\n"
    << "p = " << format_number(params.p) << '\n'
    << "q = " << format_number(params.q) << '\n'
    << "r = " << format_number(params.r) << '\n'
    << "d = " << format_number(params.d) << '\n'
    << "\n[integration]\n"
    << "step = " << format_number(integration.step) << '\n'
    << "t_end = " << format_number(integration.t_end) << '\n'
    << "transient = " << format_number(integration.transient) << '\n'
    << "record_every = " << integration.record_every << '\n'
    << "\n[initial]\n"
    << "x0 = " << join_state(x0) << '\n'
    << "x0b = " << (x0b ? join_state(*x0b) : std::string()) << '\n'
    << "response_x0 = " << join({response_x0[0], response_x0[1]}) << '\n'
    << "estimates_x0 = " << join({estimates_x0[0], estimates_x0[1]}) << '\n'
    << "\n[control]\n"
    << "gains = " << join({feedback_gains.mu1, feedback_gains.mu2, feedback_gains.mu3}) << '\n'
    << "target = " << (target ? join_state(*target) : std::string()) << '\n'
    << "\n[sync]\n"
    << "gains = " << join({sync_gains.mu1, sync_gains.mu2}) << '\n'
    << "\n[lyapunov]\n"
    << "renorm_interval = " << format_number(renorm_interval) << '\n';
  return s.str();
}

void RunConfig::validate() const {
  if (format != "csv") throw ConfigError("unsupported output format '" + format + "'");
  params.validate(model);
  const bool linear_only = command == "equilibria" || command == "stabilize" ||
                           command == "sync-active" || command == "sync-adaptive" ||
                           (command == "lyapunov" && coupled);
  if (linear_only && model != ModelKind::Linear) {
    throw ConfigError(command + " is defined for the linear model only");
  }
  if (command != "equilibria") integration.validate();
  if (command == "lyapunov" && !(renorm_interval >= integration.step)) {
    throw ConfigError("renorm_interval must be at least one step");
  }
  if (command == "sync-active" || command == "sync-adaptive" || (command == "lyapunov" && coupled)) {
    sync_gains.validate();
  }
  if (command == "stabilize" &&
      (feedback_gains.mu1 < 0.0 || feedback_gains.mu2 < 0.0 || feedback_gains.mu3 < 0.0)) {
    throw ConfigError("feedback gains must be nonnegative");
  }
}

State3 RunConfig::resolved_target() const {
  return target ? *target : State3{1.0, 1.0 + params.r, 0.0};
}

namespace {

void write_simulate(const RunConfig& c, std::ostream& csv, std::ostream& summary) {
  const Trajectory a = simulate(c.model, c.params, c.x0, c.integration);
  std::optional<Trajectory> b;
  if (c.x0b) b = simulate(c.model, c.params, *c.x0b, c.integration);

  CsvWriter w(csv);
  if (b) w.header({"t", "x1", "x2", "x3", "x1b", "x2b", "x3b", "separation"});
  else w.header({"t", "x1", "x2", "x3"});
  double separated_at = -1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b) {
      w.row({a.times[i], a.at(i, 0), a.at(i, 1), a.at(i, 2)});
      continue;
    }
    const double d1 = a.at(i, 0) - b->at(i, 0);
    const double d2 = a.at(i, 1) - b->at(i, 1);
    const double d3 = a.at(i, 2) - b->at(i, 2);
    const double sep = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
    if (separated_at < 0.0 && sep > 0.1) separated_at = a.times[i];
    w.row({a.times[i], a.at(i, 0), a.at(i, 1), a.at(i, 2), b->at(i, 0), b->at(i, 1), b->at(i, 2), sep});
  }
  summary << "simulate: model " << to_string(c.model) << ", " << a.size() << " samples\n";
  if (!a.empty()) {
    const auto last = a.state(a.size() - 1);
    summary << "final state: " << format_number(last[0]) << ' ' << format_number(last[1]) << ' '
            << format_number(last[2]) << '\n';
  }
  if (b) {
    if (separated_at >= 0.0) summary << "separation exceeds 0.1 at t = " << format_number(separated_at) << '\n';
    else summary << "separation stays below 0.1\n";
  }
}

LyapunovConfig lyapunov_config(const RunConfig& c) {
  LyapunovConfig lc;
  lc.step = c.integration.step;
  lc.t_total = c.integration.t_end;
  lc.transient = c.integration.transient;
  lc.renorm_interval = c.renorm_interval;
  return lc;
}

void write_history(const LyapunovSpectrum& s, std::ostream& csv) {
  CsvWriter w(csv);
  std::vector<std::string> names{"t"};
  for (std::size_t i = 0; i < s.exponents.size(); ++i) names.push_back("L" + std::to_string(i + 1));
  w.header(names);
  std::vector<double> row(names.size());
  for (std::size_t k = 0; k < s.history.size(); ++k) {
    row[0] = s.history_times[k];
    std::copy(s.history[k].begin(), s.history[k].end(), row.begin() + 1);
    w.row(row);
  }
}

std::string join_values(std::span<const double> v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ' ';
    s += format_number(x);
  }
  return s;
}

void write_lyapunov(const RunConfig& c, std::ostream& csv, std::ostream& summary) {
  const LyapunovConfig lc = lyapunov_config(c);
  if (!c.coupled) {
    const LyapunovSpectrum s = lyapunov_spectrum(c.model, c.params, c.x0, lc);
    write_history(s, csv);
    summary << "exponents: " << join_values(s.exponents) << '\n'
            << "sum: " << format_number(s.sum()) << '\n'
            << "mean divergence: " << format_number(s.mean_divergence) << '\n'
            << "trailing spread: " << join_values(s.trailing_spread()) << '\n';
    return;
  }
  const CoupledState x0{c.x0.x1, c.x0.x2, c.x0.x3, c.response_x0[0], c.response_x0[1]};
  const ConditionalSpectrum s = conditional_lyapunov_spectrum(c.params, c.sync_gains, x0, lc);
  write_history(s.full, csv);
  summary << "exponents: " << join_values(s.full.exponents) << '\n'
          << "transverse: " << join_values(s.transverse) << '\n'
          << "jacobian eigenvalue averages: " << join_values(s.eigenvalue_average) << '\n';
  static constexpr std::array<double, 5> reference{-0.011320, -0.174464, -0.22221, -5.011, -5.0059};
  summary << "index,benettin,eigen_average,reference\n";
  for (std::size_t i = 0; i < 5; ++i) {
    summary << (i + 1) << ',' << format_number(s.full.exponents[i]) << ','
            << format_number(s.eigenvalue_average[i]) << ',' << format_number(reference[i]) << '\n';
  }
}

void write_equilibria(const RunConfig& c, std::ostream& csv, std::ostream& summary) {
  const auto points = equilibria(c.params);
  CsvWriter w(csv);
  w.header({"label", "x1", "x2", "x3", "feasible", "c2", "c1", "c0", "re1", "im1", "re2", "im2",
            "re3", "im3", "classification"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const StabilityReport r = classify(c.params, points[i]);
    const bool feasible = in_closed_positive_octant(points[i]);
    std::vector<std::string> cells{"X" + std::to_string(i),
                                   format_number(points[i].x1),
                                   format_number(points[i].x2),
                                   format_number(points[i].x3),
                                   feasible ? "true" : "false",
                                   format_number(r.char_poly.c2),
                                   format_number(r.char_poly.c1),
                                   format_number(r.char_poly.c0)};
    for (const auto& z : r.eigenvalues) {
      cells.push_back(format_number(z.real()));
      cells.push_back(format_number(z.imag()));
    }
    cells.emplace_back(to_string(r.classification));
    w.text_row(cells);
    if (!feasible) continue;
    summary << 'X' << i << " = (" << join_values(points[i].to_array()) << "): "
            << to_string(r.classification) << "\n  char poly: l^3 + (" << format_number(r.char_poly.c2)
            << ") l^2 + (" << format_number(r.char_poly.c1) << ") l + ("
            << format_number(r.char_poly.c0) << ")\n  eigenvalues:";
    for (const auto& z : r.eigenvalues) {
      summary << ' ' << format_number(z.real()) << (z.imag() < 0 ? "-" : "+")
              << format_number(std::abs(z.imag())) << 'i';
    }
    summary << '\n';
  }
}

int write_stabilize(const RunConfig& c, std::ostream& csv, std::ostream& summary, std::ostream& diag) {
  const State3 target = c.resolved_target();
  const StabilizationReport r =
      stabilize_experiment(c.params, c.feedback_gains, target, c.x0, c.integration);
  for (const auto& msg : r.warnings) diag << "warning: " << msg << '\n';
  CsvWriter w(csv);
  w.header({"t", "x1", "x2", "x3", "err_norm"});
  const Trajectory& t = r.trajectory;
  for (std::size_t i = 0; i < t.size(); ++i) {
    w.row({t.times[i], t.at(i, 0), t.at(i, 1), t.at(i, 2), r.error_norms[i]});
  }
  summary << "gain conditions: " << (r.gains.valid() ? "satisfied" : "violated")
          << (r.gains.reference_constants ? " (reference constants)" : " (derived constants)") << '\n';
  for (const auto& q : r.gains.inequalities) {
    summary << "  " << q.label << ": margin " << format_number(q.margin()) << '\n';
  }
  summary << "final error: " << format_number(r.final_error) << '\n'
          << (r.converged ? "converged" : "not converged") << '\n';
  if (r.time_below_tolerance >= 0.0) {
    summary << "error below 1e-06 at t = " << format_number(r.time_below_tolerance) << '\n';
  }
  return kExitOk;
}

void write_sync_active(const RunConfig& c, std::ostream& csv, std::ostream& summary, std::ostream& diag) {
  const CoupledState s0{c.x0.x1, c.x0.x2, c.x0.x3, c.response_x0[0], c.response_x0[1]};
  const ActiveSyncReport r = active_experiment(c.params, c.sync_gains, s0, c.integration);
  for (const auto& msg : r.warnings) diag << "warning: " << msg << '\n';
  CsvWriter w(csv);
  w.header({"t", "x1d", "x2d", "x3d", "x2r", "x3r", "e2", "e3"});
  const Trajectory& t = r.trajectory;
  for (std::size_t i = 0; i < t.size(); ++i) {
    w.row({t.times[i], t.at(i, 0), t.at(i, 1), t.at(i, 2), t.at(i, 3), t.at(i, 4), r.errors[i].e2,
           r.errors[i].e3});
  }
  summary << "condition margins: " << format_number(r.condition.margin1) << ' '
          << format_number(r.condition.margin2) << (r.condition.holds ? " (satisfied)" : " (violated)")
          << '\n'
          << "final errors: e2 " << format_number(r.final_e2) << ", e3 " << format_number(r.final_e3) << '\n'
          << (r.converged ? "converged" : "not converged") << '\n'
          << "envelope: " << (r.envelope_holds ? "holds" : "not guaranteed") << '\n'
          << "e2/x2d decay rate: " << format_number(r.e2_relative_rate) << '\n';
}

void write_sync_adaptive(const RunConfig& c, std::ostream& csv, std::ostream& summary) {
  const AdaptiveState s0{{c.x0.x1, c.x0.x2, c.x0.x3, c.response_x0[0], c.response_x0[1]},
                         c.estimates_x0[0],
                         c.estimates_x0[1]};
  const AdaptiveSyncReport r = adaptive_experiment(c.params, c.sync_gains, c.update_law, s0, c.integration);
  CsvWriter w(csv);
  w.header({"t", "x1d", "x2d", "x3d", "x2r", "x3r", "e2", "e3", "P", "Q", "Lyap"});
  const Trajectory& t = r.trajectory;
  for (std::size_t i = 0; i < t.size(); ++i) {
    w.row({t.times[i], t.at(i, 0), t.at(i, 1), t.at(i, 2), t.at(i, 3), t.at(i, 4), r.errors[i].e2,
           r.errors[i].e3, t.at(i, 5), t.at(i, 6), r.lyapunov[i]});
  }
  summary << "update law: " << to_string(c.update_law) << '\n'
          << "final errors: e2 " << format_number(r.final_e2) << ", e3 " << format_number(r.final_e3) << '\n'
          << "final estimates: P " << format_number(r.final_P) << ", Q " << format_number(r.final_Q) << '\n'
          << "largest step increase of L: " << format_number(r.max_lyapunov_increase) << '\n'
          << (r.bounded ? "bounded" : "unbounded") << '\n'
          << (r.converged ? "converged" : "not converged") << '\n';
  if (r.freeze_time >= 0.0) {
    summary << "errors below 1e-08 at t = " << format_number(r.freeze_time)
            << ", estimate rate afterwards " << format_number(r.max_estimate_rate_after_freeze) << '\n';
  }
}

int dispatch(const RunConfig& c, std::ostream& csv, std::ostream& summary, std::ostream& diag) {
  if (c.command == "simulate") write_simulate(c, csv, summary);
  else if (c.command == "lyapunov") write_lyapunov(c, csv, summary);
  else if (c.command == "equilibria") write_equilibria(c, csv, summary);
  else if (c.command == "stabilize") return write_stabilize(c, csv, summary, diag);
  else if (c.command == "sync-active") write_sync_active(c, csv, summary, diag);
  else if (c.command == "sync-adaptive") write_sync_adaptive(c, csv, summary);
  else throw ConfigError("unknown command '" + c.command + "'");
  return kExitOk;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& summary, std::ostream& diag) {
  try {
    config.validate();
    if (config.out.empty()) return dispatch(config, out, summary, diag);
    // Write to a buffer first so a failed run leaves no partial file.
    std::ostringstream csv;
    const int code = dispatch(config, csv, summary, diag);
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + config.out);
    file << csv.str();
    std::ofstream cfg(config.out + ".cfg", std::ios::binary);
    if (!cfg) throw ConfigError("cannot write " + config.out + ".cfg");
    cfg << config.serialize();
    summary << "wrote " << config.out << " and " << config.out << ".cfg\n";
    return code;
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DivergenceError& e) {
    diag << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const DomainError& e) {
    diag << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const DegenerateQrError& e) {
    diag << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const NotAnEquilibriumError& e) {
    diag << "condition failure: " << e.what() << '\n';
    return kExitCondition;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

namespace {

constexpr const char* kConfigHelp = R"(Config file keys (flat key = value under section headers):
  [run]         command, model (linear|ht2|ht3), out, format (csv), coupled, update_law
  [params]      p, q, r, d
  [integration] step, t_end, transient, record_every
  [initial]     x0 (a,b,c), x0b (a,b,c or empty), response_x0 (a,b), estimates_x0 (P0,Q0)
  [control]     gains (m1,m2,m3), target (a,b,c or empty for X1*)
  [sync]        gains (m1,m2)
  [lyapunov]    renorm_interval
Every run with --out also writes <out>.cfg; `glv run --config <out>.cfg`
regenerates the same output. For lyapunov, t_end is the measured time after
the transient.
Exit codes: 0 ok, 2 config error, 3 numerical divergence, 4 experiment condition failure.)";

struct Flags {
  std::map<std::string, std::string> values;  // flag name -> raw text
  std::string config_file;
  bool coupled = false;
};

void add_common(CLI::App* sub, Flags& f) {
  auto opt = [&](const std::string& name, const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + name, [&f, name](const std::string& v) { f.values[name] = v; }, help);
  };
  sub->add_option("--config", f.config_file, "Load settings from a config file first");
  opt("params", "p,q,r[,d]");
  opt("model", "linear|ht2|ht3");
  opt("x0", "Initial state a,b,c (drive state for sync runs)");
  opt("x0b", "Second initial state for a paired simulate run");
  opt("step", "RK4 step size");
  opt("t-end", "End time (measured time for lyapunov)");
  opt("transient", "Time discarded before recording");
  opt("record-every", "Record every N steps");
  opt("out", "CSV output path (stdout when omitted)");
  opt("gains", "m1,m2,m3 for stabilize; m1,m2 for sync runs");
  opt("target", "Feedback target a,b,c (default X1*)");
  opt("response-x0", "Response start x2r,x3r");
  opt("estimates-x0", "Estimate start P0,Q0");
  opt("update-law", "lyapunov|linear-in-error");
  opt("renorm-interval", "Time between tangent re-orthonormalizations");
  sub->add_flag("--coupled", f.coupled, "lyapunov: spectrum of the 5-D drive-response system");
}

RunConfig build_config(const std::string& command, const Flags& f) {
  RunConfig c;
  if (!f.config_file.empty()) {
    c = RunConfig::load(f.config_file);
    if (command != "run" && c.command != command) {
      throw ConfigError("config file is for '" + c.command + "', not '" + command + "'");
    }
  } else {
    if (command == "run") throw ConfigError("run needs --config");
    c = RunConfig::defaults(command);
  }
  for (const auto& [name, value] : f.values) {
    if (name == "params") {
      const auto v = parse_sized(value, "--params", 3, 4);
      c.params = {v[0], v[1], v[2], v.size() > 3 ? v[3] : c.params.d};
    } else if (name == "model") set_entry(c, "run", "model", value);
    else if (name == "x0") set_entry(c, "initial", "x0", value);
    else if (name == "x0b") set_entry(c, "initial", "x0b", value);
    else if (name == "step") set_entry(c, "integration", "step", value);
    else if (name == "t-end") set_entry(c, "integration", "t_end", value);
    else if (name == "transient") set_entry(c, "integration", "transient", value);
    else if (name == "record-every") set_entry(c, "integration", "record_every", value);
    else if (name == "out") set_entry(c, "run", "out", value);
    else if (name == "gains") set_entry(c, c.command == "stabilize" ? "control" : "sync", "gains", value);
    else if (name == "target") set_entry(c, "control", "target", value);
    else if (name == "response-x0") set_entry(c, "initial", "response_x0", value);
    else if (name == "estimates-x0") set_entry(c, "initial", "estimates_x0", value);
    else if (name == "update-law") set_entry(c, "run", "update_law", value);
    else if (name == "renorm-interval") set_entry(c, "lyapunov", "renorm_interval", value);
  }
  if (f.coupled) c.coupled = true;
  return c;
}

int run_sweep(const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
  std::vector<RunConfig> configs;
  try {
    for (const auto& path : files) configs.push_back(RunConfig::load(path));
    for (std::size_t i = 0; i < configs.size(); ++i) {
      if (configs[i].out.empty()) throw ConfigError(files[i] + ": sweep runs need an output path");
      for (std::size_t j = 0; j < i; ++j) {
        if (configs[j].out == configs[i].out) throw ConfigError("sweep runs share output " + configs[i].out);
      }
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::vector<std::ostringstream> summaries(configs.size()), diags(configs.size());
  std::vector<int> codes(configs.size(), kExitOk);
  for_each_index(configs.size(), Execution::Parallel, [&](std::size_t i) {
    std::ostringstream unused;
    codes[i] = execute(configs[i], unused, summaries[i], diags[i]);
  });
  int worst = kExitOk;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    out << "== " << files[i] << " (exit " << codes[i] << ")\n" << summaries[i].str();
    err << diags[i].str();
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and analysis of a three-species generalized Lotka-Volterra food chain", "glv"};
  app.footer(kConfigHelp);
  std::vector<std::string> sweep;
  app.add_option("--sweep", sweep, "Run several config files concurrently (each needs its own out)")
      ->expected(1, -1);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "Integrate the model and write t,x1,x2,x3"},
      {"lyapunov", "Benettin Lyapunov spectrum (running estimates)"},
      {"equilibria", "Fixed points and their linear stability"},
      {"stabilize", "Linear feedback stabilization of an equilibrium"},
      {"sync-active", "Drive-response synchronization with active control"},
      {"sync-adaptive", "Drive-response synchronization with parameter estimates"},
      {"run", "Re-run a saved config file"}};
  Flags flags;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, flags);
    subs.push_back(sub);
  }
  app.require_subcommand(0, 1);

  std::vector<const char*> argv{"glv"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (!sweep.empty()) return run_sweep(sweep, out, err);
  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    RunConfig config;
    try {
      config = build_config(sub->get_name(), flags);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
    return execute(config, out, config.out.empty() ? err : out, err);
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace glv::cli
