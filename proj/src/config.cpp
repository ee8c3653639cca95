#include "ultrarad/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ultrarad/linear.hpp"

namespace ultrarad {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? "config: " + message
                                   : "config line " + std::to_string(line) + ": " + message),
      line_(line) {}

const char* preset_name(Preset preset) {
  switch (preset) {
    case Preset::kExample1: return "example1";
    case Preset::kExample2: return "example2";
    case Preset::kExample3: return "example3";
    case Preset::kExample4: return "example4";
    case Preset::kImplodingShock: return "imploding_shock";
    case Preset::kCustom: return "custom";
  }
  return "?";
}

PiecewiseData RunConfig::initial_data() const {
  switch (preset) {
    case Preset::kExample1: return rest_state_data();
    case Preset::kExample2: return outflow_data();
    case Preset::kExample3: return inflow_data();
    case Preset::kExample4: return bubble_data();
    case Preset::kImplodingShock: return imploding_shock_data();
    case Preset::kCustom: break;
  }
  if (!custom) throw ConfigError(0, "custom preset without [segment] data");
  return *custom;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& text, std::size_t line, const std::string& key) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ConfigError(line, "malformed number '" + text + "' for " + key);
  }
  return value;
}

int parse_int(const std::string& text, std::size_t line, const std::string& key) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(line, "malformed integer '" + text + "' for " + key);
  }
  return value;
}

bool parse_bool(const std::string& text, std::size_t line, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(line, "expected true/false for " + key + ", got '" + text + "'");
}

std::vector<double> parse_list(const std::string& text, std::size_t line, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line, key));
  if (out.empty()) throw ConfigError(line, key + " needs at least one value");
  return out;
}

struct Channel {
  double value = 0.0;
  double slope = 0.0;
  std::size_t line = 0;
};

struct Segment {
  std::size_t line = 0;  // of the [segment] header
  std::optional<double> from;
  std::map<std::string, Channel> channels;
};

Preset parse_preset(const std::string& text, std::size_t line) {
  for (Preset p : {Preset::kExample1, Preset::kExample2, Preset::kExample3, Preset::kExample4,
                   Preset::kImplodingShock, Preset::kCustom}) {
    if (text == preset_name(p)) return p;
  }
  throw ConfigError(line, "unknown preset '" + text +
                              "' (example1, example2, example3, example4, imploding_shock, custom)");
}

PiecewiseData build_custom(const std::vector<Segment>& segments, bool primitive,
                           std::size_t variables_line) {
  const char* first_key = primitive ? "p" : "a";
  const char* second_key = primitive ? "v" : "b";
  if (segments.empty()) throw ConfigError(variables_line, "custom preset needs a [segment] block");

  std::vector<double> breaks;
  std::vector<LinearPiece> first;
  std::vector<LinearPiece> second;
  for (const Segment& seg : segments) {
    if (!seg.from) throw ConfigError(seg.line, "segment is missing 'from'");
    const double from = *seg.from;
    if (breaks.empty() && from != 0.0) throw ConfigError(seg.line, "first segment must start at from = 0");
    if (!breaks.empty() && !(from > breaks.back())) {
      throw ConfigError(seg.line, "segments must start at strictly increasing 'from'");
    }
    for (const auto& [key, ch] : seg.channels) {
      if (key != first_key && key != second_key) {
        throw ConfigError(ch.line, std::string("key '") + key + "' does not belong to variables = " +
                                       (primitive ? "pv" : "ab"));
      }
    }
    const auto f = seg.channels.find(first_key);
    const auto s = seg.channels.find(second_key);
    if (f == seg.channels.end() || s == seg.channels.end()) {
      throw ConfigError(seg.line, std::string("segment needs both '") + first_key + "' and '" +
                                      second_key + "'");
    }
    breaks.push_back(from);
    first.push_back({f->second.value - f->second.slope * from, f->second.slope});
    second.push_back({s->second.value - s->second.slope * from, s->second.slope});
  }

  // Endpoint admissibility, reported against the segment that violates it.
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::vector<double> ends{breaks[i]};
    if (i + 1 < breaks.size()) ends.push_back(breaks[i + 1]);
    for (double x : ends) {
      const double u = first[i](x);
      const double w = second[i](x);
      if (primitive) {
        if (!(u > 0.0)) throw ConfigError(segments[i].line, "invariant p > 0 violated at x = " + std::to_string(x));
        if (!(std::abs(w) < 1.0)) throw ConfigError(segments[i].line, "invariant |v| < 1 violated at x = " + std::to_string(x));
      } else if (!(std::abs(w) < u)) {
        throw ConfigError(segments[i].line, "invariant |b| < a violated at x = " + std::to_string(x));
      }
    }
  }

  PiecewiseLinear c1(breaks, first);
  PiecewiseLinear c2(breaks, second);
  PiecewiseData data = primitive ? PiecewiseData::primitive(c1, c2) : PiecewiseData::conserved(c1, c2);
  try {
    data.validate();
  } catch (const std::exception& e) {
    throw ConfigError(segments.back().line, std::string("invalid initial data: ") + e.what());
  }
  return data;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::vector<Segment> segments;
  bool primitive = true;

  std::stringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line == "[segment]") {
      segments.push_back({line_no, std::nullopt, {}});
      continue;
    }
    if (line.front() == '[') throw ConfigError(line_no, "unknown block " + line);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, "missing value for " + key);

    if (!segments.empty()) {
      Segment& seg = segments.back();
      if (key == "from") {
        seg.from = parse_double(value, line_no, key);
      } else if (key == "p" || key == "v" || key == "a" || key == "b") {
        if (seg.channels.count(key)) throw ConfigError(line_no, "duplicate key " + key);
        const std::vector<double> parts = parse_list(value, line_no, key);
        if (parts.size() > 2) throw ConfigError(line_no, key + " takes 'value' or 'value, slope'");
        seg.channels[key] = {parts[0], parts.size() == 2 ? parts[1] : 0.0, line_no};
      } else {
        throw ConfigError(line_no, "unknown segment key '" + key + "'");
      }
      continue;
    }

    if (seen.count(key)) throw ConfigError(line_no, "duplicate key " + key);
    seen[key] = line_no;
    if (key == "preset") {
      cfg.preset = parse_preset(value, line_no);
    } else if (key == "t_star") {
      cfg.t_star = parse_double(value, line_no, key);
    } else if (key == "x_star") {
      cfg.x_star = parse_double(value, line_no, key);
    } else if (key == "N") {
      cfg.N = parse_int(value, line_no, key);
    } else if (key == "snapshot_times") {
      cfg.snapshot_times = parse_list(value, line_no, key);
    } else if (key == "snapshot_csv") {
      cfg.outputs.snapshot_csv = parse_bool(value, line_no, key);
    } else if (key == "spacetime_grid") {
      cfg.outputs.spacetime_grid = parse_bool(value, line_no, key);
    } else if (key == "diagnostics") {
      cfg.outputs.diagnostics = parse_bool(value, line_no, key);
    } else if (key == "decimation") {
      cfg.decimation = parse_int(value, line_no, key);
    } else if (key == "variables") {
      if (value == "pv") primitive = true;
      else if (value == "ab") primitive = false;
      else throw ConfigError(line_no, "variables must be pv or ab");
    } else if (key == "times") {
      cfg.linear.times = parse_list(value, line_no, key);
    } else if (key == "x_min") {
      cfg.linear.x_min = parse_double(value, line_no, key);
    } else if (key == "x_max") {
      cfg.linear.x_max = parse_double(value, line_no, key);
    } else if (key == "samples") {
      cfg.linear.samples = parse_int(value, line_no, key);
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  std::string missing;
  for (const char* required : {"preset", "t_star", "x_star"}) {
    if (!seen.count(required)) missing += missing.empty() ? required : std::string(", ") + required;
  }
  if (!missing.empty()) throw ConfigError(0, "missing required keys: " + missing);

  const auto at = [&](const char* key) { return seen.count(key) ? seen.at(key) : std::size_t{0}; };
  if (!(cfg.t_star > 0.0)) throw ConfigError(at("t_star"), "invariant t_star > 0 violated");
  if (!(cfg.x_star > 0.0)) throw ConfigError(at("x_star"), "invariant x_star > 0 violated");
  if (cfg.N < 1) throw ConfigError(at("N"), "invariant N >= 1 violated");
  if (cfg.N * cfg.x_star < cfg.t_star) {
    const std::size_t line = at("N") ? at("N") : std::max(at("t_star"), at("x_star"));
    throw ConfigError(line, "invariant N * x_star >= t_star violated (lambda would be < 1)");
  }
  if (cfg.decimation < 1) throw ConfigError(at("decimation"), "invariant decimation >= 1 violated");
  if (cfg.snapshot_times.empty()) cfg.snapshot_times = {cfg.t_star};
  for (double t : cfg.snapshot_times) {
    if (t < 0.0 || t > cfg.t_star) {
      throw ConfigError(at("snapshot_times"), "invariant 0 <= snapshot time <= t_star violated");
    }
  }
  if (cfg.linear.times.empty()) cfg.linear.times = {cfg.t_star};
  for (double t : cfg.linear.times) {
    if (t < 0.0) throw ConfigError(at("times"), "invariant times >= 0 violated");
  }
  if (!(cfg.linear.x_min >= linear::LinearSolution::kMinRadius)) {
    throw ConfigError(at("x_min"), "invariant x_min > 0 violated");
  }
  if (!(cfg.linear.x_max > cfg.linear.x_min)) {
    throw ConfigError(at("x_max"), "invariant x_max > x_min violated");
  }
  if (cfg.linear.samples < 2) throw ConfigError(at("samples"), "invariant samples >= 2 violated");

  if (cfg.preset == Preset::kCustom) {
    cfg.custom = build_custom(segments, primitive, at("preset"));
  } else if (!segments.empty()) {
    throw ConfigError(segments.front().line, "[segment] blocks need preset = custom");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ultrarad
