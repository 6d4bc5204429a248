#include "nds/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nds/experiments.hpp"

namespace nds {

bool operator==(const StateVec& a, const StateVec& b) {
  return a.x == b.x && a.y == b.y && a.u == b.u;
}

bool operator==(const FeedbackConnection& a, const FeedbackConnection& b) {
  return a.weight == b.weight && a.delay == b.delay;
}

bool RunConfig::operator==(const RunConfig& o) const {
  return command == o.command && setup == o.setup && a == o.a && v == o.v &&
         b == o.b && c == o.c && d == o.d && k == o.k && theta == o.theta &&
         eta0 == o.eta0 && steps == o.steps && onset == o.onset &&
         seed == o.seed && runs == o.runs &&
         renorm_interval == o.renorm_interval && ts == o.ts &&
         separation == o.separation && mode == o.mode && out == o.out &&
         init == o.init && feedback == o.feedback;
}

NDSParams RunConfig::resolved_params() const {
  NDSParams p = setup_by_id(setup.value_or(7)).params;
  if (a) p.a = *a;
  if (v) p.v = *v;
  if (b) p.b = *b;
  if (c) p.c = *c;
  if (d) p.d = *d;
  if (k) p.k = *k;
  if (theta) p.theta = *theta;
  if (eta0) p.eta0 = *eta0;
  return p;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ConfigError("line " + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double_value(std::string_view text, std::size_t line,
                          const std::string& key) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail(line, "malformed number for '" + key + "'");
  }
  if (!std::isfinite(value)) {
    fail(line, "non-finite value for '" + key + "'");
  }
  return value;
}

std::uint64_t parse_uint_value(std::string_view text, std::size_t line,
                               const std::string& key) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail(line, "malformed integer for '" + key + "'");
  }
  return value;
}

void warn_if_outside_range(RunConfig& cfg, const std::string& key, double value) {
  // the studied ranges; values beyond them are accepted for exploration
  double lo = 0.0, hi = 0.0;
  if (key == "a" || key == "v") {
    lo = 0.001; hi = 0.1;
  } else if (key == "b" || key == "c") {
    lo = 0.01; hi = 0.055;
  } else if (key == "d") {
    lo = 0.8; hi = 0.9;
  } else if (key == "k") {
    lo = -0.058; hi = -0.055;
  } else {
    return;
  }
  if (value < lo || value > hi) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s=%.17g is outside the studied range [%g, %g]",
                  key.c_str(), value, lo, hi);
    cfg.warnings.emplace_back(buf);
  }
}

}  // namespace

std::vector<FeedbackConnection> parse_feedback_pairs(std::string_view text) {
  std::vector<FeedbackConnection> pairs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = trim(text.substr(pos, comma - pos));
    const std::size_t colon = item.find(':');
    if (item.empty() || colon == std::string_view::npos) {
      throw ConfigError("malformed feedback pair '" + std::string(item) +
                        "' (expected w:tau)");
    }
    FeedbackConnection conn;
    {
      const std::string_view w = trim(item.substr(0, colon));
      const auto [ptr, ec] =
          std::from_chars(w.data(), w.data() + w.size(), conn.weight);
      if (ec != std::errc{} || ptr != w.data() + w.size() ||
          !std::isfinite(conn.weight)) {
        throw ConfigError("malformed feedback weight '" + std::string(w) + "'");
      }
    }
    {
      const std::string_view tau = trim(item.substr(colon + 1));
      const auto [ptr, ec] =
          std::from_chars(tau.data(), tau.data() + tau.size(), conn.delay);
      if (ec != std::errc{} || ptr != tau.data() + tau.size() || conn.delay < 1) {
        throw ConfigError("malformed feedback delay '" + std::string(tau) +
                          "' (positive integer steps)");
      }
    }
    pairs.push_back(conn);
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return pairs;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    const bool at_end = eol == text.size();
    pos = eol + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (at_end) break;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const std::string_view section = trim(line.substr(1, line.size() - 2));
      if (section != "params" && section != "run" && section != "feedback") {
        fail(line_no, "unknown section '" + std::string(section) + "'");
      }
      // sections are organizational; keys live in one namespace
      if (at_end) break;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(line_no, "expected key=value");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for '" + key + "'");

    if (key == "command") {
      cfg.command = std::string(value);
    } else if (key == "setup") {
      const auto id = parse_uint_value(value, line_no, key);
      if (id < 1 || id > 15) fail(line_no, "setup must be in 1..15");
      cfg.setup = static_cast<int>(id);
    } else if (key == "a" || key == "v" || key == "b" || key == "c" ||
               key == "d" || key == "k" || key == "theta" || key == "eta0") {
      const double val = parse_double_value(value, line_no, key);
      warn_if_outside_range(cfg, key, val);
      if (key == "a") cfg.a = val;
      else if (key == "v") cfg.v = val;
      else if (key == "b") cfg.b = val;
      else if (key == "c") cfg.c = val;
      else if (key == "d") cfg.d = val;
      else if (key == "k") cfg.k = val;
      else if (key == "theta") cfg.theta = val;
      else cfg.eta0 = val;
    } else if (key == "steps") {
      const auto n = parse_uint_value(value, line_no, key);
      if (n < 1) fail(line_no, "steps must be >= 1");
      cfg.steps = n;
    } else if (key == "onset") {
      cfg.onset = parse_uint_value(value, line_no, key);
    } else if (key == "seed") {
      cfg.seed = parse_uint_value(value, line_no, key);
    } else if (key == "runs") {
      const auto n = parse_uint_value(value, line_no, key);
      if (n < 1) fail(line_no, "runs must be >= 1");
      cfg.runs = n;
    } else if (key == "renorm_interval") {
      const auto n = parse_uint_value(value, line_no, key);
      if (n < 1) fail(line_no, "renorm_interval must be >= 1");
      cfg.renorm_interval = n;
    } else if (key == "ts") {
      const double val = parse_double_value(value, line_no, key);
      if (!(val > 0.0)) fail(line_no, "ts must be > 0");
      cfg.ts = val;
    } else if (key == "separation") {
      const double val = parse_double_value(value, line_no, key);
      if (!(val > 0.0)) fail(line_no, "separation must be > 0");
      cfg.separation = val;
    } else if (key == "mode") {
      if (value != "continuous" && value != "euler" && value != "modified") {
        fail(line_no, "mode must be continuous, euler or modified");
      }
      cfg.mode = std::string(value);
    } else if (key == "out") {
      cfg.out = std::string(value);
    } else if (key == "init") {
      // x,y,u
      StateVec s;
      std::string_view rest = value;
      double* fields[3] = {&s.x, &s.y, &s.u};
      for (int i = 0; i < 3; ++i) {
        std::size_t comma = rest.find(',');
        if ((i < 2) != (comma != std::string_view::npos)) {
          fail(line_no, "init must be x,y,u");
        }
        if (comma == std::string_view::npos) comma = rest.size();
        *fields[i] = parse_double_value(trim(rest.substr(0, comma)), line_no, key);
        rest = comma < rest.size() ? rest.substr(comma + 1) : std::string_view{};
      }
      cfg.init = s;
    } else if (key == "pairs") {
      try {
        cfg.feedback = parse_feedback_pairs(value);
      } catch (const ConfigError& e) {
        fail(line_no, e.what());
      }
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }

    if (at_end) break;
  }

  if (cfg.theta && cfg.eta0 && *cfg.eta0 > *cfg.theta) {
    throw ConfigError("eta0 must be <= theta");
  }
  return cfg;
}

namespace {

std::string full_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  if (cfg.command) out << "command=" << *cfg.command << "\n";

  const bool any_param = cfg.setup || cfg.a || cfg.v || cfg.b || cfg.c ||
                         cfg.d || cfg.k || cfg.theta || cfg.eta0;
  if (any_param) {
    out << "[params]\n";
    if (cfg.setup) out << "setup=" << *cfg.setup << "\n";
    if (cfg.a) out << "a=" << full_double(*cfg.a) << "\n";
    if (cfg.v) out << "v=" << full_double(*cfg.v) << "\n";
    if (cfg.b) out << "b=" << full_double(*cfg.b) << "\n";
    if (cfg.c) out << "c=" << full_double(*cfg.c) << "\n";
    if (cfg.d) out << "d=" << full_double(*cfg.d) << "\n";
    if (cfg.k) out << "k=" << full_double(*cfg.k) << "\n";
    if (cfg.theta) out << "theta=" << full_double(*cfg.theta) << "\n";
    if (cfg.eta0) out << "eta0=" << full_double(*cfg.eta0) << "\n";
  }

  const bool any_run = cfg.steps || cfg.onset || cfg.seed || cfg.runs ||
                       cfg.renorm_interval || cfg.ts || cfg.separation ||
                       cfg.mode || cfg.out || cfg.init;
  if (any_run) {
    out << "[run]\n";
    if (cfg.steps) out << "steps=" << *cfg.steps << "\n";
    if (cfg.onset) out << "onset=" << *cfg.onset << "\n";
    if (cfg.seed) out << "seed=" << *cfg.seed << "\n";
    if (cfg.runs) out << "runs=" << *cfg.runs << "\n";
    if (cfg.renorm_interval)
      out << "renorm_interval=" << *cfg.renorm_interval << "\n";
    if (cfg.ts) out << "ts=" << full_double(*cfg.ts) << "\n";
    if (cfg.separation) out << "separation=" << full_double(*cfg.separation) << "\n";
    if (cfg.mode) out << "mode=" << *cfg.mode << "\n";
    if (cfg.out) out << "out=" << *cfg.out << "\n";
    if (cfg.init) {
      out << "init=" << full_double(cfg.init->x) << ","
          << full_double(cfg.init->y) << "," << full_double(cfg.init->u) << "\n";
    }
  }

  if (!cfg.feedback.empty()) {
    out << "[feedback]\npairs=";
    for (std::size_t i = 0; i < cfg.feedback.size(); ++i) {
      if (i) out << ",";
      out << full_double(cfg.feedback[i].weight) << ":" << cfg.feedback[i].delay;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace nds
