#include "nds/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nds {

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path.string() + "'");
  }
  const auto write_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open input file '" + path.string() + "'");
  }
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> row;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        row.push_back(line.substr(pos));
        break;
      }
      row.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (first) {
      table.header = std::move(row);
      first = false;
    } else {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

double parse_double(const std::string& field) {
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::runtime_error("malformed real '" + field + "'");
  }
  return v;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t;
  t.header = {"t", "x", "y", "u", "gamma", "F", "In"};
  t.rows.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_full(traj.states[i].x),
                      format_full(traj.states[i].y), format_full(traj.states[i].u),
                      std::to_string(static_cast<int>(traj.spikes[i])),
                      format_full(traj.feedback[i]), format_full(traj.input[i])});
  }
  return t;
}

CsvTable states_table(const std::vector<StateVec>& states, double time_scale) {
  CsvTable t;
  t.header = {"t", "x", "y", "u"};
  t.rows.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string time = time_scale > 0.0
                                 ? format_full(static_cast<double>(i) * time_scale)
                                 : std::to_string(i);
    t.rows.push_back({time, format_full(states[i].x), format_full(states[i].y),
                      format_full(states[i].u)});
  }
  return t;
}

CsvTable fixed_points_table(const std::vector<SetupAnalysis>& analyses) {
  CsvTable t;
  t.header = {"setup",  "x1",     "y1",     "u1",     "x2",     "y2",
              "u2",     "x1_5dp", "y1_5dp", "u1_5dp", "x2_5dp", "y2_5dp",
              "u2_5dp"};
  for (const auto& a : analyses) {
    const StateVec& p1 = a.reports[0].coords;
    const StateVec& p2 = a.reports[1].coords;
    t.rows.push_back({std::to_string(a.setup_id), format_full(p1.x),
                      format_full(p1.y), format_full(p1.u), format_full(p2.x),
                      format_full(p2.y), format_full(p2.u),
                      format_fixed(p1.x, 5), format_fixed(p1.y, 5),
                      format_fixed(p1.u, 5), format_fixed(p2.x, 5),
                      format_fixed(p2.y, 5), format_fixed(p2.u, 5)});
  }
  return t;
}

CsvTable eigen_table(const std::vector<SetupAnalysis>& analyses) {
  CsvTable t;
  t.header = {"setup"};
  for (const char* fp : {"fp1", "fp2"}) {
    for (const char* e : {"e1", "e2", "e3"}) {
      t.header.push_back(std::string(fp) + "_" + e + "_re");
      t.header.push_back(std::string(fp) + "_" + e + "_im");
    }
  }
  for (const char* fp : {"fp1", "fp2"}) {
    for (const char* e : {"e1", "e2", "e3"}) {
      t.header.push_back(std::string(fp) + "_" + e + "_re_4dp");
      t.header.push_back(std::string(fp) + "_" + e + "_im_4dp");
    }
  }
  for (const char* fp : {"fp1", "fp2"}) {
    t.header.push_back(std::string(fp) + "_class_unstable");
    t.header.push_back(std::string(fp) + "_class_strict");
  }

  for (const auto& a : analyses) {
    std::vector<std::string> row{std::to_string(a.setup_id)};
    for (const auto& rep : a.reports) {
      for (const auto& e : rep.eigenvalues) {
        row.push_back(format_full(e.real()));
        row.push_back(format_full(e.imag()));
      }
    }
    for (const auto& rep : a.reports) {
      for (const auto& e : rep.eigenvalues) {
        row.push_back(format_fixed(e.real(), 4));
        row.push_back(format_fixed(e.imag(), 4));
      }
    }
    for (const auto& rep : a.reports) {
      row.push_back(to_string(rep.class_unstable));
      row.push_back(to_string(rep.class_strict));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable validity_table(const std::vector<ValidityRange>& ranges) {
  CsvTable t;
  t.header = {"parameter", "low", "high"};
  for (const auto& r : ranges) {
    t.rows.push_back({r.parameter, format_full(r.low), format_full(r.high)});
  }
  return t;
}

CsvTable capacity_table(const std::vector<CapacityResult>& results) {
  CsvTable t;
  t.header = {"setup",           "runs",
              "seed",            "locked_runs",
              "mean_stabilized", "distinct_period_count",
              "distinct_periods"};
  for (const auto& r : results) {
    std::string periods;
    for (std::size_t p : r.distinct_periods) {
      if (!periods.empty()) periods += ';';
      periods += std::to_string(p);
    }
    t.rows.push_back({std::to_string(r.setup_id), std::to_string(r.runs),
                      std::to_string(r.seed), std::to_string(r.locked_runs),
                      format_full(r.mean_stabilized),
                      std::to_string(r.distinct_periods.size()), periods});
  }
  return t;
}

CsvTable lyapunov_table(std::uint64_t steps, std::uint64_t renorm_interval,
                        double separation, double lambda) {
  CsvTable t;
  t.header = {"steps", "renorm_interval", "separation", "lambda"};
  t.rows.push_back({std::to_string(steps), std::to_string(renorm_interval),
                    format_full(separation), format_full(lambda)});
  return t;
}

}  // namespace nds
