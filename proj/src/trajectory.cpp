#include "vaa/trajectory.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "vaa/errors.hpp"

namespace vaa {

namespace {

void append_number(std::string& out, double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw NumericalError("cannot format number");
  }
  out.append(buf.data(), end);
}

double parse_number(std::string_view text, std::size_t line, std::string_view column) {
  // from_chars rejects a leading '+', which we never write.
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("trajectory line " + std::to_string(line) + ", column '" +
                      std::string(column) + "': not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string sanitize_name(std::string name) {
  for (char& ch : name) {
    if (ch == ' ' || ch == '\t' || ch == '=') {
      ch = '_';
    }
  }
  return name.empty() ? "unnamed" : name;
}

}  // namespace

std::string_view to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::euler:
      return "euler";
    case Integrator::rk4:
      return "rk4";
    case Integrator::geometric_euler:
      return "geometric_euler";
  }
  return "unknown";
}

Integrator parse_integrator(std::string_view name) {
  if (name == "euler") return Integrator::euler;
  if (name == "rk4") return Integrator::rk4;
  if (name == "geometric_euler") return Integrator::geometric_euler;
  throw ConfigError("unknown integrator '" + std::string(name) +
                    "' (expected euler, rk4 or geometric_euler)");
}

ErrorState row_error_state(const TrajectoryRow& row) {
  ErrorState e;
  e.R_E = renormalize(row.R * row.Rhat.transpose());
  e.v_E = row.v - row.z - e.R_E * (row.vhat - row.z);
  return e;
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c{"t"};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.push_back("R" + std::to_string(i) + std::to_string(j));
    c.insert(c.end(), {"vx", "vy", "vz"});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.push_back("Rh" + std::to_string(i) + std::to_string(j));
    c.insert(c.end(), {"vhx", "vhy", "vhz", "zx", "zy", "zz", "att_err", "vel_err", "lyap"});
    return c;
  }();
  return columns;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
  std::string text = "# ";
  text += kTrajectorySchema;
  text += " scenario=" + sanitize_name(record.scenario);
  text += " integrator=";
  text += to_string(record.integrator);
  text += " dt=";
  append_number(text, record.dt);
  text += " k=";
  append_number(text, record.gains.k);
  text += " c=";
  append_number(text, record.gains.c);
  text += " alpha=";
  append_number(text, record.gains.alpha);
  text += " gravity=";
  for (int i = 0; i < 3; ++i) {
    if (i > 0) text += ',';
    append_number(text, record.gravity[i]);
  }
  text += '\n';

  const auto& columns = trajectory_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) text += ',';
    text += columns[i];
  }
  text += '\n';

  for (const TrajectoryRow& row : record.rows) {
    std::array<double, 31> values{};
    std::size_t n = 0;
    values[n++] = row.t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) values[n++] = row.R(i, j);
    for (int i = 0; i < 3; ++i) values[n++] = row.v[i];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) values[n++] = row.Rhat(i, j);
    for (int i = 0; i < 3; ++i) values[n++] = row.vhat[i];
    for (int i = 0; i < 3; ++i) values[n++] = row.z[i];
    values[n++] = row.att_err;
    values[n++] = row.vel_err;
    values[n++] = row.lyap;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) text += ',';
      append_number(text, values[i]);
    }
    text += '\n';
  }
  out << text;
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  write_trajectory_csv(out, record);
  if (!out) {
    throw ConfigError("failed writing '" + path + "'");
  }
}

TrajectoryRecord read_trajectory_csv(std::istream& in) {
  TrajectoryRecord record;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw ConfigError("trajectory is empty");
  }
  ++line_no;
  const std::string prefix = "# " + std::string(kTrajectorySchema);
  if (line.rfind(prefix, 0) != 0) {
    throw ConfigError("trajectory line 1: expected schema comment '" + prefix + "'");
  }
  std::istringstream meta(line.substr(prefix.size()));
  std::string token;
  while (meta >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "scenario") {
      record.scenario = value;
    } else if (key == "integrator") {
      record.integrator = parse_integrator(value);
    } else if (key == "dt") {
      record.dt = parse_number(value, 1, "dt");
    } else if (key == "k") {
      record.gains.k = parse_number(value, 1, "k");
    } else if (key == "c") {
      record.gains.c = parse_number(value, 1, "c");
    } else if (key == "alpha") {
      record.gains.alpha = parse_number(value, 1, "alpha");
    } else if (key == "gravity") {
      const auto parts = split(value, ',');
      if (parts.size() != 3) {
        throw ConfigError("trajectory line 1: gravity needs 3 components");
      }
      for (int i = 0; i < 3; ++i) record.gravity[i] = parse_number(parts[i], 1, "gravity");
    }
  }

  if (!std::getline(in, line)) {
    throw ConfigError("trajectory line 2: missing column header");
  }
  ++line_no;
  const auto& columns = trajectory_columns();
  const auto header = split(line, ',');
  if (header.size() != columns.size()) {
    throw ConfigError("trajectory line 2: expected " + std::to_string(columns.size()) +
                      " columns, found " + std::to_string(header.size()));
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (header[i] != columns[i]) {
      throw ConfigError("trajectory line 2: column " + std::to_string(i + 1) + " is '" +
                        std::string(header[i]) + "', expected '" + columns[i] + "'");
    }
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != columns.size()) {
      throw ConfigError("trajectory line " + std::to_string(line_no) + ": expected " +
                        std::to_string(columns.size()) + " fields, found " +
                        std::to_string(fields.size()));
    }
    std::size_t n = 0;
    auto next = [&] {
      const double v = parse_number(fields[n], line_no, columns[n]);
      ++n;
      return v;
    };
    TrajectoryRow row;
    row.t = next();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) row.R(i, j) = next();
    for (int i = 0; i < 3; ++i) row.v[i] = next();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) row.Rhat(i, j) = next();
    for (int i = 0; i < 3; ++i) row.vhat[i] = next();
    for (int i = 0; i < 3; ++i) row.z[i] = next();
    row.att_err = next();
    row.vel_err = next();
    row.lyap = next();
    if (!record.rows.empty() && !(row.t > record.rows.back().t)) {
      throw ConfigError("trajectory line " + std::to_string(line_no) +
                        ": time is not strictly increasing");
    }
    record.rows.push_back(row);
  }
  if (record.rows.empty()) {
    throw ConfigError("trajectory has no data rows");
  }
  return record;
}

TrajectoryRecord read_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open trajectory '" + path + "'");
  }
  return read_trajectory_csv(in);
}

}  // namespace vaa
