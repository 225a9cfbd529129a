#include "monopole/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

namespace monopole::io {

namespace {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view s, std::size_t line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_flag_column(const std::string& name) { return name == "colliding"; }

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split(line);
    if (t.columns.empty()) {
      for (auto f : fields) {
        if (f.empty()) throw Error(ErrorKind::ParseError, "empty column name in header");
        t.columns.emplace_back(f);
      }
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": expected " +
                                             std::to_string(t.columns.size()) + " fields, found " +
                                             std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_number(f, n));
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw Error(ErrorKind::ParseError, "empty input");
  return t;
}

Table read_jsonl(std::istream& in) {
  Table t;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.empty()) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": " + e.what());
    }
    if (!obj.is_object()) throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": not an object");
    if (t.columns.empty()) {
      for (const auto& [key, value] : obj.items()) t.columns.push_back(key);
    }
    if (obj.size() != t.columns.size()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": inconsistent fields");
    }
    std::vector<double> row;
    row.reserve(t.columns.size());
    for (const auto& c : t.columns) {
      const auto it = obj.find(c);
      if (it == obj.end()) throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": missing " + c);
      if (it->is_null()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      } else if (it->is_boolean()) {
        row.push_back(it->get<bool>() ? 1.0 : 0.0);
      } else if (it->is_number()) {
        row.push_back(it->get<double>());
      } else {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(n) + ": non-numeric " + c);
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw Error(ErrorKind::ParseError, "empty input");
  return t;
}

template <class State>
void append_monitors(Table& t, const integrate::Trajectory<State>& traj) {
  for (const auto& m : traj.monitors) {
    if (m.width == 1) {
      t.columns.push_back(m.name);
    } else {
      for (int i = 1; i <= m.width; ++i) t.columns.push_back(m.name + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (const auto& m : traj.monitors) {
      const auto v = m.at(i);
      t.rows[i].insert(t.rows[i].end(), v.data(), v.data() + v.size());
    }
  }
}

void add_indexed(std::vector<std::string>& cols, const std::string& stem, int n) {
  for (int i = 1; i <= n; ++i) cols.push_back(stem + std::to_string(i));
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  throw Error(ErrorKind::BadInput, "unknown format '" + std::string(name) + "'");
}

int Table::find(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int Table::require(std::string_view name) const {
  const int i = find(name);
  if (i < 0) throw Error(ErrorKind::ParseError, "missing column '" + std::string(name) + "'");
  return i;
}

std::vector<double> Table::series(std::string_view name) const {
  const int c = require(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const Table& table) {
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& name = table.columns[i];
      if (std::isnan(row[i])) {
        obj[name] = nullptr;
      } else if (is_flag_column(name)) {
        obj[name] = row[i] != 0.0;
      } else {
        obj[name] = row[i];
      }
    }
    out << obj.dump() << '\n';
  }
}

void write_table(std::ostream& out, const Table& table, Format format) {
  if (format == Format::csv) {
    write_csv(out, table);
  } else {
    write_jsonl(out, table);
  }
}

Table read_table(std::istream& in) {
  while (in.peek() == ' ' || in.peek() == '\n' || in.peek() == '\r' || in.peek() == '\t') in.get();
  if (in.peek() == std::char_traits<char>::eof()) throw Error(ErrorKind::ParseError, "empty input");
  return in.peek() == '{' ? read_jsonl(in) : read_csv(in);
}

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::dirac: return "dirac";
    case ProblemKind::yang: return "yang";
    case ProblemKind::cone_geodesic: return "cone-geodesic";
  }
  return "?";
}

Table dirac_table(const integrate::Trajectory<dynamics::Vec6>& traj, double lambda) {
  Table t;
  t.columns = {"t"};
  add_indexed(t.columns, "x", 3);
  add_indexed(t.columns, "dx", 3);
  t.columns.push_back("lambda");
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& y = traj.states[i];
    std::vector<double> row{traj.times[i]};
    row.insert(row.end(), y.data(), y.data() + 6);
    row.push_back(lambda);
    t.rows.push_back(std::move(row));
  }
  append_monitors(t, traj);
  return t;
}

Table yang_table(const integrate::Trajectory<dynamics::Vec13>& traj) {
  Table t;
  t.columns = {"t"};
  add_indexed(t.columns, "x", 5);
  add_indexed(t.columns, "u", 4);
  t.columns.push_back("r");
  add_indexed(t.columns, "du", 4);
  t.columns.push_back("dr");
  add_indexed(t.columns, "e", 3);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& y = traj.states[i];
    const dynamics::Vec5 x = dynamics::yang_position(dynamics::unpack_yang(y));
    std::vector<double> row{traj.times[i]};
    row.insert(row.end(), x.data(), x.data() + 5);
    row.insert(row.end(), y.data(), y.data() + 13);
    t.rows.push_back(std::move(row));
  }
  append_monitors(t, traj);
  return t;
}

Table cone_table(const integrate::Trajectory<geom::VecX>& traj, double psi) {
  Table t;
  if (traj.size() == 0) return t;
  const int q = static_cast<int>(traj.states.front().size() / 2) - 1;  // dim of v
  t.columns = {"t"};
  add_indexed(t.columns, "x", q + 2);
  add_indexed(t.columns, "v", q);
  t.columns.push_back("r");
  add_indexed(t.columns, "dv", q);
  t.columns.insert(t.columns.end(), {"dr", "psi", "speed"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& y = traj.states[i];
    const cones::ConeState s = cones::unpack_cone_state(y);
    const geom::VecX x = cones::cone_param(psi, s.v, s.r);
    std::vector<double> row{traj.times[i]};
    row.insert(row.end(), x.data(), x.data() + x.size());
    row.insert(row.end(), y.data(), y.data() + y.size());
    row.push_back(psi);
    row.push_back(std::sqrt(cones::cone_speed2(s, psi)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ProblemKind detect_kind(const Table& table) {
  if (table.find("u1") >= 0) return ProblemKind::yang;
  if (table.find("psi") >= 0) return ProblemKind::cone_geodesic;
  return ProblemKind::dirac;
}

std::vector<dynamics::DiracState> dirac_states(const Table& table) {
  int x[3], dx[3];
  for (int i = 0; i < 3; ++i) {
    x[i] = table.require("x" + std::to_string(i + 1));
    dx[i] = table.require("dx" + std::to_string(i + 1));
  }
  const int lambda = table.require("lambda");
  std::vector<dynamics::DiracState> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    dynamics::DiracState s;
    for (int i = 0; i < 3; ++i) {
      s.r[i] = row[x[i]];
      s.r_dot[i] = row[dx[i]];
    }
    s.lambda = row[lambda];
    out.push_back(s);
  }
  return out;
}

std::vector<dynamics::YangState> yang_states(const Table& table) {
  int u[4], du[4], e[3];
  for (int i = 0; i < 4; ++i) {
    u[i] = table.require("u" + std::to_string(i + 1));
    du[i] = table.require("du" + std::to_string(i + 1));
  }
  for (int i = 0; i < 3; ++i) e[i] = table.require("e" + std::to_string(i + 1));
  const int r = table.require("r");
  const int dr = table.require("dr");
  std::vector<dynamics::YangState> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    dynamics::YangState s;
    for (int i = 0; i < 4; ++i) {
      s.u[i] = row[u[i]];
      s.u_dot[i] = row[du[i]];
    }
    for (int i = 0; i < 3; ++i) s.e[i] = row[e[i]];
    s.r = row[r];
    s.r_dot = row[dr];
    out.push_back(s);
  }
  return out;
}

}  // namespace monopole::io
