#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "monopole/dynamics.hpp"

// Trajectory files: a header of column names and one numeric row per sample,
// stored as CSV or as JSON lines with the same field names.
namespace monopole::io {

enum class Format { csv, jsonl };

/// Errors: BadInput for names other than "csv" and "jsonl".
Format parse_format(std::string_view name);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Column index or -1.
  int find(std::string_view name) const;
  /// Errors: ParseError if the column is absent.
  int require(std::string_view name) const;
  std::vector<double> series(std::string_view name) const;
};

/// Values are written with 17 significant digits; NaN as "nan" (CSV) or null (JSON).
void write_csv(std::ostream& out, const Table& table);
void write_jsonl(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, Format format);

/// Detects JSON lines by a leading '{'. Errors: ParseError on empty input,
/// malformed numbers, ragged rows or inconsistent keys.
Table read_table(std::istream& in);

enum class ProblemKind { dirac, yang, cone_geodesic };
const char* to_string(ProblemKind kind);

/// Columns t, x1..x3, dx1..dx3, lambda, then the monitors.
Table dirac_table(const integrate::Trajectory<dynamics::Vec6>& traj, double lambda);
/// Columns t, x1..x5, u1..u4, r, du1..du4, dr, e1..e3, then the monitors.
Table yang_table(const integrate::Trajectory<dynamics::Vec13>& traj);
/// Columns t, x1..x_{n+1}, v1..v_{n-1}, r, dv1..dv_{n-1}, dr, psi, speed.
Table cone_table(const integrate::Trajectory<geom::VecX>& traj, double psi);

/// By column set: u1 → yang, psi → cone geodesic, otherwise dirac.
ProblemKind detect_kind(const Table& table);

std::vector<dynamics::DiracState> dirac_states(const Table& table);
std::vector<dynamics::YangState> yang_states(const Table& table);

}  // namespace monopole::io
