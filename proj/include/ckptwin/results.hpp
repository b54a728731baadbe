#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ckptwin/core.hpp"

namespace ckptwin {

/// One output row. Times are stored in seconds; day columns are derived when
/// the row is written. Absent values stay empty rather than defaulting to 0.
struct ResultRow {
  std::string kind;  ///< table, analytic, sweep-n, sweep-tr, sweep-i, best-period
  Strategy strategy = Strategy::Daly;
  std::string status = "ok";

  std::int64_t n_procs = 0;
  double window = 0;
  double precision = 0;
  double recall = 0;
  double c_regular = 0;
  double c_proactive = 0;
  double downtime = 0;
  double recovery = 0;
  double mu_ind = 0;
  std::string distribution;
  std::string false_law;
  double t_base = 0;

  std::uint64_t base_seed = 0;
  int n_reps = 0;
  std::uint64_t config_hash = 0;

  std::optional<double> t_regular;
  std::optional<double> t_proactive;
  std::optional<double> trust_prob;
  bool t_regular_clamped = false;
  bool t_proactive_clamped = false;

  std::optional<double> analytic_waste;
  std::optional<double> makespan;
  std::optional<double> stderr_makespan;
  std::optional<double> waste;
  std::optional<double> stderr_waste;
  std::optional<double> gain_vs_daly;  ///< percent

  std::optional<double> best_t_regular;
  std::optional<double> best_waste;
  std::string search;  ///< search settings, empty when no search ran

  std::optional<double> paper_days;
  std::optional<double> paper_abs_diff_days;

  bool operator==(const ResultRow&) const = default;
};

/// Column names in output order.
const std::vector<std::string>& csv_columns();

/// Header, then one line per row. Each `comments` entry becomes a `# ` line
/// before the header.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
               const std::vector<std::string>& comments = {});

/// Writes to `path`; I/O failures throw Error naming the path.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path,
              const std::vector<std::string>& comments = {});

/// Inverse of write_csv. Comment lines are skipped; derived day columns are
/// ignored.
std::vector<ResultRow> parse_csv(std::istream& in);

/// Splits one CSV record (RFC 4180 quoting). Records may span lines when a
/// quoted field contains a newline, so this reads from a stream.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);

std::string csv_escape(const std::string& field);

}  // namespace ckptwin
