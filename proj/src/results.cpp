#include "ckptwin/results.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace ckptwin {

namespace {

// Shortest text that reads back to the same double.
std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string opt(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::string opt_days(const std::optional<double>& x) {
  return x ? num(to_days(*x)) : std::string();
}

double parse_double(const std::string& s, const std::string& column) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw InvalidParameter("bad number '" + s + "' in column " + column);
  return v;
}

std::optional<double> parse_opt(const std::string& s, const std::string& column) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, column);
}

std::uint64_t parse_u64(const std::string& s, const std::string& column) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidParameter("bad integer '" + s + "' in column " + column);
}

bool parse_bool(const std::string& s, const std::string& column) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw InvalidParameter("bad flag '" + s + "' in column " + column);
}

struct Column {
  std::string name;
  std::function<std::string(const ResultRow&)> get;
  std::function<void(ResultRow&, const std::string&)> set;  // empty for derived columns
};

#define CKPT_STR(field)                                                \
  Column { #field, [](const ResultRow& r) { return r.field; },         \
           [](ResultRow& r, const std::string& s) { r.field = s; } }
#define CKPT_NUM(field, name)                                           \
  Column { name, [](const ResultRow& r) { return num(r.field); },       \
           [](ResultRow& r, const std::string& s) { r.field = parse_double(s, name); } }
#define CKPT_OPT(field, name)                                           \
  Column { name, [](const ResultRow& r) { return opt(r.field); },       \
           [](ResultRow& r, const std::string& s) { r.field = parse_opt(s, name); } }
#define CKPT_DAYS(field, name) \
  Column { name, [](const ResultRow& r) { return opt_days(r.field); }, nullptr }
#define CKPT_FLAG(field)                                                          \
  Column { #field, [](const ResultRow& r) { return std::string(r.field ? "1" : "0"); }, \
           [](ResultRow& r, const std::string& s) { r.field = parse_bool(s, #field); } }

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      CKPT_STR(kind),
      Column{"strategy", [](const ResultRow& r) { return std::string(to_string(r.strategy)); },
             [](ResultRow& r, const std::string& s) { r.strategy = parse_strategy(s); }},
      CKPT_STR(status),
      Column{"n_procs", [](const ResultRow& r) { return std::to_string(r.n_procs); },
             [](ResultRow& r, const std::string& s) {
               r.n_procs = static_cast<std::int64_t>(parse_u64(s, "n_procs"));
             }},
      CKPT_NUM(window, "window_s"),
      CKPT_NUM(precision, "precision"),
      CKPT_NUM(recall, "recall"),
      CKPT_NUM(c_regular, "c_regular_s"),
      CKPT_NUM(c_proactive, "c_proactive_s"),
      CKPT_NUM(downtime, "downtime_s"),
      CKPT_NUM(recovery, "recovery_s"),
      CKPT_NUM(mu_ind, "mu_ind_s"),
      CKPT_STR(distribution),
      CKPT_STR(false_law),
      CKPT_NUM(t_base, "t_base_s"),
      Column{"t_base_days", [](const ResultRow& r) { return num(to_days(r.t_base)); }, nullptr},
      Column{"base_seed", [](const ResultRow& r) { return std::to_string(r.base_seed); },
             [](ResultRow& r, const std::string& s) { r.base_seed = parse_u64(s, "base_seed"); }},
      Column{"n_reps", [](const ResultRow& r) { return std::to_string(r.n_reps); },
             [](ResultRow& r, const std::string& s) {
               r.n_reps = static_cast<int>(parse_u64(s, "n_reps"));
             }},
      Column{"config_hash", [](const ResultRow& r) { return std::to_string(r.config_hash); },
             [](ResultRow& r, const std::string& s) {
               r.config_hash = parse_u64(s, "config_hash");
             }},
      CKPT_OPT(t_regular, "t_regular_s"),
      CKPT_OPT(t_proactive, "t_proactive_s"),
      CKPT_OPT(trust_prob, "trust_prob"),
      CKPT_FLAG(t_regular_clamped),
      CKPT_FLAG(t_proactive_clamped),
      CKPT_OPT(analytic_waste, "analytic_waste"),
      CKPT_OPT(makespan, "makespan_s"),
      CKPT_DAYS(makespan, "makespan_days"),
      CKPT_OPT(stderr_makespan, "stderr_makespan_s"),
      CKPT_DAYS(stderr_makespan, "stderr_makespan_days"),
      CKPT_OPT(waste, "waste"),
      CKPT_OPT(stderr_waste, "stderr_waste"),
      CKPT_OPT(gain_vs_daly, "gain_vs_daly_pct"),
      CKPT_OPT(best_t_regular, "best_t_regular_s"),
      CKPT_OPT(best_waste, "best_waste"),
      CKPT_STR(search),
      CKPT_OPT(paper_days, "paper_days"),
      CKPT_OPT(paper_abs_diff_days, "paper_abs_diff_days"),
  };
  return cols;
}

#undef CKPT_STR
#undef CKPT_NUM
#undef CKPT_OPT
#undef CKPT_DAYS
#undef CKPT_FLAG

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
               const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].name;
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? "," : "") << csv_escape(cols[i].get(row));
    out << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path,
              const std::vector<std::string>& comments) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  write_csv(f, rows, comments);
  f.flush();
  if (!f) throw Error("failed writing " + path);
}

bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string field;
  bool quoted = false;
  for (;; c = in.get()) {
    if (quoted) {
      if (c == EOF) throw InvalidParameter("unterminated quoted CSV field");
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += static_cast<char>(c);
      }
      continue;
    }
    if (c == EOF || c == '\n') break;
    if (c == '\r' && in.peek() == '\n') continue;
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else {
      field += static_cast<char>(c);
    }
  }
  fields.push_back(std::move(field));
  return true;
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::vector<std::string> fields;
  std::vector<const Column*> layout;
  bool have_header = false;
  while (in.peek() != EOF) {
    if (in.peek() == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (!read_csv_record(in, fields)) break;
    if (!have_header) {
      for (const auto& name : fields) {
        const Column* found = nullptr;
        for (const auto& c : columns())
          if (c.name == name) found = &c;
        if (!found) throw InvalidParameter("unknown CSV column " + name);
        layout.push_back(found);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != layout.size())
      throw InvalidParameter("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(layout.size()));
    ResultRow row;
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (layout[i]->set) layout[i]->set(row, fields[i]);
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidParameter("CSV has no header");
  return rows;
}

}  // namespace ckptwin
