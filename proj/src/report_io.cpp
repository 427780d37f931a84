#include "dysthe/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dysthe {
namespace {

void write_json(std::ostream& out, const Json& v, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << Json(it.key()).dump() << (pretty ? ": " : ":");
        write_json(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      bool flat = v.size() <= 8;
      for (const auto& e : v) flat = flat && !e.is_structured();
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out << (flat && pretty ? ", " : ",");
        if (!flat) newline(depth + 1);
        write_json(out, v[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (std::isfinite(d))
        out << format_double(d);
      else
        out << "null";
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string format_double(double value) {
  // Shortest representation that round-trips, so output is stable and exact.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, res.ptr);
  if (std::isfinite(value) && text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

std::string dump_json(const Json& value, int indent) {
  std::ostringstream out;
  write_json(out, value, indent, 0);
  return out.str();
}

Json to_json(const SpectralField<double>& u) {
  Json out = Json::array();
  u.for_each([&](std::int64_t n, std::complex<double> c) {
    if (c != std::complex<double>(0)) out.push_back(Json::array({n, c.real(), c.imag()}));
  });
  return out;
}

SpectralField<double> spectral_field_from_json(const Json& triples) {
  if (!triples.is_array()) throw std::invalid_argument("field must be a JSON array of [n, re, im] triples");
  std::vector<std::pair<std::int64_t, std::complex<double>>> modes;
  for (const auto& t : triples) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() || !t[2].is_number())
      throw std::invalid_argument("field entries must be [n, re, im] with integer n");
    modes.emplace_back(t[0].get<std::int64_t>(), std::complex<double>(t[1].get<double>(), t[2].get<double>()));
  }
  if (modes.empty()) return SpectralField<double>(0);
  std::int64_t limit = 0;
  for (auto& m : modes) limit = std::max<std::int64_t>(limit, std::llabs(m.first));
  SpectralField<double> u(static_cast<int>(limit));
  for (auto& [n, c] : modes) u[n] += c;
  return u;
}

Json to_json(const ResonanceQuery& query, const ResonanceResult& result) {
  Json solutions = Json::array();
  for (auto& [a, b] : result.solutions) solutions.push_back(Json::array({a, b}));
  Json out{{"N", query.N}, {"n", query.n}, {"j", query.j}, {"method", to_string(result.method)}, {"count", result.count}};
  if (result.method == CountMethod::divisor) {
    const auto st = factorization_constants(query.n, query.j);
    out["k"] = to_string(st.k);
    out["l"] = to_string(st.l);
    out["candidates"] = result.candidates;
    out["degenerate"] = result.degenerate;
  }
  out["solutions"] = solutions;
  return out;
}

Json to_json(const SupScanResult& scan) {
  Json witnesses = Json::array();
  for (auto& [n, j] : scan.witnesses) witnesses.push_back(Json::array({n, j}));
  return Json{{"N", scan.N}, {"max_count", scan.max_count}, {"buckets", scan.buckets}, {"witnesses", witnesses}};
}

Json to_json(const std::vector<GrowthRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row{{"N", r.N}, {"sup", r.sup}};
    row["slope"] = r.has_slope ? Json(r.slope) : Json(nullptr);
    out.push_back(row);
  }
  return out;
}

Json to_json(const RegimeScan& scan) {
  return Json{{"N", scan.N}, {"buckets_checked", scan.buckets_checked}, {"max_count", scan.max_count}};
}

Json to_json(const NormReport& r) {
  return Json{{"name", r.name}, {"s", r.s}, {"b", r.b}, {"p", r.p}, {"value", r.value}};
}

Json to_json(const RatioReport& r, bool include_rows) {
  Json trend = Json::array();
  for (const auto& p : r.trend)
    trend.push_back(Json{{"size_param", p.size_param},
                         {"max_ratio", p.max_ratio},
                         {"mean_ratio", p.mean_ratio},
                         {"samples", p.samples},
                         {"skipped", p.skipped}});
  Json out{{"estimate_id", r.estimate_id}, {"seed", r.seed},         {"samples", r.samples},
           {"skipped", r.skipped},         {"max_ratio", r.max_ratio}, {"mean_ratio", r.mean_ratio},
           {"trend", trend}};
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back(Json{{"size_param", row.size_param},
                          {"trial", row.trial},
                          {"lhs", row.lhs},
                          {"rhs", row.rhs},
                          {"ratio", row.ratio},
                          {"skipped", row.skipped}});
    out["rows"] = rows;
  }
  return out;
}

Json to_json(const PlancherelCheck& c) { return Json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"relerr", c.relerr}}; }

Json to_json(const TrilinearCheck& c) {
  return Json{{"T", c.T},   {"lhs_x", c.lhs_x}, {"lhs_z", c.lhs_z},     {"rhs", c.rhs},
              {"ratio", c.ratio}, {"ratio_x", c.ratio_x}, {"skipped", c.skipped}};
}

Json to_json(const PicardReport& r) {
  Json coeffs = Json::array();
  for (auto& [n, c] : r.coefficients) coeffs.push_back(Json::array({n, c.real(), c.imag()}));
  Json out{{"m", r.m},
           {"s", r.s},
           {"t", r.t},
           {"peak_mode", r.peak_mode},
           {"peak_abs", r.peak_abs},
           {"closed_form_abs", r.closed_form_abs},
           {"rel_dev", r.rel_dev},
           {"full_abs", r.full_abs},
           {"cubic_abs", r.cubic_abs},
           {"scaled_peak", r.scaled_peak},
           {"dominant_mode", r.dominant_mode},
           {"data_norm", r.data_norm}};
  out["quadrature_rel_diff"] = std::isnan(r.quadrature_rel_diff) ? Json(nullptr) : Json(r.quadrature_rel_diff);
  out["coefficients"] = coeffs;
  return out;
}

Json to_json(const PicardSweep& sweep) {
  Json rows = Json::array();
  for (const auto& r : sweep.rows) {
    Json row = to_json(r);
    row.erase("coefficients");
    rows.push_back(row);
  }
  return Json{{"fitted_slope", sweep.fitted_slope}, {"fitted_slope_full", sweep.fitted_slope_full}, {"rows", rows}};
}

Json to_json(const TrajectoryRow& row) {
  return Json{{"step", row.step}, {"time", row.time}, {"h2_norm", row.h2_norm}, {"I_value", row.I_value}};
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) cell(c);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  if (!first_) out_ << ',';
  first_ = false;
  if (text.find_first_of(",\"\n") != std::string::npos) {
    out_ << '"';
    for (char ch : text) out_ << (ch == '"' ? "\"\"" : std::string(1, ch));
    out_ << '"';
  } else {
    out_ << text;
  }
  return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(std::int64_t value) { return cell(std::to_string(value)); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

void write_ratio_csv(std::ostream& out, const RatioReport& report) {
  CsvWriter csv(out);
  csv.header({"estimate_id", "size_param", "trial", "lhs", "rhs", "ratio"});
  for (const auto& r : report.rows) {
    csv.cell(report.estimate_id).cell(r.size_param).cell(r.trial).cell(r.lhs).cell(r.rhs);
    if (r.skipped)
      csv.cell(std::string("skipped"));
    else
      csv.cell(r.ratio);
    csv.end_row();
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  CsvWriter csv(out);
  csv.header({"step", "time", "h2_norm", "I_value"});
  for (const auto& r : rows) {
    csv.cell(r.step).cell(r.time).cell(r.h2_norm).cell(r.I_value);
    csv.end_row();
  }
}

void emit_plotdata(const PlotSeries& series, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open plot data file '" + path + "' for writing");
  CsvWriter csv(file);
  csv.header({series.x_label, series.y_label});
  for (auto& [x, y] : series.points) {
    csv.cell(x).cell(y);
    csv.end_row();
  }
  file.flush();
  if (!file) throw std::runtime_error("failed writing plot data file '" + path + "'");
}

}  // namespace dysthe
