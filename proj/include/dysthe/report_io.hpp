#ifndef DYSTHE_REPORT_IO_HPP
#define DYSTHE_REPORT_IO_HPP

// JSON and CSV serialisation of reports. Every double is written with 17
// significant digits so values round-trip bit for bit.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dysthe/dynamics.hpp"
#include "dysthe/estimates.hpp"
#include "dysthe/norms.hpp"
#include "dysthe/resonance.hpp"

namespace dysthe {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Serialises with shortest round-trip floats; `indent` < 0 gives a single line.
std::string dump_json(const Json& value, int indent = 2);

Json to_json(const SpectralField<double>& u);  // [[n, re, im], ...] over nonzero modes
SpectralField<double> spectral_field_from_json(const Json& triples);

Json to_json(const ResonanceQuery& query, const ResonanceResult& result);
Json to_json(const SupScanResult& scan);
Json to_json(const std::vector<GrowthRow>& rows);
Json to_json(const RegimeScan& scan);
Json to_json(const NormReport& report);
Json to_json(const RatioReport& report, bool include_rows = true);
Json to_json(const PlancherelCheck& check);
Json to_json(const TrilinearCheck& check);
Json to_json(const PicardReport& report);
Json to_json(const PicardSweep& sweep);
Json to_json(const TrajectoryRow& row);

/// Minimal CSV writer: header row then data rows, doubles via format_double.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  CsvWriter& cell(int value) { return cell(static_cast<std::int64_t>(value)); }
  CsvWriter& cell(bool value) { return cell(std::string(value ? "true" : "false")); }
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

void write_ratio_csv(std::ostream& out, const RatioReport& report);
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

/// (x, y) series for external plotting.
struct PlotSeries {
  std::string x_label = "x";
  std::string y_label = "y";
  std::vector<std::pair<double, double>> points;
};

/// Writes a two-column CSV; an empty series gives the header only. Throws on I/O failure.
void emit_plotdata(const PlotSeries& series, const std::string& path);

}  // namespace dysthe

#endif  // DYSTHE_REPORT_IO_HPP
