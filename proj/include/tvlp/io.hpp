#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvlp/solver.hpp"

namespace tvlp {

enum class PgmFormat { Ascii /* P2 */, Binary /* P5 */ };

/// Grey levels g in [0, maxval] map to lo + (hi - lo) g / maxval.
Image2D read_pgm(const std::string& path, double lo = 0.0, double hi = 1.0);
/// Values are clamped to [lo, hi] and quantised to 255 levels.
void write_pgm(const Image2D& image, const std::string& path, double lo = 0.0, double hi = 1.0,
               PgmFormat format = PgmFormat::Binary);

struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
  bool has(const std::string& name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Comma separated, header row, 17 significant digits.
void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

/// Profile table with columns x, u and, when given, w and f.
CsvTable profile_table(const Grid1D& u, const std::optional<Grid1D>& w = std::nullopt,
                       const std::optional<Grid1D>& f = std::nullopt);

nlohmann::json report_to_json(const SolveReport& report);
SolveReport report_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const SolveParams& params);

void write_text(const std::string& path, const std::string& text);

}  // namespace tvlp
