#include "tvlp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "tvlp/error.hpp"

namespace tvlp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::ofstream open_for_writing(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

// Cursor over PGM text tracking line numbers; '#' comments run to end of line.
class PgmCursor {
 public:
  explicit PgmCursor(const std::string& data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) && data_[pos_] != '#') ++pos_;
    if (start == pos_) fail("unexpected end of file");
    return data_.substr(start, pos_ - start);
  }

  long integer(const char* what) {
    const std::size_t at = pos_;
    const std::string tok = token();
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(std::string("expected ") + what + ", found '" + tok + "'", line_, at + 1);
    }
    return value;
  }

  // Consumes the single whitespace byte that separates the header from P5 data.
  void end_header() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) fail("malformed header end");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, pos_ + 1); }

  std::size_t pos() const { return pos_; }
  std::size_t line() const { return line_; }

 private:
  const std::string& data_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string format_double(double v) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Image2D read_pgm(const std::string& path, double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("PGM range needs lo < hi");
  const std::string data = read_file(path);
  PgmCursor cur(data);
  const std::string magic = cur.token();
  if (magic != "P2" && magic != "P5") throw ParseError("not a PGM file (magic '" + magic + "')", 1, 1);
  const long width = cur.integer("width");
  const long height = cur.integer("height");
  const long maxval = cur.integer("maxval");
  if (width < 1 || height < 2) cur.fail("image must be at least 1 x 2");
  if (maxval < 1 || maxval > 65535) cur.fail("maxval out of range");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> values(count);
  const double scale = (hi - lo) / static_cast<double>(maxval);
  if (magic == "P2") {
    for (std::size_t k = 0; k < count; ++k) {
      const long g = cur.integer("grey level");
      if (g < 0 || g > maxval) throw ParseError("grey level out of range", cur.line(), cur.pos());
      values[k] = lo + scale * static_cast<double>(g);
    }
  } else {
    cur.end_header();
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    const std::size_t start = cur.pos();
    if (data.size() < start + count * bytes) {
      throw ParseError("truncated P5 data: expected " + std::to_string(count * bytes) + " bytes", cur.line(),
                       data.size() + 1);
    }
    for (std::size_t k = 0; k < count; ++k) {
      const auto* p = reinterpret_cast<const unsigned char*>(data.data() + start + k * bytes);
      const long g = bytes == 1 ? p[0] : (static_cast<long>(p[0]) << 8) | p[1];
      if (g > maxval) throw ParseError("grey level out of range", cur.line(), start + k * bytes + 1);
      values[k] = lo + scale * static_cast<double>(g);
    }
  }
  return Image2D(static_cast<std::size_t>(height), static_cast<std::size_t>(width), std::move(values));
}

void write_pgm(const Image2D& image, const std::string& path, double lo, double hi, PgmFormat format) {
  if (!(lo < hi)) throw InvalidArgument("PGM range needs lo < hi");
  std::ofstream out = open_for_writing(path);
  out << (format == PgmFormat::Ascii ? "P2\n" : "P5\n") << image.cols() << ' ' << image.rows() << "\n255\n";
  std::string body;
  body.reserve(image.size() * (format == PgmFormat::Ascii ? 4 : 1));
  for (std::size_t i = 0; i < image.rows(); ++i) {
    for (std::size_t j = 0; j < image.cols(); ++j) {
      const double x = (std::clamp(image(i, j), lo, hi) - lo) / (hi - lo);
      const int g = static_cast<int>(std::lround(x * 255.0));
      if (format == PgmFormat::Binary) {
        body.push_back(static_cast<char>(static_cast<unsigned char>(g)));
      } else {
        body += std::to_string(g);
        body.push_back(j + 1 < image.cols() ? ' ' : '\n');
      }
    }
  }
  out << body;
  if (!out) throw IoError("failed writing '" + path + "'");
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("CSV has no column '" + name + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

bool CsvTable::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

void write_csv(const CsvTable& table, const std::string& path) {
  if (table.names.size() != table.columns.size()) throw InvalidArgument("CSV header and columns disagree");
  const std::size_t rows = table.rows();
  for (const auto& c : table.columns) {
    if (c.size() != rows) throw InvalidArgument("CSV columns differ in length");
  }
  std::ofstream out = open_for_writing(path);
  for (std::size_t c = 0; c < table.names.size(); ++c) out << (c ? "," : "") << table.names[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << format_double(table.columns[c][r]);
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
  const std::string data = read_file(path);
  std::istringstream in(data);
  std::string line;
  std::size_t line_no = 0;
  CsvTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (table.names.empty()) {
      for (const auto& c : cells) {
        const std::string name = trim(c);
        if (name.empty()) throw ParseError("empty column name in CSV header", line_no);
        table.names.push_back(name);
      }
      table.columns.resize(table.names.size());
      continue;
    }
    if (cells.size() != table.names.size()) {
      throw ParseError("expected " + std::to_string(table.names.size()) + " fields, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    std::size_t offset = 1;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = trim(cells[c]);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError("invalid number '" + cell + "'", line_no, offset);
      }
      table.columns[c].push_back(value);
      offset += cells[c].size() + 1;
    }
  }
  if (table.names.empty()) throw ParseError("CSV file has no header", line_no == 0 ? 1 : line_no);
  return table;
}

CsvTable profile_table(const Grid1D& u, const std::optional<Grid1D>& w, const std::optional<Grid1D>& f) {
  CsvTable table;
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = u.x(i);
  table.names = {"x", "u"};
  table.columns = {std::move(x), std::vector<double>(u.values().begin(), u.values().end())};
  for (const auto& [name, extra] : {std::pair{"w", &w}, std::pair{"f", &f}}) {
    if (!*extra) continue;
    if ((*extra)->size() != u.size()) throw InvalidArgument("profile columns differ in length");
    table.names.emplace_back(name);
    table.columns.emplace_back((*extra)->values().begin(), (*extra)->values().end());
  }
  return table;
}

nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json j;
  j["iterations"] = report.iterations();
  j["terminated_by"] = report.terminated_by == Termination::Tolerance ? "tolerance" : "max_iter";
  j["wall_time_s"] = report.wall_time;
  j["lambda"] = report.lambda;
  j["objective_trace"] = report.objective_trace;
  j["relative_residuals"] = report.relative_residuals;
  return j;
}

SolveReport report_from_json(const nlohmann::json& j) {
  SolveReport report;
  try {
    report.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    report.relative_residuals = j.at("relative_residuals").get<std::vector<double>>();
    const std::string term = j.at("terminated_by").get<std::string>();
    if (term != "tolerance" && term != "max_iter") throw ParseError("unknown termination '" + term + "'", 0);
    report.terminated_by = term == "tolerance" ? Termination::Tolerance : Termination::MaxIter;
    report.wall_time = j.at("wall_time_s").get<double>();
    report.lambda = j.at("lambda").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0);
  }
  return report;
}

nlohmann::json params_to_json(const SolveParams& params) {
  nlohmann::json j;
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  j["p"] = params.p;
  j["mode"] = params.mode == Homogeneity::OneHomogeneous ? "1hom" : "phom";
  j["lambda"] = params.lambda ? nlohmann::json(*params.lambda) : nlohmann::json(nullptr);
  j["tol"] = params.tol;
  j["max_outer"] = params.max_outer;
  j["inner_fp_iters"] = params.inner_fp_iters;
  j["norm"] = params.norm == NormConvention::Auto ? "auto"
              : params.norm == NormConvention::Quadrature ? "quadrature" : "discrete";
  j["w_update"] = params.w_update == WUpdate::Exact ? "exact" : "fixed-point";
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out = open_for_writing(path);
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace tvlp
