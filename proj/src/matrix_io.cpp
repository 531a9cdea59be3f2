#include "smspsa/matrix_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace smspsa::io {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw InputError("cannot format value");
  return std::string(buf.data(), end);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("not a number: '" + t + "'", line);
  }
  return value;
}

MatrixX<double> from_rows(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Index>(rows.size());
  MatrixX<double> out(n, n == 0 ? 0 : static_cast<Index>(rows.front().size()));
  for (Index m = 0; m < n; ++m) {
    const auto& row = rows[static_cast<std::size_t>(m)];
    if (static_cast<Index>(row.size()) != out.cols()) {
      throw ParseError("ragged row: expected " + std::to_string(out.cols()) + " values, got " +
                           std::to_string(row.size()),
                       static_cast<std::size_t>(m) + 1);
    }
    for (Index k = 0; k < out.cols(); ++k) out(m, k) = row[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace

MatrixX<double> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(parse_number(field, line_no));
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

std::string to_csv(const MatrixX<double>& matrix) {
  std::string out;
  for (Index m = 0; m < matrix.rows(); ++m) {
    for (Index n = 0; n < matrix.cols(); ++n) {
      if (n > 0) out += ',';
      out += format_double(matrix(m, n));
    }
    out += '\n';
  }
  return out;
}

MatrixX<double> from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("entries")) throw InputError("matrix JSON needs an \"entries\" array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc.at("entries")) rows.push_back(row.get<std::vector<double>>());
  MatrixX<double> out = from_rows(rows);
  if (doc.contains("n") && doc.at("n").get<Index>() != out.rows()) {
    throw StructuralError("matrix JSON declares n = " + std::to_string(doc.at("n").get<Index>()) + " but has " +
                          std::to_string(out.rows()) + " rows");
  }
  return out;
}

nlohmann::json to_json(const MatrixX<double>& matrix) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index m = 0; m < matrix.rows(); ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (Index n = 0; n < matrix.cols(); ++n) row.push_back(matrix(m, n));
    rows.push_back(std::move(row));
  }
  return {{"n", matrix.rows()}, {"entries", std::move(rows)}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

MatrixX<double> read_dense(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".json") {
    try {
      return from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  return parse_csv(text);
}

void write_dense(const std::filesystem::path& path, const MatrixX<double>& matrix) {
  if (path.extension() == ".json") {
    write_text(path, to_json(matrix).dump(2) + "\n");
  } else {
    write_text(path, to_csv(matrix));
  }
}

StochasticMatrix load_matrix(const std::filesystem::path& path) { return StochasticMatrix(read_dense(path)); }

AdjustmentMask load_mask(const std::filesystem::path& path) {
  return AdjustmentMask::from_numeric(read_dense(path));
}

nlohmann::json mask_to_json(const AdjustmentMask& mask) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index m = 0; m < mask.size(); ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (Index n = 0; n < mask.size(); ++n) row.push_back(mask.adjustable(m, n) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return {{"n", mask.size()}, {"entries", std::move(rows)}};
}

AdjustmentMask mask_from_json(const nlohmann::json& doc) { return AdjustmentMask::from_numeric(from_json(doc)); }

}  // namespace smspsa::io
