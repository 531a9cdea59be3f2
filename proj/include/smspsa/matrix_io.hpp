#pragma once

// Matrix and mask files: dense CSV (one row per line) or a JSON object
// {"n": N, "entries": [[...], ...]}. The format is chosen by extension;
// `.json` is JSON, anything else is CSV.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "smspsa/markov.hpp"

namespace smspsa::io {

// Shortest representation that parses back to the same double.
std::string format_double(double value);

MatrixX<double> parse_csv(const std::string& text);
std::string to_csv(const MatrixX<double>& matrix);

MatrixX<double> from_json(const nlohmann::json& doc);
nlohmann::json to_json(const MatrixX<double>& matrix);

MatrixX<double> read_dense(const std::filesystem::path& path);
void write_dense(const std::filesystem::path& path, const MatrixX<double>& matrix);

StochasticMatrix load_matrix(const std::filesystem::path& path);
AdjustmentMask load_mask(const std::filesystem::path& path);

nlohmann::json mask_to_json(const AdjustmentMask& mask);
AdjustmentMask mask_from_json(const nlohmann::json& doc);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace smspsa::io
