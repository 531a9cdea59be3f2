#include "smspsa/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "smspsa/matrix_io.hpp"

namespace smspsa {

void Trajectory::append(TrajectoryPoint point) {
  if (!points_.empty() && point.iteration <= points_.back().iteration) {
    throw InputError("trajectory iterations must strictly increase");
  }
  if (!std::isfinite(point.objective)) {
    throw InputError("non-finite objective at iteration " + std::to_string(point.iteration));
  }
  if (point.p.size() != entries_.size() || point.theta.size() != entries_.size()) {
    throw StructuralError("trajectory point width does not match the adjustable entry count");
  }
  points_.push_back(std::move(point));
}

std::vector<double> Trajectory::objectives() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.objective);
  return out;
}

std::vector<std::size_t> Trajectory::iterations() const {
  std::vector<std::size_t> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.iteration);
  return out;
}

std::string Trajectory::to_csv() const {
  std::string out = "iter,objective";
  for (const auto& e : entries_) out += ",P_" + std::to_string(e.row) + "_" + std::to_string(e.col);
  for (const auto& e : entries_) out += ",theta_" + std::to_string(e.row) + "_" + std::to_string(e.col);
  out += '\n';
  for (const auto& pt : points_) {
    out += std::to_string(pt.iteration);
    out += ',';
    out += io::format_double(pt.objective);
    for (double v : pt.p) {
      out += ',';
      out += io::format_double(v);
    }
    for (double v : pt.theta) {
      out += ',';
      out += io::format_double(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  return out;
}

Entry parse_column(const std::string& name, const std::string& prefix, std::size_t line) {
  if (name.rfind(prefix, 0) != 0) throw ParseError("unexpected column '" + name + "'", line);
  const std::string rest = name.substr(prefix.size());
  const auto sep = rest.find('_');
  if (sep == std::string::npos) throw ParseError("bad column '" + name + "'", line);
  try {
    return {std::stol(rest.substr(0, sep)), std::stol(rest.substr(sep + 1))};
  } catch (const std::exception&) {
    throw ParseError("bad column '" + name + "'", line);
  }
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("not a number: '" + s + "'", line);
  return v;
}

}  // namespace

Trajectory Trajectory::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file", 1);
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "iter" || header[1] != "objective") {
    throw ParseError("trajectory header must start with iter,objective", 1);
  }
  if ((header.size() - 2) % 2 != 0) throw ParseError("unbalanced P/theta columns", 1);
  const std::size_t width = (header.size() - 2) / 2;
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < width; ++k) entries.push_back(parse_column(header[2 + k], "P_", 1));
  for (std::size_t k = 0; k < width; ++k) {
    if (!(parse_column(header[2 + width + k], "theta_", 1) == entries[k])) {
      throw ParseError("theta columns do not match P columns", 1);
    }
  }

  Trajectory traj(entries);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) throw ParseError("wrong field count", line_no);
    TrajectoryPoint pt;
    try {
      pt.iteration = static_cast<std::size_t>(std::stoull(fields[0]));
    } catch (const std::exception&) {
      throw ParseError("bad iteration index", line_no);
    }
    pt.objective = to_double(fields[1], line_no);
    for (std::size_t k = 0; k < width; ++k) pt.p.push_back(to_double(fields[2 + k], line_no));
    for (std::size_t k = 0; k < width; ++k) pt.theta.push_back(to_double(fields[2 + width + k], line_no));
    try {
      traj.append(std::move(pt));
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return traj;
}

}  // namespace smspsa
