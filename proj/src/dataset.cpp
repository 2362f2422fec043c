#include "collinear/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "collinear/error.hpp"

namespace collinear {

Dataset::Dataset(std::vector<std::string> predictor_names, Matrix x, Vector y,
                 std::string response_name)
    : names_(std::move(predictor_names)),
      x_(std::move(x)),
      y_(std::move(y)),
      response_name_(std::move(response_name)) {
  if (names_.size() != x_.cols())
    throw DimensionMismatch("predictor names do not match matrix columns");
  if (y_.size() != x_.rows()) throw DimensionMismatch("response length does not match rows");
  std::set<std::string> seen{response_name_};
  for (const auto& name : names_)
    if (!seen.insert(name).second) throw DuplicateName(name);
  for (double v : x_.data())
    if (!std::isfinite(v)) throw ValidationError("non-finite predictor value");
  for (double v : y_)
    if (!std::isfinite(v)) throw ValidationError("non-finite response value");
}

std::optional<std::size_t> Dataset::find(const std::string& name) const {
  for (std::size_t j = 0; j < names_.size(); ++j)
    if (names_[j] == name) return j;
  return std::nullopt;
}

std::size_t Dataset::index_of(const std::string& name) const {
  if (auto j = find(name)) return *j;
  throw MissingColumn(name);
}

Dataset Dataset::with_response(Vector y) const {
  return Dataset(names_, x_, std::move(y), response_name_);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& response_column) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, 1, "empty input, expected header row");
  std::vector<std::string> header = split_line(line);
  for (auto& h : header) h = trim(h);
  {
    std::set<std::string> seen;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j].empty()) throw ParseError(1, j + 1, "empty column name");
      if (!seen.insert(header[j]).second) throw DuplicateName(header[j]);
    }
  }
  std::size_t response_index = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == response_column) response_index = j;
  if (response_index == header.size()) throw MissingColumn(response_column);

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != response_index) names.push_back(header[j]);

  std::vector<double> x;
  Vector y;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw ParseError(row, std::min(cells.size(), header.size()) + 1,
                       "expected " + std::to_string(header.size()) + " cells");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = trim(cells[j]);
      if (cell.empty()) throw ParseError(row, j + 1, "blank cell");
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value))
        throw ParseError(row, j + 1, "not a number: '" + cell + "'");
      if (j == response_index)
        y.push_back(value);
      else
        x.push_back(value);
    }
  }
  const std::size_t n = y.size();
  return Dataset(std::move(names), Matrix(n, header.size() - 1, std::move(x)), std::move(y),
                 response_column);
}

Dataset load_csv(const std::filesystem::path& path, const std::string& response_column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open '" + path.string() + "'");
  return parse_csv(in, response_column);
}

ScalingInfo scaling_of(const Dataset& d) {
  ScalingInfo s;
  const std::size_t n = d.n();
  s.means.resize(d.k());
  s.scales.resize(d.k());
  for (std::size_t j = 0; j < d.k(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += d.x()(i, j);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = d.x()(i, j) - mean;
      ss += c * c;
    }
    if (!(ss > 0.0)) throw ZeroVariance(j);
    s.means[j] = mean;
    s.scales[j] = std::sqrt(ss);
  }
  double ybar = 0.0;
  for (double v : d.y()) ybar += v;
  s.response_mean = n == 0 ? 0.0 : ybar / static_cast<double>(n);
  return s;
}

StandardizedData standardize(const Dataset& d) {
  ScalingInfo s = scaling_of(d);
  Matrix x(d.n(), d.k());
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = 0; j < d.k(); ++j) x(i, j) = (d.x()(i, j) - s.means[j]) / s.scales[j];
  Vector y(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) y[i] = d.y()[i] - s.response_mean;
  return {Dataset(d.predictor_names(), std::move(x), std::move(y), d.response_name()),
          std::move(s)};
}

Vector back_transform(std::span<const double> std_coefs, const ScalingInfo& s) {
  if (std_coefs.size() != s.scales.size())
    throw DimensionMismatch("standardized coefficient count does not match scaling");
  Vector b(std_coefs.size() + 1);
  double intercept = s.response_mean;
  for (std::size_t i = 0; i < std_coefs.size(); ++i) {
    b[i + 1] = std_coefs[i] / s.scales[i];
    intercept -= s.means[i] * b[i + 1];
  }
  b[0] = intercept;
  return b;
}

Vector standardize_point(std::span<const double> x, const ScalingInfo& s) {
  if (x.size() != s.scales.size()) throw DimensionMismatch("point length does not match scaling");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - s.means[i]) / s.scales[i];
  return out;
}

}  // namespace collinear
