#include "searchplan/field_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "searchplan/errors.hpp"

namespace searchplan {

namespace {

// 17 significant digits: the shortest width at which every double
// round-trips. to_chars is locale-independent.
void append_double(std::string& out, double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

std::string to_full_precision(double value) {
  std::string out;
  append_double(out, value);
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line,
                             const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view token, const std::string& origin,
                    std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    parse_fail(origin, line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

void save_csv(const ScalarField& field, std::ostream& out) {
  std::string buffer;
  buffer.reserve(field.domain().cell_count() * 48 + 16);
  buffer += "x,y,value\n";
  const Domain& d = field.domain();
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    const Point c = d.center(k);
    append_double(buffer, c.x);
    buffer += ',';
    append_double(buffer, c.y);
    buffer += ',';
    append_double(buffer, field[k]);
    buffer += '\n';
  }
  out << buffer;
}

void save_csv(const ScalarField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  }
  save_csv(field, out);
  out.flush();
  if (!out) {
    throw ConfigError("failed writing '" + path.string() + "'");
  }
}

ScalarField load_csv(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    parse_fail(origin, 1, "empty input, expected header 'x,y,value'");
  }
  ++line_no;
  if (trim(line) != "x,y,value") {
    parse_fail(origin, line_no, "expected header 'x,y,value'");
  }

  std::vector<double> xs, ys, values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const std::size_t c1 = row.find(',');
    const std::size_t c2 = c1 == std::string_view::npos
                               ? std::string_view::npos
                               : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      parse_fail(origin, line_no, "expected 3 comma-separated columns");
    }
    xs.push_back(parse_double(row.substr(0, c1), origin, line_no));
    ys.push_back(parse_double(row.substr(c1 + 1, c2 - c1 - 1), origin, line_no));
    values.push_back(parse_double(row.substr(c2 + 1), origin, line_no));
  }

  const std::size_t n = values.size();
  if (n < 4) {
    parse_fail(origin, line_no, "need at least a 2x2 grid of rows");
  }

  // Row-major with x fastest: nx = length of the first constant-y run.
  std::size_t nx = 0;
  while (nx < n && ys[nx] == ys[0]) ++nx;
  if (nx < 2 || n % nx != 0) {
    parse_fail(origin, line_no, "rows do not form a row-major x-fastest grid");
  }
  const std::size_t ny = n / nx;
  if (ny < 2) {
    parse_fail(origin, line_no, "need at least 2 distinct y values");
  }

  const double dx = xs[1] - xs[0];
  const double dy = ys[nx] - ys[0];
  if (!(dx > 0.0) || !(dy > 0.0)) {
    parse_fail(origin, line_no, "cell centers must increase in x and y");
  }
  const double x_min = xs[0] - 0.5 * dx;
  const double y_min = ys[0] - 0.5 * dy;
  const double tol_x = 1e-9 * (dx * static_cast<double>(nx));
  const double tol_y = 1e-9 * (dy * static_cast<double>(ny));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k % nx;
    const std::size_t j = k / nx;
    const double cx = x_min + (static_cast<double>(i) + 0.5) * dx;
    const double cy = y_min + (static_cast<double>(j) + 0.5) * dy;
    if (std::abs(xs[k] - cx) > tol_x || std::abs(ys[k] - cy) > tol_y) {
      parse_fail(origin, k + 2,
                 "cell center deviates from a uniform row-major grid");
    }
  }

  Domain domain(x_min, x_min + dx * static_cast<double>(nx), y_min,
                y_min + dy * static_cast<double>(ny), static_cast<int>(nx),
                static_cast<int>(ny));
  ArrayXd field_values(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    field_values[static_cast<Eigen::Index>(k)] = values[k];
  }
  try {
    return ScalarField(domain, std::move(field_values));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

ScalarField load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path.string() + "' for reading");
  }
  return load_csv(in, path.string());
}

}  // namespace searchplan
