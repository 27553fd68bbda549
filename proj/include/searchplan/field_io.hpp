#pragma once

#include <filesystem>
#include <iosfwd>

#include "searchplan/field.hpp"

namespace searchplan {

// ScalarField CSV format: header "x,y,value", one row per cell in row-major
// order (x fastest), 17-significant-digit decimals so doubles round-trip.

/// 17-significant-digit, locale-independent decimal form of a double.
std::string to_full_precision(double value);

void save_csv(const ScalarField& field, std::ostream& out);
void save_csv(const ScalarField& field, const std::filesystem::path& path);

/// Rebuilds the field (and its domain) from the CSV cell-center layout.
/// Throws ConfigError with a file:line-addressed message on malformed input.
ScalarField load_csv(std::istream& in, const std::string& origin = "<stream>");
ScalarField load_csv(const std::filesystem::path& path);

}  // namespace searchplan
