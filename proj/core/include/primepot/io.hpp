#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "primepot/grid.hpp"
#include "primepot/hologram.hpp"

namespace primepot {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Header `x,V`, one row per node over the full symmetric domain.
void write_potential_csv(std::ostream& out, const PotentialGrid& potential);
/// Accepts the format above. The grid must be uniform and symmetric with an
/// odd node count; the asymptote is the mean of the two end samples.
PotentialGrid read_potential_csv(std::istream& in);

/// Comma-separated rows, no header.
void write_matrix_csv(std::ostream& out, const Matrix& matrix);
Matrix read_matrix_csv(std::istream& in);

/// Whitespace- or comma-separated numbers; `#` starts a comment.
std::vector<double> read_levels(std::istream& in);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Parses "half", "unit" or a positive number.
KineticScale parse_kinetic(std::string_view text);

}  // namespace primepot
