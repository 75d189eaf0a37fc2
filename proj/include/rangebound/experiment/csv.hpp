#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <vector>

namespace rangebound {

/// Shortest-form-independent decimal rendering with 17 significant digits.
std::string format_double(double v);

/// Writes a header row and one row per index; all columns must have equal length.
/// Throws IoError when the file cannot be written.
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<const Eigen::VectorXd*>& columns);

}  // namespace rangebound
