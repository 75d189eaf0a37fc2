#include "rangebound/experiment/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "rangebound/errors.hpp"

namespace rangebound {

std::string format_double(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<const Eigen::VectorXd*>& columns) {
    if (header.size() != columns.size() || columns.empty())
        throw std::invalid_argument("write_csv: header and column counts differ");
    const Eigen::Index rows = columns.front()->size();
    for (const auto* c : columns)
        if (c->size() != rows) throw std::invalid_argument("write_csv: ragged columns");

    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + file.string() + "'");
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << '\n';
    std::string line;
    for (Eigen::Index i = 0; i < rows; ++i) {
        line.clear();
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) line += ',';
            line += format_double((*columns[j])[i]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw IoError("write failed for '" + file.string() + "'");
}

}  // namespace rangebound
