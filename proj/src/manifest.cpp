#include <sstream>

#include "rangebound/experiment/experiment.hpp"

namespace rangebound {

std::string ExperimentManifest::to_text() const {
    std::ostringstream out;
    out << "# rangebound manifest\n"
        << "tool_version = " << tool_version << '\n'
        << "timestamp = " << timestamp << '\n';
    std::istringstream config(config_echo);
    for (std::string line; std::getline(config, line);)
        if (!line.empty()) out << "config." << line << '\n';
    for (const auto& s : seeds) {
        out << "seed." << s.seed << ".files = ";
        for (std::size_t i = 0; i < s.files.size(); ++i) out << (i ? "," : "") << s.files[i];
        out << '\n';
        for (const auto& [key, value] : s.stats) out << "seed." << s.seed << '.' << key << " = " << value << '\n';
    }
    for (std::size_t i = 0; i < warnings.size(); ++i) out << "warning." << i << " = " << warnings[i] << '\n';
    out << "verification_failed = " << (verification_failed ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace rangebound
