#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rangebound/coefficients.hpp"
#include "rangebound/path.hpp"

namespace rangebound {

enum class Output { path, t1, t2, identities, remarks, bounds, convergence };

const std::vector<Output>& all_outputs();
std::string_view to_string(Output o);

/// Parsed experiment description.
///
/// Config text is flat `key = value` lines; `#` starts a comment. Coefficients
/// use `const:<c>`, `sin:<c0>,<c1>,<omega>`, `state:<c>` (c / (1 + x^2)) or
/// `file:<path>` (one value per step, whitespace separated).
struct ExperimentConfig {
    double t_max = 0;
    Eigen::Index n_steps = 0;
    double x0 = 0;
    CoefficientSpec<double> a, sigma, u;
    std::string a_text, sigma_text, u_text;  // as written, for the manifest echo
    bool corollary = false;                  // `psi` given instead of `u`
    std::vector<std::uint64_t> seeds;
    std::set<Output> outputs;
    std::string output_dir = "out";
    int levels = 4;
    Eigen::Index oracle_ceiling = 4000;

    ModelSpec<double> model() const { return {a, sigma, u, x0, corollary}; }
    TimeGrid<double> grid() const { return TimeGrid<double>(t_max, n_steps); }
    bool wants(Output o) const { return outputs.count(o) != 0; }
};

/// Throws ConfigError (with the offending line number where there is one).
/// `file:` paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a config file; unreadable files raise IoError.
ExperimentConfig load_config(const std::filesystem::path& file);

/// Parses `1,2,5..9` style seed lists.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

CoefficientSpec<double> parse_coefficient(std::string_view text, const std::filesystem::path& base_dir = {});

/// Canonical `key = value` rendering; parse_config(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& config);

}  // namespace rangebound
