#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rangebound/experiment/config.hpp"

namespace rangebound {

struct SeedRecord {
    std::uint64_t seed = 0;
    std::vector<std::string> files;                          // relative to output_dir
    std::vector<std::pair<std::string, std::string>> stats;  // ordered key/value summary
};

struct ExperimentManifest {
    std::string tool_version;
    std::string timestamp;
    std::string config_echo;  // to_text(config)
    std::vector<SeedRecord> seeds;
    std::vector<std::string> warnings;
    bool verification_failed = false;

    /// Key = value text; the timestamp is the only line that varies between runs.
    std::string to_text() const;
};

inline constexpr const char* kManifestName = "manifest.txt";

/// Simulates every seed and writes the requested CSV series plus the manifest.
ExperimentManifest run_experiment(const ExperimentConfig& config);

/// Writes the six figure series (path, X, Y, locus, modulus, int X dx) per seed.
ExperimentManifest emit_figures(const ExperimentConfig& config);

/// Bound, identity, oracle and convergence suites per seed. The manifest
/// (written as verify.txt) carries pass flags; verification_failed is set when
/// any bound or oracle check fails.
ExperimentManifest verify_experiment(const ExperimentConfig& config);

}  // namespace rangebound
