#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpurify/qtypes.hpp"

namespace qpurify {

class ConfigError : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> params;
    std::string output_path;  // defaults to "<experiment>.csv"
    std::uint64_t seed = 0;
    int threads = 1;
};

struct Diagnostic {
    std::string key;
    std::string message;
};

const std::vector<std::string>& list_experiments();

/// Parses the flat key = value config format (one experiment per file; an
/// optional [section] header names the experiment).
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Empty iff run() would start: checks the experiment name, required keys,
/// numeric ranges, and rejects unknown keys.
std::vector<Diagnostic> validate(const ExperimentConfig& config);

/// Executes the experiment and writes its CSV. Reruns with identical config
/// and seed are byte-identical. Throws ConfigError for invalid configs and
/// propagates module errors for numeric failures.
void run(const ExperimentConfig& config);

}  // namespace qpurify
