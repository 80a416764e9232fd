#pragma once

// Run configuration for the command-line tool. The on-disk format is JSON;
// every key is optional and falls back to the defaults below, and unknown
// keys are errors. See README.md for the schema.

#include "quadent/criteria.hpp"
#include "quadent/measurement.hpp"
#include "quadent/protocols.hpp"
#include "quadent/spectra.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadent {

/// Invalid configuration; `key()` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LossGrid {
    double start{0.0};
    double stop{0.99};
    int points{101};
    double base_efficiency{1.0};
};

struct RunConfig {
    /// Explicit source; when empty the source is fitted from `calibration`.
    std::optional<SqueezerSpec> source;
    CalibrationTargets calibration{};
    double efficiency{0.85};
    SourceSpectrumModel spectrum{};
    EstimatorConfig estimator{};
    LossGrid loss_grid{};
    FrequencyGrid frequency_grid{};
    EfficacyGridSpec contour_grid{};
    std::vector<PhotonBudget> budgets{{6.75}, {250.0}};

    /// Fitted or explicit source, validated.
    [[nodiscard]] SqueezerSpec resolved_source() const;
    [[nodiscard]] std::vector<double> loss_points() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// FNV-1a 64 of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace quadent
