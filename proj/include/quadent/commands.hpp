#pragma once

// The four CLI commands, as functions from a validated RunConfig to CSV text
// so they can be tested without a process boundary.

#include "quadent/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace quadent::cli {

inline constexpr std::string_view tool_version = "0.1.0";

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> points;
};

/// --points sets the loss-grid points, the frequency-grid points or the
/// contour resolution, or the points per trace for `estimate`. The result is
/// re-validated.
RunConfig apply_overrides(RunConfig config, std::string_view command, const Overrides& overrides);

/// "# quadent <version> command=<cmd> config_hash=<hash> generator=<id>\n"
std::string header_line(std::string_view command, const RunConfig& config);

std::string loss_sweep_csv(const RunConfig& config);
std::string spectrum_csv(const RunConfig& config);
std::string contours_csv(const RunConfig& config);

struct EstimateOutput {
    std::string csv;
    std::string summary;  ///< "duan=<v>±<se> epr=<v>±<se> seed=<seed>"
};
EstimateOutput estimate_csv(const RunConfig& config);

/// Full command-line entry point. Exit codes: 0 ok, 2 config/usage error,
/// 3 I/O error, 1 anything else.
int run(int argc, char** argv);

}  // namespace quadent::cli
