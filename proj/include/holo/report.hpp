#pragma once

#include <optional>

#include "holo/config.hpp"
#include "holo/decider.hpp"

namespace holo {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kVersion = "0.1.0";

/// Runs the configured scenario and assembles the report document. The
/// document is deterministic for a fixed (config, seed, version): timing is
/// reported as operation counts, never wall clock. When witness_n is set a
/// witness section for that index is included (requires a witness config).
/// Sub-computation failures yield a partial document with status
/// "incomplete" rather than a throw.
Json run_scenario(const ScenarioConfig& c, std::optional<int> witness_n = std::nullopt);

/// Standalone SVG figure for a report: domain outline, first compact and its
/// iterate images at selected indices, colored per map, with a legend.
/// Byte-deterministic for a fixed report.
void emit_svg(const Json& report, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace holo
