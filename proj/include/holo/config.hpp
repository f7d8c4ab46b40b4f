#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "holo/domains.hpp"
#include "holo/families.hpp"
#include "holo/symbols.hpp"

namespace holo {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    std::string field;
    ValidationError(std::string f, const std::string& msg)
        : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

struct Tolerances {
    double incidence = kIncidenceTol;
    double separation = kSeparationTol;
    double eps_witness = 1e-6;
};

struct OutputsSpec {
    std::string report;
    std::string svg;
};

struct WitnessConfig {
    std::vector<CPoint> targets;  // constant target per region: g0, g1, ...
    int max_degree = 60;
};

struct ScenarioConfig {
    DomainSpec domain;
    std::vector<MapExpr> maps;
    FamilyKind family;
    std::vector<CompactRegion> compacts;
    int horizon = 100;
    Tolerances tolerances;
    OutputsSpec outputs;
    std::uint64_t seed = 1;
    std::optional<WitnessConfig> witness;
    Json echo;  // the validated raw document, echoed into reports
};

/// Parses and validates a config document. Complex numbers are [re, im]
/// pairs; unknown keys are rejected.
ScenarioConfig parse_config(const Json& doc);
ScenarioConfig load_config(const std::string& path);

}  // namespace holo
