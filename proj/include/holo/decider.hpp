#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holo/families.hpp"
#include "holo/symbols.hpp"

namespace holo {

struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OverallStatus {
    ProvenImpossible,
    ConsistentUpToHorizon,
    RefutedAtHorizon,
    OutsideHypothesis
};

std::string to_string(OverallStatus s);

struct CompactOutcome {
    IndexSetSample sample;
    FamilyVerdict verdict;
    std::vector<int> union_convexity_failures;  // members where the union check failed
};

struct TransitivityReport {
    ConnectivityClass domain_class = ConnectivityClass::SimplyConnected;
    bool full_plane = false;
    std::vector<InjectivityResult> injectivity;  // one per map
    std::vector<CompactOutcome> per_compact;
    OverallStatus status = OverallStatus::RefutedAtHorizon;
    int refuting_compact = -1;  // index when a compact refutes
    int non_injective_map = -1;
    std::vector<std::string> narrative;
};

struct DecideOptions {
    double tol = kSeparationTol;
    RunMode mode = RunMode::Auto;
    bool allow_escalation = true;
};

/// Verdict on disjoint F-transitivity of the composition operators of `maps`
/// on the domain, tested against a finite list of compacts at a finite
/// horizon. Dispatches on the connectivity class: finitely connected but not
/// simply connected domains admit no family at all; the disk asks for
/// run-away disjointness; infinitely connected domains additionally require
/// Omega-convex images; the full plane is outside the hypotheses.
TransitivityReport decide(const DomainSpec& d, const std::vector<MapExpr>& maps,
                          const FamilyKind& f, const std::vector<CompactRegion>& compacts,
                          int horizon, const DecideOptions& opts = {});

/// Consistency probe: the multi-face region formed by K together with
/// all images must itself be Omega-convex whenever the pieces are disjoint
/// and Omega-convex. A false return on such inputs signals a geometry bug.
bool union_convexity_check(const CompactRegion& K, const std::vector<CompactRegion>& images,
                           const DomainSpec& d);

}  // namespace holo
