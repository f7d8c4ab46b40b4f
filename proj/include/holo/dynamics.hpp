#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "holo/domains.hpp"
#include "holo/symbols.hpp"

namespace holo {

struct DynamicsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RefinementBudgetExceeded : DynamicsError {
    using DynamicsError::DynamicsError;
};
struct ZeroOnContour : DynamicsError {
    using DynamicsError::DynamicsError;
};
struct NonIntegerResidual : DynamicsError {
    double residual;
    explicit NonIntegerResidual(double r)
        : DynamicsError("argument integral far from an integer; under-sampled contour"),
          residual(r) {}
};

/// Image of K under the n-th iterate, boundary polylines mapped pointwise
/// with adaptive refinement until every image edge is at most
/// delta_rel * (image diameter). Face/hole structure is preserved.
CompactRegion image_of_compact(const IterateSpec& s, const CompactRegion& K,
                               double delta_rel = 1e-3, int budget_per_curve = 40000);

struct DisjointnessResult {
    bool disjoint = false;
    double margin = 0;          // min over pairs of boundary separation
    int pair_a = -1, pair_b = -1;
    CPoint witness{};           // a point in both regions when overlapping
};

/// Pairwise disjointness of regions: boundary separation above tol for every
/// pair and no containment of one region in another.
DisjointnessResult pairwise_disjoint(const std::vector<CompactRegion>& regions, double tol);

struct MemberEvidence {
    double margin = 0;
    bool convexity_checked = false;
    bool fragile = false;    // margin below 10x the disjointness tolerance
    bool escalated = false;  // decided by the extended-precision orbit path
};

struct IndexSetSample {
    int horizon = 0;
    std::vector<int> members;  // sorted, subset of [1, horizon]
    std::map<int, MemberEvidence> evidence;
    std::map<int, std::string> undetermined;  // n -> reason (pole, budget, ...)
};

enum class RunMode {
    Auto,       // parallel fresh-from-source
    Serial,     // fresh-from-source, single thread (reference)
    Parallel,   // fresh-from-source, OpenMP over n
    Incremental // image-of-image with fresh fallback, single thread
};

struct RunawayOptions {
    double tol = kSeparationTol;
    RunMode mode = RunMode::Auto;
    int boundary_points = 256;
    bool require_convexity = false;
    /// Below this double-precision margin the verdict for n is recomputed by
    /// the extended-precision orbit-separation path, so that membership
    /// follows the true (positive or zero) separation rather than the
    /// binary64 collapse of deep iterates onto attracting fixed points.
    double escalation_threshold = 1e-12;
    bool allow_escalation = true;
};

/// The run-away index set {n in [1,H] : K and the n-th iterate images are
/// pairwise disjoint (and, if required, every image is Omega-convex)}.
IndexSetSample run_away_set(const std::vector<MapExpr>& maps, const CompactRegion& K,
                            int horizon, const DomainSpec& d, const RunawayOptions& opts = {});

struct ZeroCount {
    int count = 0;
    double residual = 0;  // pre-rounding deviation from the integer
};

/// Zeros-minus-poles count of f inside the contour, by trapezoidal summation
/// of argument increments of f along the polyline. f must not vanish on the
/// contour.
ZeroCount zero_count(const std::function<CPoint(CPoint)>& f, const ClosedPolyline& curve,
                     double tol = kIncidenceTol);

}  // namespace holo
