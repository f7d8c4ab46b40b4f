#include "holo/decider.hpp"

#include <algorithm>

#include "holo/dynamics.hpp"

namespace holo {

std::string to_string(OverallStatus s) {
    switch (s) {
        case OverallStatus::ProvenImpossible: return "ProvenImpossible";
        case OverallStatus::ConsistentUpToHorizon: return "ConsistentUpToHorizon";
        case OverallStatus::RefutedAtHorizon: return "RefutedAtHorizon";
        case OverallStatus::OutsideHypothesis: return "OutsideHypothesis";
    }
    return "?";
}

bool union_convexity_check(const CompactRegion& K, const std::vector<CompactRegion>& images,
                           const DomainSpec& d) {
    std::vector<Face> faces = K.faces();
    for (const auto& im : images)
        for (const auto& f : im.faces()) faces.push_back(f);
    return is_omega_convex(CompactRegion(std::move(faces)), d).convex;
}

TransitivityReport decide(const DomainSpec& d, const std::vector<MapExpr>& maps,
                          const FamilyKind& f, const std::vector<CompactRegion>& compacts,
                          int horizon, const DecideOptions& opts) {
    if (maps.size() < 2) throw HypothesisViolation("need at least two maps");
    d.validate();

    TransitivityReport rep;
    rep.domain_class = d.declared_class;
    rep.full_plane = d.base == DomainSpec::Base::FullPlane && d.excluded.empty();

    if (d.declared_class == ConnectivityClass::FinitelyConnectedNotSimply) {
        rep.status = OverallStatus::ProvenImpossible;
        rep.narrative.push_back(
            "finitely connected, not simply connected domain: no family makes the operators "
            "disjointly transitive; F-transitive implies transitive, so the verdict holds for "
            "every family of infinite sets a fortiori");
        return rep;
    }

    for (const auto& m : maps) {
        const auto sm = validate_self_map(m, d, 200);
        if (!sm.ok)
            throw HypothesisViolation("map is not a self-map of the domain (image left it)");
    }
    if (compacts.empty()) throw HypothesisViolation("need at least one compact");

    // injectivity on the largest tested compact, per the standing hypothesis
    std::size_t largest = 0;
    for (std::size_t i = 1; i < compacts.size(); ++i)
        if (compacts[i].diameter() > compacts[largest].diameter()) largest = i;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        rep.injectivity.push_back(check_injective(maps[i], compacts[largest]));
        if (rep.injectivity.back().kind == InjectivityKind::NotInjective &&
            rep.non_injective_map < 0)
            rep.non_injective_map = static_cast<int>(i);
    }

    const bool infinitely = d.declared_class == ConnectivityClass::InfinitelyConnected;
    RunawayOptions ro;
    ro.tol = opts.tol;
    ro.mode = opts.mode;
    ro.require_convexity = infinitely;
    ro.allow_escalation = opts.allow_escalation;

    bool any_refuted = false;
    for (std::size_t ci = 0; ci < compacts.size(); ++ci) {
        CompactOutcome out;
        out.sample = run_away_set(maps, compacts[ci], horizon, d, ro);
        out.verdict = classify(out.sample, f);
        if (infinitely) {
            for (int n : out.sample.members) {
                std::vector<CompactRegion> images;
                for (const auto& m : maps) images.push_back(image_of_compact({m, n}, compacts[ci]));
                if (!union_convexity_check(compacts[ci], images, d)) {
                    out.union_convexity_failures.push_back(n);
                    rep.narrative.push_back(
                        "internal inconsistency: union of disjoint Omega-convex pieces failed "
                        "the Omega-convexity check at n = " + std::to_string(n));
                }
            }
        }
        if (out.verdict.status == FamilyStatus::RefutedAtHorizon && !any_refuted) {
            any_refuted = true;
            rep.refuting_compact = static_cast<int>(ci);
        }
        rep.per_compact.push_back(std::move(out));
    }

    if (rep.full_plane) {
        rep.status = OverallStatus::OutsideHypothesis;
        rep.narrative.push_back(
            "full-plane domain is outside the characterization hypotheses; computations are "
            "reported for information only");
        return rep;
    }

    if (rep.non_injective_map >= 0 || any_refuted) {
        rep.status = OverallStatus::RefutedAtHorizon;
    } else {
        rep.status = OverallStatus::ConsistentUpToHorizon;
        rep.narrative.push_back(
            "consistent up to the horizon for the tested compacts only; the defining property "
            "quantifies over all compacts and cannot be finitely certified");
    }
    return rep;
}

}  // namespace holo
