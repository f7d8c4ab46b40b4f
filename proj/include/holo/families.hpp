#pragma once

#include <string>
#include <vector>

#include "holo/dynamics.hpp"

namespace holo {

struct FamilyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HorizonTooSmall : FamilyError {
    using FamilyError::FamilyError;
};

/// Furstenberg families decidable at a finite horizon. Parameters pin the
/// finite proxy: Cofinite(t) asks for a tail from t on, Syndetic(g) for gaps
/// bounded by g, Thick(L) for runs of L consecutive members.
struct FamilyKind {
    enum class Variant { Infinite, Cofinite, Syndetic, Thick };
    Variant variant = Variant::Infinite;
    int parameter = 0;  // unused for Infinite

    static FamilyKind infinite() { return {Variant::Infinite, 0}; }
    static FamilyKind cofinite(int tail_start_max);
    static FamilyKind syndetic(int gap_bound);
    static FamilyKind thick(int run_length);

    std::string name() const;
};

enum class FamilyStatus { ConsistentUpToHorizon, RefutedAtHorizon };

struct FamilyVerdict {
    FamilyStatus status = FamilyStatus::RefutedAtHorizon;
    int horizon = 0;
    // variant-specific evidence, re-derivable from the member list
    int member_count_top_half = 0;  // Infinite
    int observed_tail_start = -1;   // Cofinite: minimal t with [t,H] in members, -1 if none
    int max_gap = 0;                // Syndetic: max gap including the ends
    int max_run = 0;                // Thick: longest run in [1,H]
    int max_run_top_half = 0;       // Thick: longest run in [H/2,H]
};

/// A finite-horizon verdict on membership of the sampled index set in the
/// family. ConsistentUpToHorizon is not a proof: any finite computation can
/// only refute or remain consistent with an infinite-horizon property.
FamilyVerdict classify(const IndexSetSample& s, const FamilyKind& f);

struct ImplicationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Sanity layer over the family hierarchy on one sample: Cofinite consistent
/// forces Thick, Syndetic and Infinite consistent (at compatible parameters),
/// and Syndetic consistent forces Infinite consistent.
ImplicationReport implication_matrix(
    const std::vector<std::pair<FamilyKind, FamilyVerdict>>& verdicts);

}  // namespace holo
