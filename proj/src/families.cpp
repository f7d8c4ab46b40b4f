#include "holo/families.hpp"

#include <algorithm>

namespace holo {

FamilyKind FamilyKind::cofinite(int tail_start_max) {
    if (tail_start_max < 1) throw FamilyError("cofinite tail start must be positive");
    return {Variant::Cofinite, tail_start_max};
}

FamilyKind FamilyKind::syndetic(int gap_bound) {
    if (gap_bound < 1) throw FamilyError("syndetic gap bound must be positive");
    return {Variant::Syndetic, gap_bound};
}

FamilyKind FamilyKind::thick(int run_length) {
    if (run_length < 1) throw FamilyError("thick run length must be positive");
    return {Variant::Thick, run_length};
}

std::string FamilyKind::name() const {
    switch (variant) {
        case Variant::Infinite: return "Infinite";
        case Variant::Cofinite: return "Cofinite(" + std::to_string(parameter) + ")";
        case Variant::Syndetic: return "Syndetic(" + std::to_string(parameter) + ")";
        case Variant::Thick: return "Thick(" + std::to_string(parameter) + ")";
    }
    return "?";
}

FamilyVerdict classify(const IndexSetSample& s, const FamilyKind& f) {
    const int H = s.horizon;
    if (H < 2 * std::max(f.parameter, 1))
        throw HorizonTooSmall("horizon must be at least twice the family parameter");
    const auto& m = s.members;

    FamilyVerdict v;
    v.horizon = H;
    const int half = H / 2;

    for (int n : m)
        if (n >= half) ++v.member_count_top_half;

    // minimal t with [t, H] fully inside members
    if (!m.empty() && m.back() == H) {
        int t = H;
        for (auto it = m.rbegin(); it + 1 != m.rend() && *(it + 1) == *it - 1; ++it) t = *(it + 1);
        v.observed_tail_start = t;
    }

    int prev = 0;  // gap convention: from 0 to the first member and last to H
    for (int n : m) {
        v.max_gap = std::max(v.max_gap, n - prev);
        prev = n;
    }
    v.max_gap = std::max(v.max_gap, H - prev);

    int run = 0, prev_run = -10;
    for (int n : m) {
        run = (n == prev_run + 1) ? run + 1 : 1;
        prev_run = n;
        v.max_run = std::max(v.max_run, run);
        if (n - run + 1 >= half) v.max_run_top_half = std::max(v.max_run_top_half, run);
        else if (n >= half) v.max_run_top_half = std::max(v.max_run_top_half, n - half + 1);
    }

    bool consistent = false;
    switch (f.variant) {
        case FamilyKind::Variant::Infinite:
            consistent = v.member_count_top_half >= 1;
            break;
        case FamilyKind::Variant::Cofinite:
            consistent = v.observed_tail_start != -1 && v.observed_tail_start <= f.parameter;
            break;
        case FamilyKind::Variant::Syndetic:
            consistent = !m.empty() && v.max_gap <= f.parameter;
            break;
        case FamilyKind::Variant::Thick:
            consistent = v.max_run >= f.parameter && v.max_run_top_half >= f.parameter;
            break;
    }
    v.status = consistent ? FamilyStatus::ConsistentUpToHorizon : FamilyStatus::RefutedAtHorizon;
    return v;
}

ImplicationReport implication_matrix(
    const std::vector<std::pair<FamilyKind, FamilyVerdict>>& verdicts) {
    ImplicationReport r;
    auto consistent = [&](FamilyKind::Variant want, int max_param) {
        // "unknown" (no verdict at a compatible parameter) imposes nothing
        for (const auto& [k, v] : verdicts)
            if (k.variant == want && (max_param < 0 || k.parameter <= max_param))
                return v.status == FamilyStatus::ConsistentUpToHorizon ? 1 : 0;
        return -1;
    };
    auto flag = [&](const std::string& s) {
        r.ok = false;
        r.violations.push_back(s);
    };
    for (const auto& [k, v] : verdicts) {
        if (v.status != FamilyStatus::ConsistentUpToHorizon) continue;
        if (k.variant == FamilyKind::Variant::Cofinite) {
            // a tail from t on has runs of any length and gaps at most t
            if (consistent(FamilyKind::Variant::Infinite, -1) == 0)
                flag("Cofinite consistent but Infinite refuted");
            if (consistent(FamilyKind::Variant::Thick, -1) == 0)
                flag("Cofinite consistent but Thick refuted");
            for (const auto& [k2, v2] : verdicts)
                if (k2.variant == FamilyKind::Variant::Syndetic && k2.parameter >= k.parameter &&
                    v2.status == FamilyStatus::RefutedAtHorizon)
                    flag("Cofinite(" + std::to_string(k.parameter) +
                         ") consistent but Syndetic(" + std::to_string(k2.parameter) +
                         ") refuted");
        }
        if (k.variant == FamilyKind::Variant::Syndetic &&
            consistent(FamilyKind::Variant::Infinite, -1) == 0)
            flag("Syndetic consistent but Infinite refuted");
    }
    return r;
}

}  // namespace holo
