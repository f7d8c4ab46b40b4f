#include <fstream>

#include "holo/dynamics.hpp"
#include "holo/report.hpp"
#include "holo/witness.hpp"

namespace holo {

namespace {

Json cpx(CPoint z) { return Json::array({z.real(), z.imag()}); }

Json curve_json(const ClosedPolyline& c, std::size_t per_curve = 64) {
    Json arr = Json::array();
    const auto& v = c.vertices();
    const std::size_t step = std::max<std::size_t>(1, v.size() / per_curve);
    for (std::size_t i = 0; i < v.size(); i += step) arr.push_back(cpx(v[i]));
    return arr;
}

Json region_json(const CompactRegion& K) {
    Json faces = Json::array();
    for (const auto& f : K.faces()) {
        Json face;
        face["outer"] = curve_json(f.outer);
        Json holes = Json::array();
        for (const auto& h : f.holes) holes.push_back(curve_json(h));
        face["holes"] = holes;
        faces.push_back(face);
    }
    return Json{{"faces", faces}};
}

std::string class_name(ConnectivityClass c) {
    switch (c) {
        case ConnectivityClass::SimplyConnected: return "simply_connected";
        case ConnectivityClass::FinitelyConnectedNotSimply: return "finitely_connected";
        case ConnectivityClass::InfinitelyConnected: return "infinitely_connected";
    }
    return "?";
}

Json verdict_json(const FamilyKind& f, const FamilyVerdict& v) {
    Json j;
    j["family"] = f.name();
    j["status"] = v.status == FamilyStatus::ConsistentUpToHorizon ? "ConsistentUpToHorizon"
                                                                  : "RefutedAtHorizon";
    j["horizon"] = v.horizon;
    j["member_count_top_half"] = v.member_count_top_half;
    j["observed_tail_start"] = v.observed_tail_start;
    j["max_gap"] = v.max_gap;
    j["max_run"] = v.max_run;
    j["max_run_top_half"] = v.max_run_top_half;
    return j;
}

Json domain_json(const DomainSpec& d) {
    Json j;
    j["base"] = d.base == DomainSpec::Base::FullPlane ? "plane" : "disk";
    if (d.base == DomainSpec::Base::Disk) {
        j["center"] = cpx(d.center);
        j["radius"] = d.radius;
    }
    Json ex = Json::array();
    for (const auto& e : d.excluded)
        ex.push_back(Json{{"center", cpx(e.center)}, {"radius", e.radius}});
    j["excluded"] = ex;
    j["class"] = class_name(d.declared_class);
    if (!d.truncation_note.empty()) j["truncation_note"] = d.truncation_note;
    return j;
}

Json witness_section(const ScenarioConfig& c, int n) {
    Json w;
    w["n"] = n;
    std::vector<TargetFn> targets;
    for (CPoint t : c.witness->targets) targets.push_back([t](CPoint) { return t; });
    try {
        const auto basis = WitnessBasis::monomial(c.witness->max_degree);
        const auto h =
            fit_witness(c.maps, n, c.compacts[0], targets, basis, c.tolerances.eps_witness);
        w["degree"] = h.degree;
        w["center"] = cpx(h.center);
        w["scale"] = h.scale;
        Json cs = Json::array();
        for (CPoint z : h.coeffs) cs.push_back(cpx(z));
        w["coefficients"] = cs;
        w["basis"] = Json{{"kind", "monomial"}, {"max_degree", c.witness->max_degree}};
        w["fit_errors"] = h.fit_errors;
        w["validation_errors"] = h.validation_errors;
        w["reached_degree_cap"] = h.reached_degree_cap;
        w["ill_conditioned"] = h.ill_conditioned;
        w["condition"] = h.condition;
        w["overfit_flagged"] = h.overfit_flagged;
        const auto rep =
            verify_witness(h, c.maps, n, c.compacts[0], targets, c.tolerances.eps_witness);
        w["verified"] = rep.success;
        w["sup_errors"] = rep.sup_errors;
        if (rep.success) {
            w["statement"] = rep.statement;
        } else {
            w["violating_target"] = rep.violating_target;
            w["violating_error"] = rep.violating_error;
        }
    } catch (const std::exception& e) {
        w["error"] = e.what();
    }
    return w;
}

}  // namespace

Json run_scenario(const ScenarioConfig& c, std::optional<int> witness_n) {
    Json rep;
    rep["schema_version"] = 1;
    rep["version"] = kVersion;
    rep["config"] = c.echo;
    rep["domain"] = domain_json(c.domain);

    // deterministic operation counts stand in for wall-clock timing so that
    // identical (config, seed, version) yield byte-identical reports
    Json timing;
    timing["model"] = "operation-counts";
    timing["maps"] = c.maps.size();
    timing["compacts"] = c.compacts.size();
    timing["horizon"] = c.horizon;

    try {
        DecideOptions opts;
        opts.tol = c.tolerances.separation;
        const TransitivityReport tr =
            decide(c.domain, c.maps, c.family, c.compacts, c.horizon, opts);

        rep["status"] = to_string(tr.status);
        rep["domain_class"] = class_name(tr.domain_class);
        Json inj = Json::array();
        for (const auto& r : tr.injectivity) {
            Json j;
            j["kind"] = r.kind == InjectivityKind::Injective
                            ? "Injective"
                            : (r.kind == InjectivityKind::NotInjective ? "NotInjective"
                                                                       : "Inconclusive");
            j["grid_certified"] = r.grid_certified;
            if (r.kind == InjectivityKind::NotInjective) {
                j["witness_a"] = cpx(r.witness_a);
                j["witness_b"] = cpx(r.witness_b);
            }
            inj.push_back(j);
        }
        rep["injectivity"] = inj;
        if (tr.refuting_compact >= 0) rep["refuting_compact"] = tr.refuting_compact;
        if (tr.non_injective_map >= 0) rep["non_injective_map"] = tr.non_injective_map;
        rep["narrative"] = tr.narrative;

        std::size_t indices_scanned = 0, escalated = 0;
        Json per = Json::array();
        for (const auto& out : tr.per_compact) {
            Json o;
            o["horizon"] = out.sample.horizon;
            o["members"] = out.sample.members;
            Json und = Json::object();
            for (const auto& [n, why] : out.sample.undetermined)
                und[std::to_string(n)] = why;
            o["undetermined"] = und;
            Json ev = Json::array();
            for (const auto& [n, e] : out.sample.evidence) {
                ev.push_back(Json{{"n", n},
                                  {"margin", e.margin},
                                  {"fragile", e.fragile},
                                  {"escalated", e.escalated},
                                  {"convexity_checked", e.convexity_checked}});
                if (e.escalated) ++escalated;
            }
            o["evidence"] = ev;
            o["family_verdict"] = verdict_json(c.family, out.verdict);
            o["union_convexity_failures"] = out.union_convexity_failures;
            indices_scanned += static_cast<std::size_t>(out.sample.horizon);
            per.push_back(o);
        }
        rep["per_compact"] = per;
        timing["indices_scanned"] = indices_scanned;
        timing["escalated_indices"] = escalated;

        // figure geometry: first compact with images at n = 1, first member,
        // horizon (where still representable in double precision)
        if (tr.status != OverallStatus::ProvenImpossible && !tr.per_compact.empty()) {
            Json figs;
            figs["compact"] = region_json(c.compacts[0]);
            const auto& members = tr.per_compact[0].sample.members;
            std::vector<int> ns{1};
            if (!members.empty()) {
                if (members.front() != 1) ns.push_back(members.front());
                if (members.back() != members.front() && members.back() != 1)
                    ns.push_back(members.back());
            }
            Json images = Json::array();
            for (int n : ns)
                for (std::size_t i = 0; i < c.maps.size(); ++i) {
                    try {
                        images.push_back(
                            Json{{"map", i},
                                 {"n", n},
                                 {"region",
                                  region_json(image_of_compact({c.maps[i], n}, c.compacts[0]))}});
                    } catch (const std::exception&) {
                        // deep iterates may be unrepresentable; skip the outline
                    }
                }
            figs["images"] = images;
            figs["no_members"] = members.empty();
            rep["figures"] = figs;
        }

        if (witness_n) {
            if (!c.witness)
                throw ValidationError("witness", "witness index given but no witness config");
            rep["witness"] = witness_section(c, *witness_n);
        }
    } catch (const std::exception& e) {
        rep["status"] = "incomplete";
        rep["error"] = e.what();
    }
    rep["timing"] = timing;
    return rep;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace holo
