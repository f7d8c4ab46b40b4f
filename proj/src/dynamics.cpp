#include "holo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <omp.h>

#include "holo/hp_orbit.hpp"

namespace holo {

namespace {

int resolve_threads() {
    if (const char* env = std::getenv("HOLO_TRANSIT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return omp_get_max_threads();
}

ClosedPolyline map_polyline(const IterateSpec& s, const ClosedPolyline& src, double delta_rel,
                            int budget) {
    const auto& v = src.vertices();
    const std::size_t n = v.size();
    std::vector<CPoint> coarse(n);
    for (std::size_t i = 0; i < n; ++i) coarse[i] = iterate(s, v[i]);

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (CPoint w : coarse) {
        xmin = std::min(xmin, w.real());
        xmax = std::max(xmax, w.real());
        ymin = std::min(ymin, w.imag());
        ymax = std::max(ymax, w.imag());
    }
    const double diam = std::hypot(xmax - xmin, ymax - ymin);
    const double delta = delta_rel * diam;
    // vertex-distinctness tolerance scales with the image: deep iterates
    // contract K far below the source tolerance yet remain valid curves
    const double tol_out = std::clamp(1e-4 * diam, 1e-13, src.tolerance());

    std::vector<CPoint> out;
    out.reserve(n);
    // emit the image of each source segment, subdividing until the image edge
    // length is at most delta
    struct Seg {
        CPoint za, zb, wa, wb;
        int depth;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Seg> stack{{v[i], v[(i + 1) % n], coarse[i], coarse[(i + 1) % n], 0}};
        out.push_back(coarse[i]);
        while (!stack.empty()) {
            Seg sg = stack.back();
            stack.pop_back();
            if (std::abs(sg.wa - sg.wb) <= delta || sg.depth >= 16) {
                if (sg.depth > 0) out.push_back(sg.wa);
                if (static_cast<int>(out.size()) > budget)
                    throw RefinementBudgetExceeded("adaptive boundary refinement budget exceeded");
                continue;
            }
            const CPoint zm = (sg.za + sg.zb) / 2.0;
            const CPoint wm = iterate(s, zm);
            stack.push_back({zm, sg.zb, wm, sg.wb, sg.depth + 1});
            stack.push_back({sg.za, zm, sg.wa, wm, sg.depth + 1});
        }
    }
    // the subdivision stack emits split points after their segment start;
    // restore boundary order
    // (segments were processed in order and each emitted wa values in order)
    // drop vertices that collapse at tolerance
    std::vector<CPoint> clean;
    clean.reserve(out.size());
    for (CPoint w : out)
        if (clean.empty() || std::abs(w - clean.back()) > tol_out) clean.push_back(w);
    while (clean.size() > 1 && std::abs(clean.front() - clean.back()) <= tol_out)
        clean.pop_back();
    return ClosedPolyline::trusted(std::move(clean), tol_out);
}

}  // namespace

CompactRegion image_of_compact(const IterateSpec& s, const CompactRegion& K, double delta_rel,
                               int budget_per_curve) {
    if (s.n == 0) return K;
    std::vector<Face> faces;
    for (const auto& f : K.faces()) {
        Face g{map_polyline(s, f.outer, delta_rel, budget_per_curve), {}};
        if (orientation(g.outer) != Orientation::Positive)
            throw DynamicsError("image boundary lost positive orientation");
        for (const auto& h : f.holes)
            g.holes.push_back(map_polyline(s, h, delta_rel, budget_per_curve));
        faces.push_back(std::move(g));
    }
    return CompactRegion(std::move(faces));
}

namespace {

// Segments grouped into bounding-box blocks so that curve pairs can be
// compared with block-level rejection instead of an all-pairs scan.
struct BlockedCurve {
    const std::vector<CPoint>* v = nullptr;
    struct Block {
        std::size_t beg, end;  // segment index range [beg, end)
        double xmin, xmax, ymin, ymax;
    };
    std::vector<Block> blocks;
};

BlockedCurve block_curve(const ClosedPolyline& c) {
    constexpr std::size_t kBlock = 32;
    BlockedCurve bc;
    bc.v = &c.vertices();
    const std::size_t n = bc.v->size();
    for (std::size_t beg = 0; beg < n; beg += kBlock) {
        BlockedCurve::Block b{beg, std::min(beg + kBlock, n), 1e300, -1e300, 1e300, -1e300};
        for (std::size_t i = b.beg; i <= b.end && i <= n; ++i) {
            const CPoint p = (*bc.v)[i % n];  // include the trailing endpoint
            b.xmin = std::min(b.xmin, p.real());
            b.xmax = std::max(b.xmax, p.real());
            b.ymin = std::min(b.ymin, p.imag());
            b.ymax = std::max(b.ymax, p.imag());
        }
        bc.blocks.push_back(b);
    }
    return bc;
}

double block_gap(const BlockedCurve::Block& a, const BlockedCurve::Block& b) {
    const double dx = std::max({0.0, a.xmin - b.xmax, b.xmin - a.xmax});
    const double dy = std::max({0.0, a.ymin - b.ymax, b.ymin - a.ymax});
    return std::hypot(dx, dy);
}

double region_pair_separation(const CompactRegion& a, const CompactRegion& b, CPoint* close_a,
                              CPoint* close_b) {
    double best = 1e300;
    auto curves = [](const CompactRegion& r) {
        std::vector<BlockedCurve> cs;
        for (const auto& f : r.faces()) {
            cs.push_back(block_curve(f.outer));
            for (const auto& h : f.holes) cs.push_back(block_curve(h));
        }
        return cs;
    };
    const auto cas = curves(a);
    const auto cbs = curves(b);
    for (const auto& ca : cas)
        for (const auto& cb : cbs) {
            const auto& va = *ca.v;
            const auto& vb = *cb.v;
            for (const auto& ba : ca.blocks)
                for (const auto& bb : cb.blocks) {
                    if (block_gap(ba, bb) >= best) continue;
                    for (std::size_t i = ba.beg; i < ba.end; ++i)
                        for (std::size_t j = bb.beg; j < bb.end; ++j) {
                            const double d =
                                segment_distance(va[i], va[(i + 1) % va.size()], vb[j],
                                                 vb[(j + 1) % vb.size()]);
                            if (d < best) {
                                best = d;
                                if (close_a) *close_a = va[i];
                                if (close_b) *close_b = vb[j];
                            }
                        }
                }
        }
    return best;
}

}  // namespace

DisjointnessResult pairwise_disjoint(const std::vector<CompactRegion>& regions, double tol) {
    if (regions.size() < 2) throw DynamicsError("pairwise_disjoint needs at least two regions");
    DisjointnessResult r;
    r.disjoint = true;
    r.margin = 1e300;
    for (std::size_t i = 0; i < regions.size(); ++i)
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            CPoint pa{}, pb{};
            const double sep = region_pair_separation(regions[i], regions[j], &pa, &pb);
            if (sep <= tol) {
                r.disjoint = false;
                r.pair_a = static_cast<int>(i);
                r.pair_b = static_cast<int>(j);
                r.witness = (pa + pb) / 2.0;
                r.margin = sep;
                return r;
            }
            // boundaries are separated; nesting would hide an overlap
            const CPoint probe_i = regions[i].faces()[0].outer.vertex(0);
            const CPoint probe_j = regions[j].faces()[0].outer.vertex(0);
            if (regions[j].contains(probe_i) || regions[i].contains(probe_j)) {
                r.disjoint = false;
                r.pair_a = static_cast<int>(i);
                r.pair_b = static_cast<int>(j);
                // an interior point of the contained region lies in both
                const auto& contained = regions[j].contains(probe_i) ? regions[i] : regions[j];
                r.witness = interior_point(contained.faces()[0].outer);
                r.margin = 0;
                return r;
            }
            r.margin = std::min(r.margin, sep);
        }
    return r;
}

namespace {

struct PerN {
    bool member = false;
    MemberEvidence ev;
    std::string fail;             // nonempty: undetermined with this reason
    bool want_escalation = false;
};

PerN evaluate_n_fresh(const std::vector<MapExpr>& maps, const CompactRegion& K, int n,
                      const DomainSpec& d, const RunawayOptions& opts) {
    PerN r;
    try {
        std::vector<CompactRegion> regs{K};
        for (const auto& m : maps) regs.push_back(image_of_compact({m, n}, K));
        const auto dj = pairwise_disjoint(regs, opts.tol);
        r.ev.margin = dj.margin;
        if (dj.disjoint) {
            bool convex_ok = true;
            if (opts.require_convexity) {
                for (std::size_t i = 1; i < regs.size(); ++i)
                    if (!is_omega_convex(regs[i], d).convex) {
                        convex_ok = false;
                        break;
                    }
                r.ev.convexity_checked = true;
            }
            r.member = convex_ok;
            r.ev.fragile = dj.margin < 10 * opts.tol;
        }
        // escalate only when the double verdict is resolution-limited: tiny
        // margins together with images contracted near the fixed point. A
        // macroscopic overlap (large images, zero margin) is reliable as is.
        double min_diam = 1e300;
        for (std::size_t i = 1; i < regs.size(); ++i)
            min_diam = std::min(min_diam, regs[i].diameter());
        if (r.ev.margin < opts.escalation_threshold && min_diam < 1e-6)
            r.want_escalation = true;
    } catch (const DegenerateCurve&) {
        r.fail = "degenerate image (binary64 collapse)";
        r.want_escalation = true;
    } catch (const PoleHit& p) {
        r.fail = "pole hit at step " + std::to_string(p.step);
    } catch (const RefinementBudgetExceeded&) {
        r.fail = "refinement budget exceeded";
    } catch (const std::exception& e) {
        r.fail = e.what();
        r.want_escalation = true;
    }
    return r;
}

int elementary_depth(const MapExpr& m) {
    struct V {
        int operator()(const Mobius&) const { return 1; }
        int operator()(const Affine&) const { return 1; }
        int operator()(const Polynomial&) const { return 1; }
        int operator()(const Composite& c) const {
            int s = 0;
            for (const auto& p : c.parts) s += std::visit(V{}, p.node());
            return s;
        }
    };
    return std::visit(V{}, m.node());
}

std::vector<std::vector<CPoint>> downsampled_boundaries(const CompactRegion& K,
                                                        int per_curve) {
    std::vector<std::vector<CPoint>> out;
    auto add = [&](const ClosedPolyline& c) {
        const auto& v = c.vertices();
        std::vector<CPoint> s;
        const std::size_t step = std::max<std::size_t>(1, v.size() / per_curve);
        for (std::size_t i = 0; i < v.size(); i += step) s.push_back(v[i]);
        out.push_back(std::move(s));
    };
    for (const auto& f : K.faces()) {
        add(f.outer);
        for (const auto& h : f.holes) add(h);
    }
    return out;
}

// Resolve an escalated n from extended-precision image statistics plus the
// (well-conditioned) distances between K and the collapsed image clusters.
void apply_escalation(const CompactRegion& K, const hp::OrbitVerdict& v, double tol, PerN& r) {
    if (!v.cross_disjoint) {
        r.member = false;
        r.fail.clear();
        r.ev.escalated = true;
        r.ev.margin = v.min_cross_margin;
        return;
    }
    double margin = v.min_cross_margin;
    for (const auto& st : v.images) {
        if (st.spread > 1e-3) {
            r.fail = "escalated image cluster too spread for the statistic path";
            return;
        }
        double dist = 1e300;
        for (const auto& f : K.faces()) {
            dist = std::min(dist, f.outer.distance_to(st.centroid));
            for (const auto& h : f.holes) dist = std::min(dist, h.distance_to(st.centroid));
        }
        dist -= st.spread;
        if (K.contains(st.centroid) || dist <= tol) {
            r.member = false;
            r.fail.clear();
            r.ev.escalated = true;
            r.ev.margin = std::max(dist, 0.0);
            return;
        }
        margin = std::min(margin, dist);
    }
    r.member = true;
    r.fail.clear();
    r.ev.escalated = true;
    r.ev.margin = margin;
    r.ev.fragile = margin < 10 * tol;
}

}  // namespace

IndexSetSample run_away_set(const std::vector<MapExpr>& maps, const CompactRegion& K,
                            int horizon, const DomainSpec& d, const RunawayOptions& opts) {
    if (maps.empty()) throw DynamicsError("run_away_set needs at least one map");
    if (horizon < 1) throw DynamicsError("horizon must be positive");

    std::vector<PerN> per(horizon + 1);
    const RunMode mode = opts.mode == RunMode::Auto ? RunMode::Parallel : opts.mode;

    if (mode == RunMode::Incremental) {
        std::vector<CompactRegion> current(maps.size(), K);
        std::vector<std::vector<CPoint>> probes(maps.size());
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const auto& v = K.faces()[0].outer.vertices();
            for (std::size_t k = 0; k < v.size(); k += std::max<std::size_t>(1, v.size() / 8))
                probes[i].push_back(v[k]);
        }
        const double drift_budget = 1e-6 * K.diameter();
        for (int n = 1; n <= horizon; ++n) {
            bool step_failed = false;
            for (std::size_t i = 0; i < maps.size() && !step_failed; ++i) {
                try {
                    current[i] = image_of_compact({maps[i], 1}, current[i]);
                    // drift estimate against fresh-from-source probe values
                    double drift = 0;
                    const auto& v = current[i].faces()[0].outer.vertices();
                    for (CPoint z0 : probes[i]) {
                        const CPoint fresh = iterate({maps[i], n}, z0);
                        double nearest = 1e300;
                        for (CPoint w : v) nearest = std::min(nearest, std::abs(w - fresh));
                        drift = std::max(drift, nearest);
                    }
                    if (drift > drift_budget) current[i] = image_of_compact({maps[i], n}, K);
                } catch (const std::exception& e) {
                    per[n].fail = e.what();
                    per[n].want_escalation = true;
                    step_failed = true;
                }
            }
            if (step_failed) {
                // resynchronize from source so later n are unaffected where possible
                for (std::size_t i = 0; i < maps.size(); ++i) {
                    try {
                        current[i] = image_of_compact({maps[i], n}, K);
                    } catch (const std::exception&) {
                    }
                }
                continue;
            }
            try {
                std::vector<CompactRegion> regs{K};
                for (const auto& c : current) regs.push_back(c);
                const auto dj = pairwise_disjoint(regs, opts.tol);
                per[n].ev.margin = dj.margin;
                if (dj.disjoint) {
                    bool convex_ok = true;
                    if (opts.require_convexity) {
                        for (std::size_t i = 1; i < regs.size(); ++i)
                            if (!is_omega_convex(regs[i], d).convex) {
                                convex_ok = false;
                                break;
                            }
                        per[n].ev.convexity_checked = true;
                    }
                    per[n].member = convex_ok;
                    per[n].ev.fragile = dj.margin < 10 * opts.tol;
                }
                double min_diam = 1e300;
                for (std::size_t i = 1; i < regs.size(); ++i)
                    min_diam = std::min(min_diam, regs[i].diameter());
                if (per[n].ev.margin < opts.escalation_threshold && min_diam < 1e-6)
                    per[n].want_escalation = true;
            } catch (const std::exception& e) {
                per[n].fail = e.what();
                per[n].want_escalation = true;
            }
        }
    } else if (mode == RunMode::Serial) {
        for (int n = 1; n <= horizon; ++n) per[n] = evaluate_n_fresh(maps, K, n, d, opts);
    } else {
        const int nt = resolve_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (int n = 1; n <= horizon; ++n) per[n] = evaluate_n_fresh(maps, K, n, d, opts);
    }

    if (opts.allow_escalation && !opts.require_convexity) {
        std::vector<int> ns;
        for (int n = 1; n <= horizon; ++n)
            if (per[n].want_escalation) ns.push_back(n);
        if (!ns.empty()) {
            const int depth = std::accumulate(maps.begin(), maps.end(), 0,
                                              [](int a, const MapExpr& m) {
                                                  return std::max(a, elementary_depth(m));
                                              });
            const unsigned bits = 256u + 8u * static_cast<unsigned>(horizon) *
                                             static_cast<unsigned>(std::max(depth, 1));
            const auto hv = hp::orbit_verdicts(maps, downsampled_boundaries(K, 64), ns,
                                               opts.tol, bits);
            for (int n : ns) {
                auto it = hv.find(n);
                if (it != hv.end()) apply_escalation(K, it->second, opts.tol, per[n]);
            }
        }
    }

    IndexSetSample s;
    s.horizon = horizon;
    for (int n = 1; n <= horizon; ++n) {
        if (!per[n].fail.empty()) {
            s.undetermined[n] = per[n].fail;
        } else if (per[n].member) {
            s.members.push_back(n);
            s.evidence[n] = per[n].ev;
        }
    }
    return s;
}

ZeroCount zero_count(const std::function<CPoint(CPoint)>& f, const ClosedPolyline& curve,
                     double tol) {
    const auto& v = curve.vertices();
    const std::size_t n = v.size();
    std::vector<CPoint> fv(n);
    for (std::size_t i = 0; i < n; ++i) {
        fv[i] = f(v[i]);
        if (std::abs(fv[i]) <= tol) throw ZeroOnContour("f vanishes on the contour");
    }
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += std::arg(fv[(i + 1) % n] / fv[i]);
    const double turns = total / (2.0 * M_PI);
    ZeroCount z;
    z.count = static_cast<int>(std::lround(turns));
    z.residual = turns - z.count;
    if (std::abs(z.residual) > 0.1) throw NonIntegerResidual(z.residual);
    return z;
}

}  // namespace holo
