#include "holo/domains.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

DomainSpec DomainSpec::unit_disk() { return disk(0.0, 1.0); }

DomainSpec DomainSpec::plane() {
    DomainSpec d;
    d.base = Base::FullPlane;
    d.declared_class = ConnectivityClass::SimplyConnected;
    d.validate();
    return d;
}

DomainSpec DomainSpec::disk(CPoint center, double radius, std::vector<ClosedDisk> excluded,
                            std::optional<ConnectivityClass> cls, std::string note) {
    DomainSpec d;
    d.base = Base::Disk;
    d.center = center;
    d.radius = radius;
    d.excluded = std::move(excluded);
    d.truncation_note = std::move(note);
    d.declared_class = cls.value_or(d.excluded.empty()
                                        ? ConnectivityClass::SimplyConnected
                                        : (d.truncation_note.empty()
                                               ? ConnectivityClass::FinitelyConnectedNotSimply
                                               : ConnectivityClass::InfinitelyConnected));
    d.validate();
    return d;
}

DomainSpec DomainSpec::plane_minus(std::vector<ClosedDisk> excluded,
                                   std::optional<ConnectivityClass> cls, std::string note) {
    DomainSpec d;
    d.base = Base::FullPlane;
    d.excluded = std::move(excluded);
    d.truncation_note = std::move(note);
    d.declared_class = cls.value_or(d.excluded.empty()
                                        ? ConnectivityClass::SimplyConnected
                                        : (d.truncation_note.empty()
                                               ? ConnectivityClass::FinitelyConnectedNotSimply
                                               : ConnectivityClass::InfinitelyConnected));
    d.validate();
    return d;
}

void DomainSpec::validate() const {
    if (base == Base::Disk && radius <= 0) throw DomainError("disk base needs positive radius");
    for (std::size_t i = 0; i < excluded.size(); ++i) {
        const auto& e = excluded[i];
        if (e.radius <= 0) throw DomainError("excluded disk needs positive radius");
        if (base == Base::Disk &&
            std::abs(e.center - center) + e.radius >= radius - kIncidenceTol)
            throw DomainError("excluded disk not strictly inside the base");
        for (std::size_t j = i + 1; j < excluded.size(); ++j)
            if (std::abs(e.center - excluded[j].center) <=
                e.radius + excluded[j].radius + kIncidenceTol)
                throw DomainError("excluded disks must be pairwise disjoint");
    }
    switch (declared_class) {
        case ConnectivityClass::SimplyConnected:
            if (!excluded.empty()) throw DomainError("simply connected domain cannot exclude disks");
            break;
        case ConnectivityClass::FinitelyConnectedNotSimply:
            if (excluded.empty() || !truncation_note.empty())
                throw DomainError("finitely connected (not simply) needs excluded disks and no truncation note");
            break;
        case ConnectivityClass::InfinitelyConnected:
            if (truncation_note.empty())
                throw DomainError("infinitely connected domain needs a truncation note");
            break;
    }
}

bool DomainSpec::contains(CPoint p, double slack) const {
    if (base == Base::Disk && std::abs(p - center) > radius + slack) return false;
    for (const auto& e : excluded)
        if (std::abs(p - e.center) < e.radius - slack) return false;
    return true;
}

std::vector<CPoint> DomainSpec::boundary_samples(int per_curve) const {
    std::vector<CPoint> out;
    auto ring = [&](CPoint c, double r) {
        for (int k = 0; k < per_curve; ++k) {
            const double th = 2 * M_PI * k / per_curve;
            out.emplace_back(c + r * CPoint(std::cos(th), std::sin(th)));
        }
    };
    if (base == Base::Disk) ring(center, radius * (1 - 1e-6));
    for (const auto& e : excluded) ring(e.center, e.radius * (1 + 1e-6) + 1e-9);
    return out;
}

CompactRegion::CompactRegion(std::vector<Face> faces) : faces_(std::move(faces)) {
    if (faces_.empty()) throw DomainError("compact region needs at least one face");
    for (auto& f : faces_) {
        if (orientation(f.outer) != Orientation::Positive)
            throw DomainError("face outer boundary must be positively oriented");
        for (std::size_t i = 0; i < f.holes.size(); ++i) {
            const auto& h = f.holes[i];
            if (min_separation(h, f.outer) <= 0)
                throw DomainError("hole touches the face outer boundary");
            if (winding_number(f.outer, h.vertex(0)) != 1)
                throw DomainError("hole not inside its face");
            for (std::size_t j = i + 1; j < f.holes.size(); ++j)
                if (min_separation(h, f.holes[j]) <= 0 ||
                    winding_number(f.holes[j], h.vertex(0)) != 0)
                    throw DomainError("holes must be pairwise disjoint");
        }
    }
    for (std::size_t i = 0; i < faces_.size(); ++i)
        for (std::size_t j = i + 1; j < faces_.size(); ++j) {
            if (min_separation(faces_[i].outer, faces_[j].outer) <= 0 ||
                winding_number(faces_[j].outer, faces_[i].outer.vertex(0)) != 0 ||
                winding_number(faces_[i].outer, faces_[j].outer.vertex(0)) != 0)
                throw DomainError("face outers must be pairwise disjoint and non-nested");
        }
}

CompactRegion CompactRegion::disk(CPoint center, double radius, int n) {
    return CompactRegion({Face{ClosedPolyline::circle(center, radius, n), {}}});
}

CompactRegion CompactRegion::annulus(CPoint center, double inner, double outer, int n) {
    if (inner <= 0 || inner >= outer) throw DomainError("bad annulus radii");
    return CompactRegion({Face{ClosedPolyline::circle(center, outer, n),
                               {ClosedPolyline::circle(center, inner, n)}}});
}

bool CompactRegion::contains(CPoint p) const {
    for (const auto& f : faces_)
        if (point_in_face(f.outer, f.holes, p)) return true;
    return false;
}

double CompactRegion::diameter() const {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& f : faces_) {
        double a, b, c, d;
        f.outer.bounding_box(a, b, c, d);
        xmin = std::min(xmin, a);
        xmax = std::max(xmax, b);
        ymin = std::min(ymin, c);
        ymax = std::max(ymax, d);
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

bool CompactRegion::contained_in(const DomainSpec& d, double slack) const {
    for (const auto& f : faces_)
        for (const CPoint& v : f.outer.vertices())
            if (!d.contains(v, slack)) return false;
    return true;
}

std::vector<HoleDescriptor> holes_of(const CompactRegion& K) {
    std::vector<HoleDescriptor> out;
    for (std::size_t fi = 0; fi < K.faces().size(); ++fi) {
        const auto& f = K.faces()[fi];
        for (std::size_t hi = 0; hi < f.holes.size(); ++hi) {
            HoleDescriptor d;
            d.face = static_cast<int>(fi);
            d.hole = static_cast<int>(hi);
            d.boundary = &f.holes[hi];
            try {
                d.probe = interior_point(f.holes[hi]);
            } catch (const DegenerateCurve&) {
                throw DegenerateHole("no probe point separable inside a hole");
            }
            out.push_back(d);
        }
    }
    return out;
}

namespace {

bool inside_polyline(const ClosedPolyline& c, CPoint p) {
    try {
        return winding_number(c, p) != 0;
    } catch (const PointOnCurve&) {
        return false;
    }
}

// Does this hole contain a point of the complement of the domain?
bool hole_meets_complement(const ClosedPolyline& hole, CPoint hole_probe,
                          const DomainSpec& d) {
    for (const auto& e : d.excluded) {
        if (std::abs(hole_probe - e.center) <= e.radius) return true;  // hole inside disk
        if (inside_polyline(hole, e.center)) return true;
        for (int k = 0; k < 32; ++k) {
            const double th = 2 * M_PI * k / 32;
            if (inside_polyline(hole, e.center + e.radius * CPoint(std::cos(th), std::sin(th))))
                return true;
        }
    }
    if (d.base == DomainSpec::Base::Disk) {
        // a hole reaching outside the base disk also meets the complement
        for (int k = 0; k < 32; ++k) {
            const double th = 2 * M_PI * k / 32;
            if (inside_polyline(hole, d.center + 1.0000001 * d.radius *
                                          CPoint(std::cos(th), std::sin(th))))
                return true;
        }
    }
    return false;
}

}  // namespace

ConvexityResult is_omega_convex(const CompactRegion& K, const DomainSpec& d) {
    for (const auto& h : holes_of(K)) {
        if (!hole_meets_complement(*h.boundary, h.probe, d))
            return {false, h.face, h.hole};
    }
    return {};
}

namespace {

double max_dist_from(const CompactRegion& K, CPoint c) {
    double r = 0;
    for (const auto& f : K.faces())
        for (const CPoint& v : f.outer.vertices()) r = std::max(r, std::abs(v - c));
    return r;
}

double dist_to_region(const CompactRegion& K, CPoint p) {
    double best = 1e300;
    for (const auto& f : K.faces()) {
        best = std::min(best, f.outer.distance_to(p));
        for (const auto& h : f.holes) best = std::min(best, h.distance_to(p));
    }
    if (K.contains(p)) return 0.0;
    return best;
}

}  // namespace

CompactRegion enlarge_to_omega_convex(const CompactRegion& K, const DomainSpec& d,
                                      int min_holes) {
    d.validate();
    if (static_cast<int>(d.excluded.size()) < min_holes)
        throw InsufficientTopology("domain cannot supply the requested number of holes");

    const CPoint c = d.base == DomainSpec::Base::Disk ? d.center : CPoint(0, 0);
    const double r_K = max_dist_from(K, c);

    // Reach needed to enclose the min_holes excluded disks closest to the center.
    std::vector<double> reach;
    for (const auto& e : d.excluded) reach.push_back(std::abs(e.center - c) + 1.25 * e.radius);
    std::sort(reach.begin(), reach.end());
    double needed = r_K * 1.02 + 10 * kIncidenceTol;
    for (int i = 0; i < min_holes; ++i) needed = std::max(needed, reach[i]);

    double rho;
    if (d.base == DomainSpec::Base::Disk) {
        if (needed >= d.radius - kIncidenceTol)
            throw MarginCollapse("enlargement outer boundary would leave the domain");
        rho = (needed + d.radius) / 2.0;
    } else {
        rho = 1.3 * needed + 0.5;
    }

    Face face{ClosedPolyline::circle(c, rho, 256), {}};
    for (const auto& e : d.excluded) {
        if (std::abs(e.center - c) + 1.1 * e.radius >= rho) continue;
        // annular margin 10%, capped so the hole stays clear of K and of the
        // other excluded disks
        double gap_K = dist_to_region(K, e.center) - e.radius;
        double gap_E = 1e300;
        for (const auto& o : d.excluded)
            if (&o != &e)
                gap_E = std::min(gap_E, std::abs(o.center - e.center) - o.radius - e.radius);
        if (gap_K <= kIncidenceTol)
            throw MarginCollapse("excluded disk touches the compact being enlarged");
        const double margin = std::min({0.1 * e.radius, 0.45 * gap_K, 0.45 * gap_E});
        if (margin <= kIncidenceTol) throw MarginCollapse("no room for an annular hole margin");
        face.holes.push_back(ClosedPolyline::circle(e.center, e.radius + margin, 128));
    }
    if (static_cast<int>(face.holes.size()) < min_holes)
        throw InsufficientTopology("could not carve the requested number of holes");
    return CompactRegion({std::move(face)});
}

namespace {

int pick_exhaustion_offset(const DomainSpec& d, const CompactRegion& K) {
    const CPoint c = d.base == DomainSpec::Base::Disk ? d.center : CPoint(0, 0);
    const double r_K = max_dist_from(K, c);
    for (int l0 = 1; l0 <= 64; ++l0) {
        double rho = d.base == DomainSpec::Base::Disk ? d.radius - 1.0 / (1 + l0)
                                                      : r_K + 1 + l0;
        if (rho <= 0.05 * (d.base == DomainSpec::Base::Disk ? d.radius : 1.0)) continue;
        if (rho <= r_K + 10 * kIncidenceTol) continue;
        bool ok = true;
        for (const auto& e : d.excluded) {
            const double hr = e.radius * (1 + 0.5 / (1 + l0));
            if (dist_to_region(K, e.center) < hr + 10 * kIncidenceTol) ok = false;
            if (d.base == DomainSpec::Base::Disk &&
                std::abs(e.center - c) + hr >= rho - 10 * kIncidenceTol)
                ok = false;
        }
        if (ok) return l0;
    }
    throw MarginCollapse("no exhaustion offset keeps the margins positive");
}

}  // namespace

CompactRegion exhaustion(const DomainSpec& d, int l, const CompactRegion& K) {
    if (l < 1) throw DomainError("exhaustion index must be positive");
    d.validate();
    const int l0 = pick_exhaustion_offset(d, K);
    const CPoint c = d.base == DomainSpec::Base::Disk ? d.center : CPoint(0, 0);
    const double t = 1.0 / (l + l0);
    const double rho = d.base == DomainSpec::Base::Disk ? d.radius - t
                                                        : max_dist_from(K, c) + 1.0 / t;
    Face face{ClosedPolyline::circle(c, rho, 256), {}};
    for (const auto& e : d.excluded) {
        const double hr = e.radius * (1 + 0.5 * t);
        if (std::abs(e.center - c) + hr >= rho) continue;
        face.holes.push_back(ClosedPolyline::circle(e.center, hr, 128));
    }
    return CompactRegion({std::move(face)});
}

}  // namespace holo
