#include "holo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holo {

namespace {

bool segments_properly_intersect(CPoint a0, CPoint a1, CPoint b0, CPoint b1, double tol) {
    return segment_distance(a0, a1, b0, b1) <= tol;
}

}  // namespace

double point_segment_distance(CPoint p, CPoint a, CPoint b) {
    const CPoint ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double segment_distance(CPoint a0, CPoint a1, CPoint b0, CPoint b1) {
    auto cross = [](CPoint u, CPoint v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double d1 = cross(a1 - a0, b0 - a0);
    const double d2 = cross(a1 - a0, b1 - a0);
    const double d3 = cross(b1 - b0, a0 - b0);
    const double d4 = cross(b1 - b0, a1 - b0);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 0.0;  // proper crossing
    double d = point_segment_distance(b0, a0, a1);
    d = std::min(d, point_segment_distance(b1, a0, a1));
    d = std::min(d, point_segment_distance(a0, b0, b1));
    d = std::min(d, point_segment_distance(a1, b0, b1));
    return d;
}

ClosedPolyline ClosedPolyline::trusted(std::vector<CPoint> vertices, double tolerance) {
    if (tolerance <= 0) throw GeometryError("tolerance must be positive");
    if (vertices.size() < 8) throw DegenerateCurve("closed polyline needs at least 8 vertices");
    for (const CPoint& v : vertices)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw GeometryError("non-finite vertex");
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(vertices[i] - vertices[(i + 1) % n]) <= tolerance)
            throw DegenerateCurve("consecutive vertices coincide at tolerance");
    return ClosedPolyline(std::move(vertices), tolerance);
}

ClosedPolyline ClosedPolyline::make(std::vector<CPoint> vertices, double tolerance) {
    ClosedPolyline c = trusted(std::move(vertices), tolerance);
    const auto& v = c.verts_;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // skip adjacent segments (shared endpoint)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_properly_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n],
                                            tolerance))
                throw DegenerateCurve("self-intersecting polyline");
        }
    }
    return c;
}

ClosedPolyline ClosedPolyline::circle(CPoint center, double radius, int n, double tolerance) {
    if (radius <= 0 || n < 8) throw GeometryError("bad circle parameters");
    std::vector<CPoint> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n;
        v.emplace_back(center + radius * CPoint(std::cos(th), std::sin(th)));
    }
    return trusted(std::move(v), tolerance);
}

ClosedPolyline ClosedPolyline::rectangle(CPoint lo, CPoint hi, int per_side, double tolerance) {
    std::vector<CPoint> v;
    const double w = hi.real() - lo.real(), h = hi.imag() - lo.imag();
    for (int k = 0; k < per_side; ++k)
        v.emplace_back(lo.real() + w * k / per_side, lo.imag());
    for (int k = 0; k < per_side; ++k)
        v.emplace_back(hi.real(), lo.imag() + h * k / per_side);
    for (int k = 0; k < per_side; ++k)
        v.emplace_back(hi.real() - w * k / per_side, hi.imag());
    for (int k = 0; k < per_side; ++k)
        v.emplace_back(lo.real(), hi.imag() - h * k / per_side);
    return trusted(std::move(v), tolerance);
}

ClosedPolyline ClosedPolyline::reversed() const {
    std::vector<CPoint> v(verts_.rbegin(), verts_.rend());
    return ClosedPolyline(std::move(v), tol_);
}

ClosedPolyline ClosedPolyline::rotated(std::size_t shift) const {
    std::vector<CPoint> v;
    v.reserve(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i)
        v.push_back(verts_[(i + shift) % verts_.size()]);
    return ClosedPolyline(std::move(v), tol_);
}

void ClosedPolyline::bounding_box(double& xmin, double& xmax, double& ymin,
                                  double& ymax) const {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    for (const CPoint& v : verts_) {
        xmin = std::min(xmin, v.real());
        xmax = std::max(xmax, v.real());
        ymin = std::min(ymin, v.imag());
        ymax = std::max(ymax, v.imag());
    }
}

double ClosedPolyline::diameter() const {
    double xmin, xmax, ymin, ymax;
    bounding_box(xmin, xmax, ymin, ymax);
    return std::hypot(xmax - xmin, ymax - ymin);
}

double ClosedPolyline::distance_to(CPoint p) const {
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i)
        d = std::min(d, point_segment_distance(p, verts_[i], verts_[(i + 1) % n]));
    return d;
}

int winding_number(const ClosedPolyline& curve, CPoint p) {
    if (curve.distance_to(p) <= curve.tolerance()) throw PointOnCurve(p);
    const auto& v = curve.vertices();
    const std::size_t n = v.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const CPoint a = v[i] - p;
        const CPoint b = v[(i + 1) % n] - p;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

CPoint interior_point(const ClosedPolyline& curve) {
    double xmin, xmax, ymin, ymax;
    curve.bounding_box(xmin, xmax, ymin, ymax);
    const double tol = curve.tolerance();
    const auto& v = curve.vertices();
    const std::size_t n = v.size();
    // Try a few horizontal probe levels; collect crossing abscissae and test
    // midpoints of consecutive crossings.
    for (int attempt = 0; attempt < 16; ++attempt) {
        const double y = ymin + (ymax - ymin) * (0.5 + 0.37 * std::sin(1.0 + attempt));
        std::vector<double> xs;
        for (std::size_t i = 0; i < n; ++i) {
            const CPoint a = v[i], b = v[(i + 1) % n];
            if ((a.imag() <= y) == (b.imag() <= y)) continue;
            xs.push_back(a.real() + (y - a.imag()) * (b.real() - a.real()) /
                                        (b.imag() - a.imag()));
        }
        if (xs.size() < 2) continue;
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const CPoint mid((xs[k] + xs[k + 1]) / 2.0, y);
            if (curve.distance_to(mid) > tol) {
                try {
                    if (std::abs(winding_number(curve, mid)) == 1) return mid;
                } catch (const PointOnCurve&) {
                }
            }
        }
    }
    throw DegenerateCurve("no interior point separable at tolerance");
}

Orientation orientation(const ClosedPolyline& curve) {
    const CPoint p = interior_point(curve);
    return winding_number(curve, p) > 0 ? Orientation::Positive : Orientation::Negative;
}

namespace {

// Bounding boxes over runs of 32 segments; block pairs that cannot beat the
// current minimum are rejected without touching their segments.
struct SegBlock {
    std::size_t beg, end;  // segment index range [beg, end)
    double xmin, xmax, ymin, ymax;
};

std::vector<SegBlock> segment_blocks(const std::vector<CPoint>& v) {
    constexpr std::size_t kBlock = 32;
    const std::size_t n = v.size();
    std::vector<SegBlock> blocks;
    for (std::size_t beg = 0; beg < n; beg += kBlock) {
        SegBlock b{beg, std::min(beg + kBlock, n), 1e300, -1e300, 1e300, -1e300};
        for (std::size_t i = b.beg; i <= b.end; ++i) {
            const CPoint p = v[i % n];  // include the trailing endpoint
            b.xmin = std::min(b.xmin, p.real());
            b.xmax = std::max(b.xmax, p.real());
            b.ymin = std::min(b.ymin, p.imag());
            b.ymax = std::max(b.ymax, p.imag());
        }
        blocks.push_back(b);
    }
    return blocks;
}

double block_gap(const SegBlock& a, const SegBlock& b) {
    const double dx = std::max({0.0, a.xmin - b.xmax, b.xmin - a.xmax});
    const double dy = std::max({0.0, a.ymin - b.ymax, b.ymin - a.ymax});
    return std::hypot(dx, dy);
}

}  // namespace

double min_separation(const ClosedPolyline& a, const ClosedPolyline& b) {
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    const std::size_t na = va.size(), nb = vb.size();
    const auto bas = segment_blocks(va);
    const auto bbs = segment_blocks(vb);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ba : bas)
        for (const auto& bb : bbs) {
            if (block_gap(ba, bb) >= best) continue;
            for (std::size_t i = ba.beg; i < ba.end; ++i) {
                const CPoint a0 = va[i], a1 = va[(i + 1) % na];
                for (std::size_t j = bb.beg; j < bb.end; ++j) {
                    const double d = segment_distance(a0, a1, vb[j], vb[(j + 1) % nb]);
                    if (d < best) {
                        best = d;
                        if (best == 0.0) return 0.0;
                    }
                }
            }
        }
    return best;
}

bool point_in_face(const ClosedPolyline& outer, const std::vector<ClosedPolyline>& holes,
                   CPoint p) {
    if (winding_number(outer, p) != 1) return false;
    for (const auto& h : holes)
        if (winding_number(h, p) != 0) return false;
    return true;
}

}  // namespace holo
