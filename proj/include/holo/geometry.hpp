#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

using CPoint = std::complex<double>;

constexpr double kIncidenceTol = 1e-9;
constexpr double kSeparationTol = 1e-6;

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PointOnCurve : GeometryError {
    CPoint point;
    explicit PointOnCurve(CPoint p)
        : GeometryError("point lies on the curve within tolerance"), point(p) {}
};
struct DegenerateCurve : GeometryError {
    using GeometryError::GeometryError;
};

enum class Orientation { Positive, Negative };

/// Closed polyline in the plane. The segment from the last vertex back to the
/// first is implicit. Simple (non self-intersecting) at its tolerance.
class ClosedPolyline {
public:
    // Validates vertex count, consecutive-vertex separation and simplicity.
    static ClosedPolyline make(std::vector<CPoint> vertices, double tolerance = kIncidenceTol);

    // Skips the O(n^2) simplicity scan. For curves simple by construction,
    // e.g. images of simple curves under injective maps.
    static ClosedPolyline trusted(std::vector<CPoint> vertices, double tolerance = kIncidenceTol);

    static ClosedPolyline circle(CPoint center, double radius, int n = 256,
                                 double tolerance = kIncidenceTol);
    static ClosedPolyline rectangle(CPoint lo, CPoint hi, int per_side = 4,
                                    double tolerance = kIncidenceTol);

    const std::vector<CPoint>& vertices() const { return verts_; }
    double tolerance() const { return tol_; }
    std::size_t size() const { return verts_.size(); }
    CPoint vertex(std::size_t i) const { return verts_[i % verts_.size()]; }

    ClosedPolyline reversed() const;
    ClosedPolyline rotated(std::size_t shift) const;  // cyclic vertex rotation

    void bounding_box(double& xmin, double& xmax, double& ymin, double& ymax) const;
    double diameter() const;

    // Minimum distance from p to any segment of the curve.
    double distance_to(CPoint p) const;

private:
    ClosedPolyline(std::vector<CPoint> v, double tol) : verts_(std::move(v)), tol_(tol) {}
    std::vector<CPoint> verts_;
    double tol_;
};

/// Signed winding index of `curve` about `p`, by summation of the angle
/// increments over the segments. Throws PointOnCurve if p is within the
/// curve's tolerance of a segment.
int winding_number(const ClosedPolyline& curve, CPoint p);

/// Orientation of a simple closed curve: Positive iff the winding number
/// about an interior point is +1. The interior point is located by a
/// horizontal ray probe through the curve's bounding box.
Orientation orientation(const ClosedPolyline& curve);

/// An interior point of a simple closed curve, separated from the curve by
/// more than its tolerance. Throws DegenerateCurve when none can be found.
CPoint interior_point(const ClosedPolyline& curve);

/// Minimum Euclidean distance between the segments of a and b. Zero iff the
/// curves touch or cross at tolerance.
double min_separation(const ClosedPolyline& a, const ClosedPolyline& b);

double segment_distance(CPoint a0, CPoint a1, CPoint b0, CPoint b1);
double point_segment_distance(CPoint p, CPoint a, CPoint b);

/// True iff p is inside `outer` (winding +1) and outside every hole
/// (winding 0). `outer` must be positively oriented.
bool point_in_face(const ClosedPolyline& outer, const std::vector<ClosedPolyline>& holes,
                   CPoint p);

}  // namespace holo
