#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holo/geometry.hpp"

namespace holo {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateHole : DomainError {
    using DomainError::DomainError;
};
struct InsufficientTopology : DomainError {
    using DomainError::DomainError;
};
struct MarginCollapse : DomainError {
    using DomainError::DomainError;
};

struct ClosedDisk {
    CPoint center;
    double radius = 0;
};

enum class ConnectivityClass { SimplyConnected, FinitelyConnectedNotSimply, InfinitelyConnected };

/// A domain: the full plane or an open disk, minus finitely many closed
/// disks. For InfinitelyConnected the excluded list is a finite truncation
/// of an infinite family, flagged by a nonempty truncation note.
struct DomainSpec {
    enum class Base { FullPlane, Disk };

    Base base = Base::Disk;
    CPoint center{};     // Disk only
    double radius = 1;   // Disk only
    std::vector<ClosedDisk> excluded;
    ConnectivityClass declared_class = ConnectivityClass::SimplyConnected;
    std::string truncation_note;

    static DomainSpec unit_disk();
    static DomainSpec plane();
    static DomainSpec disk(CPoint center, double radius,
                           std::vector<ClosedDisk> excluded = {},
                           std::optional<ConnectivityClass> cls = std::nullopt,
                           std::string truncation_note = {});
    static DomainSpec plane_minus(std::vector<ClosedDisk> excluded,
                                  std::optional<ConnectivityClass> cls = std::nullopt,
                                  std::string truncation_note = {});

    void validate() const;  // throws DomainError on invariant violation

    /// Membership of a point, with slack: |w-c| <= R + slack for the base
    /// and distance >= r - slack from every excluded disk.
    bool contains(CPoint p, double slack = kIncidenceTol) const;

    /// Boundary samples of the truncated description, nudged inward so they
    /// lie in the open domain.
    std::vector<CPoint> boundary_samples(int per_curve = 64) const;
};

struct Face {
    ClosedPolyline outer;                // positively oriented
    std::vector<ClosedPolyline> holes;   // stored positively oriented; excluded interior
};

/// A compact subset of the plane: finitely many faces, each an outer Jordan
/// polyline minus hole polylines.
class CompactRegion {
public:
    explicit CompactRegion(std::vector<Face> faces);

    static CompactRegion disk(CPoint center, double radius, int n = 256);
    static CompactRegion annulus(CPoint center, double inner, double outer, int n = 256);

    const std::vector<Face>& faces() const { return faces_; }
    bool contains(CPoint p) const;
    double diameter() const;
    bool contained_in(const DomainSpec& d, double slack = kIncidenceTol) const;

private:
    std::vector<Face> faces_;
};

struct HoleDescriptor {
    int face = 0;
    int hole = 0;
    const ClosedPolyline* boundary = nullptr;
    CPoint probe{};  // a point interior to the hole
};

std::vector<HoleDescriptor> holes_of(const CompactRegion& K);

struct ConvexityResult {
    bool convex = true;
    int offending_face = -1;
    int offending_hole = -1;
};

/// K is Omega-convex iff every hole of K contains a point of the complement
/// of the domain (an excluded disk, or the outside of the base disk).
ConvexityResult is_omega_convex(const CompactRegion& K, const DomainSpec& d);

/// A connected single-face enlargement L of K that is Omega-convex and has
/// at least `min_holes` holes, each carved around one excluded component.
CompactRegion enlarge_to_omega_convex(const CompactRegion& K, const DomainSpec& d,
                                      int min_holes);

/// l-th term of a nested exhaustion of the (truncated) domain by connected
/// Omega-convex compacts containing K.
CompactRegion exhaustion(const DomainSpec& d, int l, const CompactRegion& K);

}  // namespace holo
