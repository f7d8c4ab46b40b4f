#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "holo/geometry.hpp"

namespace holo {

struct DomainSpec;
class CompactRegion;

struct SymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleHit : SymbolError {
    CPoint at;
    int step;  // iterate step where the pole was hit, -1 for plain eval
    PoleHit(CPoint z, int s = -1)
        : SymbolError("evaluation hit a pole"), at(z), step(s) {}
};
struct InvalidMap : SymbolError {
    using SymbolError::SymbolError;
};

class MapExpr;

struct Mobius {
    CPoint a, b, c, d;  // z -> (a z + b) / (c z + d)
};
struct Affine {
    CPoint a, b;  // z -> a z + b
};
struct Polynomial {
    std::vector<CPoint> coeffs;  // ascending, degree >= 1
};
struct Composite {
    std::vector<MapExpr> parts;  // applied left to right
};

/// Closed-form holomorphic map expression. Immutable after construction;
/// construction validates the variant invariants.
class MapExpr {
public:
    using Variant = std::variant<Mobius, Affine, Polynomial, Composite>;

    static MapExpr mobius(CPoint a, CPoint b, CPoint c, CPoint d);
    static MapExpr affine(CPoint a, CPoint b);
    static MapExpr polynomial(std::vector<CPoint> coeffs);
    static MapExpr composite(std::vector<MapExpr> parts);

    const Variant& node() const { return *node_; }

    CPoint eval(CPoint z) const;
    CPoint derivative(CPoint z) const;

    /// True when the map is injective on all of its natural domain
    /// (Mobius, Affine, or a composite built only from those).
    bool analytically_injective() const;

private:
    explicit MapExpr(Variant v) : node_(std::make_shared<Variant>(std::move(v))) {}
    std::shared_ptr<const Variant> node_;
};

struct IterateSpec {
    MapExpr base;
    int n = 1;  // n = 0 is the identity
};

CPoint iterate(const IterateSpec& s, CPoint z);

struct SelfMapResult {
    bool ok = true;
    CPoint violation_at{};     // preimage of the offending value
    CPoint violation_image{};  // image outside the domain
};

/// Samples quasi-random interior points plus inward-nudged boundary samples
/// of the truncated domain description and checks all images stay inside.
SelfMapResult validate_self_map(const MapExpr& m, const DomainSpec& d, int samples,
                                std::uint64_t seed = 1);

enum class InjectivityKind { Injective, NotInjective, Inconclusive };

struct InjectivityResult {
    InjectivityKind kind = InjectivityKind::Inconclusive;
    bool grid_certified = false;  // true when certified only at grid resolution
    int grid_targets = 0;
    CPoint witness_a{}, witness_b{};  // collision pair when NotInjective
};

/// Mobius/Affine: injective analytically. Polynomial/Composite: counts
/// preimages of a grid of image targets inside K by the argument principle;
/// two or more preimages of one target yield a bisection-refined witness pair.
InjectivityResult check_injective(const MapExpr& m, const CompactRegion& K);

}  // namespace holo
