#include "holo/symbols.hpp"

#include <cmath>
#include <deque>
#include <random>

#include "holo/domains.hpp"
#include "holo/dynamics.hpp"

namespace holo {

MapExpr MapExpr::mobius(CPoint a, CPoint b, CPoint c, CPoint d) {
    if (std::abs(a * d - b * c) <= kIncidenceTol)
        throw InvalidMap("mobius determinant ad - bc vanishes at tolerance");
    return MapExpr(Mobius{a, b, c, d});
}

MapExpr MapExpr::affine(CPoint a, CPoint b) {
    if (std::abs(a) <= kIncidenceTol) throw InvalidMap("affine leading coefficient is zero");
    return MapExpr(Affine{a, b});
}

MapExpr MapExpr::polynomial(std::vector<CPoint> coeffs) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() < 2) throw InvalidMap("polynomial degree must be at least 1");
    if (std::abs(coeffs.back()) <= kIncidenceTol)
        throw InvalidMap("polynomial leading coefficient vanishes at tolerance");
    return MapExpr(Polynomial{std::move(coeffs)});
}

MapExpr MapExpr::composite(std::vector<MapExpr> parts) {
    if (parts.empty()) throw InvalidMap("composite needs at least one part");
    return MapExpr(Composite{std::move(parts)});
}

CPoint MapExpr::eval(CPoint z) const {
    struct V {
        CPoint z;
        CPoint operator()(const Mobius& m) const {
            const CPoint den = m.c * z + m.d;
            if (std::abs(den) <= kIncidenceTol) throw PoleHit(z);
            return (m.a * z + m.b) / den;
        }
        CPoint operator()(const Affine& m) const { return m.a * z + m.b; }
        CPoint operator()(const Polynomial& m) const {
            CPoint r = 0;
            for (auto it = m.coeffs.rbegin(); it != m.coeffs.rend(); ++it) r = r * z + *it;
            return r;
        }
        CPoint operator()(const Composite& m) const {
            CPoint w = z;
            for (const auto& p : m.parts) w = p.eval(w);
            return w;
        }
    };
    return std::visit(V{z}, *node_);
}

CPoint MapExpr::derivative(CPoint z) const {
    struct V {
        CPoint z;
        CPoint operator()(const Mobius& m) const {
            const CPoint den = m.c * z + m.d;
            if (std::abs(den) <= kIncidenceTol) throw PoleHit(z);
            return (m.a * m.d - m.b * m.c) / (den * den);
        }
        CPoint operator()(const Affine& m) const { return m.a; }
        CPoint operator()(const Polynomial& m) const {
            CPoint r = 0;
            for (std::size_t k = m.coeffs.size() - 1; k >= 1; --k)
                r = r * z + static_cast<double>(k) * m.coeffs[k];
            return r;
        }
        CPoint operator()(const Composite& m) const {
            CPoint w = z, der = 1;
            for (const auto& p : m.parts) {
                der *= p.derivative(w);
                w = p.eval(w);
            }
            return der;
        }
    };
    return std::visit(V{z}, *node_);
}

bool MapExpr::analytically_injective() const {
    struct V {
        bool operator()(const Mobius&) const { return true; }
        bool operator()(const Affine&) const { return true; }
        bool operator()(const Polynomial& p) const { return p.coeffs.size() == 2; }
        bool operator()(const Composite& c) const {
            for (const auto& p : c.parts)
                if (!p.analytically_injective()) return false;
            return true;
        }
    };
    return std::visit(V{}, *node_);
}

CPoint iterate(const IterateSpec& s, CPoint z) {
    if (s.n < 0) throw SymbolError("iterate count must be nonnegative");
    CPoint w = z;
    for (int k = 0; k < s.n; ++k) {
        try {
            w = s.base.eval(w);
        } catch (const PoleHit& p) {
            throw PoleHit(p.at, k);
        }
    }
    return w;
}

SelfMapResult validate_self_map(const MapExpr& m, const DomainSpec& d, int samples,
                                std::uint64_t seed) {
    d.validate();
    std::vector<CPoint> pts = d.boundary_samples();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CPoint window_c = d.center;
    double window_r = d.radius;
    if (d.base == DomainSpec::Base::FullPlane) {
        window_c = 0;
        window_r = 10.0;
        for (const auto& e : d.excluded)
            window_r = std::max(window_r, 2.0 * (std::abs(e.center) + e.radius));
    }
    int kept = 0, guard = 0;
    while (kept < samples && guard < 100 * samples + 1000) {
        ++guard;
        const double r = window_r * std::sqrt(u(rng));
        const double th = 2 * M_PI * u(rng);
        const CPoint z = window_c + r * CPoint(std::cos(th), std::sin(th));
        if (!d.contains(z, -1e-7)) continue;  // strictly interior
        pts.push_back(z);
        ++kept;
    }
    for (const CPoint& z : pts) {
        CPoint w;
        try {
            w = m.eval(z);
        } catch (const PoleHit&) {
            return {false, z, z};
        }
        if (!d.contains(w)) return {false, z, w};
    }
    return {};
}

namespace {

// Zeros of m - w inside one face, counted by the argument principle over the
// face boundary (outer minus holes).
int face_preimage_count(const MapExpr& m, CPoint w, const Face& face) {
    auto f = [&](CPoint z) { return m.eval(z) - w; };
    int c = zero_count(f, face.outer).count;
    for (const auto& h : face.holes) c -= zero_count(f, h).count;
    return c;
}

struct Cell {
    double x0, x1, y0, y1;
    int count;
};

int cell_count(const MapExpr& m, CPoint w, const Cell& c, double tol) {
    auto f = [&](CPoint z) { return m.eval(z) - w; };
    // nudge the contour if a preimage sits on it
    for (int attempt = 0; attempt < 6; ++attempt) {
        const double pad = attempt * 1e-9 * (1.0 + std::abs(c.x1 - c.x0));
        try {
            auto rect = ClosedPolyline::rectangle({c.x0 - pad, c.y0 - pad},
                                                  {c.x1 + pad, c.y1 + pad}, 16, tol);
            return zero_count(f, rect).count;
        } catch (const ZeroOnContour&) {
        }
    }
    return -1;  // undecidable cell
}

CPoint newton_polish(const MapExpr& m, CPoint w, CPoint z) {
    for (int k = 0; k < 30; ++k) {
        const CPoint fz = m.eval(z) - w;
        const CPoint dz = m.derivative(z);
        if (std::abs(dz) < 1e-14) break;
        const CPoint step = fz / dz;
        z -= step;
        if (std::abs(step) < 1e-13) break;
    }
    return z;
}

}  // namespace

InjectivityResult check_injective(const MapExpr& m, const CompactRegion& K) {
    if (m.analytically_injective()) {
        InjectivityResult r;
        r.kind = InjectivityKind::Injective;
        r.grid_certified = false;
        return r;
    }
    // Grid of image targets from face samples.
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<CPoint> sources;
    for (const auto& face : K.faces()) {
        sources.push_back(interior_point(face.outer));
        double xmin, xmax, ymin, ymax;
        face.outer.bounding_box(xmin, xmax, ymin, ymax);
        int kept = 0, guard = 0;
        while (kept < 24 && guard < 4000) {
            ++guard;
            const CPoint z(xmin + (xmax - xmin) * u(rng), ymin + (ymax - ymin) * u(rng));
            if (face.outer.distance_to(z) <= 1e-6) continue;
            bool inside = true;
            try {
                inside = point_in_face(face.outer, face.holes, z);
            } catch (const PointOnCurve&) {
                continue;
            }
            if (!inside) continue;
            sources.push_back(z);
            ++kept;
        }
    }

    InjectivityResult r;
    r.grid_targets = static_cast<int>(sources.size());
    for (const CPoint& z0 : sources) {
        CPoint w;
        try {
            w = m.eval(z0);
        } catch (const PoleHit& p) {
            throw;
        }
        int total = 0;
        bool skip = false;
        for (const auto& face : K.faces()) {
            try {
                total += face_preimage_count(m, w, face);
            } catch (const ZeroOnContour&) {
                skip = true;  // target too close to the boundary image
                break;
            }
        }
        if (skip || total < 2) continue;

        // Localize two distinct preimages by quad subdivision.
        std::deque<Cell> work;
        for (const auto& face : K.faces()) {
            double xmin, xmax, ymin, ymax;
            face.outer.bounding_box(xmin, xmax, ymin, ymax);
            const double pad = 1e-3 * (1 + xmax - xmin);
            Cell c{xmin - pad, xmax + pad, ymin - pad, ymax + pad, 0};
            c.count = cell_count(m, w, c, face.outer.tolerance());
            if (c.count > 0) work.push_back(c);
        }
        std::vector<CPoint> found;
        int steps = 0;
        while (!work.empty() && found.size() < 2 && steps < 4000) {
            ++steps;
            Cell c = work.front();
            work.pop_front();
            const double dx = c.x1 - c.x0, dy = c.y1 - c.y0;
            if (c.count == 1 && std::hypot(dx, dy) < 1e-5) {
                found.push_back(newton_polish(m, w, {(c.x0 + c.x1) / 2, (c.y0 + c.y1) / 2}));
                continue;
            }
            if (std::hypot(dx, dy) < 1e-9) {
                // multiple root clustered below resolution; report the center twice
                found.push_back({(c.x0 + c.x1) / 2, (c.y0 + c.y1) / 2});
                if (c.count >= 2) found.push_back(found.back());
                continue;
            }
            const double xm = (c.x0 + c.x1) / 2, ym = (c.y0 + c.y1) / 2;
            Cell quads[4] = {{c.x0, xm, c.y0, ym, 0},
                             {xm, c.x1, c.y0, ym, 0},
                             {c.x0, xm, ym, c.y1, 0},
                             {xm, c.x1, ym, c.y1, 0}};
            for (Cell& q : quads) {
                q.count = cell_count(m, w, q, 1e-12);
                if (q.count > 0) work.push_back(q);
            }
        }
        if (found.size() >= 2) {
            r.kind = InjectivityKind::NotInjective;
            r.witness_a = found[0];
            r.witness_b = found[1];
            return r;
        }
    }
    r.kind = InjectivityKind::Injective;
    r.grid_certified = true;
    return r;
}

}  // namespace holo
