#include "holo/hp_orbit.hpp"

#include <algorithm>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>

namespace holo::hp {

namespace {

using Real = boost::multiprecision::mpfr_float;

struct HC {
    Real re, im;
};

HC add(const HC& a, const HC& b) { return {a.re + b.re, a.im + b.im}; }
HC sub(const HC& a, const HC& b) { return {a.re - b.re, a.im - b.im}; }
HC mul(const HC& a, const HC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
HC div(const HC& a, const HC& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real abs2(const HC& a) { return a.re * a.re + a.im * a.im; }
HC lift(CPoint z) { return {Real(z.real()), Real(z.imag())}; }

HC eval_hp(const MapExpr& m, const HC& z) {
    struct V {
        const HC& z;
        HC operator()(const Mobius& mb) const {
            const HC num = add(mul(lift(mb.a), z), lift(mb.b));
            const HC den = add(mul(lift(mb.c), z), lift(mb.d));
            return div(num, den);
        }
        HC operator()(const Affine& af) const { return add(mul(lift(af.a), z), lift(af.b)); }
        HC operator()(const Polynomial& p) const {
            HC r{Real(0), Real(0)};
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
                r = add(mul(r, z), lift(*it));
            return r;
        }
        HC operator()(const Composite& c) const {
            HC w = z;
            for (const auto& part : c.parts) w = eval_hp(part, w);
            return w;
        }
    };
    return std::visit(V{z}, m.node());
}

// Even-odd crossing parity of p against the closed polygon given by a cloud
// slice [begin, begin+len).
bool inside_polygon(const std::vector<HC>& cloud, std::size_t begin, std::size_t len,
                    const HC& p) {
    bool in = false;
    for (std::size_t k = 0; k < len; ++k) {
        const HC& a = cloud[begin + k];
        const HC& b = cloud[begin + (k + 1) % len];
        if ((a.im <= p.im) == (b.im <= p.im)) continue;
        const Real x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
        if (x > p.re) in = !in;
    }
    return in;
}

}  // namespace

std::map<int, OrbitVerdict> orbit_verdicts(const std::vector<MapExpr>& maps,
                                           const std::vector<std::vector<CPoint>>& source_curves,
                                           const std::vector<int>& ns, double tol,
                                           unsigned bits) {
    Real::default_precision(
        static_cast<unsigned>(bits * 0.302) + 8);  // default_precision is decimal digits
    std::map<int, OrbitVerdict> out;
    if (ns.empty()) return out;
    const int n_max = *std::max_element(ns.begin(), ns.end());

    std::vector<std::size_t> curve_begin, curve_len;
    std::vector<HC> base;
    for (const auto& c : source_curves) {
        curve_begin.push_back(base.size());
        curve_len.push_back(c.size());
        for (CPoint z : c) base.push_back(lift(z));
    }

    const std::size_t P = base.size();
    const std::size_t N = maps.size();
    std::vector<std::vector<HC>> cloud(N, base);  // cloud[i] = phi_{i,n}(samples)

    std::vector<bool> wanted(n_max + 1, false);
    for (int n : ns) wanted[n] = true;

    const Real tol2 = Real(tol) * Real(tol);

    for (int n = 1; n <= n_max; ++n) {
        for (std::size_t i = 0; i < N; ++i)
            for (HC& z : cloud[i]) z = eval_hp(maps[i], z);
        if (!wanted[n]) continue;

        OrbitVerdict v;
        v.images.resize(N);
        for (std::size_t i = 0; i < N; ++i) {
            Real sx(0), sy(0);
            for (const HC& z : cloud[i]) {
                sx += z.re;
                sy += z.im;
            }
            const HC cen{sx / static_cast<double>(P), sy / static_cast<double>(P)};
            Real spread2(0);
            for (const HC& z : cloud[i]) spread2 = std::max(spread2, abs2(sub(z, cen)));
            v.images[i].centroid = {cen.re.convert_to<double>(), cen.im.convert_to<double>()};
            v.images[i].spread = sqrt(spread2).convert_to<double>();
        }

        Real best2(-1);
        for (std::size_t i = 0; i < N && v.cross_disjoint; ++i) {
            for (std::size_t j = i + 1; j < N && v.cross_disjoint; ++j) {
                Real m2(-1);
                for (const HC& p : cloud[i])
                    for (const HC& q : cloud[j]) {
                        const Real d2 = abs2(sub(p, q));
                        if (m2 < 0 || d2 < m2) m2 = d2;
                    }
                if (m2 <= tol2) {
                    v.cross_disjoint = false;
                    v.bad_a = static_cast<int>(i);
                    v.bad_b = static_cast<int>(j);
                    best2 = m2;
                    break;
                }
                // nesting check: one cloud's first point inside the other's curves
                for (std::size_t c = 0; c < curve_begin.size(); ++c) {
                    std::vector<HC>& ci = cloud[i];
                    std::vector<HC>& cj = cloud[j];
                    if (inside_polygon(ci, curve_begin[c], curve_len[c], cj[0]) ||
                        inside_polygon(cj, curve_begin[c], curve_len[c], ci[0])) {
                        v.cross_disjoint = false;
                        v.bad_a = static_cast<int>(i);
                        v.bad_b = static_cast<int>(j);
                    }
                }
                if (best2 < 0 || m2 < best2) best2 = m2;
            }
        }
        if (best2 > 0) {
            const Real m = sqrt(best2);
            v.min_cross_margin_log10 = (log(m) / log(Real(10))).convert_to<double>();
            double md = m.convert_to<double>();
            if (md <= 0) md = std::numeric_limits<double>::min();  // positive but sub-binary64
            v.min_cross_margin = md;
        }
        out[n] = std::move(v);
    }
    return out;
}

}  // namespace holo::hp
