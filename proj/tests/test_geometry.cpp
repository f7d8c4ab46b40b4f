#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "holo/geometry.hpp"

using namespace holo;

namespace {

ClosedPolyline unit_square_ccw() {
    return ClosedPolyline::rectangle({-0.5, -0.5}, {0.5, 0.5}, 4);
}

// star-shaped random polygon around `center`: simple by construction
ClosedPolyline random_star(std::mt19937_64& rng, CPoint center, double base_radius) {
    std::uniform_real_distribution<double> u(0.6, 1.4);
    const int n = 24;
    std::vector<CPoint> v;
    for (int k = 0; k < n; ++k) {
        const double th = 2 * M_PI * k / n;
        const double r = base_radius * u(rng);
        v.emplace_back(center + r * CPoint(std::cos(th), std::sin(th)));
    }
    return ClosedPolyline::make(std::move(v));
}

// independent oracle: high-resolution numeric integration of d(arg)
double angle_sum_oracle(const std::vector<CPoint>& verts, CPoint p, int subdiv) {
    double total = 0;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const CPoint a = verts[i], b = verts[(i + 1) % n];
        CPoint prev = a - p;
        for (int k = 1; k <= subdiv; ++k) {
            const CPoint cur = a + (b - a) * (static_cast<double>(k) / subdiv) - p;
            total += std::arg(cur / prev);
            prev = cur;
        }
    }
    return total / (2 * M_PI);
}

}  // namespace

TEST_CASE("polyline construction invariants") {
    CHECK_THROWS_AS(ClosedPolyline::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), DegenerateCurve);
    std::vector<CPoint> dup{{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0.5, 1.5},
                            {0, 1},  {-0.5, 0.8}, {-0.2, 0.4}, {-0.1, 0.2}};
    CHECK_THROWS_AS(ClosedPolyline::make(dup), DegenerateCurve);
    // figure-eight: self intersecting
    std::vector<CPoint> eight;
    for (int k = 0; k < 32; ++k) {
        const double t = 2 * M_PI * k / 32;
        eight.emplace_back(std::sin(2 * t), std::sin(t));
    }
    CHECK_THROWS_AS(ClosedPolyline::make(eight), DegenerateCurve);
    CHECK_THROWS_AS(ClosedPolyline::circle({0, 0}, -1.0), GeometryError);
    CHECK(ClosedPolyline::circle({0, 0}, 1.0).size() == 256);
}

TEST_CASE("winding number on anchored fixtures") {
    const auto sq = unit_square_ccw();
    CHECK(winding_number(sq, {0, 0}) == 1);
    CHECK(winding_number(sq, {5, 0}) == 0);
    CHECK_THROWS_AS(winding_number(sq, {0.5, 0.0}), PointOnCurve);

    // circle traversed twice: winding 2 about the center
    std::vector<CPoint> twice;
    for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k < 64; ++k) {
            const double th = 2 * M_PI * k / 64 + pass * 1e-4;  // avoid duplicate vertices
            twice.emplace_back(std::cos(th), std::sin(th));
        }
    const auto c2 = ClosedPolyline::trusted(twice);
    CHECK(winding_number(c2, {0, 0}) == 2);
    CHECK(angle_sum_oracle(twice, {0, 0}, 64) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("winding number: rotation invariance, reversal negation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_star(rng, {0, 0}, 1.0);
        const CPoint p{u(rng), u(rng)};
        int w;
        try {
            w = winding_number(c, p);
        } catch (const PointOnCurve&) {
            continue;
        }
        CHECK(w == 1);  // p well inside the star core
        CHECK(winding_number(c.rotated(trial % 24), p) == w);
        CHECK(winding_number(c.reversed(), p) == -w);
        CHECK(w == doctest::Approx(angle_sum_oracle(c.vertices(), p, 16)).epsilon(1e-9));
    }
}

TEST_CASE("orientation") {
    CHECK(orientation(unit_square_ccw()) == Orientation::Positive);
    CHECK(orientation(unit_square_ccw().reversed()) == Orientation::Negative);

    // image of the CCW circle |z| = 0.5 under the disk automorphism
    // z -> (z + 0.5) / (1 + 0.5 z), checked against the winding oracle
    // about the image of the center
    std::vector<CPoint> img;
    const auto src = ClosedPolyline::circle({0, 0}, 0.5, 128);
    for (CPoint z : src.vertices()) img.push_back((z + 0.5) / (1.0 + 0.5 * z));
    const auto curve = ClosedPolyline::trusted(img);
    CHECK(orientation(curve) == Orientation::Positive);
    CHECK(winding_number(curve, {0.5, 0}) == 1);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_star(rng, {0, 0}, 1.0);
        CHECK(orientation(c) == Orientation::Positive);
        CHECK(orientation(c.reversed()) == Orientation::Negative);
    }
}

TEST_CASE("min_separation fixtures") {
    const auto a = unit_square_ccw();
    const auto b = ClosedPolyline::rectangle({2.5, -0.5}, {3.5, 0.5}, 4);
    CHECK(min_separation(a, b) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(min_separation(a, a) == 0.0);

    const auto circ = ClosedPolyline::circle({2, 0}, 0.5, 64);
    const double d = min_separation(a, circ);
    CHECK(d == doctest::Approx(1.0).epsilon(5e-3));  // polygonization error only
    CHECK(min_separation(circ, a) == d);

    // brute-force oracle over all segment pairs at 4x sampling
    const auto circ4 = ClosedPolyline::circle({2, 0}, 0.5, 256);
    double oracle = 1e300;
    const auto& va = a.vertices();
    const auto& vb = circ4.vertices();
    for (std::size_t i = 0; i < va.size(); ++i)
        for (std::size_t j = 0; j < vb.size(); ++j)
            oracle = std::min(oracle, segment_distance(va[i], va[(i + 1) % va.size()], vb[j],
                                                       vb[(j + 1) % vb.size()]));
    CHECK(min_separation(a, circ4) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("min_separation triangle-style bound on disjoint triples") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_star(rng, {u(rng), u(rng)}, 0.5);
        const auto b = random_star(rng, {4 + u(rng), u(rng)}, 0.5);
        const auto c = random_star(rng, {8 + u(rng), u(rng)}, 0.5);
        const double ab = min_separation(a, b), bc = min_separation(b, c);
        const double ac = min_separation(a, c);
        CHECK(ac <= ab + b.diameter() + bc + 1e-9);
    }
}

TEST_CASE("point_in_face on the annulus face") {
    const auto outer = ClosedPolyline::circle({0, 0}, 2.0);
    const std::vector<ClosedPolyline> holes{ClosedPolyline::circle({0, 0}, 1.0)};
    CHECK(point_in_face(outer, holes, {1.5, 0}));
    CHECK_FALSE(point_in_face(outer, holes, {0, 0}));
    CHECK_FALSE(point_in_face(outer, holes, {3, 0}));
}

TEST_CASE("point_in_face agrees with a ray-casting oracle") {
    const auto outer = ClosedPolyline::circle({0, 0}, 2.0);
    const std::vector<ClosedPolyline> holes{ClosedPolyline::circle({-0.8, 0}, 0.5),
                                            ClosedPolyline::circle({0.9, 0.3}, 0.4)};
    // even-odd crossing parity against all boundaries
    auto oracle = [&](CPoint p) {
        bool in = false;
        auto cross = [&](const ClosedPolyline& c) {
            const auto& v = c.vertices();
            for (std::size_t i = 0; i < v.size(); ++i) {
                const CPoint a = v[i], b = v[(i + 1) % v.size()];
                if ((a.imag() <= p.imag()) == (b.imag() <= p.imag())) continue;
                const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) /
                                                (b.imag() - a.imag());
                if (x > p.real()) in = !in;
            }
        };
        cross(outer);
        for (const auto& h : holes) cross(h);
        return in;
    };
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    int tested = 0;
    for (int trial = 0; trial < 2000 && tested < 1200; ++trial) {
        const CPoint p{u(rng), u(rng)};
        bool skip = false;
        if (outer.distance_to(p) < 1e-6) skip = true;
        for (const auto& h : holes)
            if (h.distance_to(p) < 1e-6) skip = true;
        if (skip) continue;
        CHECK(point_in_face(outer, holes, p) == oracle(p));
        ++tested;
    }
    CHECK(tested >= 1000);
}

TEST_CASE("interior_point is interior and separated") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_star(rng, {0, 0}, 1.0);
        const CPoint p = interior_point(c);
        CHECK(std::abs(winding_number(c, p)) == 1);
        CHECK(c.distance_to(p) > c.tolerance());
    }
    // tiny curves must still yield interior points (deep iterate images)
    const auto tiny = ClosedPolyline::circle({1, 0}, 1e-7, 256, 1e-13);
    const CPoint p = interior_point(tiny);
    CHECK(std::abs(p - CPoint{1, 0}) < 1e-7);
}
