#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "holo/dynamics.hpp"

using namespace holo;

namespace {

const MapExpr phi = MapExpr::mobius({1, 0}, {0.5, 0}, {0.5, 0}, {1, 0});

std::vector<MapExpr> hyperbolic_pair() { return {phi, MapExpr::composite({phi, phi})}; }

// membership oracle at 4x boundary resolution: pointwise clouds, pairwise
// min distance, even-odd containment probe
std::vector<int> runaway_oracle(const std::vector<MapExpr>& maps, CPoint c, double r,
                                int horizon, double tol) {
    const int P = 1024;
    std::vector<CPoint> base;
    for (int k = 0; k < P; ++k) {
        const double th = 2 * M_PI * k / P;
        base.emplace_back(c + r * CPoint(std::cos(th), std::sin(th)));
    }
    std::vector<int> members;
    for (int n = 1; n <= horizon; ++n) {
        std::vector<std::vector<CPoint>> clouds{base};
        for (const auto& m : maps) {
            std::vector<CPoint> img;
            for (CPoint z : base) img.push_back(iterate({m, n}, z));
            clouds.push_back(std::move(img));
        }
        bool ok = true;
        for (std::size_t i = 0; i < clouds.size() && ok; ++i)
            for (std::size_t j = i + 1; j < clouds.size() && ok; ++j) {
                double d = 1e300;
                for (CPoint p : clouds[i])
                    for (CPoint q : clouds[j]) d = std::min(d, std::abs(p - q));
                if (d <= tol) ok = false;
                auto inside = [&](const std::vector<CPoint>& poly, CPoint p) {
                    bool in = false;
                    for (std::size_t k = 0; k < poly.size(); ++k) {
                        const CPoint a = poly[k], b = poly[(k + 1) % poly.size()];
                        if ((a.imag() <= p.imag()) == (b.imag() <= p.imag())) continue;
                        const double x = a.real() + (p.imag() - a.imag()) *
                                                        (b.real() - a.real()) /
                                                        (b.imag() - a.imag());
                        if (x > p.real()) in = !in;
                    }
                    return in;
                };
                // containment / crossing probe: any sampled vertex of one
                // cloud inside the polygon of the other
                for (std::size_t k = 0; k < clouds[i].size() && ok; k += 4)
                    if (inside(clouds[j], clouds[i][k])) ok = false;
                for (std::size_t k = 0; k < clouds[j].size() && ok; k += 4)
                    if (inside(clouds[i], clouds[j][k])) ok = false;
            }
        if (ok) members.push_back(n);
    }
    return members;
}

}  // namespace

TEST_CASE("image_of_compact basics") {
    const auto K = CompactRegion::disk({0, 0}, 0.4);

    // n = 0 is the identity
    const auto id = image_of_compact({phi, 0}, K);
    CHECK(id.faces()[0].outer.vertices() == K.faces()[0].outer.vertices());

    // translation: disk(0,0.4) -> disk(3,0.4)
    const auto t = image_of_compact({MapExpr::affine({1, 0}, {1, 0}), 3}, K);
    REQUIRE(t.faces().size() == 1);
    // vertices are translated source points or chord midpoints from the
    // adaptive subdivision; both stay within the 256-gon sag of the circle
    const double sag = 0.4 * (1 - std::cos(M_PI / 256)) * 4.01;
    for (CPoint v : t.faces()[0].outer.vertices()) {
        const double r = std::abs(v - CPoint{3, 0});
        CHECK(r <= 0.4 + 1e-12);
        CHECK(r >= 0.4 - sag);
    }

    // Mobius image contains phi(0) = 0.5, no holes, positive orientation
    const auto K3 = CompactRegion::disk({0, 0}, 0.3);
    const auto img = image_of_compact({phi, 1}, K3);
    CHECK(img.contains({0.5, 0}));
    CHECK(holes_of(img).empty());
    CHECK(orientation(img.faces()[0].outer) == Orientation::Positive);

    // pointwise oracle at 4x sampling: every true boundary point lies within
    // the refinement delta of the image polyline
    const double delta = 1e-3 * img.faces()[0].outer.diameter();
    for (int k = 0; k < 1024; ++k) {
        const double th = 2 * M_PI * k / 1024;
        const CPoint w = phi.eval(0.3 * CPoint(std::cos(th), std::sin(th)));
        CHECK(img.faces()[0].outer.distance_to(w) <= delta);
    }
}

TEST_CASE("image_of_compact preserves face and hole structure") {
    const auto ann = CompactRegion::annulus({0.2, 0}, 0.2, 0.4);
    const auto img = image_of_compact({phi, 2}, ann);
    REQUIRE(img.faces().size() == 1);
    CHECK(img.faces()[0].holes.size() == 1);
    CHECK(holes_of(img).size() == 1);
    CHECK(orientation(img.faces()[0].outer) == Orientation::Positive);

    CHECK_THROWS_AS(
        image_of_compact({MapExpr::polynomial({{0, 0}, {0, 0}, {1, 0}}), 1},
                         CompactRegion::disk({5, 0}, 1.0), 1e-5, 50),
        RefinementBudgetExceeded);
}

TEST_CASE("pairwise_disjoint") {
    const auto a = CompactRegion::disk({0, 0}, 0.4);
    const auto b = CompactRegion::disk({3, 0}, 0.4);
    const auto r = pairwise_disjoint({a, b}, 1e-6);
    CHECK(r.disjoint);
    CHECK(r.margin == doctest::Approx(2.2).epsilon(1e-3));

    const auto same = pairwise_disjoint({a, a}, 1e-6);
    CHECK_FALSE(same.disjoint);

    // nesting with distant boundaries must not read as disjoint
    const auto outer = CompactRegion::disk({0, 0}, 1.0);
    const auto inner = CompactRegion::disk({0.2, 0}, 0.1);
    const auto nest = pairwise_disjoint({outer, inner}, 1e-6);
    CHECK_FALSE(nest.disjoint);
    CHECK(outer.contains(nest.witness));
    CHECK(inner.contains(nest.witness));

    CHECK_THROWS_AS(pairwise_disjoint({a}, 1e-6), DynamicsError);
}

TEST_CASE("run_away_set: translation and rotation fixtures") {
    RunawayOptions opts;
    opts.mode = RunMode::Serial;

    const auto t = run_away_set({MapExpr::affine({1, 0}, {1, 0})},
                                CompactRegion::disk({0, 0}, 0.4), 10, DomainSpec::plane(), opts);
    CHECK(t.members == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    for (int n : t.members) {
        CHECK(t.evidence.at(n).margin > 0);
        CHECK_FALSE(t.evidence.at(n).fragile);
    }

    const auto rot = run_away_set({MapExpr::affine({0, 1}, {0, 0})},
                                  CompactRegion::disk({0, 0}, 0.5), 10,
                                  DomainSpec::unit_disk(), opts);
    CHECK(rot.members.empty());
    CHECK(rot.undetermined.empty());
}

TEST_CASE("run_away_set matches the 4x brute-force oracle") {
    RunawayOptions opts;
    opts.mode = RunMode::Serial;
    opts.tol = 1e-6;
    const auto s = run_away_set(hyperbolic_pair(), CompactRegion::disk({0, 0}, 0.3), 50,
                                DomainSpec::unit_disk(), opts);
    const auto oracle = runaway_oracle(hyperbolic_pair(), {0, 0}, 0.3, 50, 1e-6);
    CHECK(s.members == oracle);
    REQUIRE(!s.members.empty());
    CHECK(s.members.front() == 2);  // n = 1: K and phi(K) overlap
}

TEST_CASE("run_away_set monotone in the compact") {
    RunawayOptions opts;
    opts.mode = RunMode::Serial;
    const auto d = DomainSpec::unit_disk();
    const auto small = run_away_set(hyperbolic_pair(), CompactRegion::disk({0, 0}, 0.3), 30, d,
                                    opts);
    const auto big = run_away_set(hyperbolic_pair(), CompactRegion::disk({0, 0}, 0.35), 30, d,
                                  opts);
    for (int n : big.members)
        CHECK(std::find(small.members.begin(), small.members.end(), n) != small.members.end());
}

TEST_CASE("serial, parallel and incremental modes agree") {
    const auto K = CompactRegion::disk({0, 0}, 0.3);
    const auto d = DomainSpec::unit_disk();
    RunawayOptions serial, parallel, incremental;
    serial.mode = RunMode::Serial;
    parallel.mode = RunMode::Parallel;
    incremental.mode = RunMode::Incremental;
    const auto a = run_away_set(hyperbolic_pair(), K, 25, d, serial);
    const auto b = run_away_set(hyperbolic_pair(), K, 25, d, parallel);
    const auto c = run_away_set(hyperbolic_pair(), K, 25, d, incremental);
    CHECK(a.members == b.members);
    CHECK(a.undetermined == b.undetermined);
    for (int n : a.members) {
        // bit-identical evidence between serial and parallel
        CHECK(a.evidence.at(n).margin == b.evidence.at(n).margin);
        CHECK(a.evidence.at(n).escalated == b.evidence.at(n).escalated);
    }
    CHECK(a.members == c.members);
}

TEST_CASE("binary64 collapse escalates to the extended-precision path") {
    const auto K = CompactRegion::disk({0, 0}, 0.3);
    const auto d = DomainSpec::unit_disk();

    // without escalation, deep iterates are reported undetermined
    RunawayOptions no_esc;
    no_esc.mode = RunMode::Serial;
    no_esc.allow_escalation = false;
    const auto u = run_away_set(hyperbolic_pair(), K, 20, d, no_esc);
    CHECK(!u.undetermined.empty());
    CHECK(u.undetermined.begin()->second.find("collapse") != std::string::npos);

    // with escalation at separation tolerance 0, the true separations are
    // positive for every n >= 2: a final segment
    RunawayOptions esc;
    esc.mode = RunMode::Serial;
    esc.tol = 0.0;
    const auto s = run_away_set(hyperbolic_pair(), K, 40, d, esc);
    CHECK(s.undetermined.empty());
    std::vector<int> expect;
    for (int n = 2; n <= 40; ++n) expect.push_back(n);
    CHECK(s.members == expect);
    bool any_escalated = false;
    for (const auto& [n, e] : s.evidence) {
        CHECK(e.margin > 0);  // clamped to the smallest positive double at worst
        if (e.escalated) any_escalated = true;
    }
    CHECK(any_escalated);
}

TEST_CASE("zero_count") {
    const auto circle = ClosedPolyline::circle({0, 0}, 1.0, 256);
    auto f = [](CPoint z) { return (z - CPoint{0.2, 0}) * (z - CPoint{0.5, 0}); };
    const auto zc = zero_count(f, circle);
    CHECK(zc.count == 2);
    CHECK(std::abs(zc.residual) < 1e-6);

    // 4096-point oracle agrees
    const auto fine = ClosedPolyline::circle({0, 0}, 1.0, 4096);
    CHECK(zero_count(f, fine).count == 2);

    CHECK(zero_count([](CPoint z) { return z; }, ClosedPolyline::circle({3, 0}, 1.0)).count == 0);
    CHECK(zero_count([](CPoint z) { return z; }, circle.reversed()).count == -1);

    CHECK_THROWS_AS(zero_count([](CPoint z) { return z - CPoint{1, 0}; }, circle),
                    ZeroOnContour);
}

TEST_CASE("zero_count transfer identity on random Mobius fixtures") {
    // zero_count(f o phi_n, gamma) = zero_count(f, phi_n(gamma))
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-0.35, 0.35);
    const auto gamma = ClosedPolyline::circle({0, 0}, 0.55, 512);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 20; ++trial) {
        const CPoint a{1, 0};
        const CPoint b{u(rng), u(rng)};
        const CPoint c = std::conj(b);
        const CPoint d{1, 0};  // disk-automorphism-like map
        if (std::abs(a * d - b * c) < 0.2) continue;
        const auto m = MapExpr::mobius(a, b, c, d);
        const int n = trial % 3 + 1;
        const CPoint zero = m.eval(CPoint{u(rng), u(rng)} * 0.5);
        auto f = [&](CPoint z) { return z - zero; };
        std::vector<CPoint> img;
        for (CPoint z : gamma.vertices()) img.push_back(iterate({m, n}, z));
        const auto image_curve = ClosedPolyline::trusted(img);
        int lhs, rhs;
        try {
            lhs = zero_count([&](CPoint z) { return f(iterate({m, n}, z)); }, gamma).count;
            rhs = zero_count(f, image_curve).count;
        } catch (const ZeroOnContour&) {
            continue;
        }
        CHECK(lhs == rhs);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("horizon doubling grows the member set on the hyperbolic fixture") {
    RunawayOptions opts;
    opts.mode = RunMode::Serial;
    opts.tol = 0.0;
    const auto K = CompactRegion::disk({0, 0}, 0.3);
    const auto d = DomainSpec::unit_disk();
    const auto h1 = run_away_set(hyperbolic_pair(), K, 30, d, opts);
    const auto h2 = run_away_set(hyperbolic_pair(), K, 60, d, opts);
    CHECK(h2.members.size() > h1.members.size());
    for (int n : h1.members)
        CHECK(std::find(h2.members.begin(), h2.members.end(), n) != h2.members.end());
}
