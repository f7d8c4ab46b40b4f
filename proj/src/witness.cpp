#include "holo/witness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "holo/dynamics.hpp"

namespace holo {

CPoint RationalComb::eval(CPoint z) const {
    CPoint num = std::pow(z - b, static_cast<double>(poles.size() + 1));
    CPoint den = 1;
    for (CPoint a : poles) den *= (z - a);
    return m * num / den;
}

CPoint RationalComb::derivative(CPoint z) const {
    CPoint log_der = static_cast<double>(poles.size() + 1) / (z - b);
    for (CPoint a : poles) log_der -= 1.0 / (z - a);
    return eval(z) * log_der;
}

RationalComb build_proof_comb(CPoint b, std::vector<CPoint> poles, double m) {
    if (m == 0) throw WitnessError("comb scale must be nonzero");
    for (CPoint a : poles)
        if (std::abs(a - b) <= kIncidenceTol)
            throw WitnessError("comb zero coincides with a pole");
    return RationalComb{m, b, std::move(poles)};
}

WitnessBasis WitnessBasis::monomial(int max_degree) {
    if (max_degree < 1) throw WitnessError("basis degree must be positive");
    return {Kind::Monomial, max_degree, {}};
}

WitnessBasis WitnessBasis::rational(int max_degree, std::vector<CPoint> poles) {
    if (max_degree < 1) throw WitnessError("basis degree must be positive");
    if (poles.empty()) throw WitnessError("rational basis needs at least one pole");
    return {Kind::RationalWithPoles, max_degree, std::move(poles)};
}

namespace {

std::size_t basis_size(const WitnessBasis& b, int degree) {
    return static_cast<std::size_t>(degree + 1) + b.poles.size() * static_cast<std::size_t>(degree);
}

void basis_row(const WitnessBasis& b, int degree, CPoint center, double scale, CPoint z,
               std::vector<CPoint>& row) {
    row.clear();
    const CPoint w = (z - center) / scale;
    CPoint p = 1;
    for (int k = 0; k <= degree; ++k) {
        row.push_back(p);
        p *= w;
    }
    for (CPoint a : b.poles) {
        const CPoint inv = scale / (z - a);
        CPoint q = inv;
        for (int k = 1; k <= degree; ++k) {
            row.push_back(q);
            q *= inv;
        }
    }
}

std::vector<CPoint> region_samples(const CompactRegion& K, int per_curve) {
    std::vector<CPoint> pts;
    for (const auto& face : K.faces()) {
        auto add = [&](const ClosedPolyline& c) {
            const auto& v = c.vertices();
            const std::size_t step = std::max<std::size_t>(1, v.size() / per_curve);
            for (std::size_t i = 0; i < v.size(); i += step) pts.push_back(v[i]);
        };
        add(face.outer);
        for (const auto& h : face.holes) add(h);
        const CPoint ip = interior_point(face.outer);
        pts.push_back(ip);
        const auto& v = face.outer.vertices();
        for (std::size_t i = 0; i < v.size(); i += std::max<std::size_t>(1, v.size() / 16))
            pts.push_back((v[i] + ip) / 2.0);
    }
    return pts;
}

struct SampleSet {
    std::vector<CPoint> points;
    std::vector<CPoint> values;
    std::vector<std::size_t> region_of;  // index into the target list
};

struct FitAttempt {
    std::vector<CPoint> coeffs;
    double condition = 0;
    bool rank_loss = false;
};

FitAttempt solve_ls(const WitnessBasis& basis, int degree, CPoint center, double scale,
                    const SampleSet& fit) {
    const std::size_t S = fit.points.size();
    const std::size_t M = basis_size(basis, degree);
    Eigen::MatrixXcd A(S, M);
    Eigen::VectorXcd rhs(S);
    std::vector<CPoint> row;
    for (std::size_t i = 0; i < S; ++i) {
        basis_row(basis, degree, center, scale, fit.points[i], row);
        for (std::size_t j = 0; j < M; ++j) A(i, j) = row[j];
        rhs(i) = fit.values[i];
    }
    // column equilibration against the sample inner product
    Eigen::VectorXd colnorm(M);
    for (std::size_t j = 0; j < M; ++j) {
        colnorm(j) = A.col(j).norm();
        if (colnorm(j) < 1e-300) colnorm(j) = 1;
        A.col(j) /= colnorm(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    FitAttempt out;
    const auto& R = qr.matrixR();
    const std::size_t r = std::min<std::size_t>(S, M);
    const double hi = std::abs(R(0, 0));
    const double lo = std::abs(R(r - 1, r - 1));
    out.condition = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
    out.rank_loss = static_cast<std::size_t>(qr.rank()) < M || out.condition > 1e14;
    Eigen::VectorXcd c = qr.solve(rhs);
    out.coeffs.resize(M);
    for (std::size_t j = 0; j < M; ++j) out.coeffs[j] = c(j) / colnorm(j);
    return out;
}

std::vector<double> per_region_errors(const FittedWitness& h, const SampleSet& s,
                                      std::size_t regions) {
    std::vector<double> err(regions, 0);
    for (std::size_t i = 0; i < s.points.size(); ++i)
        err[s.region_of[i]] =
            std::max(err[s.region_of[i]], std::abs(h.eval(s.points[i]) - s.values[i]));
    return err;
}

FittedWitness fit_core(const WitnessBasis& basis, const SampleSet& fit, const SampleSet& val,
                       std::size_t regions, double eps) {
    // normalization covering all samples
    CPoint center = 0;
    for (CPoint z : fit.points) center += z;
    center /= static_cast<double>(fit.points.size());
    double scale = 0;
    for (CPoint z : fit.points) scale = std::max(scale, std::abs(z - center));
    if (scale == 0) scale = 1;

    FittedWitness best;
    best.basis = basis;
    best.center = center;
    best.scale = scale;
    bool have_best = false;

    for (int degree = 1; degree <= basis.max_degree;
         degree = degree < 8 ? degree + 1 : degree + std::max(2, degree / 4)) {
        degree = std::min(degree, basis.max_degree);
        if (basis_size(basis, degree) >= fit.points.size()) break;
        const FitAttempt at = solve_ls(basis, degree, center, scale, fit);
        if (at.rank_loss) {
            if (!have_best) throw IllConditioned(at.condition);
            best.ill_conditioned = true;
            best.condition = at.condition;
            break;
        }
        FittedWitness h = best;
        h.degree = degree;
        h.coeffs = at.coeffs;
        h.condition = at.condition;
        h.fit_errors = per_region_errors(h, fit, regions);
        h.validation_errors = per_region_errors(h, val, regions);
        if (!have_best || h.worst_validation_error() < best.worst_validation_error()) {
            const bool ill = best.ill_conditioned;
            best = h;
            best.ill_conditioned = ill;
            have_best = true;
        }
        if (best.worst_validation_error() < eps) break;
        if (degree == basis.max_degree) break;
    }
    if (!have_best) throw WitnessError("no admissible degree below the sample count");
    best.reached_degree_cap = best.worst_validation_error() >= eps;
    const double fit_worst =
        *std::max_element(best.fit_errors.begin(), best.fit_errors.end());
    best.overfit_flagged = best.worst_validation_error() > 2 * fit_worst + 1e-15;
    return best;
}

bool region_inside_hole_of_other(const std::vector<CompactRegion>& regions) {
    for (std::size_t i = 0; i < regions.size(); ++i)
        for (std::size_t j = 0; j < regions.size(); ++j) {
            if (i == j) continue;
            const CPoint probe = regions[j].faces()[0].outer.vertex(0);
            for (const auto& face : regions[i].faces())
                for (const auto& h : face.holes)
                    if (winding_number(h, probe) != 0) return true;
        }
    return false;
}

}  // namespace

CPoint FittedWitness::eval(CPoint z) const {
    std::vector<CPoint> row;
    basis_row(basis, degree, center, scale, z, row);
    CPoint s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += coeffs[j] * row[j];
    return s;
}

double FittedWitness::worst_validation_error() const {
    return validation_errors.empty()
               ? std::numeric_limits<double>::infinity()
               : *std::max_element(validation_errors.begin(), validation_errors.end());
}

FittedWitness approximate_on_disjoint_compacts(
    const std::vector<std::pair<CompactRegion, TargetFn>>& targets, const WitnessBasis& basis,
    double eps) {
    if (targets.empty()) throw WitnessError("no target regions");
    std::vector<CompactRegion> regions;
    for (const auto& [K, fn] : targets) regions.push_back(K);
    if (regions.size() > 1) {
        const auto dj = pairwise_disjoint(regions, 0.0);
        if (!dj.disjoint) throw WitnessError("target regions are not pairwise disjoint");
    }
    if (basis.kind == WitnessBasis::Kind::Monomial && region_inside_hole_of_other(regions))
        throw WitnessError(
            "monomial basis needs a connected complement; a region lies inside a hole of "
            "another");
    if (basis.kind == WitnessBasis::Kind::RationalWithPoles) {
        for (CPoint a : basis.poles) {
            bool in_hole = false;
            for (const auto& K : regions)
                for (const auto& face : K.faces())
                    for (const auto& h : face.holes)
                        if (winding_number(h, a) != 0) in_hole = true;
            if (!in_hole) throw WitnessError("rational basis pole lies in no hole of the union");
        }
    }

    SampleSet fit, val;
    for (std::size_t r = 0; r < targets.size(); ++r) {
        for (CPoint z : region_samples(targets[r].first, 32)) {
            fit.points.push_back(z);
            fit.values.push_back(targets[r].second(z));
            fit.region_of.push_back(r);
        }
        for (CPoint z : region_samples(targets[r].first, 128)) {
            val.points.push_back(z);
            val.values.push_back(targets[r].second(z));
            val.region_of.push_back(r);
        }
    }
    return fit_core(basis, fit, val, targets.size(), eps);
}

FittedWitness fit_witness(const std::vector<MapExpr>& maps, int n, const CompactRegion& K,
                          const std::vector<TargetFn>& targets, const WitnessBasis& basis,
                          double eps) {
    if (targets.size() != maps.size() + 1)
        throw WitnessError("need one target per map plus one for K itself");
    std::vector<CompactRegion> regions{K};
    for (const auto& m : maps) regions.push_back(image_of_compact({m, n}, K));
    const auto dj = pairwise_disjoint(regions, 0.0);
    if (!dj.disjoint)
        throw WitnessError("K and its iterate images overlap at this n; no witness exists");
    if (basis.kind == WitnessBasis::Kind::Monomial && region_inside_hole_of_other(regions))
        throw WitnessError("monomial basis needs a connected complement");

    // fit at forward-image points: h(phi_{i,n}(z)) should match g_i(z),
    // which realizes g_i o phi_{i,n}^{-1} without inverting the iterate
    SampleSet fit, val;
    auto add = [&](SampleSet& s, int per_curve) {
        for (CPoint z : region_samples(K, per_curve)) {
            s.points.push_back(z);
            s.values.push_back(targets[0](z));
            s.region_of.push_back(0);
            for (std::size_t i = 0; i < maps.size(); ++i) {
                s.points.push_back(iterate({maps[i], n}, z));
                s.values.push_back(targets[i + 1](z));
                s.region_of.push_back(i + 1);
            }
        }
    };
    add(fit, 32);
    add(val, 128);
    return fit_core(basis, fit, val, maps.size() + 1, eps);
}

WitnessReport verify_witness(const FittedWitness& h, const std::vector<MapExpr>& maps, int n,
                             const CompactRegion& K, const std::vector<TargetFn>& targets,
                             double eps) {
    WitnessReport rep;
    rep.sup_errors.assign(targets.size(), 0);
    for (CPoint z : region_samples(K, 128)) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            const CPoint at = t == 0 ? z : iterate({maps[t - 1], n}, z);
            const double e = std::abs(h.eval(at) - targets[t](z));
            if (e > rep.sup_errors[t]) {
                rep.sup_errors[t] = e;
                if (e >= eps && rep.violating_target < 0) {
                    rep.violating_target = static_cast<int>(t);
                    rep.violating_point = z;
                }
                if (e > rep.violating_error) rep.violating_error = e;
            }
        }
    }
    rep.success =
        *std::max_element(rep.sup_errors.begin(), rep.sup_errors.end()) < eps;
    if (rep.success) {
        rep.violating_target = -1;
        rep.statement = "n = " + std::to_string(n) +
                        " lies in N(U0,...,UN) for the eps-balls around the prescribed targets";
    }
    return rep;
}

}  // namespace holo
