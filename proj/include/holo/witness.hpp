#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holo/domains.hpp"
#include "holo/symbols.hpp"

namespace holo {

struct WitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditioned : WitnessError {
    double condition;
    explicit IllConditioned(double c)
        : WitnessError("sample matrix lost numerical rank"), condition(c) {}
};

/// g(z) = m (z - b)^{p+1} / prod_j (z - a_j): one zero of order p+1 at b and
/// simple poles at the a_j. Normalized so that a contour enclosing the zero
/// and all poles counts (p+1) - p = 1.
struct RationalComb {
    double m = 1;
    CPoint b{};
    std::vector<CPoint> poles;

    CPoint eval(CPoint z) const;
    CPoint derivative(CPoint z) const;  // g' = g [ (p+1)/(z-b) - sum 1/(z-a_j) ]
};

RationalComb build_proof_comb(CPoint b, std::vector<CPoint> poles, double m);

/// Approximation basis: monomials in a normalized variable, optionally
/// augmented with inverse powers at prescribed poles.
struct WitnessBasis {
    enum class Kind { Monomial, RationalWithPoles };
    Kind kind = Kind::Monomial;
    int max_degree = 60;
    std::vector<CPoint> poles;  // RationalWithPoles only

    static WitnessBasis monomial(int max_degree);
    static WitnessBasis rational(int max_degree, std::vector<CPoint> poles);
};

using TargetFn = std::function<CPoint(CPoint)>;

/// A fitted holomorphic witness: coefficients over the basis, evaluable.
struct FittedWitness {
    WitnessBasis basis;
    int degree = 0;                   // polynomial degree actually used
    CPoint center{};                  // normalization z -> (z - center)/scale
    double scale = 1;
    std::vector<CPoint> coeffs;       // monomial block, then pole blocks
    std::vector<double> fit_errors;         // per-region sup error on fit samples
    std::vector<double> validation_errors;  // per-region sup error on 4x samples
    bool reached_degree_cap = false;
    bool ill_conditioned = false;
    double condition = 0;
    bool overfit_flagged = false;  // validation error > 2x fit error

    CPoint eval(CPoint z) const;
    double worst_validation_error() const;
};

/// Least-squares fit of one function to the given targets on pairwise
/// disjoint regions, degree-escalated until the sup error on a 4x-refined
/// validation sample drops below eps or max_degree is reached.
FittedWitness approximate_on_disjoint_compacts(
    const std::vector<std::pair<CompactRegion, TargetFn>>& targets, const WitnessBasis& basis,
    double eps);

/// Witness fit for a membership certificate at index n: h is fitted to g0 on
/// K and to g_i at forward-image points phi_{i,n}(z) against g_i(z), which
/// realizes g_i o phi_{i,n}^{-1} without inverting the iterate.
FittedWitness fit_witness(const std::vector<MapExpr>& maps, int n, const CompactRegion& K,
                          const std::vector<TargetFn>& targets, const WitnessBasis& basis,
                          double eps);

struct WitnessReport {
    bool success = false;
    int violating_target = -1;  // 0 for g0, i for g_i
    CPoint violating_point{};
    double violating_error = 0;
    std::vector<double> sup_errors;  // one per target, over K samples
    std::string statement;           // "n in N(U0,...,UN) ..." on success
};

/// Checks sup_z |h(z) - g0(z)| < eps on samples of K and
/// sup_z |h(phi_{i,n}(z)) - g_i(z)| < eps for every i.
WitnessReport verify_witness(const FittedWitness& h, const std::vector<MapExpr>& maps, int n,
                             const CompactRegion& K, const std::vector<TargetFn>& targets,
                             double eps);

}  // namespace holo
