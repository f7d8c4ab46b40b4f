#pragma once

#include <map>
#include <vector>

#include "holo/symbols.hpp"

namespace holo::hp {

struct ImageStat {
    CPoint centroid{};
    double spread = 0;  // max sample distance from the centroid
};

struct OrbitVerdict {
    std::vector<ImageStat> images;  // one per map
    bool cross_disjoint = true;     // all image-vs-image pairs separated and non-nested
    double min_cross_margin = 0;    // min separation over image pairs (clamped to
                                    // the smallest positive double on underflow)
    double min_cross_margin_log10 = 0;
    int bad_a = -1, bad_b = -1;
};

/// Extended-precision orbit separation. Boundary samples of the source curves
/// are advanced one map application per step at `bits` of mpfr precision;
/// at each requested n the pairwise separations between the N image clouds
/// are decided exactly at that precision. Used when double-precision iterate
/// images collapse onto an attracting fixed point and their true (positive)
/// separations fall below binary64 resolution.
std::map<int, OrbitVerdict> orbit_verdicts(const std::vector<MapExpr>& maps,
                                           const std::vector<std::vector<CPoint>>& source_curves,
                                           const std::vector<int>& ns, double tol,
                                           unsigned bits);

}  // namespace holo::hp
