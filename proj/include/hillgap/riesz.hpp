#ifndef HILLGAP_RIESZ_HPP
#define HILLGAP_RIESZ_HPP

#include <string>
#include <vector>

#include "hillgap/matrix_op.hpp"

namespace hillgap {

/// Deviation B_km(n) = <(P_n - P_n^0) e_m, e_k> of the Riesz projection
/// P_n = (2 pi i)^{-1} contour integral of the resolvent over |z - n^2| = n
/// on the truncated operator, against the free coordinate projection.
struct ProjectionDeviation {
    int n = 0;
    Bc bc = Bc::PerPlus;
    CMat B;
    double l1_linf_proxy = 0.0; // sum |B_km|
    double l2_opnorm = 0.0;     // largest singular value
    int quadrature_nodes = 0;
    double basis_sup_sq = 1.0;  // D^2: 1 for exponentials, 2 for sine basis
    double idempotency_defect = 0.0; // max |(P^2 - P)_ij|
    cx trace{};                      // trace of P_n
};

/// Trapezoid quadrature of the resolvent, nodes doubled until the l1 proxy
/// moves less than 1e-9; eigenvalue clearance of 1e-4 n from the contour is
/// checked first.
ProjectionDeviation projection_deviation(const PotentialSpec& p, int n, Bc bc, int K,
                                         int nodes = 64);

struct DeviationScanRow {
    int n;
    double l1_linf_proxy;
    double l2_opnorm;
    int nodes;
};

std::vector<DeviationScanRow> deviation_scan(const PotentialSpec& p, int n_lo, int n_hi,
                                             Bc bc_parity_base, int K, int jobs = 1);

/// Least-squares slope of log(proxy) against log(n).
double loglog_slope(const std::vector<DeviationScanRow>& rows);

void write_riesz_csv(const std::string& path, const std::vector<DeviationScanRow>& rows);

} // namespace hillgap

#endif
