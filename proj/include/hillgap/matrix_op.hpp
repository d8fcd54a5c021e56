#ifndef HILLGAP_MATRIX_OP_HPP
#define HILLGAP_MATRIX_OP_HPP

#include <vector>

#include "hillgap/linalg.hpp"
#include "hillgap/potential.hpp"

namespace hillgap {

enum class Bc { PerPlus, PerMinus, Dir };

Bc bc_for_index(int n); // PerPlus for even n, PerMinus for odd n

/// Truncated Fourier-basis matrix of L_bc: indices are the even (per+) or
/// odd (per-) integers in [-K, K], or 1..K for Dirichlet; the action is
/// k^2 z_k + sum_m V(k-m) z_m + v0 z_k, with the sine-basis coupling
/// (V~(|k-m|) - V~(k+m))/sqrt(2) in the Dirichlet case.
struct TruncatedOperator {
    Bc bc;
    int cutoff = 0;
    std::vector<int> index_set;
    CMat matrix;
};

TruncatedOperator assemble_matrix(const PotentialSpec& p, Bc bc, int K);

struct DiscEig {
    cx value;
    int multiplicity;
};

/// All eigenvalues of the dense truncation inside |lambda - center| < radius,
/// with multiplicities summing to the argument-principle count on the
/// boundary; the boundary-clearance precondition retries with a perturbed
/// radius up to three times before raising BoundaryEigenvalue.
std::vector<DiscEig> eigs_in_disc(const TruncatedOperator& op, cx center, double radius);

/// Argument-principle eigenvalue count inside the disc.
int disc_count(const TruncatedOperator& op, cx center, double radius);

/// Debug export (row-major, re/im interleaved).
void export_matrix_csv(const TruncatedOperator& op, const std::string& path);

} // namespace hillgap

#endif
