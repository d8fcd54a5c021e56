#ifndef HILLGAP_SHOOTING_HPP
#define HILLGAP_SHOOTING_HPP

#include <vector>

#include "hillgap/matrix_op.hpp"
#include "hillgap/potential.hpp"

namespace hillgap {

/// Transfer matrix of the quasi-derivative system
///   y' = Q y + u,   u' = (v0 - lambda - Q^2) y - Q u
/// over [0, pi], mapping (y(0), u(0)) to (y(pi), u(pi)), with Q evaluated
/// from its truncated Fourier sum.
struct MonodromyResult {
    cx lambda;
    cx M[2][2];
    cx y2_pi;          // second-column top entry, = M[0][1]
    int steps;         // finest step count used
    double det_defect; // |det M - 1|
};

/// Fixed-step RK4 with internal step doubling until consecutive refinements
/// agree to 1e-8 entrywise (Richardson-extrapolated result returned).
/// steps is the starting count, at least 256.
MonodromyResult monodromy(const PotentialSpec& p, cx lambda, int steps);

cx monodromy_trace(const MonodromyResult& m);

struct LocateResult {
    std::vector<cx> values; // two entries for per+-, one for dir
    bool degenerate = false;
};

/// Eigenvalues in the disc |lambda - n^2| < n/4 located on the monodromy:
/// roots of trace -+ 2 for per+- (sign from bc), of y2(pi, .) for dir.
/// Newton with the variational derivative of the flow, Muller fallback;
/// double roots are polished on the derivative and returned twice with the
/// degenerate flag set.
LocateResult locate_bc_eigenvalues(const PotentialSpec& p, Bc bc, int n);

} // namespace hillgap

#endif
