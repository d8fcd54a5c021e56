#ifndef HILLGAP_BASIC_EQUATION_HPP
#define HILLGAP_BASIC_EQUATION_HPP

#include <vector>

#include "hillgap/linalg.hpp"
#include "hillgap/potential.hpp"

namespace hillgap {

/// Truncated T = K~ V K~ on the indices j = n (mod 2), |j| <= K, j != +-n,
/// at lambda = n^2 + z, with the half-open square-root branch.
struct TMatrix {
    std::vector<int> index_set;
    std::vector<cx> ktilde; // diagonal of K~ on index_set
    CMat T;
    double hs_norm = 0.0;
};

TMatrix build_T(const PotentialSpec& p, int n, cx z, int K);

enum class SeriesMode { LinearSolve, Neumann };

/// The reduced 2x2 operator S at z: s11 = s22 = alpha_n(z), s12 = beta^-_n(z),
/// s21 = beta^+_n(z) (basis e^1 = e_{-n}, e^2 = e_{+n}).
struct SMatrix {
    int n = 0;
    cx z{};
    cx s11{}, s12{}, s21{}, s22{};
    double t_hs_norm = 0.0;
    int K = 0;
    SeriesMode series_mode = SeriesMode::LinearSolve;
    int neumann_order = 0;
    double residual_bound = 0.0;
    bool valid = false; // t_hs_norm < 1

    cx alpha() const { return s11; }
    cx beta_minus() const { return s12; }
    cx beta_plus() const { return s21; }
};

SMatrix s_matrix(const PotentialSpec& p, int n, cx z, int K,
                 SeriesMode mode = SeriesMode::LinearSolve, int neumann_order = 1);

/// The eigenvalue pair in D_n from the basic equation
/// (z - alpha(z))^2 = beta^-(z) beta^+(z), labeled by the real-part rule.
struct DiscPair {
    cx lambda_plus{}, lambda_minus{};
    SMatrix s_plus, s_minus;
    bool degenerate = false;       // double root of the basic equation
    bool geometric_mult2 = false;  // |beta^+| + |beta^-| vanishes at the root
};

DiscPair solve_disc_pair(const PotentialSpec& p, int n, int K, bool validate_count = true);

/// Smallest n with hs(T(n,0)) <= 1/2, the bound stable on the 8-point circle
/// |z| = n/4, and the disc D_n carrying winding count exactly 2.
int n_star(const PotentialSpec& p, int K);

} // namespace hillgap

#endif
