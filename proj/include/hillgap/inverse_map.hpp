#ifndef HILLGAP_INVERSE_MAP_HPP
#define HILLGAP_INVERSE_MAP_HPP

#include <map>
#include <string>

#include "hillgap/basic_equation.hpp"
#include "hillgap/weights.hpp"

namespace hillgap {

/// A_N(v) split into head (the Fourier coefficients v_{+-n}, n <= N) and
/// tail (beta^-+_n at z*_n for N < n <= n_max).  Phi_N is recoverable as
/// tail minus the head extension.
struct TailImage {
    int N = 0;
    int n_max = 0;
    cx v0{};
    struct HeadEntry { cx vm, vp; };
    struct TailEntry {
        cx bm, bp;
        double residual = 0.0; // SMatrix residual bound carried along
    };
    std::map<int, HeadEntry> head; // 1..N
    std::map<int, TailEntry> tail; // N+1..n_max
};

TailImage phi_tail(const PotentialSpec& p, int N, int n_max, int K, int jobs = 1);

/// Phi_N coefficient at +-n (n > N): tail - potential coefficient.
std::map<int, cx> phi_coefficients(const PotentialSpec& p, const TailImage& image);

/// || Phi_N(v1) - Phi_N(v2) ||_Omega / || v1 - v2 ||_Omega at finite cutoff.
double contraction_probe(const PotentialSpec& p1, const PotentialSpec& p2, int N,
                         const Weight& w, int K, int n_max = 0, int jobs = 1);

struct ReconstructResult {
    PotentialSpec v;
    int iterations = 0;
    double final_residual = 0.0; // || A_N(v) - target ||_Omega
    double decay_ratio = 0.0;    // geometric ratio of Picard increments
    bool inside_heuristic_ball = true;
};

/// Picard iteration v <- u - Phi_N(v) from v = head(u); NoConvergence when
/// the increment ratio stays >= 1 over five consecutive iterations.
ReconstructResult reconstruct(const TailImage& target, const Weight& w, int K,
                              int max_iter = 50, double tol = 1e-9, int jobs = 1);

// JSON round trip for TailImage.
std::string tail_image_to_json(const TailImage& t);
TailImage tail_image_from_json(const std::string& text);

/// Ball radius heuristic (Omega_1 = 1 proxy): (1 + 1/sqrt(N))^{-1/4}.
double rN_heuristic(int N);

} // namespace hillgap

#endif
