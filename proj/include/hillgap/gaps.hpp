#ifndef HILLGAP_GAPS_HPP
#define HILLGAP_GAPS_HPP

#include <string>
#include <vector>

#include "hillgap/basic_equation.hpp"
#include "hillgap/weights.hpp"

namespace hillgap {

/// Per-index spectral record: periodic/antiperiodic pair (parity of n),
/// Dirichlet eigenvalue, and the derived gap quantities.
struct SpectralTriple {
    int n = 0;
    cx lambda_plus{}, lambda_minus{}, mu{};
    double gamma = 0.0;  // |l+ - l-|
    double delta = 0.0;  // |mu - (l+ + l-)/2|
    double Delta = 0.0;  // gamma + |l+ - mu|
    cx z_star{};         // (l+ + l-)/2 - n^2
    cx beta_minus_zs{}, beta_plus_zs{};
    bool degenerate = false;
};

/// One triple per n in [n_lo, n_hi]; pair from the basic equation, mu from
/// shooting with the dense matrix as fallback.  Requires
/// [n_lo, n_hi] within [n_star(p,K), K/4].
std::vector<SpectralTriple> spectral_triples(const PotentialSpec& p, int n_lo, int n_hi,
                                             int K, int jobs = 1);

struct GapReport {
    std::vector<SpectralTriple> triples;
    double lhs_sum = 0.0;       // sum gamma_n^2 Omega(n)^2
    double v_norm_sq = 0.0;     // ||v||_Omega^2
    double v_norm_4 = 0.0;      // ||v||_Omega^4
    struct Row {
        int n;
        bool has_ratio;
        double ratio_gamma; // gamma / (|b-| + |b+|)
        double ratio_441;   // (gamma + |mu - l+|) / (|b-| + |b+|)
    };
    std::vector<Row> ratio_table;
    bool envelope_violation = false;  // ratio_441 outside [1/72, 58]
    bool twosided_violation = false;  // real v: ratio_gamma outside [0.75, 1.25] at top n
};

GapReport asymptotics_report(const std::vector<SpectralTriple>& triples, const Weight& w,
                             const PotentialSpec& p);

/// Least-squares slope of log(gamma_n) against n log n, the smoothness
/// diagnostic (well below -1 for finite cosine series); zero gaps are
/// skipped.
double gap_decay_slope(const std::vector<SpectralTriple>& triples);

void write_gaps_csv(const std::string& path, const GapReport& report);

} // namespace hillgap

#endif
