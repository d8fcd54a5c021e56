#ifndef HILLGAP_PERTURB_HPP
#define HILLGAP_PERTURB_HPP

#include <string>
#include <vector>

#include "hillgap/potential.hpp"

namespace hillgap {

/// Rayleigh-Schrodinger data for the Dirichlet eigenvalue curves E_n(z) of
/// -y'' + z v(x) y with v given by its sqrt(2) cos 2kx coefficients.
struct PerturbationRecord {
    int n = 0;
    double a1 = 0.0;           // -v_n / sqrt(2), exact
    double a2 = 0.0;           // second Taylor coefficient, partial sum
    double sigma = 0.0;        // sum |v_k|
    double radius_upper = 0.0; // sqrt(2) sigma / |a2| (0 when a2 = 0)
    double delta_cap = 0.0;    // max_k k |v_k| over the stored support
    bool s34_applicable = false;
    bool lower_bound_holds = false; // |a2| >= ||v||^2 / (32 n^2)
};

/// Partial sum of the closed-form a2(n) series (even/odd cases); the
/// p-summation runs over 1..cutoff excluding the resonant index.
double a2_coefficient(const std::vector<double>& vk, int n, int cutoff);

/// E_n(z) along real z by shooting on the scaled potential; E_n(0) = n^2.
/// Disc isolation at each z is checked against the dense matrix count.
std::vector<double> En_curve(const std::vector<double>& vk, int n,
                             const std::vector<double>& z_values, int K);

std::vector<PerturbationRecord> radius_report(const std::vector<double>& vk, int n_lo,
                                              int n_hi, int cutoff = 0);

void write_perturb_csv(const std::string& path, const std::vector<PerturbationRecord>& recs);

} // namespace hillgap

#endif
