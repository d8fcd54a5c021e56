// Independent test oracles: closed forms and brute-force sums kept separate
// from the library code paths they check.
#ifndef HILLGAP_TEST_ORACLES_HPP
#define HILLGAP_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "hillgap/potential.hpp"

namespace oracles {

using hillgap::cx;

/// Free Hill discriminant on [0, pi]: trace of the monodromy is 2 cos(sqrt(lambda) pi).
inline cx free_discriminant(cx lambda) {
    cx s = std::sqrt(lambda);
    return 2.0 * std::cos(M_PI * s);
}

/// Kronig-Penney discriminant for v = alpha * sum_j delta(x - j pi).
inline cx kronig_penney_discriminant(cx lambda, double alpha) {
    cx s = std::sqrt(lambda);
    return 2.0 * std::cos(M_PI * s) + (alpha / s) * std::sin(M_PI * s);
}

/// Root of kronig_penney_discriminant -+ 2 by bisection on a real bracket.
inline double kp_root(double alpha, int n, double lo, double hi) {
    double target = (n % 2 == 0) ? 2.0 : -2.0;
    auto f = [&](double x) { return kronig_penney_discriminant(x, alpha).real() - target; };
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Fourier coefficient of the sawtooth alpha (1/2 - x/pi) on [0, pi]
/// by composite Simpson quadrature (independent of the closed form).
inline cx sawtooth_coeff_quadrature(double alpha, int m, int panels = 20000) {
    auto f = [&](double x) {
        return alpha * (0.5 - x / M_PI) * std::exp(cx{0.0, -(double)m * x});
    };
    double h = M_PI / panels;
    cx s = f(0.0) + f(M_PI);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0 / M_PI;
}

/// First-order series term S^{12}_1(n, z) = sum_{j != +-n} V(-n-j) V(j-n) / (n^2 - j^2 + z),
/// summed brute force over |j| <= J.
inline cx s12_first_order(const hillgap::PotentialSpec& p, int n, cx z, int J) {
    cx s = 0;
    for (int j = -J; j <= J; ++j) {
        if ((j - n) % 2 != 0 || std::abs(j) == n) continue;
        cx num = p.V(-n - j) * p.V(j - n);
        if (num == cx{}) continue;
        s += num / (cx{(double)n * n - (double)j * j, 0.0} + z);
    }
    return s;
}

/// Same for S^{21}_1.
inline cx s21_first_order(const hillgap::PotentialSpec& p, int n, cx z, int J) {
    cx s = 0;
    for (int j = -J; j <= J; ++j) {
        if ((j - n) % 2 != 0 || std::abs(j) == n) continue;
        cx num = p.V(n - j) * p.V(j + n);
        if (num == cx{}) continue;
        s += num / (cx{(double)n * n - (double)j * j, 0.0} + z);
    }
    return s;
}

// Small standard test potentials.
inline hillgap::PotentialSpec pot_2cos2x() {
    return hillgap::build_potential_exp(
        0.0, {{2, cx{0.0, -0.5}}, {-2, cx{0.0, 0.5}}}, true);
}

inline hillgap::PotentialSpec pot_2cos2x_cos4x() {
    return hillgap::build_potential_exp(0.0,
                                        {{2, cx{0.0, -0.5}},
                                         {-2, cx{0.0, 0.5}},
                                         {4, cx{0.0, -0.125}},
                                         {-4, cx{0.0, 0.125}}},
                                        true);
}

inline hillgap::PotentialSpec pot_gasymov() {
    // v = e^{2ix}: V(2) = 1, q(2) = 1/(2i)
    return hillgap::build_potential_exp(0.0, {{2, cx{0.0, -0.5}}}, false);
}

} // namespace oracles

#endif
