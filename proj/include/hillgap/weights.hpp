#ifndef HILLGAP_WEIGHTS_HPP
#define HILLGAP_WEIGHTS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hillgap/linalg.hpp"

namespace hillgap {

enum class WeightKind { Power, Gevrey, RatioForm, Oscillating, CustomTable };

/// Positive even weight sequence Omega(k), memoized over |k| <= range,
/// with Omega(0) = 1 by convention.
class Weight {
public:
    Weight() = default;
    Weight(WeightKind kind, int range, std::function<double(int)> closed_form,
           std::function<double(int)> omega = nullptr);

    double operator()(int k) const;
    /// underlying submultiplicative omega for ratio_form weights (0 otherwise)
    double omega(int k) const;
    bool has_omega() const { return (bool)omega_fn_; }
    WeightKind kind() const { return kind_; }
    int range() const { return range_; }

private:
    WeightKind kind_ = WeightKind::Power;
    int range_ = 0;
    std::vector<double> table_;                 // |k| = 0..range
    std::function<double(int)> closed_form_;    // for queries beyond range
    std::function<double(int)> omega_fn_;
};

/// Omega(k) = |k|^a, a >= -1.
Weight make_weight_power(double a, int range);
/// Omega(k) = |k|^s exp(c |k|^b), 0 < b < 1, c > 0.
Weight make_weight_gevrey(double s, double c, double b, int range);
/// Omega(k) = omega(k)/|k| with submultiplicative omega.
Weight make_weight_ratio(std::function<double(int)> omega, int range);

/// (sum |x_k|^2 Omega(k)^2)^{1/2} over the stored support; indices may be
/// negative (v_k = V(2k) convention).
double weighted_seq_norm(const std::map<int, cx>& x, const Weight& w);
double weighted_seq_norm(const std::vector<cx>& x_from_k1, const Weight& w);

/// Sampled submultiplicativity check omega(m+n) <= omega(m) omega(n) (1+tol).
bool submultiplicative_on_range(const std::function<double(int)>& omega, int range,
                                double tol = 1e-12);

/// Result of the oscillating construction: a concave piecewise
/// linear g squeezed between a and b, touching b at odd breakpoints and a at
/// even ones; weight values G(m) = exp(g(|m|))/|m|.
struct OscillatingWeight {
    Weight weight;
    std::vector<double> breakpoints; // c_1, c_2, ...
    std::function<double(double)> g;
};

/// a_fn, b_fn as in the construction hypotheses (checked on a sample grid:
/// positivity and the sign of first/second differences; HypothesisViolation
/// otherwise).  Slopes are found by bisection against the sampled a.
OscillatingWeight construct_oscillating_weight(const std::function<double(double)>& a_fn,
                                               const std::function<double(double)>& b_fn,
                                               int range);

Weight weight_from_json(const std::string& json_text);
Weight weight_from_file(const std::string& path);

} // namespace hillgap

#endif
