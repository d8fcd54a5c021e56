#ifndef HILLGAP_POTENTIAL_HPP
#define HILLGAP_POTENTIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "hillgap/linalg.hpp"

namespace hillgap {

/// Singular periodic potential v = v0 + Q' with Q in L^2, zero mean,
/// stored through the exponential Fourier coefficients q(m) of Q
/// (m even, nonzero).  The exponential data is the source of truth;
/// sine-basis data is always derived.
class PotentialSpec {
public:
    PotentialSpec() = default;
    PotentialSpec(cx v0, std::map<int, cx> coeffs, bool real_flag);

    cx v0() const { return v0_; }
    bool real_flag() const { return real_; }
    const std::map<int, cx>& coeffs() const { return q_; }

    /// q(m); zero for unstored m.
    cx q(int m) const;
    /// V(m) = i m q(m)  (exponential Fourier coefficient of v - v0).
    cx V(int m) const;
    /// v_k = V(2k) convention of the weighted norms.
    cx vk(int k) const { return k == 0 ? v0_ : V(2 * k); }

    double q_norm() const;                 // ||q||
    int max_support() const;               // largest stored |m|, 0 if empty
    bool is_zero() const { return q_.empty() && v0_ == cx{}; }

    /// Pointwise value of the truncated Fourier sum Q(x).
    cx Q_at(double x) const;

    PotentialSpec scaled(cx factor) const;

private:
    cx v0_{};
    std::map<int, cx> q_;
    bool real_ = false;
};

enum class PotentialKind { ExpQ, CosV, DeltaComb };

PotentialSpec build_potential_exp(cx v0, const std::map<int, cx>& coeffs, bool real_flag);
/// v = sum_k vk sqrt(2) cos(2kx): V(2k) = V(-2k) = vk / sqrt(2).
PotentialSpec build_potential_cos(const std::vector<double>& vk);
/// Sawtooth primitive of the delta comb alpha * sum_j delta(x - j pi):
/// q(m) = alpha/(i pi m) for even 0 < |m| <= support, v0 = alpha/pi.
PotentialSpec build_potential_delta_comb(double alpha, int support);

/// Potential from the v_k = V(2k) table (k = 0 entry is v0).
PotentialSpec potential_from_vk(const std::map<int, cx>& vk_table);

/// Sine-basis coefficients q~(k) of Q, derived from the exponential data.
struct SineCoeffs {
    std::vector<cx> qt; // qt[k-1] = q~(k), k = 1..size
    cx at(int k) const { return (k >= 1 && k <= (int)qt.size()) ? qt[k - 1] : cx{}; }
};

/// q~(k) for a single k (exact finite sum over the stored support).
cx sine_coeff(const PotentialSpec& p, int k);
SineCoeffs derive_sine_coeffs(const PotentialSpec& p, int k_max);
/// Inverse conversion on a known support: recovers q(m) for the stored
/// indices from sine data (exact linear algebra; see tests for round trips).
std::map<int, cx> sine_to_exp(const PotentialSpec& p_support_hint, const SineCoeffs& sc);

enum class Basis { Exponential, Sine };

/// V(m) = i m q(m) (exponential, m even) or V~(k) = k q~(k) (sine, k >= 1).
cx fourier_coeff_V(const PotentialSpec& p, int index, Basis basis);

/// E_m(q) = (sum_{|k| >= m} |q(k)|^2)^{1/2} over the stored support.
double tail_energy(const PotentialSpec& p, int m);

// JSON config round trip; schema documented in the README.
PotentialSpec potential_from_json(const std::string& json_text);
std::string potential_to_json(const PotentialSpec& p);
PotentialSpec potential_from_file(const std::string& path);

} // namespace hillgap

#endif
