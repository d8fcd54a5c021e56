#include "hillgap/potential.hpp"
#include "hillgap/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hillgap {

namespace {
constexpr double kConjTol = 1e-12;
}

PotentialSpec::PotentialSpec(cx v0, std::map<int, cx> coeffs, bool real_flag)
    : v0_(v0), q_(std::move(coeffs)), real_(real_flag) {
    if (q_.count(0))
        throw ZeroMeanViolation("potential: entry at m = 0 violates the zero-mean convention");
    for (const auto& [m, qm] : q_) {
        if (m % 2 != 0)
            throw ParityError("potential: exponential index " + std::to_string(m) + " is odd");
        (void)qm;
    }
    if (real_) {
        if (std::abs(v0_.imag()) > kConjTol)
            throw ConjugacyViolation("potential: real_flag set but v0 is not real");
        for (const auto& [m, qm] : q_) {
            cx other = q_.count(-m) ? q_.at(-m) : cx{};
            // real v = v0 + Q' with Q real: q(-m) = conj(q(m))
            if (std::abs(other - std::conj(qm)) > kConjTol * (1.0 + std::abs(qm)))
                throw ConjugacyViolation("potential: real_flag set but q(-m) != conj(q(m)) at m = " +
                                         std::to_string(m));
        }
    }
}

cx PotentialSpec::q(int m) const {
    auto it = q_.find(m);
    return it == q_.end() ? cx{} : it->second;
}

cx PotentialSpec::V(int m) const {
    if (m == 0) return {};
    return cx{0.0, static_cast<double>(m)} * q(m);
}

double PotentialSpec::q_norm() const {
    double s = 0;
    for (const auto& [m, qm] : q_) s += std::norm(qm);
    return std::sqrt(s);
}

int PotentialSpec::max_support() const {
    int mx = 0;
    for (const auto& [m, qm] : q_) mx = std::max(mx, std::abs(m));
    return mx;
}

cx PotentialSpec::Q_at(double x) const {
    cx s = 0;
    for (const auto& [m, qm] : q_) s += qm * std::polar(1.0, m * x);
    return s;
}

PotentialSpec PotentialSpec::scaled(cx factor) const {
    std::map<int, cx> q2;
    for (const auto& [m, qm] : q_) q2[m] = factor * qm;
    bool still_real = real_ && std::abs(factor.imag()) == 0.0;
    return PotentialSpec(factor * v0_, std::move(q2), still_real);
}

PotentialSpec build_potential_exp(cx v0, const std::map<int, cx>& coeffs, bool real_flag) {
    std::map<int, cx> q;
    for (const auto& [m, qm] : coeffs)
        if (qm != cx{}) q[m] = qm;
    return PotentialSpec(v0, std::move(q), real_flag);
}

PotentialSpec build_potential_cos(const std::vector<double>& vk) {
    std::map<int, cx> q;
    for (int k = 1; k <= (int)vk.size(); ++k) {
        double v = vk[k - 1];
        if (v == 0.0) continue;
        cx V = v / std::sqrt(2.0);
        q[2 * k] = V / cx{0.0, 2.0 * k};
        q[-2 * k] = V / cx{0.0, -2.0 * k};
    }
    return PotentialSpec(0.0, std::move(q), true);
}

PotentialSpec build_potential_delta_comb(double alpha, int support) {
    if (alpha == 0.0) throw InvalidParams("delta_comb: alpha must be nonzero");
    if (support < 2) throw InvalidParams("delta_comb: support must be >= 2");
    std::map<int, cx> q;
    for (int m = 2; m <= support; m += 2) {
        q[m] = alpha / cx{0.0, M_PI * m};
        q[-m] = alpha / cx{0.0, -M_PI * m};
    }
    return PotentialSpec(alpha / M_PI, std::move(q), true);
}

PotentialSpec potential_from_vk(const std::map<int, cx>& vk_table) {
    std::map<int, cx> q;
    cx v0{};
    for (const auto& [k, V] : vk_table) {
        if (k == 0) { v0 = V; continue; }
        if (V == cx{}) continue;
        q[2 * k] = V / cx{0.0, 2.0 * k};
    }
    return PotentialSpec(v0, std::move(q), false);
}

cx sine_coeff(const PotentialSpec& p, int k) {
    if (k < 1) throw ParityError("sine_coeff: k must be >= 1");
    if (k % 2 == 0) {
        // only m = +-k contribute
        return cx{0.0, 1.0} * (p.q(k) - p.q(-k)) / std::sqrt(2.0);
    }
    // odd k couples to every stored even mode
    cx s = 0;
    for (const auto& [m, qm] : p.coeffs())
        s += qm * (2.0 * std::sqrt(2.0) / M_PI) * (double)k / ((double)k * k - (double)m * m);
    return s;
}

SineCoeffs derive_sine_coeffs(const PotentialSpec& p, int k_max) {
    SineCoeffs sc;
    sc.qt.resize(k_max);
    for (int k = 1; k <= k_max; ++k) sc.qt[k - 1] = sine_coeff(p, k);
    return sc;
}

std::map<int, cx> sine_to_exp(const PotentialSpec& p, const SineCoeffs& sc) {
    // Antisymmetric part a(m) = q(m) - q(-m) is carried by the even sine
    // coefficients; the symmetric part s(m) = q(m) + q(-m) solves a small
    // Cauchy-type system against the odd ones.
    std::vector<int> sup;
    for (const auto& [m, qm] : p.coeffs())
        if (m > 0) sup.push_back(m);
    const int J = (int)sup.size();
    std::map<int, cx> out;
    if (J == 0) return out;
    for (int m : sup) {
        if (m > (int)sc.qt.size())
            throw InvalidParams("sine_to_exp: sine table too short for support");
    }
    CMat G(J, J);
    std::vector<cx> rhs(J);
    for (int r = 0; r < J; ++r) {
        int k = 2 * r + 1; // first J odd indices
        if (k > (int)sc.qt.size())
            throw InvalidParams("sine_to_exp: sine table too short for the odd system");
        for (int c = 0; c < J; ++c) {
            int m = sup[c];
            G(r, c) = (2.0 * std::sqrt(2.0) / M_PI) * (double)k / ((double)k * k - (double)m * m);
        }
        rhs[r] = sc.at(k);
    }
    std::vector<cx> sym = lu_solve(lu_factor(std::move(G)), std::move(rhs));
    for (int c = 0; c < J; ++c) {
        int m = sup[c];
        cx anti = sc.at(m) * std::sqrt(2.0) / cx{0.0, 1.0}; // q(m) - q(-m)
        out[m] = (sym[c] + anti) / 2.0;
        out[-m] = (sym[c] - anti) / 2.0;
    }
    return out;
}

cx fourier_coeff_V(const PotentialSpec& p, int index, Basis basis) {
    if (basis == Basis::Exponential) {
        if (index % 2 != 0)
            throw ParityError("fourier_coeff_V: exponential basis requires even m");
        return p.V(index);
    }
    if (index < 1) throw ParityError("fourier_coeff_V: sine basis requires k >= 1");
    return (double)index * sine_coeff(p, index);
}

double tail_energy(const PotentialSpec& p, int m) {
    if (m < 0) throw InvalidParams("tail_energy: m must be >= 0");
    double s = 0;
    for (const auto& [k, qk] : p.coeffs())
        if (std::abs(k) >= m) s += std::norm(qk);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

cx parse_cx(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

PotentialSpec potential_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("potential config: ") + e.what());
    }
    std::string kind = j.value("kind", "exp_q");
    if (kind == "cos_v") {
        std::vector<double> vk = j.at("coeffs").at("vk").get<std::vector<double>>();
        return build_potential_cos(vk);
    }
    if (kind == "delta_comb") {
        double alpha = j.at("coeffs").at("alpha").get<double>();
        int support = j.at("coeffs").at("support").get<int>();
        return build_potential_delta_comb(alpha, support);
    }
    if (kind != "exp_q") throw ConfigError("potential config: unknown kind " + kind);
    cx v0 = j.contains("v0") ? parse_cx(j["v0"]) : cx{};
    std::map<int, cx> q;
    for (const auto& e : j.at("coeffs")) {
        int m = e.at("m").get<int>();
        q[m] = {e.value("re", 0.0), e.value("im", 0.0)};
    }
    bool real = j.value("real", false);
    return build_potential_exp(v0, q, real);
}

std::string potential_to_json(const PotentialSpec& p) {
    nlohmann::json j;
    j["kind"] = "exp_q";
    j["v0"] = {p.v0().real(), p.v0().imag()};
    j["real"] = p.real_flag();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, qm] : p.coeffs())
        arr.push_back({{"m", m}, {"re", qm.real()}, {"im", qm.imag()}});
    j["coeffs"] = arr;
    return j.dump(2);
}

PotentialSpec potential_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open potential config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return potential_from_json(ss.str());
}

} // namespace hillgap
