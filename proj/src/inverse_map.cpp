#include "hillgap/inverse_map.hpp"
#include "hillgap/errors.hpp"
#include "hillgap/parallel.hpp"

#include <cmath>

#include <json.hpp>

namespace hillgap {

double rN_heuristic(int N) {
    return std::pow(1.0 + 1.0 / std::sqrt((double)N), -0.25);
}

TailImage phi_tail(const PotentialSpec& p, int N, int n_max, int K, int jobs) {
    if (N < 1 || n_max <= N) throw InvalidParams("phi_tail: need 1 <= N < n_max");
    if (n_max > K / 4) throw InvalidParams("phi_tail: n_max exceeds K/4");
    TailImage t;
    t.N = N;
    t.n_max = n_max;
    t.v0 = p.v0();
    for (int n = 1; n <= N; ++n) t.head[n] = {p.vk(-n), p.vk(n)};

    std::vector<TailImage::TailEntry> entries(n_max - N);
    parallel_for(n_max - N, jobs, [&](int i) {
        const int n = N + 1 + i;
        if (p.is_zero()) {
            entries[i] = {cx{}, cx{}, 0.0};
            return;
        }
        DiscPair pair = solve_disc_pair(p, n, K, /*validate_count=*/false);
        cx zs = (pair.lambda_plus + pair.lambda_minus) / 2.0 - cx{(double)n * n, 0.0};
        SMatrix s = s_matrix(p, n, zs, K);
        entries[i] = {s.beta_minus(), s.beta_plus(), s.residual_bound};
    });
    for (int i = 0; i < n_max - N; ++i) t.tail[N + 1 + i] = entries[i];
    return t;
}

std::map<int, cx> phi_coefficients(const PotentialSpec& p, const TailImage& image) {
    std::map<int, cx> phi;
    for (const auto& [n, e] : image.tail) {
        phi[-n] = e.bm - p.vk(-n);
        phi[n] = e.bp - p.vk(n);
    }
    return phi;
}

double contraction_probe(const PotentialSpec& p1, const PotentialSpec& p2, int N,
                         const Weight& w, int K, int n_max, int jobs) {
    if (n_max <= 0) n_max = K / 4;
    std::map<int, cx> diff;
    int sup = std::max(p1.max_support(), p2.max_support()) / 2;
    for (int k = -std::max(sup, n_max); k <= std::max(sup, n_max); ++k) {
        cx d = p1.vk(k) - p2.vk(k);
        if (d != cx{}) diff[k] = d;
    }
    double den = weighted_seq_norm(diff, w);
    if (den == 0.0)
        throw InvalidParams("contraction_probe: potentials coincide (division by zero)");

    TailImage t1 = phi_tail(p1, N, n_max, K, jobs);
    TailImage t2 = phi_tail(p2, N, n_max, K, jobs);
    std::map<int, cx> f1 = phi_coefficients(p1, t1);
    std::map<int, cx> f2 = phi_coefficients(p2, t2);
    std::map<int, cx> fd;
    for (const auto& [k, v] : f1) fd[k] = v;
    for (const auto& [k, v] : f2) fd[k] -= v;
    return weighted_seq_norm(fd, w) / den;
}

ReconstructResult reconstruct(const TailImage& target, const Weight& w, int K, int max_iter,
                              double tol, int jobs) {
    const int N = target.N, n_max = target.n_max;

    // u as a coefficient table
    std::map<int, cx> u;
    u[0] = target.v0;
    for (const auto& [n, e] : target.head) {
        u[-n] = e.vm;
        u[n] = e.vp;
    }
    for (const auto& [n, e] : target.tail) {
        u[-n] = e.bm;
        u[n] = e.bp;
    }

    ReconstructResult out;
    double unorm = weighted_seq_norm(u, w);
    out.inside_heuristic_ball = unorm <= rN_heuristic(N) / 2.0;

    // start from the head of the target
    std::map<int, cx> v;
    for (const auto& [k, c] : u)
        if (std::abs(k) <= N) v[k] = c;

    double prev_step = -1.0;
    int bad_streak = 0;
    std::vector<double> ratios;
    for (int it = 1; it <= max_iter; ++it) {
        PotentialSpec pv = potential_from_vk(v);
        std::map<int, cx> vn = v;
        if (pv.is_zero()) {
            for (const auto& [n, e] : target.tail) {
                vn[-n] = u[-n];
                vn[n] = u[n];
            }
        } else {
            TailImage ti = phi_tail(pv, N, n_max, K, jobs);
            for (const auto& [n, e] : ti.tail) {
                // v_new = u - Phi_N(v) componentwise on the tail modes
                vn[-n] = u[-n] - (e.bm - pv.vk(-n));
                vn[n] = u[n] - (e.bp - pv.vk(n));
            }
        }
        std::map<int, cx> step;
        for (const auto& [k, c] : vn) step[k] = c - (v.count(k) ? v.at(k) : cx{});
        double snorm = weighted_seq_norm(step, w);
        v = vn;
        out.iterations = it;
        if (prev_step > 0 && snorm > 0) {
            double ratio = snorm / prev_step;
            ratios.push_back(ratio);
            bad_streak = (ratio >= 1.0) ? bad_streak + 1 : 0;
            if (bad_streak >= 5)
                throw NoConvergence("reconstruct: Picard increments kept growing");
        }
        prev_step = snorm;
        if (snorm < tol) break;
    }
    if (!ratios.empty()) {
        double g = 1.0;
        for (double r : ratios) g *= r;
        out.decay_ratio = std::pow(g, 1.0 / (double)ratios.size());
    }

    PotentialSpec pv = potential_from_vk(v);
    // residual || A_N(v) - u ||_Omega
    std::map<int, cx> resid;
    if (pv.is_zero()) {
        for (const auto& [k, c] : u) resid[k] = -c;
        for (const auto& [k, c] : v) resid[k] += c;
    } else {
        TailImage ti = phi_tail(pv, N, n_max, K, jobs);
        for (const auto& [n, e] : ti.head) {
            resid[-n] = e.vm - (u.count(-n) ? u.at(-n) : cx{});
            resid[n] = e.vp - (u.count(n) ? u.at(n) : cx{});
        }
        for (const auto& [n, e] : ti.tail) {
            resid[-n] = e.bm - (u.count(-n) ? u.at(-n) : cx{});
            resid[n] = e.bp - (u.count(n) ? u.at(n) : cx{});
        }
    }
    out.final_residual = weighted_seq_norm(resid, w);
    out.v = pv;
    return out;
}

std::string tail_image_to_json(const TailImage& t) {
    nlohmann::json j;
    j["N"] = t.N;
    j["n_max"] = t.n_max;
    nlohmann::json head = nlohmann::json::array();
    head.push_back({{"n", 0},
                    {"vm", {t.v0.real(), t.v0.imag()}},
                    {"vp", {t.v0.real(), t.v0.imag()}}});
    for (const auto& [n, e] : t.head)
        head.push_back({{"n", n},
                        {"vm", {e.vm.real(), e.vm.imag()}},
                        {"vp", {e.vp.real(), e.vp.imag()}}});
    j["head"] = head;
    nlohmann::json tail = nlohmann::json::array();
    for (const auto& [n, e] : t.tail)
        tail.push_back({{"n", n},
                        {"bm", {e.bm.real(), e.bm.imag()}},
                        {"bp", {e.bp.real(), e.bp.imag()}},
                        {"residual", e.residual}});
    j["tail"] = tail;
    return j.dump(2);
}

TailImage tail_image_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("tail image: ") + e.what());
    }
    TailImage t;
    t.N = j.at("N").get<int>();
    t.n_max = j.value("n_max", 0);
    for (const auto& e : j.at("head")) {
        int n = e.at("n").get<int>();
        cx vm{e.at("vm")[0].get<double>(), e.at("vm")[1].get<double>()};
        cx vp{e.at("vp")[0].get<double>(), e.at("vp")[1].get<double>()};
        if (n == 0)
            t.v0 = vm;
        else
            t.head[n] = {vm, vp};
    }
    for (const auto& e : j.at("tail")) {
        int n = e.at("n").get<int>();
        cx bm{e.at("bm")[0].get<double>(), e.at("bm")[1].get<double>()};
        cx bp{e.at("bp")[0].get<double>(), e.at("bp")[1].get<double>()};
        t.tail[n] = {bm, bp, e.value("residual", 0.0)};
        t.n_max = std::max(t.n_max, n);
    }
    return t;
}

} // namespace hillgap
