#include "hillgap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hillgap/errors.hpp"
#include "hillgap/gaps.hpp"
#include "hillgap/inverse_map.hpp"
#include "hillgap/parallel.hpp"
#include "hillgap/perturb.hpp"
#include "hillgap/riesz.hpp"
#include "hillgap/shooting.hpp"
#include "hillgap/weights.hpp"

namespace hillgap {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::Gaps: return "gaps";
        case Command::Reconstruct: return "reconstruct";
        case Command::Riesz: return "riesz";
        case Command::Perturb: return "perturb";
        case Command::Weights: return "weights";
    }
    return "?";
}

Method method_from(const std::string& s) {
    if (s == "basic") return Method::Basic;
    if (s == "matrix") return Method::Matrix;
    if (s == "shoot") return Method::Shoot;
    if (s == "all") return Method::All;
    throw ConfigError("unknown method: " + s);
}

double rel_diff(cx a, cx b) {
    double den = std::max({std::abs(a), std::abs(b), 1e-12});
    return std::abs(a - b) / den;
}

struct Summary {
    std::string command;
    std::string hash;
    std::vector<std::string> violations;
    nlohmann::json extra = nlohmann::json::object();

    void write(const std::string& out_dir) const {
        nlohmann::json j;
        j["command"] = command;
        j["config_hash"] = hash;
        j["violations"] = violations;
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        std::ofstream f(out_dir + "/summary.json");
        if (!f) throw IoError("cannot write summary.json in " + out_dir);
        f << j.dump(2) << "\n";
    }
};

// ---------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------

struct SpectrumRow {
    int n;
    cx lp, lm, mu;
    double discrepancy = 0.0;
    bool has_discrepancy = false;
};

cx mu_of(const PotentialSpec& p, int n, int K) {
    try {
        return locate_bc_eigenvalues(p, Bc::Dir, n).values.at(0);
    } catch (const Error&) {
        TruncatedOperator op = assemble_matrix(p, Bc::Dir, K);
        auto eigs = eigs_in_disc(op, cx{(double)n * n, 0.0}, n / 4.0);
        if (eigs.size() != 1)
            throw RootNotFound("spectrum: no unique Dirichlet eigenvalue at n = " +
                               std::to_string(n));
        return eigs[0].value;
    }
}

void order_pair(cx& hi, cx& lo) {
    bool swap = (lo.real() > hi.real()) ||
                (lo.real() == hi.real() && lo.imag() > hi.imag());
    if (swap) std::swap(hi, lo);
}

int run_spectrum(const RunConfig& c, const PotentialSpec& p, Summary& sum) {
    int ns = n_star(p, c.K);
    if (c.n_lo < ns)
        throw ConfigError("spectrum: n range starts below n_star = " + std::to_string(ns));
    if (c.n_hi > c.K / 4) throw ConfigError("spectrum: n range exceeds K/4");

    std::vector<SpectrumRow> rows(c.n_hi - c.n_lo + 1);
    parallel_for(c.n_hi - c.n_lo + 1, c.jobs, [&](int i) {
        const int n = c.n_lo + i;
        const Bc bc = bc_for_index(n);
        SpectrumRow row;
        row.n = n;

        cx b_p{}, b_m{}, m_p{}, m_m{}, s_p{}, s_m{};
        bool have_basic = false, have_matrix = false;
        if (c.method == Method::Basic || c.method == Method::All) {
            DiscPair pr = solve_disc_pair(p, n, c.K);
            b_p = pr.lambda_plus;
            b_m = pr.lambda_minus;
            have_basic = true;
            double sym = std::abs(pr.s_plus.s11 - pr.s_plus.s22);
            if (sym > 1e-10)
                throw ComputeError("spectrum: S symmetry s11 != s22 at n = " + std::to_string(n));
        }
        if (c.method == Method::Matrix || c.method == Method::All) {
            TruncatedOperator op = assemble_matrix(p, bc, c.K);
            auto eigs = eigs_in_disc(op, cx{(double)n * n, 0.0}, n / 4.0);
            int count = 0;
            for (const auto& e : eigs) count += e.multiplicity;
            if (count != 2)
                throw ComputeError("spectrum: disc count != 2 at n = " + std::to_string(n));
            m_p = eigs.back().value;
            m_m = eigs.front().value;
            order_pair(m_p, m_m);
            have_matrix = true;
        }
        if (c.method == Method::Shoot || c.method == Method::All) {
            LocateResult loc = locate_bc_eigenvalues(p, bc, n);
            s_p = loc.values[0];
            s_m = loc.values.size() > 1 ? loc.values[1] : loc.values[0];
            order_pair(s_p, s_m);
        }

        row.mu = mu_of(p, n, c.K);
        if (have_basic) {
            row.lp = b_p;
            row.lm = b_m;
        } else if (have_matrix) {
            row.lp = m_p;
            row.lm = m_m;
        } else {
            row.lp = s_p;
            row.lm = s_m;
        }
        if (c.method == Method::All) {
            double d = 0;
            d = std::max(d, rel_diff(b_p, m_p));
            d = std::max(d, rel_diff(b_m, m_m));
            d = std::max(d, rel_diff(b_p, s_p));
            d = std::max(d, rel_diff(b_m, s_m));
            d = std::max(d, rel_diff(m_p, s_p));
            d = std::max(d, rel_diff(m_m, s_m));
            row.discrepancy = d;
            row.has_discrepancy = true;
        }
        rows[i] = row;
    });

    std::string path = c.out_dir + "/spectrum.csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot open " + path);
    std::fprintf(f, "n,lam_plus_re,lam_plus_im,lam_minus_re,lam_minus_im,mu_re,mu_im,discrepancy\n");
    double worst = 0;
    for (const auto& r : rows) {
        std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", r.n, r.lp.real(),
                     r.lp.imag(), r.lm.real(), r.lm.imag(), r.mu.real(), r.mu.imag());
        if (r.has_discrepancy) {
            std::fprintf(f, "%.17g\n", r.discrepancy);
            worst = std::max(worst, r.discrepancy);
        } else {
            std::fprintf(f, "\n");
        }
    }
    std::fclose(f);
    sum.extra["max_discrepancy"] = worst;
    if (c.method == Method::All && worst > 1e-6)
        sum.violations.push_back("cross-method discrepancy above 1e-6");
    return 0;
}

// ---------------------------------------------------------------------
// other commands
// ---------------------------------------------------------------------

int run_gaps(const RunConfig& c, const PotentialSpec& p, const Weight& w, Summary& sum) {
    auto triples = spectral_triples(p, c.n_lo, c.n_hi, c.K, c.jobs);
    GapReport rep = asymptotics_report(triples, w, p);
    write_gaps_csv(c.out_dir + "/gaps.csv", rep);
    sum.extra["lhs_sum"] = rep.lhs_sum;
    sum.extra["v_norm_sq"] = rep.v_norm_sq;
    sum.extra["v_norm_4"] = rep.v_norm_4;
    if (rep.envelope_violation) sum.violations.push_back("gap/deviation envelope violated");
    if (rep.twosided_violation) sum.violations.push_back("two-sided gap ratio left [0.75, 1.25]");
    return 0;
}

int run_reconstruct(const RunConfig& c, const PotentialSpec& p, const Weight& w, Summary& sum) {
    TailImage image = phi_tail(p, c.N, c.n_max, c.K, c.jobs);
    {
        std::ofstream f(c.out_dir + "/target_image.json");
        f << tail_image_to_json(image) << "\n";
    }
    ReconstructResult rr = reconstruct(image, w, c.K, 50, c.tol, c.jobs);

    // seeded scaled-pair contraction probe
    std::mt19937_64 rng((unsigned long long)c.seed);
    std::uniform_real_distribution<double> unif(0.5, 0.95);
    double t = unif(rng);
    double probe = contraction_probe(p, p.scaled(t), c.N, w, c.K, c.n_max, c.jobs);

    nlohmann::json rec = nlohmann::json::array();
    for (const auto& [m, qm] : rr.v.coeffs())
        rec.push_back({{"m", m}, {"re", qm.real()}, {"im", qm.imag()}});
    sum.extra["recovered_q"] = rec;
    sum.extra["iterations"] = rr.iterations;
    sum.extra["final_residual"] = rr.final_residual;
    sum.extra["decay_ratio"] = rr.decay_ratio;
    sum.extra["contraction_probe"] = probe;
    sum.extra["probe_scale"] = t;

    double max_err = 0;
    for (const auto& [m, qm] : p.coeffs()) max_err = std::max(max_err, std::abs(qm - rr.v.q(m)));
    for (const auto& [m, qm] : rr.v.coeffs()) max_err = std::max(max_err, std::abs(qm - p.q(m)));
    sum.extra["roundtrip_max_coeff_err"] = max_err;

    if (rr.final_residual > c.tol)
        sum.violations.push_back("reconstruction residual above tol");
    return 0;
}

int run_riesz(const RunConfig& c, const PotentialSpec& p, Summary& sum) {
    Bc family = (c.bc == "dir") ? Bc::Dir : Bc::PerPlus;
    auto rows = deviation_scan(p, c.n_lo, c.n_hi, family, c.K, c.jobs);
    write_riesz_csv(c.out_dir + "/riesz.csv", rows);
    sum.extra["loglog_slope"] = loglog_slope(rows);

    // spot invariants at the endpoints of the range
    for (int n : {c.n_lo, c.n_hi}) {
        Bc bc = (family == Bc::Dir) ? Bc::Dir : bc_for_index(n);
        ProjectionDeviation d = projection_deviation(p, n, bc, c.K, c.nodes);
        double expected_rank = (bc == Bc::Dir) ? 1.0 : 2.0;
        if (d.idempotency_defect > 1e-8)
            sum.violations.push_back("projection idempotency defect above 1e-8 at n = " +
                                     std::to_string(n));
        if (std::abs(d.trace - expected_rank) > 1e-8)
            sum.violations.push_back("projection trace defect above 1e-8 at n = " +
                                     std::to_string(n));
        if (d.l2_opnorm > d.l1_linf_proxy * (1 + 1e-12))
            sum.violations.push_back("opnorm exceeded l1 proxy at n = " + std::to_string(n));
    }
    return 0;
}

int run_perturb(const RunConfig& c, Summary&) {
    if (c.vk.empty()) throw ConfigError("perturb: vk coefficients required");
    auto recs = radius_report(c.vk, c.n_lo, c.n_hi);
    write_perturb_csv(c.out_dir + "/perturb.csv", recs);
    return 0;
}

int run_weights(const RunConfig& c, const Weight& w, Summary&) {
    std::string path = c.out_dir + "/weights.csv";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot open " + path);
    std::fprintf(f, "k,omega\n");
    for (int k = 0; k <= std::min(w.range(), std::max(c.n_hi * 4, 64)); ++k)
        std::fprintf(f, "%d,%.17g\n", k, w(k));
    std::fclose(f);
    return 0;
}

} // namespace

int run(const RunConfig& config) {
    Summary sum;
    sum.command = command_name(config.command);
    sum.hash = config_hash(config);
    try {
        std::filesystem::create_directories(config.out_dir);

        PotentialSpec p;
        if (!config.potential_json.empty()) p = potential_from_json(config.potential_json);
        Weight w = config.weight_json.empty()
                       ? make_weight_ratio([](int) { return 1.0; }, 4096)
                       : weight_from_json(config.weight_json);

        switch (config.command) {
            case Command::Spectrum: run_spectrum(config, p, sum); break;
            case Command::Gaps: run_gaps(config, p, w, sum); break;
            case Command::Reconstruct: run_reconstruct(config, p, w, sum); break;
            case Command::Riesz: run_riesz(config, p, sum); break;
            case Command::Perturb: run_perturb(config, sum); break;
            case Command::Weights: run_weights(config, w, sum); break;
        }
        sum.write(config.out_dir);
        return sum.violations.empty() ? 0 : 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "compute error [%s]: %s\n", sum.command.c_str(), e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}

RunConfig config_from_json_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(slurp(path));
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    RunConfig c;
    std::string cmd = j.at("command").get<std::string>();
    if (cmd == "spectrum") c.command = Command::Spectrum;
    else if (cmd == "gaps") c.command = Command::Gaps;
    else if (cmd == "reconstruct") c.command = Command::Reconstruct;
    else if (cmd == "riesz") c.command = Command::Riesz;
    else if (cmd == "perturb") c.command = Command::Perturb;
    else if (cmd == "weights") c.command = Command::Weights;
    else throw ConfigError("unknown command: " + cmd);

    auto inline_or_file = [&](const char* key) -> std::string {
        if (!j.contains(key)) return {};
        if (j[key].is_string()) return slurp(j[key].get<std::string>());
        return j[key].dump();
    };
    c.potential_json = inline_or_file("potential");
    c.weight_json = inline_or_file("weight");
    if (j.contains("n_range")) {
        c.n_lo = j["n_range"][0].get<int>();
        c.n_hi = j["n_range"][1].get<int>();
    }
    c.K = j.value("K", c.K);
    if (j.contains("method")) c.method = method_from(j["method"].get<std::string>());
    c.out_dir = j.value("out", c.out_dir);
    c.seed = j.value("seed", c.seed);
    c.nodes = j.value("nodes", c.nodes);
    c.tol = j.value("tol", c.tol);
    c.jobs = j.value("jobs", c.jobs);
    c.N = j.value("N", c.N);
    c.n_max = j.value("n_max", c.n_max);
    c.bc = j.value("bc", c.bc);
    if (j.contains("vk")) c.vk = j["vk"].get<std::vector<double>>();
    if (c.n_lo < 1 || c.n_hi < c.n_lo) throw ConfigError("invalid n_range");
    if (c.n_hi > c.K / 4) throw ConfigError("n_range must lie within [1, K/4]");
    return c;
}

void apply_override(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "out") c.out_dir = value;
    else if (key == "method") c.method = method_from(value);
    else if (key == "cutoff") c.K = std::stoi(value);
    else if (key == "nodes") c.nodes = std::stoi(value);
    else if (key == "tol") c.tol = std::stod(value);
    else if (key == "jobs") c.jobs = std::stoi(value);
    else if (key == "n-range") {
        auto pos = value.find("..");
        if (pos == std::string::npos) throw ConfigError("--n-range expects A..B");
        c.n_lo = std::stoi(value.substr(0, pos));
        c.n_hi = std::stoi(value.substr(pos + 2));
    } else {
        throw ConfigError("unknown override: " + key);
    }
}

std::string config_hash(const RunConfig& c) {
    nlohmann::json j;
    j["command"] = command_name(c.command);
    j["potential"] = c.potential_json;
    j["weight"] = c.weight_json;
    j["n_range"] = {c.n_lo, c.n_hi};
    j["K"] = c.K;
    j["method"] = (int)c.method;
    j["seed"] = c.seed;
    j["nodes"] = c.nodes;
    j["tol"] = c.tol;
    j["N"] = c.N;
    j["n_max"] = c.n_max;
    j["bc"] = c.bc;
    j["vk"] = c.vk;
    std::string s = j.dump();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

} // namespace hillgap
