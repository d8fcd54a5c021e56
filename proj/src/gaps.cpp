#include "hillgap/gaps.hpp"
#include "hillgap/errors.hpp"
#include "hillgap/parallel.hpp"
#include "hillgap/shooting.hpp"

#include <cmath>
#include <cstdio>

namespace hillgap {

std::vector<SpectralTriple> spectral_triples(const PotentialSpec& p, int n_lo, int n_hi,
                                             int K, int jobs) {
    if (n_lo < 1 || n_hi < n_lo) throw InvalidParams("spectral_triples: bad n range");
    if (n_hi > K / 4)
        throw InvalidParams("spectral_triples: n range exceeds K/4");
    int ns = n_star(p, K);
    if (n_lo < ns)
        throw InvalidParams("spectral_triples: n range starts below n_star = " +
                            std::to_string(ns));

    std::vector<SpectralTriple> out(n_hi - n_lo + 1);
    parallel_for(n_hi - n_lo + 1, jobs, [&](int i) {
        const int n = n_lo + i;
        DiscPair pair = solve_disc_pair(p, n, K);
        SpectralTriple t;
        t.n = n;
        t.lambda_plus = pair.lambda_plus;
        t.lambda_minus = pair.lambda_minus;
        t.degenerate = pair.degenerate;

        cx mu;
        try {
            mu = locate_bc_eigenvalues(p, Bc::Dir, n).values.at(0);
        } catch (const Error&) {
            TruncatedOperator op = assemble_matrix(p, Bc::Dir, K);
            auto eigs = eigs_in_disc(op, cx{(double)n * n, 0.0}, n / 4.0);
            if (eigs.size() != 1)
                throw RootNotFound("spectral_triples: no unique Dirichlet eigenvalue at n = " +
                                   std::to_string(n));
            mu = eigs[0].value;
        }
        t.mu = mu;
        t.gamma = std::abs(t.lambda_plus - t.lambda_minus);
        t.delta = std::abs(t.mu - (t.lambda_plus + t.lambda_minus) / 2.0);
        t.Delta = t.gamma + std::abs(t.lambda_plus - t.mu);
        t.z_star = (t.lambda_plus + t.lambda_minus) / 2.0 - cx{(double)n * n, 0.0};

        SMatrix szs = s_matrix(p, n, t.z_star, K);
        t.beta_minus_zs = szs.beta_minus();
        t.beta_plus_zs = szs.beta_plus();
        out[i] = t;
    });
    return out;
}

GapReport asymptotics_report(const std::vector<SpectralTriple>& triples, const Weight& w,
                             const PotentialSpec& p) {
    GapReport r;
    r.triples = triples;
    for (const auto& t : triples) r.lhs_sum += t.gamma * t.gamma * w(t.n) * w(t.n);

    // ||v||_Omega over the v_k = V(2k) table (k = 0 carries v0)
    double s = std::norm(p.v0());
    for (int k = 1; 2 * k <= p.max_support(); ++k)
        s += (std::norm(p.V(2 * k)) + std::norm(p.V(-2 * k))) * w(k) * w(k);
    r.v_norm_sq = s;
    r.v_norm_4 = s * s;

    const double lo441 = 1.0 / 72.0, hi441 = 58.0;
    for (const auto& t : triples) {
        GapReport::Row row;
        row.n = t.n;
        double denom = std::abs(t.beta_minus_zs) + std::abs(t.beta_plus_zs);
        row.has_ratio = denom > 1e-12;
        row.ratio_gamma = row.has_ratio ? t.gamma / denom : 0.0;
        row.ratio_441 =
            row.has_ratio ? (t.gamma + std::abs(t.mu - t.lambda_plus)) / denom : 0.0;
        if (denom > 1e-10 &&
            (row.ratio_441 < lo441 || row.ratio_441 > hi441))
            r.envelope_violation = true;
        r.ratio_table.push_back(row);
    }
    if (p.real_flag() && !r.ratio_table.empty()) {
        // asymptotic two-sided check at the largest tested n, eta = 0.25
        for (auto it = r.ratio_table.rbegin(); it != r.ratio_table.rend(); ++it) {
            if (!it->has_ratio) continue;
            if (it->ratio_gamma < 0.75 || it->ratio_gamma > 1.25) r.twosided_violation = true;
            break;
        }
    }
    return r;
}

double gap_decay_slope(const std::vector<SpectralTriple>& triples) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& t : triples) {
        if (t.gamma <= 0) continue;
        double x = t.n * std::log((double)t.n), y = std::log(t.gamma);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void write_gaps_csv(const std::string& path, const GapReport& report) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("write_gaps_csv: cannot open " + path);
    std::fprintf(f, "n,lam_plus_re,lam_plus_im,lam_minus_re,lam_minus_im,mu_re,mu_im,"
                    "gamma,delta,Delta,beta_plus_abs,beta_minus_abs,ratio_441\n");
    for (size_t i = 0; i < report.triples.size(); ++i) {
        const auto& t = report.triples[i];
        const auto& row = report.ratio_table[i];
        std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,",
                     t.n, t.lambda_plus.real(), t.lambda_plus.imag(), t.lambda_minus.real(),
                     t.lambda_minus.imag(), t.mu.real(), t.mu.imag(), t.gamma, t.delta, t.Delta,
                     std::abs(t.beta_plus_zs), std::abs(t.beta_minus_zs));
        if (row.has_ratio)
            std::fprintf(f, "%.17g\n", row.ratio_441);
        else
            std::fprintf(f, "\n");
    }
    std::fclose(f);
}

} // namespace hillgap
