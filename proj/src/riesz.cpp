#include "hillgap/riesz.hpp"
#include "hillgap/errors.hpp"
#include "hillgap/parallel.hpp"

#include <cmath>
#include <cstdio>

namespace hillgap {

namespace {

// Mean of n e^{i theta} (z(theta) I - M)^{-1} over the given angles;
// equals the trapezoid rule for (2 pi i)^{-1} times the contour integral.
CMat resolvent_mean(const CMat& m, double n, const std::vector<double>& thetas) {
    const int N = m.rows();
    CMat acc(N, N);
    const double inv_count = 1.0 / (double)thetas.size();
    for (double th : thetas) {
        cx zc = cx{n * n, 0.0} + std::polar(n, th);
        CMat a(N, N);
        for (int r = 0; r < N; ++r) {
            for (int c = 0; c < N; ++c) a(r, c) = -m(r, c);
            a(r, r) += zc;
        }
        CMat inv = lu_inverse(lu_factor(std::move(a)));
        cx w = n * std::polar(1.0, th) * inv_count;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) acc(r, c) += w * inv(r, c);
    }
    return acc;
}

double abs_sum(const CMat& b) {
    double s = 0;
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) s += std::abs(b(i, j));
    return s;
}

} // namespace

ProjectionDeviation projection_deviation(const PotentialSpec& p, int n, Bc bc, int K,
                                         int nodes) {
    if (nodes < 8) throw InvalidParams("projection_deviation: nodes must be >= 8");
    TruncatedOperator op = assemble_matrix(p, bc, K);
    const int N = (int)op.index_set.size();
    const double radius = (double)n;

    // contour clearance against the truncated spectrum
    std::vector<cx> eigs = eig_values(op.matrix);
    for (const cx& e : eigs)
        if (std::abs(std::abs(e - cx{(double)n * n, 0.0}) - radius) < 1e-4 * n)
            throw EigenvalueOnContour("projection_deviation: eigenvalue within 1e-4 n of C_n");

    // trapezoid on the circle = average over equally spaced nodes; doubling
    // reuses the previous nodes and adds the midpoints
    auto thetas_at = [](int count, int stride_offset, int total) {
        std::vector<double> th;
        th.reserve(count);
        for (int j = 0; j < count; ++j)
            th.push_back(2.0 * M_PI * (2.0 * j + stride_offset) / (2.0 * total));
        return th;
    };

    int J = nodes;
    CMat P = resolvent_mean(op.matrix, n, thetas_at(J, 0, J));
    double prev_proxy = -1;
    const int max_nodes = 8192;
    while (true) {
        // deviation at the current node count
        CMat B = P;
        for (int a = 0; a < N; ++a) {
            int k = op.index_set[a];
            bool in0 = (bc == Bc::Dir) ? (k == n) : (std::abs(k) == n);
            if (in0) B(a, a) -= 1.0;
        }
        double proxy = abs_sum(B);
        if (prev_proxy >= 0 && std::abs(proxy - prev_proxy) < 1e-9) {
            ProjectionDeviation d;
            d.n = n;
            d.bc = bc;
            d.quadrature_nodes = J;
            d.basis_sup_sq = (bc == Bc::Dir) ? 2.0 : 1.0;
            d.l1_linf_proxy = proxy;
            d.l2_opnorm = opnorm_2(B);
            d.idempotency_defect = ((P * P) - P).max_abs();
            d.trace = P.trace();
            d.B = std::move(B);
            return d;
        }
        prev_proxy = proxy;
        if (2 * J > max_nodes)
            throw QuadratureStall("projection_deviation: proxy did not settle by " +
                                  std::to_string(max_nodes) + " nodes");
        CMat mid = resolvent_mean(op.matrix, n, thetas_at(J, 1, J));
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) P(r, c) = 0.5 * (P(r, c) + mid(r, c));
        J *= 2;
    }
}

std::vector<DeviationScanRow> deviation_scan(const PotentialSpec& p, int n_lo, int n_hi,
                                             Bc bc_family, int K, int jobs) {
    if (n_lo < 1 || n_hi < n_lo) throw InvalidParams("deviation_scan: bad n range");
    std::vector<DeviationScanRow> rows(n_hi - n_lo + 1);
    parallel_for(n_hi - n_lo + 1, jobs, [&](int i) {
        int n = n_lo + i;
        Bc bc = (bc_family == Bc::Dir) ? Bc::Dir : bc_for_index(n);
        ProjectionDeviation d = projection_deviation(p, n, bc, K);
        rows[i] = {n, d.l1_linf_proxy, d.l2_opnorm, d.quadrature_nodes};
    });
    return rows;
}

double loglog_slope(const std::vector<DeviationScanRow>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& r : rows) {
        if (r.l1_linf_proxy <= 0) continue;
        double x = std::log((double)r.n), y = std::log(r.l1_linf_proxy);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void write_riesz_csv(const std::string& path, const std::vector<DeviationScanRow>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("write_riesz_csv: cannot open " + path);
    std::fprintf(f, "n,proxy,opnorm,nodes\n");
    for (const auto& r : rows)
        std::fprintf(f, "%d,%.17g,%.17g,%d\n", r.n, r.l1_linf_proxy, r.l2_opnorm, r.nodes);
    std::fclose(f);
}

} // namespace hillgap
