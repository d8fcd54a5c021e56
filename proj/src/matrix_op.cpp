#include "hillgap/matrix_op.hpp"
#include "hillgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hillgap {

Bc bc_for_index(int n) { return (n % 2 == 0) ? Bc::PerPlus : Bc::PerMinus; }

TruncatedOperator assemble_matrix(const PotentialSpec& p, Bc bc, int K) {
    if (K < 8) throw CutoffTooSmall("assemble_matrix: K must be >= 8");
    TruncatedOperator op;
    op.bc = bc;
    op.cutoff = K;
    if (bc == Bc::PerPlus) {
        for (int k = -K; k <= K; ++k)
            if (k % 2 == 0) op.index_set.push_back(k);
    } else if (bc == Bc::PerMinus) {
        for (int k = -K; k <= K; ++k)
            if (k % 2 != 0) op.index_set.push_back(k);
    } else {
        for (int k = 1; k <= K; ++k) op.index_set.push_back(k);
    }
    const int N = (int)op.index_set.size();
    op.matrix = CMat(N, N);
    if (bc == Bc::Dir) {
        // V~(d) needed for d = |k-m| in [0, K-1] and k+m in [3, 2K]
        std::vector<cx> vt(2 * K + 1, cx{});
        for (int d = 1; d <= 2 * K; ++d) vt[d] = fourier_coeff_V(p, d, Basis::Sine);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int a = 0; a < N; ++a) {
            int k = op.index_set[a];
            for (int b = 0; b < N; ++b) {
                int m = op.index_set[b];
                op.matrix(a, b) = (vt[std::abs(k - m)] - vt[k + m]) * inv_sqrt2;
            }
            op.matrix(a, a) += (double)k * k + p.v0();
        }
    } else {
        for (int a = 0; a < N; ++a) {
            int k = op.index_set[a];
            for (int b = 0; b < N; ++b) {
                int m = op.index_set[b];
                op.matrix(a, b) = p.V(k - m);
            }
            op.matrix(a, a) += (double)k * k + p.v0();
        }
    }
    return op;
}

int disc_count(const TruncatedOperator& op, cx center, double radius) {
    return winding_count(op.matrix, center, radius);
}

std::vector<DiscEig> eigs_in_disc(const TruncatedOperator& op, cx center, double radius) {
    std::vector<cx> all = eig_values(op.matrix);

    double r = radius;
    const double clearance = 1e-6;
    bool ok = false;
    for (int attempt = 0; attempt < 4; ++attempt) {
        ok = true;
        for (const cx& e : all)
            if (std::abs(std::abs(e - center) - r) < clearance) { ok = false; break; }
        if (ok) break;
        r = radius * (1.0 + 2e-5 * (attempt + 1));
    }
    if (!ok)
        throw BoundaryEigenvalue("eigs_in_disc: eigenvalue within 1e-6 of the disc boundary");

    std::vector<cx> inside;
    for (const cx& e : all)
        if (std::abs(e - center) < r) inside.push_back(e);

    int count = winding_count(op.matrix, center, r);
    if (count != (int)inside.size())
        throw ConvergenceFailure("eigs_in_disc: eigensolver count " +
                                 std::to_string(inside.size()) +
                                 " disagrees with the winding count " + std::to_string(count));

    std::sort(inside.begin(), inside.end(), [](cx a, cx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<DiscEig> out;
    // cluster only within the eigensolver's own resolution (backward error
    // of order eps times the matrix scale), so physical near-degeneracies
    // stay split
    const double cluster =
        50.0 * 2.3e-16 * op.matrix.frobenius() + 1e-13 * (1.0 + std::abs(center));
    for (const cx& e : inside) {
        if (!out.empty() && std::abs(e - out.back().value) < cluster)
            ++out.back().multiplicity;
        else
            out.push_back({e, 1});
    }
    return out;
}

void export_matrix_csv(const TruncatedOperator& op, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("export_matrix_csv: cannot open " + path);
    const int N = (int)op.index_set.size();
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const cx& v = op.matrix(i, j);
            std::fprintf(f, "%.17g,%.17g%s", v.real(), v.imag(), j + 1 < N ? "," : "\n");
        }
    }
    std::fclose(f);
}

} // namespace hillgap
