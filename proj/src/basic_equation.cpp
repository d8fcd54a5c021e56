#include "hillgap/basic_equation.hpp"
#include "hillgap/errors.hpp"
#include "hillgap/matrix_op.hpp"

#include <algorithm>
#include <cmath>

namespace hillgap {

TMatrix build_T(const PotentialSpec& p, int n, cx z, int K) {
    if (std::abs(z) > n / 2.0 + 1e-12)
        throw InvalidParams("build_T: |z| exceeds the n/2 domain");
    if (K < 2 * n) throw CutoffTooSmall("build_T: K must be at least 2n");
    TMatrix t;
    for (int j = -K; j <= K; ++j)
        if ((j - n) % 2 == 0 && std::abs(j) != n) t.index_set.push_back(j);
    const int N = (int)t.index_set.size();
    const cx lambda = cx{(double)n * n, 0.0} + z;
    t.ktilde.resize(N);
    for (int a = 0; a < N; ++a) {
        int j = t.index_set[a];
        t.ktilde[a] = 1.0 / sqrt_halfopen(lambda - (double)j * j);
    }
    t.T = CMat(N, N);
    double hs2 = 0;
    for (int a = 0; a < N; ++a) {
        int j = t.index_set[a];
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            int k = t.index_set[b];
            cx v = p.V(j - k);
            if (v == cx{}) continue;
            cx e = v * t.ktilde[a] * t.ktilde[b];
            t.T(a, b) = e;
            hs2 += std::norm(e);
        }
    }
    t.hs_norm = std::sqrt(hs2);
    return t;
}

SMatrix s_matrix(const PotentialSpec& p, int n, cx z, int K, SeriesMode mode, int order) {
    TMatrix t = build_T(p, n, z, K);
    SMatrix s;
    s.n = n;
    s.z = z;
    s.K = K;
    s.series_mode = mode;
    s.neumann_order = (mode == SeriesMode::Neumann) ? order : 0;
    s.t_hs_norm = t.hs_norm;
    s.valid = t.hs_norm < 1.0;
    if (t.hs_norm > 0.9)
        throw TNormTooLarge("s_matrix: ||T||_HS = " + std::to_string(t.hs_norm) +
                            " > 0.9 at n = " + std::to_string(n));

    const int N = (int)t.index_set.size();
    std::vector<cx> w1(N), w2(N);
    for (int a = 0; a < N; ++a) {
        int j = t.index_set[a];
        w1[a] = t.ktilde[a] * p.V(j + n); // K~ V e_{-n}
        w2[a] = t.ktilde[a] * p.V(j - n); // K~ V e_{+n}
    }

    std::vector<cx> x1, x2;
    if (mode == SeriesMode::LinearSolve) {
        CMat A(N, N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) A(a, b) = (a == b ? cx{1.0} : cx{}) - t.T(a, b);
        LUFactor f = lu_factor(A);
        x1 = lu_solve(f, w1);
        x2 = lu_solve(f, w2);
        // backward residual of the two solves
        double res = 0;
        for (int a = 0; a < N; ++a) {
            cx r1 = w1[a], r2 = w2[a];
            r1 -= x1[a];
            r2 -= x2[a];
            for (int b = 0; b < N; ++b) {
                r1 += t.T(a, b) * x1[b];
                r2 += t.T(a, b) * x2[b];
            }
            res += std::norm(r1) + std::norm(r2);
        }
        s.residual_bound = std::sqrt(res);
    } else {
        // x = sum_{i=0}^{order-1} T^i w   (partial Neumann series)
        auto series = [&](const std::vector<cx>& w) {
            std::vector<cx> acc = w, power = w, tmp(N);
            for (int i = 1; i < order; ++i) {
                for (int a = 0; a < N; ++a) {
                    cx sum = 0;
                    for (int b = 0; b < N; ++b) sum += t.T(a, b) * power[b];
                    tmp[a] = sum;
                }
                power = tmp;
                for (int a = 0; a < N; ++a) acc[a] += power[a];
            }
            return acc;
        };
        x1 = series(w1);
        x2 = series(w2);
        double wnorm2 = 0;
        for (int a = 0; a < N; ++a) wnorm2 += std::norm(w1[a]) + std::norm(w2[a]);
        s.residual_bound =
            std::pow(t.hs_norm, order + 1) / (1.0 - t.hs_norm) * wnorm2;
    }

    cx s11 = p.V(0), s12 = p.V(-2 * n), s21 = p.V(2 * n), s22 = p.V(0);
    for (int a = 0; a < N; ++a) {
        int j = t.index_set[a];
        cx vm = p.V(-n - j); // row of e^1 = e_{-n}
        cx vp = p.V(n - j);  // row of e^2 = e_{+n}
        cx k1 = t.ktilde[a] * x1[a];
        cx k2 = t.ktilde[a] * x2[a];
        s11 += vm * k1;
        s12 += vm * k2;
        s21 += vp * k1;
        s22 += vp * k2;
    }
    s.s11 = s11;
    s.s12 = s12;
    s.s21 = s21;
    s.s22 = s22;
    return s;
}

namespace {

// One branch of the fixed point z = alpha(z) + sign * sqrt(beta^- beta^+),
// with square-root sign continuity between iterates.
struct BranchResult {
    cx z;
    SMatrix s;
    bool converged;
};

BranchResult follow_branch(const PotentialSpec& p, int n, int K, int sign, cx z0) {
    cx z = z0;
    cx s_prev{};
    bool have_prev = false;
    SMatrix sm;
    const double zmax = n / 2.0 - 1e-9;
    for (int it = 0; it < 300; ++it) {
        if (std::abs(z) > zmax) return {z, sm, false};
        sm = s_matrix(p, n, z, K);
        cx root = sqrt_halfopen(sm.s12 * sm.s21);
        if (have_prev && (root.real() * s_prev.real() + root.imag() * s_prev.imag()) < 0)
            root = -root;
        s_prev = root;
        have_prev = true;
        cx znew = sm.alpha() + (double)sign * root;
        if (std::abs(znew - z) < 1e-13 * (1.0 + std::abs(znew))) {
            z = znew;
            sm = s_matrix(p, n, z, K);
            return {z, sm, true};
        }
        z = znew;
    }
    return {z, sm, false};
}

cx basic_residual(const SMatrix& s) {
    cx zeta = s.z - s.alpha();
    return zeta * zeta - s.s12 * s.s21;
}

} // namespace

DiscPair solve_disc_pair(const PotentialSpec& p, int n, int K, bool validate_count) {
    const double radius = n / 4.0;
    BranchResult plus = follow_branch(p, n, K, +1, 0.0);
    BranchResult minus = follow_branch(p, n, K, -1, 0.0);
    if (!plus.converged || !minus.converged)
        throw NoRootInDisc("solve_disc_pair: fixed point did not converge at n = " +
                           std::to_string(n));

    // collapsed branches with a non-negligible off-diagonal product mean the
    // branches were started too close together; restart them spread apart
    double prod = std::sqrt(std::abs(plus.s.s12 * plus.s.s21));
    if (std::abs(plus.z - minus.z) < 1e-9 * (1.0 + std::abs(plus.z)) &&
        prod > 1e-8 * (1.0 + std::abs(plus.z))) {
        BranchResult p2 = follow_branch(p, n, K, +1, plus.z + 2.0 * prod);
        BranchResult m2 = follow_branch(p, n, K, -1, minus.z - 2.0 * prod);
        if (p2.converged && m2.converged) {
            plus = p2;
            minus = m2;
        }
    }

    for (const BranchResult* b : {&plus, &minus}) {
        if (std::abs(b->z) > radius * (1.0 + 1e-9))
            throw NoRootInDisc("solve_disc_pair: root outside D_n at n = " + std::to_string(n));
        double res = std::abs(basic_residual(b->s));
        if (res > 1e-10 * (1.0 + std::abs(b->z)))
            throw NoRootInDisc("solve_disc_pair: residual " + std::to_string(res) +
                               " too large at n = " + std::to_string(n));
    }

    if (validate_count) {
        TruncatedOperator op = assemble_matrix(p, bc_for_index(n), K);
        int count = disc_count(op, cx{(double)n * n, 0.0}, radius);
        if (count != 2)
            throw RootCountMismatch("solve_disc_pair: winding count " + std::to_string(count) +
                                    " != 2 on D_n at n = " + std::to_string(n));
    }

    DiscPair out;
    cx zp = plus.z, zm = minus.z;
    bool plus_first =
        (zp.real() > zm.real()) || (zp.real() == zm.real() && zp.imag() >= zm.imag());
    const BranchResult& hi = plus_first ? plus : minus;
    const BranchResult& lo = plus_first ? minus : plus;
    out.lambda_plus = cx{(double)n * n, 0.0} + hi.z;
    out.lambda_minus = cx{(double)n * n, 0.0} + lo.z;
    out.s_plus = hi.s;
    out.s_minus = lo.s;
    out.degenerate = std::abs(hi.z - lo.z) < 1e-9 * (1.0 + std::abs(hi.z));
    out.geometric_mult2 =
        out.degenerate && std::abs(hi.s.s12) + std::abs(hi.s.s21) < 1e-9;
    return out;
}

int n_star(const PotentialSpec& p, int K) {
    TruncatedOperator even_op, odd_op, dir_op;
    bool have_even = false, have_odd = false, have_dir = false;
    for (int n = 1; n <= K / 2; ++n) {
        if (2 * n > K) break;
        TMatrix t0 = build_T(p, n, 0.0, K);
        if (t0.hs_norm > 0.5) continue;
        bool stable = true;
        for (int j = 0; j < 8 && stable; ++j) {
            cx z = std::polar(n / 4.0, 2.0 * M_PI * j / 8.0);
            if (build_T(p, n, z, K).hs_norm > 0.5) stable = false;
        }
        if (!stable) continue;
        // localization: D_n must carry the per pair and one Dirichlet point
        const bool even = (n % 2 == 0);
        if (even && !have_even) { even_op = assemble_matrix(p, Bc::PerPlus, K); have_even = true; }
        if (!even && !have_odd) { odd_op = assemble_matrix(p, Bc::PerMinus, K); have_odd = true; }
        const TruncatedOperator& op = even ? even_op : odd_op;
        if (disc_count(op, cx{(double)n * n, 0.0}, n / 4.0) != 2) continue;
        if (!have_dir) { dir_op = assemble_matrix(p, Bc::Dir, K); have_dir = true; }
        if (disc_count(dir_op, cx{(double)n * n, 0.0}, n / 4.0) == 1) return n;
    }
    throw NotReached("n_star: no admissible n within K/2");
}

} // namespace hillgap
