#include "hillgap/shooting.hpp"
#include "hillgap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hillgap {

namespace {

// State carried through RK4: the 2x2 transfer matrix and its lambda-derivative.
struct Flow {
    cx m[2][2];
    cx s[2][2];
};

// Q samples on the half-step grid x_j = j h / 2, j = 0..2*steps.
std::vector<cx> q_grid(const PotentialSpec& p, int steps) {
    std::vector<cx> g(2 * steps + 1);
    const double h2 = M_PI / (2.0 * steps);
    for (int j = 0; j <= 2 * steps; ++j) g[j] = p.Q_at(j * h2);
    return g;
}

// Derivative of the combined state at one sample: M' = A M, S' = A S + A_l M
// with A = [[Q, 1], [C - lambda - Q^2, -Q]] and A_l = [[0,0],[-1,0]].
inline void deriv(const Flow& f, cx Q, cx c_minus_lambda, Flow& out) {
    const cx a21 = c_minus_lambda - Q * Q;
    for (int j = 0; j < 2; ++j) {
        const cx m1 = f.m[0][j], m2 = f.m[1][j];
        out.m[0][j] = Q * m1 + m2;
        out.m[1][j] = a21 * m1 - Q * m2;
        const cx s1 = f.s[0][j], s2 = f.s[1][j];
        out.s[0][j] = Q * s1 + s2;
        out.s[1][j] = a21 * s1 - Q * s2 - m1;
    }
}

inline void axpy(Flow& y, double a, const Flow& x) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            y.m[i][j] += a * x.m[i][j];
            y.s[i][j] += a * x.s[i][j];
        }
}

Flow integrate(const PotentialSpec& p, cx lambda, const std::vector<cx>& grid, int steps) {
    const double h = M_PI / steps;
    const cx cml = p.v0() - lambda;
    Flow y{};
    y.m[0][0] = y.m[1][1] = 1.0;
    Flow k1, k2, k3, k4, t;
    for (int i = 0; i < steps; ++i) {
        const cx q0 = grid[2 * i], qh = grid[2 * i + 1], q1 = grid[2 * i + 2];
        deriv(y, q0, cml, k1);
        t = y; axpy(t, h / 2, k1);
        deriv(t, qh, cml, k2);
        t = y; axpy(t, h / 2, k2);
        deriv(t, qh, cml, k3);
        t = y; axpy(t, h, k3);
        deriv(t, q1, cml, k4);
        axpy(y, h / 6, k1);
        axpy(y, h / 3, k2);
        axpy(y, h / 3, k3);
        axpy(y, h / 6, k4);
    }
    return y;
}

inline Flow richardson(const Flow& coarse, const Flow& fine) {
    Flow r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            r.m[i][j] = (16.0 * fine.m[i][j] - coarse.m[i][j]) / 15.0;
            r.s[i][j] = (16.0 * fine.s[i][j] - coarse.s[i][j]) / 15.0;
        }
    return r;
}

double flow_diff(const Flow& a, const Flow& b) {
    double d = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a.m[i][j] - b.m[i][j]));
    return d;
}

constexpr int kMaxSteps = 1 << 20;

// Shared context for repeated evaluations at one potential: grids per level.
class Shooter {
public:
    Shooter(const PotentialSpec& p, int base_steps) : p_(p), base_(base_steps) {}

    // Richardson pair at the held step count.
    Flow eval(cx lambda) {
        const std::vector<cx>& g2 = grid(steps_ * 2);
        const std::vector<cx>& g1 = grid(steps_);
        Flow coarse = integrate(p_, lambda, g1, steps_);
        Flow fine = integrate(p_, lambda, g2, steps_ * 2);
        return richardson(coarse, fine);
    }

    // Pick the step count so that doubling changes the matrix by < tol at seed.
    void calibrate(cx seed, double tol) {
        steps_ = base_;
        Flow prev = integrate(p_, seed, grid(steps_), steps_);
        while (steps_ * 2 <= kMaxSteps) {
            Flow next = integrate(p_, seed, grid(steps_ * 2), steps_ * 2);
            cert_ = flow_diff(prev, next);
            mmax_ = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) mmax_ = std::max(mmax_, std::abs(next.m[i][j]));
            if (cert_ < tol * (1.0 + mmax_)) return;
            prev = next;
            steps_ *= 2;
        }
        throw StepConvergenceFailure("shooting: step doubling did not stabilize");
    }

    int steps() const { return steps_; }
    // rounding/extrapolation floor of a single evaluated entry
    double noise() const { return cert_ / 20.0 + 1e-15 * (1.0 + mmax_); }

private:
    const std::vector<cx>& grid(int steps) {
        for (auto& [s, g] : grids_)
            if (s == steps) return g;
        grids_.emplace_back(steps, q_grid(p_, steps));
        return grids_.back().second;
    }

    const PotentialSpec& p_;
    int base_;
    int steps_ = 0;
    double cert_ = 0.0;
    double mmax_ = 1.0;
    std::vector<std::pair<int, std::vector<cx>>> grids_;
};

} // namespace

MonodromyResult monodromy(const PotentialSpec& p, cx lambda, int steps) {
    if (steps < 256) throw InvalidParams("monodromy: steps must be >= 256");
    std::vector<cx> g1 = q_grid(p, steps);
    Flow prev = integrate(p, lambda, g1, steps);
    int s = steps;
    while (true) {
        if (s * 2 > kMaxSteps)
            throw StepConvergenceFailure("monodromy: no convergence below the step cap");
        std::vector<cx> g2 = q_grid(p, 2 * s);
        Flow next = integrate(p, lambda, g2, 2 * s);
        if (flow_diff(prev, next) < 1e-8) {
            Flow r = richardson(prev, next);
            MonodromyResult out;
            out.lambda = lambda;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out.M[i][j] = r.m[i][j];
            out.y2_pi = out.M[0][1];
            out.steps = 2 * s;
            out.det_defect =
                std::abs(out.M[0][0] * out.M[1][1] - out.M[0][1] * out.M[1][0] - 1.0);
            return out;
        }
        prev = next;
        s *= 2;
    }
}

cx monodromy_trace(const MonodromyResult& m) { return m.M[0][0] + m.M[1][1]; }

namespace {

struct FVal {
    cx f;
    cx fp;
};

// f and f' for the boundary-condition function at lambda.
FVal bc_function(Shooter& sh, Bc bc, cx lambda) {
    Flow w = sh.eval(lambda);
    if (bc == Bc::Dir) return {w.m[0][1], w.s[0][1]};
    const double target = (bc == Bc::PerPlus) ? 2.0 : -2.0;
    return {w.m[0][0] + w.m[1][1] - target, w.s[0][0] + w.s[1][1]};
}

cx newton_root(Shooter& sh, Bc bc, cx seed, double damp_radius, bool* stalled = nullptr) {
    cx x = seed;
    cx best_x = x;
    double best_f = 1e300;
    if (stalled) *stalled = false;
    for (int it = 0; it < 60; ++it) {
        FVal v = bc_function(sh, bc, x);
        double af = std::abs(v.f);
        if (af < best_f) { best_f = af; best_x = x; }
        if (v.fp == cx{}) break;
        cx step = v.f / v.fp;
        if (std::abs(step) > damp_radius) step *= damp_radius / std::abs(step);
        x -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) return x;
    }
    if (stalled) *stalled = true;
    return best_x;
}

cx muller_root(Shooter& sh, Bc bc, cx x0, cx x1, cx x2) {
    cx f0 = bc_function(sh, bc, x0).f;
    cx f1 = bc_function(sh, bc, x1).f;
    cx f2 = bc_function(sh, bc, x2).f;
    for (int it = 0; it < 60; ++it) {
        cx h1 = x1 - x0, h2 = x2 - x1;
        if (h1 == cx{} || h2 == cx{}) break;
        cx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
        cx a = (d2 - d1) / (h2 + h1);
        cx b = a * h2 + d2;
        cx disc = sqrt_halfopen(b * b - 4.0 * f2 * a);
        cx den = (std::abs(b + disc) > std::abs(b - disc)) ? b + disc : b - disc;
        if (den == cx{}) break;
        cx x3 = x2 - 2.0 * f2 / den;
        cx f3 = bc_function(sh, bc, x3).f;
        x0 = x1; f0 = f1;
        x1 = x2; f1 = f2;
        x2 = x3; f2 = f3;
        if (std::abs(x2 - x1) < 1e-13 * (1.0 + std::abs(x2))) break;
    }
    return x2;
}

// Newton on f' (the second derivative by central difference of the
// variational derivative); lands on the extremum between a close pair.
cx newton_on_fprime(Shooter& sh, Bc bc, cx x, double damp_radius, bool* converged) {
    *converged = false;
    for (int it = 0; it < 50; ++it) {
        FVal v = bc_function(sh, bc, x);
        double h = 1e-6 * (1.0 + std::abs(x));
        cx fpp = (bc_function(sh, bc, x + h).fp - bc_function(sh, bc, x - h).fp) / (2.0 * h);
        if (fpp == cx{}) return x;
        cx step = v.fp / fpp;
        if (std::abs(step) > damp_radius) step *= damp_radius / std::abs(step);
        x -= step;
        if (std::abs(step) < 1e-12 * (1.0 + std::abs(x))) {
            *converged = true;
            return x;
        }
    }
    return x;
}

} // namespace

LocateResult locate_bc_eigenvalues(const PotentialSpec& p, Bc bc, int n) {
    if (n < 1) throw InvalidParams("locate_bc_eigenvalues: n must be >= 1");
    const cx center = (double)n * n;
    const double radius = n / 4.0;
    const double in_disc_tol = radius * (1.0 + 1e-9) + 1e-12;

    Shooter sh(p, 256);
    sh.calibrate(center, 1e-12);

    auto in_disc = [&](cx x) { return std::abs(x - center) <= in_disc_tol; };
    auto fval = [&](cx x) { return std::abs(bc_function(sh, bc, x).f); };

    if (bc == Bc::Dir) {
        bool stalled = false;
        cx r = newton_root(sh, bc, center, radius, &stalled);
        if (stalled || !in_disc(r) || fval(r) > 1e-8)
            r = muller_root(sh, bc, center - radius / 2, center, center + radius / 2);
        if (!in_disc(r))
            throw RootNotFound("locate: Dirichlet root left the disc at n = " + std::to_string(n));
        if (fval(r) > 1e-8)
            throw RootNotFound("locate: Dirichlet residual too large at n = " + std::to_string(n));
        return {{r}, false};
    }

    // The pair straddles an extremum of f; a quadratic model there either
    // certifies a double root (splitting below the evaluation noise) or
    // seeds Newton on both sides.
    bool have_extremum = false;
    cx le = newton_on_fprime(sh, bc, center, radius, &have_extremum);
    if (!in_disc(le)) have_extremum = false;

    cx split{radius / 4.0, 0.0};
    double tol_split = 1e-9 * (1.0 + std::abs(center));
    if (have_extremum) {
        FVal ve = bc_function(sh, bc, le);
        double h = 1e-6 * (1.0 + std::abs(le));
        cx fpp = (bc_function(sh, bc, le + h).fp - bc_function(sh, bc, le - h).fp) / (2.0 * h);
        if (fpp != cx{}) {
            split = sqrt_halfopen(-2.0 * ve.f / fpp);
            tol_split = 8.0 * std::sqrt(sh.noise() / std::max(std::abs(fpp), 1e-8)) +
                        1e-12 * (1.0 + std::abs(le));
            if (std::abs(split) <= tol_split) return {{le, le}, true};
        }
    }

    cx seed1 = have_extremum ? le + split : center + radius / 2.0;
    cx seed2 = have_extremum ? le - split : center - radius / 2.0;
    bool st1 = false, st2 = false;
    cx r1 = newton_root(sh, bc, seed1, radius, &st1);
    cx r2 = newton_root(sh, bc, seed2, radius, &st2);
    if (st1 || !in_disc(r1) || fval(r1) > 1e-8)
        r1 = muller_root(sh, bc, seed1, seed1 + split * 0.5, seed1 - split * 0.25);
    if (st2 || !in_disc(r2) || fval(r2) > 1e-8)
        r2 = muller_root(sh, bc, seed2, seed2 - split * 0.5, seed2 + split * 0.25);
    if (!in_disc(r1) && in_disc(r2)) std::swap(r1, r2);
    if (!in_disc(r1))
        throw RootNotFound("locate: no per root in the disc at n = " + std::to_string(n));

    if (!in_disc(r2) || std::abs(r2 - r1) < std::max(tol_split, 1e-9 * (1.0 + std::abs(r1)))) {
        // both Newton branches collapsed onto one point
        cx rd = have_extremum ? le : r1;
        return {{rd, rd}, true};
    }
    if (fval(r1) > 1e-8 || fval(r2) > 1e-8)
        throw RootNotFound("locate: per residual too large at n = " + std::to_string(n));
    return {{r1, r2}, false};
}

} // namespace hillgap
