#include "hillgap/linalg.hpp"
#include "hillgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hillgap {

cx sqrt_halfopen(cx z) {
    double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};
    double phi = std::arg(z); // (-pi, pi]
    if (phi == M_PI) phi = -M_PI;
    return std::polar(std::sqrt(r), phi / 2.0);
}

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::operator*(const CMat& b) const {
    CMat out(r_, b.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            cx aik = (*this)(i, k);
            if (aik == cx{}) continue;
            const cx* brow = b.data() + static_cast<size_t>(k) * b.c_;
            cx* orow = out.data() + static_cast<size_t>(i) * b.c_;
            for (int j = 0; j < b.c_; ++j) orow[j] += aik * brow[j];
        }
    return out;
}

CMat CMat::operator-(const CMat& b) const {
    CMat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - b.a_[i];
    return out;
}

double CMat::max_abs() const {
    double m = 0;
    for (const cx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMat::frobenius() const {
    double s = 0;
    for (const cx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

cx CMat::trace() const {
    cx t = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

LUFactor lu_factor(CMat a) {
    const int n = a.rows();
    LUFactor f;
    f.piv.resize(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        f.piv[k] = p;
        if (p != k) {
            ++f.swaps;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        }
        if (best == 0.0) { f.singular = true; continue; }
        cx inv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            cx lik = a(i, k) * inv;
            a(i, k) = lik;
            if (lik == cx{}) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

std::vector<cx> lu_solve(const LUFactor& f, std::vector<cx> b) {
    const int n = f.lu.rows();
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
    for (int i = 1; i < n; ++i) {
        cx s = b[i];
        for (int j = 0; j < i; ++j) s -= f.lu(i, j) * b[j];
        b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        cx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * b[j];
        b[i] = s / f.lu(i, i);
    }
    return b;
}

CMat lu_solve_mat(const LUFactor& f, CMat b) {
    const int n = f.lu.rows(), m = b.cols();
    std::vector<cx> col(n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) col[i] = b(i, j);
        col = lu_solve(f, std::move(col));
        for (int i = 0; i < n; ++i) b(i, j) = col[i];
    }
    return b;
}

void lu_det_log(const LUFactor& f, double& log_abs, double& arg) {
    log_abs = 0.0;
    arg = (f.swaps % 2) ? M_PI : 0.0;
    const int n = f.lu.rows();
    for (int i = 0; i < n; ++i) {
        cx d = f.lu(i, i);
        log_abs += std::log(std::abs(d));
        arg += std::arg(d);
    }
    arg = std::remainder(arg, 2.0 * M_PI);
}

CMat lu_inverse(const LUFactor& f) {
    return lu_solve_mat(f, CMat::identity(f.lu.rows()));
}

// ---------------------------------------------------------------------------
// Dense complex eigenvalues: Householder Hessenberg + shifted QR.
// ---------------------------------------------------------------------------

namespace {

void hessenberg(CMat& h) {
    const int n = h.rows();
    for (int k = 0; k + 2 < n; ++k) {
        // Householder vector for column k, rows k+1..n-1
        double scale = 0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(h(i, k));
        if (scale == 0.0) continue;
        std::vector<cx> v(n - k - 1);
        double norm2 = 0;
        for (int i = k + 1; i < n; ++i) {
            v[i - k - 1] = h(i, k) / scale;
            norm2 += std::norm(v[i - k - 1]);
        }
        double alpha = std::sqrt(norm2);
        if (alpha == 0.0) continue;
        cx phase = (v[0] == cx{}) ? cx{1.0} : v[0] / std::abs(v[0]);
        cx beta = -phase * alpha;           // new subdiagonal element (scaled)
        v[0] -= beta;
        double vnorm2 = 0;
        for (const cx& x : v) vnorm2 += std::norm(x);
        if (vnorm2 == 0.0) continue;
        // H <- (I - 2 v v^H / v^H v) H  on rows k+1..,
        for (int j = k; j < n; ++j) {
            cx s = 0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i - k - 1];
        }
        // H <- H (I - 2 v v^H / v^H v)  on columns k+1..
        for (int i = 0; i < n; ++i) {
            cx s = 0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
            s *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j - k - 1]);
        }
        h(k + 1, k) = beta * scale;
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens { double c; cx s; };

Givens make_givens(cx a, cx b) {
    Givens g;
    double aa = std::abs(a), ab = std::abs(b);
    if (ab == 0.0) { g.c = 1.0; g.s = 0.0; return g; }
    if (aa == 0.0) { g.c = 0.0; g.s = (b == cx{}) ? cx{1.0} : std::conj(b) / ab; return g; }
    double nrm = std::hypot(aa, ab);
    cx alpha = a / aa;
    g.c = aa / nrm;
    g.s = alpha * std::conj(b) / nrm;
    return g;
}

} // namespace

std::vector<cx> eig_values(CMat h) {
    const int n = h.rows();
    std::vector<cx> ev(n);
    if (n == 0) return ev;
    if (n == 1) { ev[0] = h(0, 0); return ev; }
    hessenberg(h);

    const double eps = 2.3e-16;
    int hi = n - 1;
    int iter = 0, total = 0;
    const int max_total = 60 * n;
    std::vector<Givens> rot(n);

    while (hi >= 0) {
        // deflation scan
        int lo = hi;
        while (lo > 0) {
            double sd = std::abs(h(lo, lo - 1));
            double d = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (d == 0.0) d = h.frobenius() / n;
            if (sd <= eps * d) { h(lo, lo - 1) = 0.0; break; }
            --lo;
        }
        if (lo == hi) { ev[hi] = h(hi, hi); --hi; iter = 0; continue; }
        if (++total > max_total)
            throw ConvergenceFailure("eig_values: QR iteration failed to converge");

        // Wilkinson shift from trailing 2x2 of the active block; the
        // discriminant uses ((a-d)/2)^2 + bc, which keeps the splitting of
        // nearly equal eigenvalues where (a+d)^2/4 - det cancels
        cx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
        cx sigma;
        if (++iter % 12 == 0) {
            sigma = d + cx{std::abs(h(hi, hi - 1)) + std::abs(a - d), 0.0} * 0.75; // exceptional
        } else {
            cx tr2 = (a + d) * 0.5;
            cx disc = sqrt_halfopen((a - d) * (a - d) * 0.25 + b * c);
            cx m1 = tr2 + disc, m2 = tr2 - disc;
            sigma = (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
        }

        // explicit single-shift QR sweep on the active block [lo..hi]
        for (int i = lo; i <= hi; ++i) h(i, i) -= sigma;
        for (int i = lo; i < hi; ++i) {
            Givens g = make_givens(h(i, i), h(i + 1, i));
            rot[i] = g;
            for (int j = i; j <= hi; ++j) {
                cx x = h(i, j), y = h(i + 1, j);
                h(i, j) = g.c * x + g.s * y;
                h(i + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const Givens& g = rot[i];
            int rtop = lo, rbot = std::min(i + 1, hi);
            for (int r = rtop; r <= rbot; ++r) {
                cx x = h(r, i), y = h(r, i + 1);
                h(r, i) = g.c * x + std::conj(g.s) * y;
                h(r, i + 1) = -g.s * x + g.c * y;
            }
        }
        for (int i = lo; i <= hi; ++i) h(i, i) += sigma;
    }
    return ev;
}

double opnorm_2(const CMat& a, int max_iter, double tol) {
    const int n = a.cols(), m = a.rows();
    if (n == 0 || m == 0) return 0.0;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cx> x(n);
    for (auto& v : x) v = cx{u(rng), u(rng)};
    double prev = 0;
    std::vector<cx> y(m);
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < m; ++i) {
            cx s = 0;
            for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
        double ss = 0;
        for (int j = 0; j < n; ++j) {
            cx s = 0;
            for (int i = 0; i < m; ++i) s += std::conj(a(i, j)) * y[i];
            x[j] = s;
            ss += std::norm(s);
        }
        double nrm = std::sqrt(ss);
        if (nrm == 0.0) return 0.0;
        for (auto& v : x) v /= nrm;
        double est = std::sqrt(nrm);
        if (it > 3 && std::abs(est - prev) <= tol * est) return est;
        prev = est;
    }
    return prev;
}

int winding_count(const CMat& a, cx center, double radius, int initial_nodes, int max_nodes) {
    const int n = a.rows();
    auto winding_at = [&](int nodes) {
        double total = 0.0, prev = 0.0;
        bool first = true;
        for (int j = 0; j <= nodes; ++j) {
            double th = 2.0 * M_PI * j / nodes;
            cx z = center + std::polar(radius, th);
            CMat m(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) m(r, c) = -a(r, c);
                m(r, r) += z;
            }
            double la, arg;
            lu_det_log(lu_factor(std::move(m)), la, arg);
            if (!first) {
                double d = std::remainder(arg - prev, 2.0 * M_PI);
                total += d;
            }
            prev = arg;
            first = false;
        }
        return total / (2.0 * M_PI);
    };
    int nodes = initial_nodes;
    double w = winding_at(nodes);
    while (nodes < max_nodes) {
        double w2 = winding_at(2 * nodes);
        if (std::lround(w2) == std::lround(w) &&
            std::abs(w2 - std::lround(w2)) < 1e-6) return static_cast<int>(std::lround(w2));
        w = w2;
        nodes *= 2;
    }
    return static_cast<int>(std::lround(w));
}

} // namespace hillgap
