#ifndef HILLGAP_LINALG_HPP
#define HILLGAP_LINALG_HPP

#include <complex>
#include <vector>

namespace hillgap {

using cx = std::complex<double>;

/// Principal branch used throughout: z^{1/2} = sqrt(r) e^{i phi/2} with
/// z = r e^{i phi}, -pi <= phi < pi.  Differs from std::sqrt only on the
/// negative real axis, where the branch cut is approached from below.
cx sqrt_halfopen(cx z);

/// Dense complex matrix, row-major.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    cx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const cx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
    cx* data() { return a_.data(); }
    const cx* data() const { return a_.data(); }

    static CMat identity(int n);
    CMat operator*(const CMat& b) const;
    CMat operator-(const CMat& b) const;

    double max_abs() const;
    double frobenius() const;
    cx trace() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<cx> a_;
};

/// LU factorization with partial pivoting.
struct LUFactor {
    CMat lu;
    std::vector<int> piv;
    int swaps = 0;
    bool singular = false;
};

LUFactor lu_factor(CMat a);
std::vector<cx> lu_solve(const LUFactor& f, std::vector<cx> b);
CMat lu_solve_mat(const LUFactor& f, CMat b);
/// arg(det) in (-pi, pi] and log|det|; avoids overflow of det itself.
void lu_det_log(const LUFactor& f, double& log_abs, double& arg);
CMat lu_inverse(const LUFactor& f);

/// All eigenvalues of a general dense complex matrix, by Householder
/// reduction to Hessenberg form followed by shifted QR with Wilkinson
/// shifts (eigenvalue-only mode).  Throws ConvergenceFailure.
std::vector<cx> eig_values(CMat a);

/// Largest singular value via power iteration on A^H A.
double opnorm_2(const CMat& a, int max_iter = 400, double tol = 1e-12);

/// Winding number of det(zI - A) along the circle |z - center| = radius,
/// by LU determinant phase at `nodes` trapezoid points, doubling the node
/// count until the integer stabilizes.
int winding_count(const CMat& a, cx center, double radius,
                  int initial_nodes = 128, int max_nodes = 8192);

} // namespace hillgap

#endif
