#include <doctest.h>

#include "hillgap/riesz.hpp"
#include "hillgap/errors.hpp"
#include "oracles.hpp"

using namespace hillgap;

TEST_CASE("zero potential: deviation vanishes, projections exact") {
    auto p0 = build_potential_cos({});
    for (int n : {3, 8}) {
        auto d = projection_deviation(p0, n, bc_for_index(n), 40);
        CHECK(d.B.max_abs() < 1e-13);
        CHECK(std::abs(d.trace - cx{2.0, 0.0}) < 1e-12);
        CHECK(d.idempotency_defect < 1e-12);
    }
    auto dd = projection_deviation(p0, 5, Bc::Dir, 40);
    CHECK(dd.B.max_abs() < 1e-13);
    CHECK(std::abs(dd.trace - cx{1.0, 0.0}) < 1e-12);
    CHECK(dd.basis_sup_sq == 2.0);
}

TEST_CASE("projection invariants for 2cos2x") {
    auto p = oracles::pot_2cos2x();
    auto d = projection_deviation(p, 6, Bc::PerPlus, 48);
    CHECK(d.idempotency_defect < 1e-8);
    CHECK(std::abs(d.trace - cx{2.0, 0.0}) < 1e-8);
    CHECK(d.l2_opnorm <= d.l1_linf_proxy * (1 + 1e-12));
    CHECK(d.quadrature_nodes >= 64);
}

TEST_CASE("first-order term matches the residue formula") {
    // scale the potential by t and difference in t at 0: the first-order B
    // has entries V(k -+ n)/(n^2 - k^2) on the +-n rows and columns
    const int n = 6, K = 32;
    const double t = 1e-5;
    auto p = oracles::pot_2cos2x();
    auto pt = p.scaled(t);
    auto pm = p.scaled(-t);
    auto dp = projection_deviation(pt, n, Bc::PerPlus, K, 128);
    auto dm = projection_deviation(pm, n, Bc::PerPlus, K, 128);
    auto opref = assemble_matrix(p, Bc::PerPlus, K);
    const auto& idx = opref.index_set;
    double worst = 0;
    for (size_t a = 0; a < idx.size(); ++a) {
        for (size_t b = 0; b < idx.size(); ++b) {
            int k = idx[a], m = idx[b];
            cx fd = (dp.B(a, b) - dm.B(a, b)) / (2 * t);
            cx want{};
            if (m == n && k != n && k != -n) want = p.V(k - n) / (double)(n * n - k * k);
            else if (m == -n && k != n && k != -n) want = p.V(k + n) / (double)(n * n - k * k);
            else if (k == n && m != n && m != -n) want = p.V(n - m) / (double)(n * n - m * m);
            else if (k == -n && m != n && m != -n) want = p.V(-n - m) / (double)(n * n - m * m);
            worst = std::max(worst, std::abs(fd - want));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("deviation scan: decay and slope for 2cos2x") {
    auto p = oracles::pot_2cos2x();
    auto rows = deviation_scan(p, 4, 12, Bc::PerPlus, 48, 2);
    for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].l1_linf_proxy < rows[i - 1].l1_linf_proxy);
    CHECK(loglog_slope(rows) < -0.8);
}

TEST_CASE("eigenvalue clearance guard") {
    // shifting the free operator by v0 = 4 puts the k = 4 eigenvalue exactly
    // on the contour |z - 16| = 4
    auto p = build_potential_exp(cx{4.0, 0.0}, {}, false);
    CHECK_THROWS_AS(projection_deviation(p, 4, Bc::PerPlus, 32), EigenvalueOnContour);
}
