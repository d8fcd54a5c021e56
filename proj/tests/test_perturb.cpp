#include <doctest.h>

#include "hillgap/perturb.hpp"
#include "hillgap/errors.hpp"
#include "hillgap/matrix_op.hpp"
#include "oracles.hpp"

using namespace hillgap;

TEST_CASE("a2 closed-form values") {
    CHECK(a2_coefficient({}, 1, 64) == 0.0);
    // v1 = 1 (v = sqrt2 cos 2x): single term p = 2 in each series
    CHECK(a2_coefficient({1.0}, 1, 400) == doctest::Approx(-1.0 / 16).epsilon(1e-14));
    CHECK(a2_coefficient({1.0}, 2, 400) == doctest::Approx(-1.0 / 24).epsilon(1e-14));
    // cutoff doubling changes nothing for finite support
    CHECK(a2_coefficient({1.0}, 2, 400) == doctest::Approx(a2_coefficient({1.0}, 2, 800)).epsilon(1e-13));
}

TEST_CASE("En curve: value at 0, slope, curvature") {
    std::vector<double> vk{1.0};
    auto E = En_curve(vk, 1, {-0.01, 0.0, 0.01}, 48);
    REQUIRE(E.size() == 3);
    CHECK(E[1] == doctest::Approx(1.0));
    // second central difference / 2 = a2 to 1e-5 relative
    double a2fd = (E[2] - 2 * E[1] + E[0]) / (2 * 0.01 * 0.01);
    CHECK(std::abs(a2fd - (-1.0 / 16)) / (1.0 / 16) < 1e-5);
    // slope at 0 (Richardson on h and h/2) = a1 = -1/sqrt(2) to 1e-7
    auto Eh = En_curve(vk, 1, {-0.002, -0.001, 0.001, 0.002}, 48);
    double d1 = (Eh[2] - Eh[1]) / 0.002;        // h = 1e-3 central
    double d2 = (Eh[3] - Eh[0]) / 0.004;        // h = 2e-3 central
    double slope = (4 * d1 - d2) / 3.0;
    CHECK(std::abs(slope - (-1.0 / std::sqrt(2.0))) < 1e-7);
}

TEST_CASE("En curve for n=2 matches a2(2) and flat slope") {
    std::vector<double> vk{1.0};
    auto E = En_curve(vk, 2, {-0.01, 0.0, 0.01}, 48);
    double a2fd = (E[2] - 2 * E[1] + E[0]) / (2 * 0.01 * 0.01);
    CHECK(std::abs(a2fd - (-1.0 / 24)) / (1.0 / 24) < 1e-5);
    double slope = (E[2] - E[0]) / 0.02;
    CHECK(std::abs(slope) < 1e-6); // a1 = -v_2/sqrt2 = 0
}

TEST_CASE("radius report: frozen example and lower-bound scan") {
    auto recs = radius_report({1.0}, 1, 1);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].a1 == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(recs[0].radius_upper == doctest::Approx(16.0 * std::sqrt(2.0)).epsilon(1e-12));

    // v_k = 0.05/k family: the a2 lower bound holds from the scan threshold on
    std::vector<double> vk;
    for (int k = 1; k <= 20; ++k) vk.push_back(0.05 / k);
    auto rr = radius_report(vk, 1, 24);
    int threshold = -1;
    for (const auto& r : rr) {
        if (threshold < 0 && r.lower_bound_holds) {
            bool rest = true;
            for (const auto& r2 : rr)
                if (r2.n > r.n && !r2.lower_bound_holds) rest = false;
            if (rest) threshold = r.n;
        }
    }
    CHECK(threshold > 0);
    CHECK(threshold <= 5);

    // log radius_upper vs log n slope ~ 2 when a2 follows the 1/n^2 scale
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& r : rr) {
        if (r.n < 5 || r.radius_upper <= 0) continue;
        double x = std::log((double)r.n), y = std::log(r.radius_upper);
        sx += x; sy += y; sxx += x * x; sxy += x * y; ++m;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope > 1.5);
    CHECK(slope < 2.5);
}

TEST_CASE("zero potential: degenerate records") {
    auto rr = radius_report({}, 1, 3);
    for (const auto& r : rr) {
        CHECK(r.a2 == 0.0);
        CHECK(r.radius_upper == 0.0);
    }
}

TEST_CASE("En curve at z = 1 matches the dense eigenvalue in the disc") {
    // potential 2cos2x = z * (sqrt2 * sqrt2 cos 2x) at z = 1
    auto E = En_curve({std::sqrt(2.0)}, 2, {1.0}, 48);
    auto op = assemble_matrix(oracles::pot_2cos2x(), Bc::Dir, 48);
    auto eigs = eigs_in_disc(op, cx{4.0, 0.0}, 1.0);
    REQUIRE(eigs.size() == 1);
    CHECK(std::abs(E[0] - eigs[0].value.real()) < 1e-6);
    // second-order model 4 - z^2/12 sits close at z = 1
    CHECK(E[0] == doctest::Approx(4.0 - 1.0 / 12.0).epsilon(2e-3));
}
