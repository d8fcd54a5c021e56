#include <doctest.h>

#include "hillgap/inverse_map.hpp"
#include "hillgap/errors.hpp"
#include "oracles.hpp"

using namespace hillgap;

namespace {
Weight wh1() { return make_weight_ratio([](int) { return 1.0; }, 256); }
}

TEST_CASE("phi of zero is exactly zero") {
    auto p0 = build_potential_cos({});
    auto t = phi_tail(p0, 4, 10, 64);
    for (const auto& [n, e] : t.tail) {
        CHECK(e.bm == cx{});
        CHECK(e.bp == cx{});
    }
    auto phi = phi_coefficients(p0, t);
    for (const auto& [k, c] : phi) CHECK(c == cx{});
}

TEST_CASE("phi is real for real potentials and small against the head scale") {
    auto p = oracles::pot_2cos2x();
    auto t = phi_tail(p, 2, 10, 64, 2);
    auto phi = phi_coefficients(p, t);
    for (const auto& [k, c] : phi) {
        // Hermitian symmetry of the coefficients = real-valued function
        CHECK(std::abs(c - std::conj(phi.at(-k))) < 1e-10);
        CHECK(std::abs(c) < 0.1); // well below the head coefficients (1.0)
    }
    // ||Phi_N(v)||_Omega <= b_N ||v||^2 trend: decreasing in N
    auto w = wh1();
    double prev = 1e300;
    for (int N : {2, 4, 6}) {
        auto tn = phi_tail(p, N, 12, 64, 2);
        double nn = weighted_seq_norm(phi_coefficients(p, tn), w);
        CHECK(nn < prev);
        prev = nn;
    }
}

TEST_CASE("contraction probe") {
    auto p = oracles::pot_2cos2x();
    auto w = wh1();
    CHECK_THROWS_AS(contraction_probe(p, p, 4, w, 64), InvalidParams);
    double r1 = contraction_probe(p, p.scaled(0.9), 4, w, 64, 10, 2);
    CHECK(r1 < 0.5);
    auto p0 = build_potential_cos({});
    double r2 = contraction_probe(p, p0, 4, w, 64, 10, 2);
    CHECK(r2 < 0.5);
    // Phi(0) = 0 reduction: probe against zero equals ||Phi(v)|| / ||v||
    auto t = phi_tail(p, 4, 10, 64, 2);
    double direct = weighted_seq_norm(phi_coefficients(p, t), w) /
                    weighted_seq_norm({{-1, p.V(-2)}, {1, p.V(2)}}, w);
    CHECK(r2 == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("round trip: trivial, two-mode, complex, above-head mode") {
    auto w = wh1();
    // A_N(0) = 0 reconstructs to zero
    auto t0 = phi_tail(build_potential_cos({}), 4, 10, 64);
    auto r0 = reconstruct(t0, w, 64, 50, 1e-9);
    CHECK(r0.v.is_zero());

    for (const PotentialSpec& v : {oracles::pot_2cos2x(), oracles::pot_2cos2x_cos4x(),
                                   oracles::pot_gasymov().scaled(0.7)}) {
        auto target = phi_tail(v, 4, 10, 64, 2);
        auto rr = reconstruct(target, w, 64, 50, 1e-9, 2);
        for (const auto& [m, qm] : v.coeffs())
            CHECK(std::abs(rr.v.q(m) - qm) < 1e-8);
        CHECK(rr.final_residual < 1e-9);
    }

    // a mode above the head exercises the true Picard iteration
    auto vhi = potential_from_vk({{1, cx{1.0, 0.0}},
                                  {-1, cx{1.0, 0.0}},
                                  {6, cx{0.3, 0.0}},
                                  {-6, cx{0.3, 0.0}}});
    auto target = phi_tail(vhi, 4, 10, 64, 2);
    auto rr = reconstruct(target, w, 64, 60, 1e-11, 2);
    CHECK(rr.iterations > 3);
    CHECK(rr.decay_ratio < 0.6);
    for (const auto& [m, qm] : vhi.coeffs()) CHECK(std::abs(rr.v.q(m) - qm) < 1e-8);
}

TEST_CASE("injectivity witness: images separated by half the distance") {
    auto w = wh1();
    auto v1 = oracles::pot_2cos2x();
    auto v2 = v1.scaled(0.8);
    auto t1 = phi_tail(v1, 4, 10, 64, 2);
    auto t2 = phi_tail(v2, 4, 10, 64, 2);
    // || A(v1) - A(v2) || >= (1/2) || v1 - v2 ||
    std::map<int, cx> da, dv;
    for (int n = 1; n <= 4; ++n) {
        da[-n] = t1.head[n].vm - t2.head[n].vm;
        da[n] = t1.head[n].vp - t2.head[n].vp;
    }
    for (int n = 5; n <= 10; ++n) {
        da[-n] = t1.tail[n].bm - t2.tail[n].bm;
        da[n] = t1.tail[n].bp - t2.tail[n].bp;
    }
    for (int k = -10; k <= 10; ++k)
        if (cx d = v1.vk(k) - v2.vk(k); d != cx{}) dv[k] = d;
    CHECK(weighted_seq_norm(da, w) >= 0.5 * weighted_seq_norm(dv, w));
}

TEST_CASE("tail image json round trip") {
    auto p = oracles::pot_2cos2x_cos4x();
    auto t = phi_tail(p, 3, 8, 64, 2);
    auto t2 = tail_image_from_json(tail_image_to_json(t));
    CHECK(t2.N == t.N);
    CHECK(t2.n_max == t.n_max);
    for (const auto& [n, e] : t.tail) {
        CHECK(std::abs(t2.tail.at(n).bm - e.bm) < 1e-16);
        CHECK(std::abs(t2.tail.at(n).bp - e.bp) < 1e-16);
    }
    for (const auto& [n, e] : t.head) {
        CHECK(std::abs(t2.head.at(n).vm - e.vm) < 1e-16);
        CHECK(std::abs(t2.head.at(n).vp - e.vp) < 1e-16);
    }
}

TEST_CASE("contraction ratio shrinks with the potential scale") {
    auto w = wh1();
    auto v = oracles::pot_2cos2x();
    double big = contraction_probe(v, v.scaled(0.9), 4, w, 64, 10, 2);
    double small = contraction_probe(v.scaled(0.5), v.scaled(0.45), 4, w, 64, 10, 2);
    CHECK(small < big);
    CHECK(big < 0.5);
}
