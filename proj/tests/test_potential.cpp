#include <doctest.h>

#include "hillgap/errors.hpp"
#include "hillgap/potential.hpp"
#include "oracles.hpp"

using namespace hillgap;

TEST_CASE("exp_q construction and V(k) = ik q(k)") {
    // {m=2: -i/2, m=-2: i/2} gives V(+-2) = 1, i.e. v = 2cos2x
    auto p = build_potential_exp(0.0, {{2, cx{0.0, -0.5}}, {-2, cx{0.0, 0.5}}}, true);
    CHECK(std::abs(p.V(2) - cx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(p.V(-2) - cx{1.0, 0.0}) < 1e-15);
    CHECK(p.V(0) == cx{});
    CHECK(p.V(6) == cx{});
    CHECK(std::abs(fourier_coeff_V(p, 2, Basis::Exponential) - cx{1.0, 0.0}) < 1e-15);
    CHECK_THROWS_AS(fourier_coeff_V(p, 3, Basis::Exponential), ParityError);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(build_potential_exp(0.0, {{0, cx{1.0, 0.0}}}, false), ZeroMeanViolation);
    // real flag with non-Hermitian data
    CHECK_THROWS_AS(build_potential_exp(0.0, {{2, cx{0.0, -0.5}}}, true), ConjugacyViolation);
    CHECK_THROWS_AS(build_potential_exp(cx{0.0, 1.0}, {}, true), ConjugacyViolation);
}

TEST_CASE("cos_v convention and the free operator") {
    auto p0 = build_potential_cos({});
    CHECK(p0.is_zero());
    CHECK(fourier_coeff_V(p0, 8, Basis::Exponential) == cx{});

    // v = v1 sqrt(2) cos 2x: V(2) = V(-2) = v1/sqrt(2)
    auto p = build_potential_cos({1.0});
    CHECK(std::abs(p.V(2) - cx{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
    CHECK(std::abs(p.V(-2) - cx{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
    CHECK(p.real_flag());
}

TEST_CASE("delta comb coefficients against the quadrature oracle") {
    auto p = build_potential_delta_comb(M_PI, 60);
    CHECK(std::abs(p.v0() - cx{1.0, 0.0}) < 1e-15);
    for (int m : {2, 14, 40}) {
        cx oracle = oracles::sawtooth_coeff_quadrature(M_PI, m);
        CHECK(std::abs(p.q(m) - oracle) < 1e-9);
        CHECK(std::abs(p.V(m) - cx{1.0, 0.0}) < 1e-12); // V(m) = alpha/pi = 1
    }
    // partial sums of Q at x = pi/2 trend to the sawtooth value 0
    double prev = std::abs(p.Q_at(M_PI / 2));
    CHECK(prev < 0.05);
    CHECK_THROWS_AS(build_potential_delta_comb(0.0, 60), InvalidParams);
}

TEST_CASE("tail energy") {
    auto p0 = build_potential_cos({});
    CHECK(tail_energy(p0, 0) == 0.0);

    auto p = oracles::pot_2cos2x();
    CHECK(tail_energy(p, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(tail_energy(p, 3) == 0.0);
    CHECK(tail_energy(p, 0) == doctest::Approx(p.q_norm()));

    auto comb = build_potential_delta_comb(1.0, 200);
    // brute-force sum over stored coefficients
    double s = 0;
    for (const auto& [m, qm] : comb.coeffs())
        if (std::abs(m) >= 100) s += std::norm(qm);
    CHECK(tail_energy(comb, 100) == doctest::Approx(std::sqrt(s)).epsilon(1e-14));
    // monotone nonincreasing in m
    for (int m = 0; m < 40; m += 4)
        CHECK(tail_energy(comb, m) >= tail_energy(comb, m + 4));
}

TEST_CASE("sine conversion: round trip on the stored support") {
    for (const PotentialSpec& p :
         {oracles::pot_2cos2x(), oracles::pot_gasymov(), oracles::pot_2cos2x_cos4x(),
          build_potential_delta_comb(1.0, 40)}) {
        SineCoeffs sc = derive_sine_coeffs(p, 4 * p.max_support() + 64);
        auto back = sine_to_exp(p, sc);
        for (const auto& [m, qm] : p.coeffs()) {
            CHECK(std::abs(back.at(m) - qm) < 1e-12);
        }
    }
}

TEST_CASE("sine basis values: V~(k) = k q~(k)") {
    // Q = sin 2x for v = 2cos2x, so q~(2) = 1/sqrt(2), V~(2) = sqrt(2)
    auto p = oracles::pot_2cos2x();
    CHECK(std::abs(sine_coeff(p, 2) - cx{1.0 / std::sqrt(2.0), 0.0}) < 1e-14);
    CHECK(std::abs(fourier_coeff_V(p, 2, Basis::Sine) - cx{std::sqrt(2.0), 0.0}) < 1e-14);
    // odd coefficients vanish for a pure cosine potential
    CHECK(std::abs(sine_coeff(p, 3)) < 1e-15);
    CHECK_THROWS_AS(fourier_coeff_V(p, 0, Basis::Sine), ParityError);
}

TEST_CASE("real potentials: V(-m) = conj V(m)") {
    auto p = oracles::pot_2cos2x_cos4x();
    for (int m = 2; m <= 8; m += 2)
        CHECK(std::abs(p.V(-m) - std::conj(p.V(m))) < 1e-15);
}

TEST_CASE("json round trip") {
    auto p = oracles::pot_2cos2x_cos4x();
    auto p2 = potential_from_json(potential_to_json(p));
    CHECK(p2.real_flag() == p.real_flag());
    for (const auto& [m, qm] : p.coeffs()) CHECK(std::abs(p2.q(m) - qm) < 1e-16);

    auto pc = potential_from_json(R"({"kind":"cos_v","coeffs":{"vk":[1.0,0.5]}})");
    CHECK(std::abs(pc.V(2) - cx{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
    auto pd = potential_from_json(R"({"kind":"delta_comb","coeffs":{"alpha":1.0,"support":20}})");
    CHECK(std::abs(pd.v0() - cx{1.0 / M_PI, 0.0}) < 1e-15);
}
