#include <doctest.h>

#include "hillgap/errors.hpp"
#include "hillgap/matrix_op.hpp"
#include "oracles.hpp"

using namespace hillgap;

TEST_CASE("free operator per+ matrix is diag(64,36,...,0,...,64)") {
    auto p = build_potential_cos({});
    auto op = assemble_matrix(p, Bc::PerPlus, 8);
    REQUIRE(op.index_set.size() == 9);
    std::vector<double> want{64, 36, 16, 4, 0, 4, 16, 36, 64};
    for (int i = 0; i < 9; ++i) {
        CHECK(op.matrix(i, i).real() == doctest::Approx(want[i]));
        for (int j = 0; j < 9; ++j)
            if (i != j) CHECK(op.matrix(i, j) == cx{});
    }
    CHECK_THROWS_AS(assemble_matrix(p, Bc::PerPlus, 4), CutoffTooSmall);
}

TEST_CASE("2cos2x per+ matrix is pentadiagonal with ones on |k-m| = 2") {
    auto p = oracles::pot_2cos2x();
    auto op = assemble_matrix(p, Bc::PerPlus, 8);
    const int N = (int)op.index_set.size();
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int k = op.index_set[a], m = op.index_set[b];
            cx want = (a == b) ? cx{(double)k * k, 0.0}
                               : (std::abs(k - m) == 2 ? cx{1.0, 0.0} : cx{});
            CHECK(std::abs(op.matrix(a, b) - want) < 1e-14);
        }
}

TEST_CASE("Dirichlet matrix entries match the sine-basis formula and are real symmetric") {
    auto p = oracles::pot_2cos2x();
    auto op = assemble_matrix(p, Bc::Dir, 8);
    const int N = (int)op.index_set.size();
    auto vt = [&](int d) { return d == 0 ? cx{} : fourier_coeff_V(p, d, Basis::Sine); };
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int k = op.index_set[a], m = op.index_set[b];
            cx off = (vt(std::abs(k - m)) - vt(k + m)) / std::sqrt(2.0);
            cx want = off + (a == b ? cx{(double)k * k, 0.0} : cx{});
            CHECK(std::abs(op.matrix(a, b) - want) < 1e-13);
            CHECK(std::abs(op.matrix(a, b).imag()) < 1e-14);               // real
            CHECK(std::abs(op.matrix(a, b) - op.matrix(b, a)) < 1e-13);    // symmetric
        }
    // concrete check for v = 2cos2x: off-diagonal is delta_{|k-m|,2} - delta_{k+m,2}
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            int k = op.index_set[a], m = op.index_set[b];
            double want = (std::abs(k - m) == 2 ? 1.0 : 0.0) - (k + m == 2 ? 1.0 : 0.0);
            CHECK(op.matrix(a, b).real() == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("eigs_in_disc: free double eigenvalue") {
    auto p = build_potential_cos({});
    auto op = assemble_matrix(p, Bc::PerPlus, 16);
    auto eigs = eigs_in_disc(op, cx{16.0, 0.0}, 1.0);
    REQUIRE(eigs.size() == 1);
    CHECK(std::abs(eigs[0].value - cx{16.0, 0.0}) < 1e-10);
    CHECK(eigs[0].multiplicity == 2);
}

TEST_CASE("eigs_in_disc: antiperiodic n=1 pair of 2cos2x vs shooting-free bracket") {
    auto p = oracles::pot_2cos2x();
    auto op = assemble_matrix(p, Bc::PerMinus, 48);
    // radius 1.5 captures both eigenvalues around 1 (the n/4 disc does not at n=1)
    auto eigs = eigs_in_disc(op, cx{1.0, 0.0}, 1.5);
    int count = 0;
    for (auto& e : eigs) count += e.multiplicity;
    REQUIRE(count == 2);
    // frozen dense-truncation values (stable under K -> K+32 to 1e-10)
    CHECK(eigs.front().value.real() == doctest::Approx(-0.110248816992).epsilon(1e-9));
    CHECK(eigs.back().value.real() == doctest::Approx(1.859108072514).epsilon(1e-9));
}

TEST_CASE("truncation stability: eigenvalues move < 1e-8 under K -> K+8") {
    auto p = oracles::pot_2cos2x_cos4x();
    for (int n : {3, 4}) {
        auto opA = assemble_matrix(p, bc_for_index(n), 32);
        auto opB = assemble_matrix(p, bc_for_index(n), 40);
        auto ea = eigs_in_disc(opA, cx{(double)n * n, 0.0}, n / 4.0);
        auto eb = eigs_in_disc(opB, cx{(double)n * n, 0.0}, n / 4.0);
        REQUIRE(ea.size() == eb.size());
        for (size_t i = 0; i < ea.size(); ++i)
            CHECK(std::abs(ea[i].value - eb[i].value) < 1e-8 * (1 + std::abs(eb[i].value)));
    }
}

TEST_CASE("disc_count matches localization geometry") {
    auto p = oracles::pot_2cos2x_cos4x();
    // D_2 holds no eigenvalues for this potential; D_3 holds two
    auto op2 = assemble_matrix(p, Bc::PerPlus, 48);
    CHECK(disc_count(op2, cx{4.0, 0.0}, 0.5) == 0);
    auto op3 = assemble_matrix(p, Bc::PerMinus, 48);
    CHECK(disc_count(op3, cx{9.0, 0.0}, 0.75) == 2);
}

TEST_CASE("conjugate pairing for real potentials") {
    auto p = oracles::pot_2cos2x();
    auto op = assemble_matrix(p, Bc::PerPlus, 24);
    auto ev = eig_values(op.matrix);
    for (const cx& e : ev) {
        if (std::abs(e.imag()) < 1e-9) continue;
        bool paired = false;
        for (const cx& f : ev)
            if (std::abs(f - std::conj(e)) < 1e-7 * (1 + std::abs(e))) paired = true;
        CHECK(paired);
    }
}

TEST_CASE("localization partition: rectangle plus discs exhausts the spectrum") {
    auto p = oracles::pot_2cos2x();
    const int K = 32;
    auto op = assemble_matrix(p, Bc::PerPlus, K);
    auto ev = eig_values(op.matrix);
    const int N = 8; // rectangle {-N < Re < N^2 + N, |Im| < N}
    int accounted = 0;
    for (const cx& e : ev) {
        bool in_rect = e.real() > -N && e.real() < N * N + N && std::abs(e.imag()) < N;
        int in_discs = 0;
        for (int n = N + 2; n <= K; n += 2)
            if (std::abs(e - cx{(double)n * n, 0.0}) < n / 4.0) ++in_discs;
        CHECK(in_rect + in_discs == 1); // exactly one region
        accounted += in_rect + in_discs;
    }
    CHECK(accounted == (int)op.index_set.size());
}

TEST_CASE("matrix csv export is rectangular with interleaved re/im") {
    auto p = build_potential_cos({});
    auto op = assemble_matrix(p, Bc::PerPlus, 8);
    std::string path = "/tmp/hillgap_test_matrix.csv";
    export_matrix_csv(op, path);
    FILE* f = fopen(path.c_str(), "r");
    REQUIRE(f);
    char buf[8192];
    int lines = 0, commas = -1;
    while (fgets(buf, sizeof buf, f)) {
        ++lines;
        int c = 0;
        for (char* s = buf; *s; ++s) c += (*s == ',');
        if (commas < 0) commas = c;
        CHECK(c == commas);
    }
    fclose(f);
    CHECK(lines == 9);
    CHECK(commas == 2 * 9 - 1);
}
