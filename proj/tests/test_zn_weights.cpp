#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "lhk/zn_weights.hpp"

using Catch::Matchers::WithinAbs;
using lhk::cplx;

TEST_CASE("product weights are periodic, symmetric and normalized") {
    for (int N : {2, 3, 4, 5, 6, 7, 8}) {
        CAPTURE(N);
        const auto t = lhk::fz_weights(N, 0.17);
        CHECK(t.W[0] == 1.0);
        for (int r = 0; r < N; ++r) {
            CAPTURE(r);
            CHECK_THAT(t.at(r + N), WithinAbs(t.at(r), 1e-15));
            CHECK_THAT(t.at(-r), WithinAbs(t.at(r), 1e-15));
        }
    }
    const auto t3 = lhk::fz_weights(3, 0.2);
    CHECK_THAT(t3.W[1], WithinAbs(0.48027086037386785, 1e-15));
    CHECK_THAT(t3.W[2], WithinAbs(0.48027086037386785, 1e-15));
    const auto t5 = lhk::fz_weights(5, 0.17);
    CHECK_THAT(t5.W[1], WithinAbs(0.30863898791599115, 1e-15));
    CHECK_THAT(t5.W[2], WithinAbs(0.24019110427572532, 1e-15));
    CHECK_THAT(t5.W[3], WithinAbs(0.24019110427572532, 1e-15));
    CHECK_THAT(t5.W[4], WithinAbs(0.30863898791599109, 1e-15));
    CHECK_THAT(lhk::fz_weights(2, 0.3).W[1], WithinAbs(std::tan(lhk::pi / 4 - 0.3), 1e-15));

    const auto flat = lhk::fz_weights(6, 0.0);
    for (double w : flat.W) CHECK(w == 1.0);
    const auto frozen = lhk::fz_weights(3, lhk::zn_lambda(3));
    CHECK_THAT(frozen.W[1], WithinAbs(0.0, 1e-15));
    CHECK_THAT(frozen.W[2], WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(lhk::fz_weights(2, 3 * lhk::pi / 4), std::domain_error);
    CHECK_THROWS_AS(lhk::fz_weights(1, 0.1), std::invalid_argument);
}

TEST_CASE("fourier transform reproduces the complementary table") {
    for (auto [N, u] : {std::pair{2, 0.3}, {3, 0.2}, {5, 0.17}, {8, 0.11}}) {
        CAPTURE(N, u);
        CHECK(lhk::self_duality_residual(N, u) < 1e-12);
    }
    CHECK(lhk::self_duality_residual(4, 0.0) < 1e-12);

    // Two-state closed form: the normalized transform is tan(u).
    const auto t = lhk::fz_weights(2, 0.3);
    const double ratio = (1.0 - t.W[1]) / (1.0 + t.W[1]);
    CHECK_THAT(ratio, WithinAbs(std::tan(0.3), 1e-15));

    // Without the normalization the transform does not match the table.
    const auto hat = lhk::dft(std::vector<cplx>(t.W.begin(), t.W.end()));
    const auto dual = lhk::fz_weights(2, lhk::zn_lambda(2) - 0.3);
    CHECK(std::abs(hat[1] - cplx(dual.W[1])) > 0.1);
}

TEST_CASE("star triangle relation holds up to a spin independent scale") {
    CHECK(lhk::star_triangle_spread(2, 0.2, 0.3) < 1e-12);
    CHECK(lhk::star_triangle_spread(3, 0.2, 0.13) < 1e-12);
    CHECK(lhk::star_triangle_spread(5, 0.21, 0.09) < 1e-10);
    CHECK(lhk::star_triangle_spread(6, 0.11, 0.07) < 1e-10);

    CHECK_THAT(lhk::star_triangle_scale(2, 0.2, 0.3), WithinAbs(1.0183983131397956, 1e-13));
    CHECK_THAT(lhk::star_triangle_scale(3, 0.2, 0.13), WithinAbs(1.022100412124439, 1e-13));
    CHECK_THAT(lhk::star_triangle_scale(5, 0.21, 0.09), WithinAbs(1.0061407886797489, 1e-13));
    CHECK_THAT(lhk::star_triangle_scale(6, 0.11, 0.07), WithinAbs(1.0245318289517069, 1e-13));
    // The scale is genuinely not 1: only proportionality holds for the
    // normalized weights.
    CHECK(std::abs(lhk::star_triangle_scale(2, 0.2, 0.3) - 1.0) > 1e-3);
}

TEST_CASE("plaquette bracket vanishes at the complementary phase") {
    for (auto [N, u] : {std::pair{2, 0.1}, {3, 0.25}, {5, 0.17}}) {
        CAPTURE(N, u);
        CHECK(lhk::bulk_I_residual(N, u, lhk::zn_spin(N)) < 1e-12);
        CHECK(lhk::bulk_I_residual(N, u, 1.0) > 1e-2);
        CHECK(lhk::bulk_I_residual(N, u, lhk::zn_spin(N) + 0.1) > 1e-2);
    }

    // With the phase taken at the coupling argument itself (instead of its
    // complement) the bracket does not vanish.
    auto same_argument_bracket = [](int N, double u) {
        const auto t = lhk::fz_weights(N, u);
        const double s = lhk::zn_spin(N);
        double worst = 0.0;
        for (int r = 0; r < N; ++r) {
            const cplx wr = std::polar(1.0, 2.0 * lhk::pi * r / N);
            const cplx Ir = (std::polar(1.0, -u) - std::polar(1.0, u) * wr) * t.at(r) +
                            (std::polar(1.0, u + lhk::pi * s) -
                             std::polar(1.0, -(u + lhk::pi * s)) * wr) *
                                t.at(r + 1);
            worst = std::max(worst, std::abs(Ir));
        }
        return worst;
    };
    CHECK(same_argument_bracket(2, 0.1) > 1e-2);
    CHECK(same_argument_bracket(3, 0.25) > 1e-2);
    CHECK(same_argument_bracket(5, 0.17) > 1e-2);
}

TEST_CASE("one step recursion reproduces the product weights") {
    for (auto [N, u] : {std::pair{4, 0.15}, {3, 0.2}, {6, 0.12}}) {
        CAPTURE(N, u);
        CHECK(lhk::recursion_check(N, u, lhk::zn_spin(N)) < 1e-12);
        CHECK(lhk::recursion_check(N, u, lhk::zn_spin(N) + 0.1) > 1e-2);
    }
    // The phase prefactor is exactly 1 at the consistent spin.
    const double s4 = lhk::zn_spin(4);
    const cplx pref = -std::polar(1.0, lhk::pi * s4 + lhk::pi / 4);
    CHECK_THAT(pref.real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(pref.imag(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("charge relabeling permutes the table and keeps its brackets") {
    const auto t5 = lhk::fz_weights(5, 0.17);
    const auto id = lhk::charged_transform(t5, 1);
    for (int r = 0; r < 5; ++r) CHECK(id.W[r] == t5.W[r]);
    // Conjugating all spins is the symmetry W[r] = W[-r].
    const auto conj = lhk::charged_transform(t5, 4);
    for (int r = 0; r < 5; ++r) CHECK_THAT(conj.at(r), WithinAbs(t5.at(-r), 1e-15));
    // Transforming by a charge and then by its inverse is the identity.
    const auto round = lhk::charged_transform(lhk::charged_transform(t5, 2), 3);
    for (int r = 0; r < 5; ++r) CHECK_THAT(round.W[r], WithinAbs(t5.W[r], 1e-15));
    CHECK_THROWS_AS(lhk::charged_transform(lhk::fz_weights(4, 0.1), 2), std::invalid_argument);

    CHECK_THAT(lhk::charged_I_residual(5, 0.17, 1),
               WithinAbs(lhk::bulk_I_residual(5, 0.17, lhk::zn_spin(5)), 1e-15));
    CHECK(lhk::charged_I_residual(5, 0.17, 2) < 1e-12);
    CHECK(lhk::charged_I_residual(5, 0.17, 3) < 1e-12);
    CHECK(lhk::charged_I_residual(5, 0.17, 4) < 1e-12);
    CHECK(lhk::zn_charged_spin(5, 2) == 1.2);
    // 2^2 = 4 is neither +1 nor -1 mod 7: no pure relabeling exists.
    CHECK_THROWS_AS(lhk::charged_I_residual(7, 0.1, 2), std::invalid_argument);
}

TEST_CASE("boundary tables are symmetric and degenerate correctly") {
    for (auto [N, u, xi] : {std::tuple<int, double, double>{3, 0.2, 0.13},
                            {2, 0.3, 0.05},
                            {5, 0.12, 0.08}}) {
        CAPTURE(N, u, xi);
        const auto t = lhk::boundary_y(N, u, cplx{xi, 0.0});
        CHECK(t.Yhat[0] == cplx{1.0, 0.0});
        for (int k = 1; k < N; ++k) {
            CAPTURE(k);
            CHECK(std::abs(t.hat(k) - t.hat(N - k)) < 1e-14);
            CHECK(std::abs(t.at(k) - t.at(N - k)) < 1e-14);
            CHECK(std::abs(t.Y[k].imag()) < 1e-14);
        }
    }
    const auto t = lhk::boundary_y(3, 0.2, cplx{0.13, 0.0});
    CHECK_THAT(t.Yhat[1].real(), WithinAbs(0.19999071568294474, 1e-15));
    CHECK_THAT(t.Y[0].real(), WithinAbs(0.46666047712196318, 1e-15));
    CHECK_THAT(t.Y[1].real(), WithinAbs(0.26666976143901844, 1e-15));
    CHECK_THAT((t.Y[0] + t.Y[1] + t.Y[2]).real(), WithinAbs(1.0, 1e-14));

    // Field equal to the spectral argument: the two-factor product collapses
    // to the bulk table at the doubled argument.
    const auto ty = lhk::boundary_y(4, 0.19, cplx{0.19, 0.0});
    const auto w2u = lhk::fz_weights(4, 0.38);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(ty.hat(k) - cplx(w2u.at(k))) < 1e-14);

    // Zero spectral argument freezes the boundary spin difference.
    const auto t0 = lhk::boundary_y(4, 0.0, cplx{0.23, 0.0});
    for (int k = 0; k < 4; ++k) CHECK(std::abs(t0.hat(k) - cplx{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(t0.Y[0] - cplx{1.0, 0.0}) < 1e-14);
    for (int r = 1; r < 4; ++r) CHECK(std::abs(t0.Y[r]) < 1e-14);

    // Complex boundary field keeps the symmetry.
    const auto tc = lhk::boundary_y(3, 0.2, cplx{0.1, 0.05});
    CHECK(std::abs(tc.hat(1) - tc.hat(2)) < 1e-14);
    CHECK_THAT(tc.Yhat[1].real(), WithinAbs(0.21765900959934023, 1e-15));
    CHECK_THAT(tc.Yhat[1].imag(), WithinAbs(-0.018067627155368828, 1e-15));
}

TEST_CASE("boundary bracket vanishes only for the doubled field phase") {
    for (auto [N, u, xi] : {std::tuple<int, double, double>{3, 0.2, 0.1},
                            {2, 0.3, 0.05},
                            {5, 0.12, 0.08}}) {
        CAPTURE(N, u, xi);
        CHECK(lhk::boundary_cr_residual_zn(N, u, cplx{xi, 0.0}) < 1e-12);
        const double L = lhk::zn_lambda(N);
        CHECK(lhk::boundary_cr_phase_residual(N, u, xi, 4 * L, 2 * L) < 1e-12);
        CHECK(lhk::boundary_cr_phase_residual(N, u, xi, 0.0, 0.0) > 1e-2);
    }
    CHECK(lhk::boundary_cr_residual_zn(3, 0.2, cplx{0.1, 0.05}) < 1e-12);

    // With the boundary field entering through a single angle e^{+-i xi} the
    // bracket misses the product table.
    auto single_angle_bracket = [](int N, double u, double xi) {
        const auto t = lhk::boundary_y(N, u, cplx{xi, 0.0});
        const double s = lhk::zn_spin(N);
        const double L = lhk::zn_lambda(N);
        double worst = 0.0;
        for (int k = 0; k < N; ++k) {
            const cplx omk = std::polar(1.0, -2.0 * lhk::pi * k / N);
            const cplx omk1 = std::polar(1.0, -2.0 * lhk::pi * (k + 1) / N);
            const cplx J =
                (std::polar(1.0, -2 * u) + std::polar(1.0, xi + lhk::pi * s) * omk) * t.hat(k) -
                (std::polar(1.0, 2 * u) + std::polar(1.0, -(xi + lhk::pi * s)) * omk1) * t.hat(k + 1);
            worst = std::max(worst, std::abs((std::polar(1.0, (4 * k + 2) * L) * J).real()));
        }
        return worst;
    };
    CHECK(single_angle_bracket(3, 0.2, 0.1) > 1e-3);
    CHECK(single_angle_bracket(2, 0.3, 0.05) > 1e-3);
    CHECK(single_angle_bracket(5, 0.12, 0.08) > 1e-3);

    // Solving the bracket with a different phase slope breaks the symmetry
    // of the resulting table.
    const double L3 = lhk::zn_lambda(3), L5 = lhk::zn_lambda(5);
    CHECK(lhk::boundary_phase_symmetry_defect(3, 0.2, cplx{0.13, 0.0}, 4 * L3, 2 * L3) < 1e-12);
    CHECK(lhk::boundary_phase_symmetry_defect(5, 0.12, cplx{0.08, 0.0}, 4 * L5, 2 * L5) < 1e-12);
    CHECK(lhk::boundary_phase_symmetry_defect(3, 0.2, cplx{0.13, 0.0}, 4 * L3, 0.0) > 0.1);
    CHECK(lhk::boundary_phase_symmetry_defect(5, 0.12, cplx{0.08, 0.0}, 4 * L5, 0.0) > 0.1);
}

TEST_CASE("boundary tables solve the reflection equation") {
    for (auto [N, u, v, xi] : {std::tuple<int, double, double, double>{2, 0.25, 0.1, 0.07},
                               {3, 0.2, 0.07, 0.13},
                               {4, 0.15, 0.06, 0.09}}) {
        CAPTURE(N, u, v, xi);
        CHECK(lhk::boundary_ybe_residual(N, u, v, cplx{xi, 0.0}) < 1e-10);
        CHECK(lhk::boundary_ybe_position_residual(N, u, v, cplx{xi, 0.0}) < 1e-10);
    }
    CHECK(lhk::boundary_ybe_position_residual(3, 0.2, 0.07, cplx{0.1, 0.05}) < 1e-10);

    // A perturbed table is detected.
    const auto wd = lhk::fz_weights(3, 0.2 - 0.07);
    const auto ws = lhk::fz_weights(3, 0.2 + 0.07);
    std::vector<cplx> bad(3, cplx{1.0, 0.0});
    bad[1] += 0.1;
    const auto yv = lhk::boundary_y(3, 0.07, cplx{0.13, 0.0});
    CHECK(lhk::boundary_ybe_hat_residual(3, lhk::dft(std::vector<cplx>(wd.W.begin(), wd.W.end())),
                                         lhk::dft(std::vector<cplx>(ws.W.begin(), ws.W.end())), bad,
                                         yv.Yhat) > 1e-3);
}

TEST_CASE("half field at half argument reproduces free boundaries") {
    for (auto [N, u] : {std::pair{2, 0.3}, {5, 0.2}, {3, 0.24}}) {
        CAPTURE(N, u);
        CHECK(lhk::free_bc_proportionality(N, u) < 1e-12);
        const auto y = lhk::boundary_y(N, u / 2, cplx{u / 2, 0.0});
        const auto w = lhk::fz_weights(N, u);
        for (int k = 0; k < N; ++k) {
            CAPTURE(k);
            CHECK(std::abs(y.hat(k) - cplx(w.at(k))) < 1e-14);
        }
    }
}
