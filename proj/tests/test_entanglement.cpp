#include <catch_amalgamated.hpp>

#include "sqent/asymptotic.hpp"
#include "sqent/entanglement.hpp"
#include "sqent/liouvillian.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace sqent;
using Catch::Approx;

namespace {

Parameters params(double n, double m_abs, double phase, double gh, double omega, double delta) {
    return validate({n, m_abs, phase}, {1.0, gh, omega, delta});
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected sqent::Error");
    return ErrorKind::InvalidState;
}

const double c0_one = 2.0 * std::sqrt(2.0) / 3.0;

}  // namespace

TEST_CASE("concurrence of reference states", "[entanglement]") {
    const auto bell = DensityMatrix::pure(collective_vector(col::s), Basis::canonical);
    CHECK(concurrence(bell) == Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(collective_projector(col::a)) == Approx(1.0).epsilon(1e-12));
    CHECK(concurrence_x(collective_projector(col::a)) == Approx(1.0).epsilon(1e-14));

    testing::Random rng(51);
    for (int i = 0; i < 50; ++i) {
        const auto prod = DensityMatrix::pure(product_state(rng.qubit(), rng.qubit()), Basis::canonical);
        REQUIRE(concurrence(prod) < 1e-12);
    }

    const auto squeezed = DensityMatrix::pure(two_atom_squeezed_state(1.0, 0.4), Basis::canonical);
    CHECK(concurrence(squeezed) == Approx(c0_one).epsilon(1e-10));
    CHECK(concurrence(squeezed) == Approx(0.942809).margin(1e-6));
}

TEST_CASE("concurrence agrees with the eigenvalue oracle on random states", "[entanglement][oracle]") {
    testing::Random rng(52);
    for (int i = 0; i < 200; ++i) {
        const Mat4 rho = rng.density();
        REQUIRE(std::abs(concurrence(DensityMatrix(rho, Basis::canonical)) - testing::concurrence_direct(rho)) < 1e-7);
    }
}

TEST_CASE("concurrence is basis independent", "[entanglement]") {
    testing::Random rng(53);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho(rng.density(), Basis::canonical);
        REQUIRE(std::abs(concurrence(rho) - concurrence(to_collective(rho))) < 1e-12);
    }
}

TEST_CASE("X-state formula matches the eigenvalue oracle", "[entanglement][oracle]") {
    testing::Random rng(54);
    for (int i = 0; i < 500; ++i) {
        const Mat4 rho = rng.x_state();
        REQUIRE(std::abs(concurrence_x(DensityMatrix(rho, Basis::canonical)) - testing::concurrence_direct(rho)) < 1e-10);
    }
    CHECK(concurrence_x(unique_asymptotic(params(0.0, 0.0, 0.0, 0.5, 0.0, 0.0))) == 0.0);
}

TEST_CASE("X-state formula rejects general states", "[entanglement][errors]") {
    const auto bell = DensityMatrix::pure(product_state({1.0, 0.0}, {std::sqrt(0.5), std::sqrt(0.5)}), Basis::canonical);
    CHECK(kind_of([&] { concurrence_x(bell); }) == ErrorKind::NotXForm);
}

TEST_CASE("closed-form concurrence of the unique state", "[entanglement][unique]") {
    CHECK(concurrence_unique(params(0.0, 0.0, 0.0, 0.3, 0.0, 0.0)) == 0.0);
    CHECK(kind_of([] { concurrence_unique(params(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)); }) == ErrorKind::RegimeError);

    testing::Random rng(55);
    for (int i = 0; i < 100; ++i) {
        const auto p = rng.params(Regime::separated);
        const double closed = concurrence_unique(p);
        REQUIRE(std::abs(closed - testing::concurrence_direct(unique_asymptotic(p).matrix())) < 1e-9);
        const auto space = stationary_space(build_generator(p));
        REQUIRE(space.dimension == 1);
        const Mat4 kernel_state = space.unique_state().matrix_in(Basis::canonical);
        REQUIRE(std::abs(closed - testing::concurrence_direct(kernel_state)) < 1e-9);
    }
}

TEST_CASE("unique-state entanglement in a minimum-uncertainty bath", "[entanglement][unique]") {
    const double gh = 0.85;
    auto curve = [&](double delta, double n) {
        return concurrence_unique(params(n, std::sqrt(n * (n + 1.0)), 0.0, gh, 0.0, delta));
    };
    double best = 0.0, best_n = 0.0;
    for (int k = 1; k <= 60; ++k) {
        const double n = 0.05 * k;
        REQUIRE(curve(0.0, n) >= curve(1.0, n) - 1e-14);
        if (curve(0.0, n) > best) best = curve(0.0, n), best_n = n;
    }
    CHECK(best > 0.0);
    CHECK(best_n < 1.0);
    CHECK(curve(0.0, 3.0) < best);
}

TEST_CASE("fidelity thresholds", "[entanglement][thresholds]") {
    const auto vac = thresholds(params(0.0, 0.0, 0.0, 1.0, 0.0, 0.0));
    CHECK(vac.f2 == 0.0);

    const auto thermal = thresholds(params(0.7, 0.0, 0.0, 1.0, 0.0, 0.4));
    CHECK(thermal.f1 == 0.0);
    CHECK(thermal.f2 > 0.0);

    const auto mu = thresholds(params(1.0, std::sqrt(2.0), 0.0, 1.0, 0.0, 0.0));
    const double expect = 2.0 * std::sqrt(2.0) / (2.0 * std::sqrt(2.0) + 3.0);
    CHECK(std::abs(mu.f1 - expect) < 1e-12);
    CHECK(std::abs(mu.f2 - expect) < 1e-12);
    CHECK(expect == Approx(0.485281).margin(1e-6));

    testing::Random rng(56);
    for (int i = 0; i < 1000; ++i) {
        const auto t = thresholds(rng.params(Regime::dicke));
        REQUIRE(t.f2 >= t.f_cr - 1e-14);
        REQUIRE(t.f1 <= t.f2 + 1e-14);
    }
}

TEST_CASE("piecewise asymptotic concurrence matches the constructed states", "[entanglement][dicke][oracle]") {
    testing::Random rng(57);
    for (int i = 0; i < 100; ++i) {
        const auto p = rng.params(Regime::dicke);
        for (int k = 0; k <= 10; ++k) {
            const double f = 0.1 * k;
            const double closed = asymptotic_concurrence(p, f);
            const auto rho = dicke_asymptotic(p, f);
            REQUIRE(std::abs(closed - concurrence_x(rho)) < 1e-10);
            REQUIRE(std::abs(closed - concurrence(rho)) < 1e-10);
            // Square roots of near-zero eigenvalues of rho*rho_tilde limit the raw oracle on rank-deficient states.
            REQUIRE(std::abs(closed - testing::concurrence_direct(rho.matrix())) < 1e-7);
        }
        CHECK(asymptotic_concurrence(p, 1.0) == Approx(1.0).epsilon(1e-12));
    }
    CHECK(kind_of([] { asymptotic_concurrence(params(1.0, 0.0, 0.0, 1.0, 0.0, 0.0), -0.1); }) ==
          ErrorKind::FidelityRange);
}

TEST_CASE("asymptotic concurrence vanishes exactly between the thresholds", "[entanglement][dicke]") {
    testing::Random rng(58);
    const double eps = 1e-3;
    for (int i = 0; i < 200; ++i) {
        const auto p = rng.params(Regime::dicke);
        const auto t = thresholds(p);
        for (int k = 0; k <= 20; ++k) {
            const double f = k == 20 ? t.f2 : t.f1 + (t.f2 - t.f1) * k / 20.0;
            REQUIRE(asymptotic_concurrence(p, f) == 0.0);
        }
        if (t.f1 > eps) REQUIRE(asymptotic_concurrence(p, t.f1 - eps) > 0.0);
        if (t.f2 + eps < 1.0) REQUIRE(asymptotic_concurrence(p, t.f2 + eps) > 0.0);
        // Affine on each branch: the midpoint equals the chord.
        if (t.f2 < 0.9) {
            const double a = t.f2 + 0.02, b = 1.0;
            REQUIRE(std::abs(asymptotic_concurrence(p, 0.5 * (a + b)) -
                             0.5 * (asymptotic_concurrence(p, a) + asymptotic_concurrence(p, b))) < 1e-12);
        }
    }
}

TEST_CASE("resonant minimum-uncertainty profile", "[entanglement][dicke]") {
    CHECK(resonant_min_uncertainty_profile(1.0, 0.0) == Approx(c0_one).epsilon(1e-14));
    CHECK(zero_fidelity_concurrence(1.0) == Approx(0.942809).margin(1e-6));
    CHECK(resonant_min_uncertainty_profile(1.0, 1.0) == Approx(1.0).epsilon(1e-14));
    for (double n : {0.2, 1.0, 3.0}) {
        const auto p = params(n, std::sqrt(n * (n + 1.0)), 1.2, 1.0, 0.0, 0.0);
        for (int k = 0; k <= 50; ++k) {
            const double f = k / 50.0;
            REQUIRE(std::abs(resonant_min_uncertainty_profile(n, f) - asymptotic_concurrence(p, f)) < 1e-12);
        }
    }
}

TEST_CASE("zero-fidelity entanglement needs squeezing", "[entanglement][dicke]") {
    const double n = 1.0;
    CHECK(asymptotic_concurrence(params(n, std::sqrt(2.0), 0.0, 1.0, 0.0, 0.0), 0.0) ==
          Approx(c0_one).epsilon(1e-12));
    CHECK(asymptotic_concurrence(params(n, 0.0, 0.0, 1.0, 0.0, 0.0), 0.0) == 0.0);
}
