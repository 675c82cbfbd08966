#include <catch_amalgamated.hpp>

#include "sqent/model.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace sqent;
using Catch::Approx;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected sqent::Error");
    return ErrorKind::InvalidState;
}

}  // namespace

TEST_CASE("validate accepts the minimum-uncertainty boundary", "[model][validate]") {
    const auto p = validate({1.0, std::sqrt(2.0), 0.0}, {1.0, 0.85, 0.0, 0.0});
    CHECK(p.m_abs() == Approx(std::sqrt(2.0)));
    CHECK(p.regime() == Regime::separated);
}

TEST_CASE("validate reports the violated invariant", "[model][validate]") {
    CHECK(kind_of([] { validate({0.0, 0.1, 0.0}, {1.0, 0.5, 0.0, 0.0}); }) == ErrorKind::MSqueezeBound);
    CHECK(kind_of([] { validate({1.0, 1.0, 0.0}, {1.0, 1.2, 0.0, 0.0}); }) == ErrorKind::GammaHatRange);
    CHECK(kind_of([] { validate({1.0, 1.0, 0.0}, {0.0, 0.5, 0.0, 0.0}); }) == ErrorKind::NegativeRate);
    CHECK(kind_of([] { validate({1.0, 1.0, 0.0}, {-1.0, 0.5, 0.0, 0.0}); }) == ErrorKind::NegativeRate);
    CHECK(kind_of([] { validate({-0.5, 0.0, 0.0}, {1.0, 0.5, 0.0, 0.0}); }) == ErrorKind::InvalidBath);
    CHECK(kind_of([] { validate({1.0, 1.0, 0.0}, {1.0, -0.1, 0.0, 0.0}); }) == ErrorKind::GammaHatRange);
}

TEST_CASE("validate wraps the squeezing phase into [0, 2pi)", "[model][validate]") {
    const auto p = validate({1.0, 1.0, -0.5}, {1.0, 1.0, 0.0, 0.0});
    CHECK(p.bath().m_phase == Approx(2.0 * std::numbers::pi - 0.5));
    CHECK(p.regime() == Regime::dicke);
}

TEST_CASE("collective map is a real involutive unitary", "[model][basis]") {
    const Mat4& u = collective_map();
    CHECK(testing::max_abs(u * u.adjoint() - Mat4::Identity()) < 1e-14);
    CHECK(testing::max_abs(u * u - Mat4::Identity()) < 1e-14);
    // |a> = (|10> - |01>)/sqrt2
    CHECK(u(col::a, can::eg).real() == Approx(1.0 / std::sqrt(2.0)));
    CHECK(u(col::a, can::ge).real() == Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("to_collective of basis states", "[model][basis]") {
    const auto ten = DensityMatrix::pure(canonical_vector(can::eg), Basis::canonical);
    const Mat4 c = to_collective(ten).matrix();
    CHECK(c(col::s, col::s).real() == Approx(0.5));
    CHECK(c(col::a, col::a).real() == Approx(0.5));
    CHECK(std::abs(c(col::s, col::a)) == Approx(0.5));
    CHECK(std::abs(c(col::a, col::s)) == Approx(0.5));

    const auto e = DensityMatrix::pure(canonical_vector(can::ee), Basis::canonical);
    Mat4 expect = Mat4::Zero();
    expect(col::e, col::e) = 1.0;
    CHECK(testing::max_abs(to_collective(e).matrix() - expect) < 1e-15);
}

TEST_CASE("collective round trip on random states", "[model][basis][property]") {
    testing::Random rng(11);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho(rng.density(), Basis::canonical);
        const DensityMatrix back = from_collective(to_collective(rho));
        REQUIRE(testing::max_abs(back.matrix() - rho.matrix()) < 1e-14);
        REQUIRE(back.basis() == Basis::canonical);
    }
}

TEST_CASE("DensityMatrix rejects invalid matrices", "[model][state]") {
    Mat4 m = Mat4::Identity() / 4.0;
    m(0, 1) = 0.1;  // not Hermitian
    CHECK_THROWS_AS(DensityMatrix(m, Basis::canonical), Error);
    CHECK_THROWS_AS(DensityMatrix(Mat4::Identity() / 2.0, Basis::canonical), Error);
    Mat4 neg = Mat4::Zero();
    neg.diagonal() << 1.5, -0.5, 0.0, 0.0;
    CHECK(kind_of([&] { DensityMatrix(neg, Basis::canonical); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { DensityMatrix::pure(Vec4::Ones(), Basis::canonical); }) == ErrorKind::NotNormalized);
}

TEST_CASE("fidelity with the antisymmetric state", "[model][fidelity]") {
    CHECK(fidelity_antisymmetric(collective_projector(col::a)) == Approx(1.0));
    CHECK(fidelity_antisymmetric(collective_projector(col::g)) == Approx(0.0).margin(1e-16));
    const auto zero_one = DensityMatrix::pure(canonical_vector(can::ge), Basis::canonical);
    CHECK(fidelity_antisymmetric(zero_one) == Approx(0.5));
}

TEST_CASE("fidelity equals the (a,a) entry of the collective matrix exactly", "[model][fidelity][property]") {
    testing::Random rng(12);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho(rng.density(), Basis::canonical);
        REQUIRE(fidelity_antisymmetric(rho) == to_collective(rho)(col::a, col::a).real());
    }
}

TEST_CASE("product state fidelity", "[model][fidelity]") {
    const QubitState zero{1.0, 0.0};
    const QubitState one{0.0, 1.0};
    const double r = 1.0 / std::sqrt(2.0);
    const QubitState plus{r, r};
    CHECK(product_state_fidelity(zero, zero) == Approx(0.0).margin(1e-16));
    CHECK(product_state_fidelity(zero, one) == Approx(0.5));
    CHECK(product_state_fidelity(zero, plus) == Approx(0.25));
    CHECK(kind_of([&] { product_state_fidelity({1.0, 1.0}, zero); }) == ErrorKind::NotNormalized);
}

TEST_CASE("product state fidelity matches <a|rho|a> and never exceeds 1/2", "[model][fidelity][property]") {
    testing::Random rng(13);
    for (int i = 0; i < 200; ++i) {
        const QubitState phi = rng.qubit(), psi = rng.qubit();
        const double f = product_state_fidelity(phi, psi);
        const auto rho = DensityMatrix::pure(product_state(phi, psi), Basis::canonical);
        REQUIRE(std::abs(f - fidelity_antisymmetric(rho)) < 1e-12);
        REQUIRE(f <= 0.5 + 1e-15);
    }
}
