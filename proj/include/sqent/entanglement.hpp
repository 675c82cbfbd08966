// entanglement.hpp — Wootters concurrence and the asymptotic-concurrence
// formulas for both regimes.

#pragma once

#include "sqent/asymptotic.hpp"
#include "sqent/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace sqent {

inline constexpr double eigenvalue_clip = 1e-12;

// sigma_y (x) sigma_y in the canonical basis.
inline const Mat4& spin_flip() {
    static const Mat4 yy = [] {
        Mat4 m = Mat4::Zero();
        m(can::ee, can::gg) = -1.0;
        m(can::gg, can::ee) = -1.0;
        m(can::eg, can::ge) = 1.0;
        m(can::ge, can::eg) = 1.0;
        return m;
    }();
    return yy;
}

// Eigenvalues of rho below this (relative to the largest) are roundoff and
// treated as exact zeros.
inline constexpr double rank_floor = 1e-15;

// Wootters concurrence. With rho = W W^dagger (W = V sqrt(mu)), the square
// roots of the eigenvalues of rho*rho_tilde are the singular values of the
// complex-symmetric matrix W^T (sigma_y x sigma_y) W, which avoids a second
// square root near zero.
inline double concurrence(const DensityMatrix& state) {
    const Mat4 rho = state.matrix_in(Basis::canonical);
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (rho + rho.adjoint()));
    Eigen::Vector4d mu = es.eigenvalues();
    const double floor = rank_floor * std::max(mu.maxCoeff(), 0.0);
    for (int i = 0; i < 4; ++i) mu(i) = mu(i) <= floor ? 0.0 : std::sqrt(mu(i));
    const Mat4 w = es.eigenvectors() * mu.cast<cd>().asDiagonal();
    const Mat4 tau = w.transpose() * spin_flip() * w;

    Eigen::Vector4d lam = Eigen::JacobiSVD<Mat4>(tau).singularValues();  // descending
    for (int i = 0; i < 4; ++i) {
        if (lam(i) < eigenvalue_clip) lam(i) = std::max(lam(i), 0.0);
    }
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

inline constexpr double x_form_tol = 1e-12;

inline bool is_x_form(const Mat4& rho, double tol = x_form_tol) {
    using namespace can;
    const int off[][2] = {{ee, eg}, {ee, ge}, {eg, gg}, {ge, gg}};
    for (auto [i, j] : off) {
        if (std::abs(rho(i, j)) > tol || std::abs(rho(j, i)) > tol) return false;
    }
    return true;
}

// C = max(0, C1, C2) for states supported on the diagonal and anti-diagonal.
inline double concurrence_x(const DensityMatrix& state) {
    using namespace can;
    const Mat4 rho = state.matrix_in(Basis::canonical);
    if (!is_x_form(rho)) throw Error(ErrorKind::NotXForm, "state has entries outside the X pattern");
    const double c1 = 2.0 * (std::abs(rho(ee, gg)) - std::sqrt(rho(eg, eg).real() * rho(ge, ge).real()));
    const double c2 = 2.0 * (std::abs(rho(eg, ge)) - std::sqrt(rho(ee, ee).real() * rho(gg, gg).real()));
    return std::max({0.0, c1, c2});
}

inline double concurrence_unique(const Parameters& p) {
    if (p.regime() != Regime::separated) {
        throw Error(ErrorKind::RegimeError, "unique asymptotic state requires gamma_hat < 1");
    }
    const auto c = unique_coefficients(p);
    return 2.0 * std::max({0.0, (std::abs(c.z0) - c.c0) / c.u0,
                           (std::abs(c.b0) - std::sqrt(c.a0 * c.d0)) / c.u0});
}

struct Thresholds {
    double f_cr{0.0};
    double f1{0.0};  // C(rho_as) > 0 on [0, f1)
    double f2{0.0};  // C(rho_as) > 0 on (f2, 1]
};

inline Thresholds thresholds(const Parameters& p) {
    require_dicke(p);
    const auto c = dicke_coefficients(p);
    const double k1 = c.c - 2.0 * std::abs(c.z);
    const double k2 = c.c + 2.0 * std::sqrt(c.a * c.d);
    Thresholds t;
    t.f_cr = c.c / (c.c + c.u);
    t.f1 = std::max(0.0, k1 / (k1 - c.u));
    t.f2 = k2 / (k2 + c.u);
    return t;
}

// Concurrence of rho_as(F): affine branches on [0, F1) and (F2, 1], zero
// in between.
inline double asymptotic_concurrence(const Parameters& p, double f) {
    require_dicke(p);
    require_fidelity(f);
    const auto c = dicke_coefficients(p);
    const Thresholds t = thresholds(p);
    if (f < t.f1) {
        const double k1 = (c.c - 2.0 * std::abs(c.z)) / c.u;
        return std::max(0.0, (k1 - 1.0) * f - k1);
    }
    if (f > t.f2) {
        const double k2 = (c.c + 2.0 * std::sqrt(c.a * c.d)) / c.u;
        return std::max(0.0, (1.0 + k2) * f - k2);
    }
    return 0.0;
}

// Concurrence of the F = 0, delta = 0, minimum-uncertainty asymptotic state.
inline double zero_fidelity_concurrence(double n) {
    return 2.0 * std::sqrt(n * (n + 1.0)) / (1.0 + 2.0 * n);
}

// Resonant minimum-uncertainty asymptotic concurrence |(1+C0)F - C0|.
inline double resonant_min_uncertainty_profile(double n, double f) {
    if (!(n >= 0.0)) throw Error(ErrorKind::InvalidBath, "N must be non-negative");
    require_fidelity(f);
    const double c0 = zero_fidelity_concurrence(n);
    const double f1 = c0 / (1.0 + c0);
    return f < f1 ? c0 - (1.0 + c0) * f : (1.0 + c0) * f - c0;
}

}  // namespace sqent
