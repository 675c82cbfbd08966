// asymptotic.hpp — closed-form stationary states of the two-atom system.
//
// Separated atoms (gamma_hat < 1) relax to a unique X-shaped state. In the
// Dicke limit (gamma_hat = 1) |a> decouples, F = <a|rho|a> is conserved and the
// long-time state is
//   rho_as(F) = (1-F) rho_sym + F |a><a|
// where rho_sym is the stationary state of the symmetric triplet
// {|11>, |s>, |00>}. Both are returned in the canonical basis.

#pragma once

#include "sqent/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

namespace sqent {

// Numerators/denominator of the unique stationary state (gamma_hat < 1).
struct UniqueCoefficients {
    double u0, a0, c0, d0, b0;
    cd z0;
};

inline UniqueCoefficients unique_coefficients(const Parameters& p) {
    const double n = p.n();
    const double m2 = p.m_abs() * p.m_abs();
    const double gh = p.gamma_hat();
    const double d2 = p.delta() * p.delta();
    const double w = (1.0 + 2.0 * n) * (1.0 + 2.0 * n);
    const double k = w - 4.0 * m2 + 4.0 * d2;
    const double mg = m2 * gh * gh;

    UniqueCoefficients c{};
    c.u0 = w * (w + 4.0 * d2) + 4.0 * m2 * (gh * gh - w);
    c.a0 = n * n * k + mg;
    c.c0 = n * (n + 1.0) * k + mg;
    c.d0 = (1.0 + n) * (1.0 + n) * k + mg;
    c.b0 = -2.0 * gh * m2;
    c.z0 = -(1.0 + 2.0 * n - 2.0 * I * p.delta()) * gh * p.m();
    return c;
}

inline DensityMatrix unique_asymptotic(const Parameters& p) {
    if (p.regime() != Regime::separated) {
        throw Error(ErrorKind::RegimeError, "unique asymptotic state requires gamma_hat < 1");
    }
    const auto c = unique_coefficients(p);
    Mat4 r = Mat4::Zero();
    r(can::ee, can::ee) = c.a0 / c.u0;
    r(can::eg, can::eg) = c.c0 / c.u0;
    r(can::ge, can::ge) = c.c0 / c.u0;
    r(can::gg, can::gg) = c.d0 / c.u0;
    r(can::eg, can::ge) = c.b0 / c.u0;
    r(can::ge, can::eg) = c.b0 / c.u0;
    r(can::ee, can::gg) = c.z0 / c.u0;
    r(can::gg, can::ee) = std::conj(c.z0) / c.u0;
    return DensityMatrix(r, Basis::canonical);
}

// Dicke-limit triplet coefficients; rho_sym has populations (a, c, d)/u on
// (|11>, |s>, |00>) and <11|rho_sym|00> = z/u, with a + c + d = u.
struct DickeCoefficients {
    double u, a, c, d;
    cd z;
};

inline DickeCoefficients dicke_coefficients(const Parameters& p) {
    const double n = p.n();
    const double m2 = p.m_abs() * p.m_abs();
    const double d2 = p.delta() * p.delta();
    const double w = (1.0 + 2.0 * n) * (1.0 + 2.0 * n);
    const double excess = std::max(0.0, n * (n + 1.0) - m2);  // vanishes at minimum uncertainty
    const double q = 1.0 + 3.0 * n + 3.0 * n * n;

    DickeCoefficients c{};
    c.u = w * (q - 3.0 * m2) + 4.0 * q * d2;
    c.a = 4.0 * n * n * excess + m2 + n * n * (1.0 + 4.0 * d2);
    c.c = w * excess + 4.0 * n * (n + 1.0) * d2;
    c.d = (1.0 + 2.0 * n) * (1.0 + n + (3.0 + 2.0 * n) * excess) + 4.0 * (1.0 + n) * (1.0 + n) * d2;
    c.z = -(1.0 + 2.0 * n - 2.0 * I * p.delta()) * p.m();
    return c;
}

inline void require_dicke(const Parameters& p) {
    if (p.regime() != Regime::dicke) {
        throw Error(ErrorKind::RegimeError, "Dicke-limit quantity requires gamma_hat = 1");
    }
}

inline void require_fidelity(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw Error(ErrorKind::FidelityRange, "fidelity must lie in [0, 1]");
}

inline DensityMatrix dicke_asymptotic(const Parameters& p, double f) {
    require_dicke(p);
    require_fidelity(f);
    const auto c = dicke_coefficients(p);
    const double w = 1.0 - f;
    Mat4 r = Mat4::Zero();
    r(can::ee, can::ee) = w * c.a / c.u;
    r(can::eg, can::eg) = w * c.c / (2.0 * c.u) + 0.5 * f;
    r(can::ge, can::ge) = r(can::eg, can::eg);
    r(can::eg, can::ge) = w * c.c / (2.0 * c.u) - 0.5 * f;
    r(can::ge, can::eg) = r(can::eg, can::ge);
    r(can::ee, can::gg) = w * c.z / c.u;
    r(can::gg, can::ee) = std::conj(r(can::ee, can::gg));
    r(can::gg, can::gg) = w * c.d / c.u;
    return DensityMatrix(r, Basis::canonical);
}

// |N,theta> = sqrt((1+N)/(1+2N)) |00> + e^{i theta} sqrt(N/(1+2N)) |11>,
// the F = 0 resonant minimum-uncertainty stationary state.
inline Vec4 two_atom_squeezed_state(double n, double theta) {
    if (!(n >= 0.0)) throw Error(ErrorKind::InvalidBath, "N must be non-negative");
    Vec4 v = Vec4::Zero();
    v(can::gg) = std::sqrt((1.0 + n) / (1.0 + 2.0 * n));
    v(can::ee) = std::polar(std::sqrt(n / (1.0 + 2.0 * n)), theta);
    return v;
}

// S(xi) = exp(conj(xi) s-_A s-_B - xi s+_A s+_B). The exponent only couples
// |11> and |00> and squares to -|xi|^2 there.
inline Mat4 atomic_squeeze_unitary(cd xi) {
    const double r = std::abs(xi);
    const double sinc = r == 0.0 ? 1.0 : std::sin(r) / r;
    Mat4 s = Mat4::Identity();
    s(can::ee, can::ee) = std::cos(r);
    s(can::gg, can::gg) = std::cos(r);
    s(can::ee, can::gg) = -xi * sinc;
    s(can::gg, can::ee) = std::conj(xi) * sinc;
    return s;
}

// xi with S(xi)|00> = |N,theta>.
inline cd squeeze_parameter(double n, double theta) {
    const double r = std::atan(std::sqrt(n / (1.0 + n)));
    return std::polar(r, theta + std::numbers::pi);
}

// Fidelity above which rho_as(F) is a Gibbs/|a>/|psi> mixture.
inline double critical_fidelity(const Parameters& p) {
    require_dicke(p);
    const auto c = dicke_coefficients(p);
    return c.c / (c.c + c.u);
}

struct MixtureDecomposition {
    double p{0.0};  // weight of |a><a|
    double q{0.0};  // weight of |psi><psi|
    DensityMatrix gibbs{Mat4::Identity() / 4.0, Basis::canonical};
    Vec4 psi{Vec4::Zero()};
    std::optional<double> beta_omega;   // (1/2) ln(d/a)
    std::optional<double> beta_omega1;  // ln(c / (sqrt(ad) - |z|))
    bool gibbs_degenerate{false};

    double gibbs_weight() const { return 1.0 - p - q; }

    Mat4 reconstruct() const {
        const Vec4 a = collective_vector(col::a);
        return gibbs_weight() * gibbs.matrix() + p * a * a.adjoint() + q * psi * psi.adjoint();
    }
};

// Gibbs state exp(-beta H_a)/Z with H_a eigenvalues omega+omega1, 0, 0,
// omega1-omega on |11>,|10>,|01>,|00>, written through the products beta*omega
// and beta*omega1.
inline DensityMatrix gibbs_state(double beta_omega, double beta_omega1) {
    Eigen::Vector4d w;
    w << std::exp(-beta_omega - beta_omega1), 1.0, 1.0, std::exp(beta_omega - beta_omega1);
    w /= w.sum();
    return DensityMatrix(w.cast<cd>().asDiagonal().toDenseMatrix(), Basis::canonical);
}

inline constexpr double critical_slack = 1e-14;

inline MixtureDecomposition decompose(const Parameters& par, double f) {
    require_dicke(par);
    require_fidelity(f);
    const auto c = dicke_coefficients(par);
    const double f_cr = c.c / (c.c + c.u);
    if (f < f_cr - critical_slack) {
        throw Error(ErrorKind::BelowCritical, "F = " + std::to_string(f) + " is below F_cr = " + std::to_string(f_cr));
    }

    MixtureDecomposition out;
    const double sad = std::sqrt(c.a * c.d);
    const double zabs = std::abs(c.z);
    out.p = (1.0 + c.c / c.u) * f - c.c / c.u;
    out.q = sad > 0.0 ? zabs * (c.a + c.d) / (c.u * sad) * (1.0 - f) : 0.0;

    const double phi = zabs > 0.0 ? std::arg(c.z) : 0.0;
    out.psi(can::gg) = std::sqrt(c.d / (c.a + c.d));
    out.psi(can::ee) = std::polar(std::sqrt(c.a / (c.a + c.d)), phi);

    // Diagonal of (rho_as - p|a><a| - q|psi><psi|) up to the factor (1-F)/u.
    const double shrink = sad > 0.0 ? std::max(0.0, 1.0 - zabs / sad) : 1.0;
    Eigen::Vector4d w;
    w << c.a * shrink, c.c, c.c, c.d * shrink;
    const double total = w.sum();
    const double scale = std::max({c.a, c.c, c.d});
    if (total > 1e-14 * scale) {
        w /= total;
        out.gibbs = DensityMatrix(w.cast<cd>().asDiagonal().toDenseMatrix(), Basis::canonical);
    }

    if (c.a > 0.0 && c.d > 0.0) out.beta_omega = 0.5 * std::log(c.d / c.a);
    if (c.c > 0.0 && sad - zabs > 0.0) out.beta_omega1 = std::log(c.c / (sad - zabs));

    out.gibbs_degenerate = total <= 1e-14 * scale || std::abs(c.d - c.a) <= 1e-12 * scale ||
                           sad - zabs <= 1e-12 * scale;
    return out;
}

}  // namespace sqent
