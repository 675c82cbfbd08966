// model.hpp — reservoir/atom parameters, two-qubit density matrices and the
// collective {|e>,|s>,|a>,|g>} basis.
//
// Canonical ordering is |11>,|10>,|01>,|00> (|1> = excited), collective
// ordering is |e>,|s>,|a>,|g> with
//   |s> = (|01> + |10>)/sqrt2,   |a> = (|10> - |01>)/sqrt2.
// All rates are measured in units of the single-atom emission rate gamma0.

#pragma once

#include "sqent/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

namespace sqent {

using cd = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr cd I{0.0, 1.0};

// Canonical product-basis indices.
namespace can {
inline constexpr int ee = 0;  // |11>
inline constexpr int eg = 1;  // |10>
inline constexpr int ge = 2;  // |01>
inline constexpr int gg = 3;  // |00>
}  // namespace can

// Collective-basis indices.
namespace col {
inline constexpr int e = 0;
inline constexpr int s = 1;
inline constexpr int a = 2;
inline constexpr int g = 3;
}  // namespace col

enum class Basis { canonical, collective };

inline const char* to_string(Basis b) noexcept {
    return b == Basis::canonical ? "canonical" : "collective";
}

// Squeezed reservoir: mean photon number N and correlation M = |M| e^{i phase}.
struct BathParams {
    double n_mean{0.0};
    double m_abs{0.0};
    double m_phase{0.0};

    cd m() const { return std::polar(m_abs, m_phase); }
    double squeeze_bound() const { return std::sqrt(n_mean * (n_mean + 1.0)); }

    static BathParams minimum_uncertainty(double n_mean, double m_phase = 0.0) {
        return {n_mean, std::sqrt(n_mean * (n_mean + 1.0)), m_phase};
    }
};

enum class Regime { separated, dicke };

struct AtomParams {
    double gamma0{1.0};
    double gamma_hat{0.0};
    double omega_dd{0.0};  // same units as gamma0
    double delta{0.0};     // detuning / gamma0

    Regime regime() const { return gamma_hat < 1.0 ? Regime::separated : Regime::dicke; }
    double omega_normalized() const { return omega_dd / gamma0; }
};

// Parameter bundle that passed validate(); every physics routine takes one.
class Parameters {
public:
    const BathParams& bath() const noexcept { return bath_; }
    const AtomParams& atoms() const noexcept { return atoms_; }
    Regime regime() const noexcept { return atoms_.regime(); }

    double n() const noexcept { return bath_.n_mean; }
    double m_abs() const noexcept { return bath_.m_abs; }
    cd m() const { return bath_.m(); }
    double gamma_hat() const noexcept { return atoms_.gamma_hat; }
    double delta() const noexcept { return atoms_.delta; }
    double omega() const noexcept { return atoms_.omega_normalized(); }

private:
    Parameters(BathParams b, AtomParams a) : bath_(b), atoms_(a) {}
    friend Parameters validate(const BathParams&, const AtomParams&);

    BathParams bath_;
    AtomParams atoms_;
};

// Relative slack on |M| <= sqrt(N(N+1)) so that the minimum-uncertainty
// boundary computed in floating point is accepted.
inline constexpr double squeeze_bound_slack = 1e-12;

inline Parameters validate(const BathParams& bath, const AtomParams& atoms) {
    if (!std::isfinite(bath.n_mean) || !std::isfinite(bath.m_abs) || !std::isfinite(bath.m_phase) ||
        bath.n_mean < 0.0 || bath.m_abs < 0.0) {
        throw Error(ErrorKind::InvalidBath, "N and |M| must be finite and non-negative");
    }
    const double bound = bath.squeeze_bound();
    if (bath.m_abs > bound + squeeze_bound_slack * std::max(1.0, bound)) {
        std::ostringstream os;
        os << "|M| = " << bath.m_abs << " exceeds sqrt(N(N+1)) = " << bound;
        throw Error(ErrorKind::MSqueezeBound, os.str());
    }
    if (!(atoms.gamma0 > 0.0) || !std::isfinite(atoms.gamma0)) {
        throw Error(ErrorKind::NegativeRate, "gamma0 must be positive");
    }
    if (!(atoms.gamma_hat >= 0.0 && atoms.gamma_hat <= 1.0)) {
        throw Error(ErrorKind::GammaHatRange, "gamma_hat must lie in [0, 1]");
    }
    if (!std::isfinite(atoms.omega_dd) || !std::isfinite(atoms.delta)) {
        throw Error(ErrorKind::InvalidBath, "omega_dd and delta must be finite");
    }
    BathParams b = bath;
    b.m_phase = std::fmod(b.m_phase, 2.0 * std::numbers::pi);
    if (b.m_phase < 0.0) b.m_phase += 2.0 * std::numbers::pi;
    return Parameters(b, atoms);
}

// Rows are |e>,|s>,|a>,|g> written in canonical coordinates, so
// rho_collective = U rho_canonical U^dagger. U is real, symmetric and its own
// inverse.
inline const Mat4& collective_map() {
    static const Mat4 u = [] {
        const double r = 1.0 / std::sqrt(2.0);
        Mat4 m = Mat4::Zero();
        m(col::e, can::ee) = 1.0;
        m(col::s, can::eg) = r;
        m(col::s, can::ge) = r;
        m(col::a, can::eg) = r;
        m(col::a, can::ge) = -r;
        m(col::g, can::gg) = 1.0;
        return m;
    }();
    return u;
}

inline Mat4 change_basis(const Mat4& m, Basis from, Basis to) {
    if (from == to) return m;
    const Mat4& u = collective_map();
    return u * m * u.adjoint();
}

class DensityMatrix {
public:
    static constexpr double hermiticity_tol = 1e-12;
    static constexpr double trace_tol = 1e-12;
    static constexpr double psd_floor = -1e-9;

    DensityMatrix(const Mat4& m, Basis basis) : m_(m), basis_(basis) {
        const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (herm > hermiticity_tol) {
            throw Error(ErrorKind::InvalidState, "matrix is not Hermitian (deviation " + num(herm) + ")");
        }
        const double tr_err = std::abs(m.trace() - 1.0);
        if (tr_err > trace_tol) {
            throw Error(ErrorKind::InvalidState, "trace differs from 1 by " + num(tr_err));
        }
        const Mat4 h = 0.5 * (m + m.adjoint());
        const double lmin = Eigen::SelfAdjointEigenSolver<Mat4>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
        if (lmin < psd_floor) {
            throw Error(ErrorKind::InvalidState, "negative eigenvalue " + num(lmin));
        }
    }

    static DensityMatrix pure(const Vec4& psi, Basis basis) {
        if (std::abs(psi.norm() - 1.0) > 1e-12) {
            throw Error(ErrorKind::NotNormalized, "state vector norm " + num(psi.norm()));
        }
        return DensityMatrix(psi * psi.adjoint(), basis);
    }

    const Mat4& matrix() const noexcept { return m_; }
    Basis basis() const noexcept { return basis_; }
    cd operator()(int i, int j) const { return m_(i, j); }

    DensityMatrix in(Basis target) const {
        if (target == basis_) return *this;
        return DensityMatrix(change_basis(m_, basis_, target), target, trusted{});
    }

    Mat4 matrix_in(Basis target) const { return change_basis(m_, basis_, target); }

private:
    struct trusted {};
    // Unitary conjugation of an already validated state.
    DensityMatrix(const Mat4& m, Basis basis, trusted) : m_(m), basis_(basis) {}

    static std::string num(double x) {
        std::ostringstream os;
        os << x;
        return os.str();
    }

    Mat4 m_;
    Basis basis_;
};

inline DensityMatrix to_collective(const DensityMatrix& rho) { return rho.in(Basis::collective); }
inline DensityMatrix from_collective(const DensityMatrix& rho) { return rho.in(Basis::canonical); }

// Named pure states, as canonical-basis vectors.
inline Vec4 canonical_vector(int index) {
    Vec4 v = Vec4::Zero();
    v(index) = 1.0;
    return v;
}

inline Vec4 collective_vector(int index) {
    // Row `index` of U expressed as a column (U is real).
    return collective_map().row(index).transpose();
}

inline DensityMatrix collective_projector(int index) {
    return DensityMatrix::pure(collective_vector(index), Basis::canonical);
}

// F = <a|rho|a>.
inline double fidelity_antisymmetric(const DensityMatrix& rho) {
    if (rho.basis() == Basis::collective) return rho(col::a, col::a).real();
    return to_collective(rho)(col::a, col::a).real();
}

// Single-qubit pure state a_g|0> + a_e|1>.
struct QubitState {
    cd ground{1.0};
    cd excited{0.0};

    double norm() const { return std::sqrt(std::norm(ground) + std::norm(excited)); }
};

inline cd overlap(const QubitState& phi, const QubitState& psi) {
    return std::conj(phi.ground) * psi.ground + std::conj(phi.excited) * psi.excited;
}

inline Vec4 product_state(const QubitState& a, const QubitState& b) {
    Vec4 v;
    v(can::ee) = a.excited * b.excited;
    v(can::eg) = a.excited * b.ground;
    v(can::ge) = a.ground * b.excited;
    v(can::gg) = a.ground * b.ground;
    return v;
}

// F of |phi (x) psi> with respect to |a>: (1 - |<phi|psi>|^2)/2.
inline double product_state_fidelity(const QubitState& phi, const QubitState& psi) {
    constexpr double tol = 1e-12;
    if (std::abs(phi.norm() - 1.0) > tol || std::abs(psi.norm() - 1.0) > tol) {
        throw Error(ErrorKind::NotNormalized, "single-qubit states must be normalized");
    }
    return 0.5 * (1.0 - std::norm(overlap(phi, psi)));
}

}  // namespace sqent
