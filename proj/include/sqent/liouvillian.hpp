// liouvillian.hpp — rotating-frame generator of the two-atom master equation
// in a broadband squeezed reservoir.
//
//   L rho = -i[H, rho] + sum_{j,k} gamma_jk/2 { (1+N) D[s-_j, s+_k]
//                                             +  N    D[s+_j, s-_k]
//                                             +  M    D[s+_j, s+_k]
//                                             +  M*   D[s-_j, s-_k] } rho
//   D[X, Y] rho = 2 X rho Y - Y X rho - rho Y X
//   H = delta/2 (s3_A + s3_B) + Omega (s+_A s-_B + s+_B s-_A)
//
// with gamma_AA = gamma_BB = 1 and gamma_AB = gamma_BA = gamma_hat (units of
// gamma0). Density matrices are column-major vectorized: vec(rho)[i + 4j].

#pragma once

#include "sqent/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <limits>
#include <vector>

namespace sqent {

using Mat16 = Eigen::Matrix<cd, 16, 16>;
using Vec16 = Eigen::Matrix<cd, 16, 1>;

inline Vec16 vectorize(const Mat4& m) {
    return Eigen::Map<const Vec16>(m.data());
}

inline Mat4 unvectorize(const Vec16& v) {
    return Eigen::Map<const Mat4>(v.data());
}

namespace detail {

inline Mat16 kron(const Mat4& a, const Mat4& b) {
    Mat16 k;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) k.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return k;
}

// Superoperators for X rho Y, X rho and rho X.
inline Mat16 sandwich(const Mat4& x, const Mat4& y) { return kron(y.transpose(), x); }
inline Mat16 left(const Mat4& x) { return kron(Mat4::Identity(), x); }
inline Mat16 right(const Mat4& x) { return kron(x.transpose(), Mat4::Identity()); }

struct AtomOperators {
    std::array<Mat4, 2> raise;  // s+_A, s+_B
    std::array<Mat4, 2> lower;
    std::array<Mat4, 2> z;
};

inline const AtomOperators& atom_operators() {
    static const AtomOperators ops = [] {
        // Single-qubit ordering (|1>, |0>) matches the canonical two-qubit order.
        Eigen::Matrix2cd sp = Eigen::Matrix2cd::Zero();
        sp(0, 1) = 1.0;
        Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
        sz(0, 0) = 1.0;
        sz(1, 1) = -1.0;
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        auto k2 = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
            Mat4 m;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
            return m;
        };
        AtomOperators o;
        o.raise = {k2(sp, id), k2(id, sp)};
        o.lower = {k2(sp.adjoint(), id), k2(id, sp.adjoint())};
        o.z = {k2(sz, id), k2(id, sz)};
        return o;
    }();
    return ops;
}

inline Mat16 dissipator(const Mat4& x, const Mat4& y) {
    const Mat4 yx = y * x;
    return 2.0 * sandwich(x, y) - left(yx) - right(yx);
}

}  // namespace detail

// Rotating-frame Hamiltonian in the canonical basis (units of gamma0).
inline Mat4 hamiltonian(const Parameters& p) {
    const auto& op = detail::atom_operators();
    return 0.5 * p.delta() * (op.z[0] + op.z[1]) +
           p.omega() * (op.raise[0] * op.lower[1] + op.raise[1] * op.lower[0]);
}

struct Superoperator {
    Mat16 matrix;
    Basis basis{Basis::canonical};

    Mat4 apply(const Mat4& rho) const { return unvectorize(matrix * vectorize(rho)); }

    Mat4 apply(const DensityMatrix& rho) const { return apply(rho.matrix_in(basis)); }

    Superoperator in(Basis target) const {
        if (target == basis) return *this;
        // U is real and involutive, so vec(U X U) = (U (x) U) vec(X) both ways.
        const Mat4& u = collective_map();
        const Mat16 t = detail::kron(u, u);
        return {t * matrix * t, target};
    }
};

inline Superoperator build_generator(const Parameters& p, Basis basis = Basis::canonical) {
    using namespace detail;
    const auto& op = atom_operators();
    const Mat4 h = hamiltonian(p);
    Mat16 l = -I * (left(h) - right(h));

    const double n = p.n();
    const cd m = p.m();
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const double g = (j == k) ? 1.0 : p.gamma_hat();
            if (g == 0.0) continue;
            l += 0.5 * g *
                 ((1.0 + n) * dissipator(op.lower[j], op.raise[k]) + n * dissipator(op.raise[j], op.lower[k]) +
                  m * dissipator(op.raise[j], op.raise[k]) + std::conj(m) * dissipator(op.lower[j], op.lower[k]));
        }
    }
    return Superoperator{l, Basis::canonical}.in(basis);
}

// d rho/dt in the collective basis written out as the closed blocks
// {ee, ss, aa, gg, eg}, {ae, ag, se, sg} and {as}. Only the upper triangle is
// evaluated; the lower triangle is its conjugate.
inline Mat4 rhs_collective(const Mat4& r, const Parameters& p) {
    using namespace col;
    const double n = p.n();
    const double gh = p.gamma_hat();
    const double up = 1.0 + gh;  // gamma0 + gamma
    const double dn = 1.0 - gh;  // gamma0 - gamma
    const double d = p.delta();
    const double om = p.omega();
    const cd m = p.m();
    const cd mb = std::conj(m);

    const cd ee = r(e, e), ss = r(s, s), aa = r(a, a), gg = r(g, g);
    const cd eg = r(e, g), ge = r(g, e);
    const cd es = r(e, s), se = r(s, e), ea = r(e, a), ae = r(a, e);
    const cd sg = r(s, g), gs = r(g, s), ag = r(a, g), ga = r(g, a);
    const cd pump = mb * eg + m * ge;

    Mat4 out;
    out(e, e) = n * dn * aa + n * up * ss - 2.0 * (1.0 + n) * ee - gh * pump;
    out(s, s) = up * ((1.0 + n) * ee + n * gg - (1.0 + 2.0 * n) * ss + pump);
    out(a, a) = dn * ((1.0 + n) * ee + n * gg - (1.0 + 2.0 * n) * aa - pump);
    out(g, g) = (1.0 + n) * dn * aa + (1.0 + n) * up * ss - 2.0 * n * gg - gh * pump;
    out(e, g) = -dn * m * aa + up * m * ss - gh * m * (ee + gg) - (1.0 + 2.0 * n + 2.0 * I * d) * eg;

    const double slow = gh * (n + 0.5) - 2.0 * n - 1.5;   // e-a block
    const double fast = gh * (n + 0.5) + 2.0 * n + 1.5;   // e-s block
    const double slow_g = gh * (n + 0.5) - 2.0 * n - 0.5; // a-g block
    const double fast_g = gh * (n + 0.5) + 2.0 * n + 0.5; // s-g block
    out(e, a) = (slow - I * (d + om)) * ea + dn * m * ae - dn * n * ag - gh * m * ga;
    out(a, g) = (slow_g - I * (d - om)) * ag - gh * m * ae - dn * (1.0 + n) * ea + dn * m * ga;
    out(e, s) = (-fast - I * (d - om)) * es - gh * m * gs + up * m * se + up * n * sg;
    out(s, g) = (-fast_g - I * (d + om)) * sg + up * (1.0 + n) * es + up * m * gs - gh * m * se;

    out(s, a) = -(1.0 + 2.0 * n + 2.0 * I * om) * r(s, a);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) out(i, j) = std::conj(out(j, i));
    return out;
}

inline Mat4 rhs_collective(const DensityMatrix& rho, const Parameters& p) {
    return rhs_collective(rho.matrix_in(Basis::collective), p);
}

// Kernel of the generator, intersected with Hermitian matrices.
struct StationarySpace {
    int dimension{0};
    Basis basis{Basis::canonical};
    std::vector<Mat4> hermitian_basis;  // real span = Hermitian part of ker L
    Eigen::VectorXd singular_values;    // descending
    double threshold{0.0};
    bool ill_conditioned{false};

    // The unique trace-one stationary state (dimension 1 only).
    DensityMatrix unique_state() const {
        if (dimension != 1) {
            throw Error(ErrorKind::RegimeError, "stationary space is not one-dimensional");
        }
        const Mat4& k = hermitian_basis.front();
        return DensityMatrix(k / k.trace().real(), basis);
    }

    // Trace-one stationary state with <a|rho|a> = f and no coherence between
    // |a> and the symmetric sector.
    DensityMatrix state_with_fidelity(double f) const {
        const int nb = static_cast<int>(hermitian_basis.size());
        Eigen::MatrixXd a(8, nb);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(8);
        rhs(0) = 1.0;
        rhs(1) = f;
        for (int i = 0; i < nb; ++i) {
            const Mat4 c = change_basis(hermitian_basis[i], basis, Basis::collective);
            a(0, i) = c.trace().real();
            a(1, i) = c(col::a, col::a).real();
            int row = 2;
            for (int other : {col::e, col::s, col::g}) {
                a(row++, i) = c(col::a, other).real();
                a(row++, i) = c(col::a, other).imag();
            }
        }
        const Eigen::VectorXd coef = a.completeOrthogonalDecomposition().solve(rhs);
        Mat4 rho = Mat4::Zero();
        for (int i = 0; i < nb; ++i) rho += coef(i) * hermitian_basis[i];
        rho = 0.5 * (rho + rho.adjoint()).eval();
        return DensityMatrix(rho, basis);
    }
};

inline constexpr double nullspace_relative_threshold = 1e-10;

inline StationarySpace stationary_space(const Superoperator& gen) {
    Eigen::JacobiSVD<Mat16> svd(gen.matrix, Eigen::ComputeFullV);
    StationarySpace out;
    out.basis = gen.basis;
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values(0);
    out.threshold = nullspace_relative_threshold * smax;

    int rank = 0;
    while (rank < 16 && out.singular_values(rank) > out.threshold) ++rank;
    out.dimension = 16 - rank;
    if (rank > 0 && out.singular_values(rank - 1) < 1e3 * out.threshold) out.ill_conditioned = true;

    // Hermitian and anti-Hermitian parts of each kernel vector, orthonormalized
    // as real 32-vectors; the kernel is closed under adjoint so exactly
    // `dimension` of them are independent.
    const int dim = out.dimension;
    if (dim == 0) return out;
    Eigen::MatrixXd cand(32, 2 * dim);
    for (int i = 0; i < dim; ++i) {
        const Mat4 k = unvectorize(svd.matrixV().col(rank + i));
        const Mat4 parts[2] = {0.5 * (k + k.adjoint()), (0.5 * I) * (k - k.adjoint())};
        for (int s = 0; s < 2; ++s) {
            const Vec16 v = vectorize(parts[s]);
            cand.col(2 * i + s) << v.real(), v.imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> csvd(cand, Eigen::ComputeThinU);
    for (int i = 0; i < dim; ++i) {
        const Eigen::VectorXd col = csvd.matrixU().col(i);
        Vec16 v;
        v.real() = col.head<16>();
        v.imag() = col.tail<16>();
        Mat4 h = unvectorize(v);
        out.hermitian_basis.push_back(0.5 * (h + h.adjoint()));
    }
    return out;
}

// ||L rho|| max-entry.
inline double stationarity_residual(const Superoperator& gen, const DensityMatrix& rho) {
    return gen.apply(rho).cwiseAbs().maxCoeff();
}

// Smallest non-zero |Re lambda| of the generator (relaxation rate of the
// slowest decaying mode).
struct Spectrum {
    double gap{0.0};     // smallest nonzero decay rate, +inf if none
    double radius{0.0};  // largest |lambda|
};

inline Spectrum spectrum(const Superoperator& gen) {
    Eigen::ComplexEigenSolver<Mat16> es(gen.matrix, false);
    const double scale = gen.matrix.cwiseAbs().maxCoeff();
    Spectrum out{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < 16; ++i) {
        const double re = -es.eigenvalues()(i).real();
        if (re > 1e-9 * scale) out.gap = std::min(out.gap, re);
        out.radius = std::max(out.radius, std::abs(es.eigenvalues()(i)));
    }
    return out;
}

inline double spectral_gap(const Superoperator& gen) { return spectrum(gen).gap; }

}  // namespace sqent
