// evolve.hpp — time integration of d rho/dt = L rho and relaxation to the
// stationary state.
//
// The default path is an adaptive Dormand-Prince 5(4) integrator driven by
// rhs_collective(); integrate_exact() applies exp(L t) to the vectorized state
// and serves as an independent cross-check.

#pragma once

#include "sqent/liouvillian.hpp"
#include "sqent/model.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sqent {

struct IntegratorConfig {
    double step{1e-2};  // initial step, units of 1/gamma0
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    double t_max{0.0};  // <= 0 selects default_t_max()
    double stationarity_eps{1e-10};

    void validate() const {
        if (!(step > 0.0) || !(rel_tol > 0.0) || !(abs_tol > 0.0) || !(stationarity_eps > 0.0)) {
            throw Error(ErrorKind::InvalidConfig, "step, tolerances and stationarity_eps must be positive");
        }
        if (rel_tol < 1e-14) throw Error(ErrorKind::InvalidConfig, "rel_tol must be at least 1e-14");
        if (!std::isfinite(t_max)) throw Error(ErrorKind::InvalidConfig, "t_max must be finite");
    }
};

inline constexpr double min_step = 1e-12;

// Dormand-Prince 5(4) stepper (first-same-as-last). State is any Eigen dense
// type with the usual vector-space operations.
template <class State>
class DormandPrince54 {
public:
    using Rhs = std::function<State(const State&)>;

    struct StepResult {
        State y;
        State error;
        State dy;  // f(y), reused as k1 of the next step
    };

    explicit DormandPrince54(Rhs f) : f_(std::move(f)) {}

    // One step of size h from y whose derivative is k1 = f(y).
    StepResult step(const State& y, const State& k1, double h) const {
        constexpr double a21 = 1.0 / 5.0;
        constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                         a54 = -212.0 / 729.0;
        constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                         a65 = -5103.0 / 18656.0;
        constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                         b6 = 11.0 / 84.0;
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                         e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

        const State k2 = f_(y + h * (a21 * k1));
        const State k3 = f_(y + h * (a31 * k1 + a32 * k2));
        const State k4 = f_(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = f_(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = f_(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        StepResult r;
        r.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        r.dy = f_(r.y);
        r.error = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * r.dy);
        return r;
    }

    const Rhs& rhs() const { return f_; }

private:
    Rhs f_;
};

namespace detail {

inline double error_norm(const Mat4& err, const Mat4& y0, const Mat4& y1, const IntegratorConfig& cfg) {
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double r = std::abs(err(i)) / scale;
        acc += r * r;
    }
    return std::sqrt(acc / 16.0);
}

// Zero components small enough to drift into subnormal range, where
// arithmetic is orders of magnitude slower.
inline void flush_tiny(Mat4& m) {
    for (int i = 0; i < 16; ++i) {
        const cd v = m(i);
        m(i) = cd(std::abs(v.real()) < 1e-150 ? 0.0 : v.real(), std::abs(v.imag()) < 1e-150 ? 0.0 : v.imag());
    }
}

// Adaptive driver on the collective-basis matrix. `stop` is polled after every
// accepted step with (t, y, dy/dt); returning true ends the run early.
struct Driver {
    const Parameters& params;
    const IntegratorConfig& cfg;
    DormandPrince54<Mat4> rk{[this](const Mat4& y) { return rhs_collective(y, params); }};
    double h{0.0};
    double h_max{std::numeric_limits<double>::infinity()};
    std::size_t accepted{0};
    std::size_t rejected{0};

    Driver(const Parameters& p, const IntegratorConfig& c) : params(p), cfg(c), h(c.step) {}

    template <class Stop>
    double run(Mat4& y, double t_end, Stop&& stop) {
        double t = 0.0;
        Mat4 k1 = rhs_collective(y, params);
        while (t < t_end) {
            const bool last = (t + h >= t_end);
            const double hs = last ? t_end - t : h;
            auto res = rk.step(y, k1, hs);
            const double err = error_norm(res.error, y, res.y, cfg);
            if (err <= 1.0) {
                t = last ? t_end : t + hs;
                y = res.y;
                k1 = res.dy;
                flush_tiny(y);
                flush_tiny(k1);
                ++accepted;
                if (stop(t, y, k1)) return t;
            } else {
                ++rejected;
            }
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (!(last && err <= 1.0)) h = std::min(hs * fac, h_max);
            if (h < min_step) {
                throw Error(ErrorKind::StepUnderflow, "adaptive step fell below 1e-12/gamma0");
            }
        }
        return t;
    }
};

// Hermitian part with unit trace; returns the size of the correction.
inline double restore(Mat4& m) {
    const Mat4 before = m;
    m = 0.5 * (m + m.adjoint()).eval();
    m /= m.trace().real();
    return (m - before).cwiseAbs().maxCoeff();
}

}  // namespace detail

struct Evolution {
    DensityMatrix rho;
    double correction{0.0};  // max entry change applied by re-symmetrization
    std::size_t accepted_steps{0};
    std::size_t rejected_steps{0};
};

inline Evolution integrate(const DensityMatrix& rho0, const Parameters& p, double t,
                           const IntegratorConfig& cfg = {}) {
    cfg.validate();
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidConfig, "duration must be non-negative");
    Mat4 y = rho0.matrix_in(Basis::collective);
    detail::Driver drv(p, cfg);
    drv.run(y, t, [](double, const Mat4&, const Mat4&) { return false; });
    const double corr = detail::restore(y);
    return {DensityMatrix(change_basis(y, Basis::collective, rho0.basis()), rho0.basis()), corr, drv.accepted,
            drv.rejected};
}

// exp(L t) applied to vec(rho0).
inline DensityMatrix integrate_exact(const DensityMatrix& rho0, const Parameters& p, double t) {
    const Superoperator gen = build_generator(p, rho0.basis());
    const Mat16 prop = (gen.matrix * t).exp();
    Mat4 y = unvectorize(prop * vectorize(rho0.matrix()));
    detail::restore(y);
    return DensityMatrix(y, rho0.basis());
}

// Horizon long enough for the slowest mode to decay by e^-40, and never
// shorter than 50 (1+2N)^-1 max(1, 1/(1-gamma_hat)).
inline double default_t_max(const Parameters& p, double gap) {
    const double slow = p.gamma_hat() < 1.0 ? std::max(1.0, 1.0 / (1.0 - p.gamma_hat())) : 1.0;
    const double heuristic = 50.0 * slow / (1.0 + 2.0 * p.n());
    return std::isfinite(gap) ? std::max(heuristic, 40.0 / gap) : heuristic;
}

inline double default_t_max(const Parameters& p) { return default_t_max(p, spectral_gap(build_generator(p))); }

inline double l1_norm(const Mat4& m) { return m.cwiseAbs().sum(); }

struct StationaryResult {
    DensityMatrix rho;
    double elapsed{0.0};
    double residual{0.0};  // ||L rho||_1 (entrywise) at the returned state
    bool converged{false};
    double correction{0.0};
};

// Integration stops once ||L rho||_1 <= eps * min(1, gap). The distance to the
// stationary state is roughly ||L rho|| / gap, so this keeps it near eps even
// when relaxation is slow. Steps are capped inside the stability region so
// that error-controlled noise in the stiff modes is damped instead of
// hovering at the tolerance. `converged` reports ||L rho||_1 <= eps.
inline StationaryResult evolve_to_stationary(const DensityMatrix& rho0, const Parameters& p,
                                             const IntegratorConfig& cfg = {}) {
    cfg.validate();
    const Spectrum spec = spectrum(build_generator(p));
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : default_t_max(p, spec.gap);
    const double target = cfg.stationarity_eps * (std::isfinite(spec.gap) ? std::min(1.0, spec.gap) : 1.0);
    Mat4 y = rho0.matrix_in(Basis::collective);
    double residual = l1_norm(rhs_collective(y, p));
    double t = 0.0;
    if (residual > target) {
        detail::Driver drv(p, cfg);
        if (spec.radius > 0.0) drv.h_max = 2.5 / spec.radius;
        t = drv.run(y, t_max, [&](double, const Mat4&, const Mat4& dy) {
            residual = l1_norm(dy);
            return residual <= target;
        });
    }
    const double corr = detail::restore(y);
    residual = l1_norm(rhs_collective(y, p));
    return {DensityMatrix(change_basis(y, Basis::collective, rho0.basis()), rho0.basis()), t, residual,
            residual <= cfg.stationarity_eps, corr};
}

}  // namespace sqent
