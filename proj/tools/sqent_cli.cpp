// sqent — command-line front end: dynamics, stationary states, threshold and
// decomposition reports, and the figure scans.
//
// Exit codes: 0 success, 1 validation error, 2 domain/regime error,
// 3 non-convergence.

#include "sqent/sqent.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace sqent;

constexpr int exit_validation = 1;
constexpr int exit_domain = 2;
constexpr int exit_not_converged = 3;

struct SharedFlags {
    BathParams bath{0.0, 0.0, 0.0};
    AtomParams atoms{1.0, 1.0, 0.0, 0.0};
    bool min_uncertainty{false};
    std::string out;
    std::string format{"csv"};

    BathParams resolved_bath() const {
        BathParams b = bath;
        if (min_uncertainty) b.m_abs = b.squeeze_bound();
        return b;
    }
    Parameters params() const { return validate(resolved_bath(), atoms); }
};

void add_output_flags(CLI::App* cmd, SharedFlags& f) {
    cmd->add_option("--out", f.out, "Output path (default: stdout)");
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "svg"}));
}

void add_shared_flags(CLI::App* cmd, SharedFlags& f) {
    cmd->add_option("--N", f.bath.n_mean, "Mean photon number N")->capture_default_str();
    cmd->add_option("--Mabs", f.bath.m_abs, "Squeezing correlation |M|")->capture_default_str();
    cmd->add_option("--Mphase", f.bath.m_phase, "Squeezing phase (radians)")->capture_default_str();
    cmd->add_flag("--min-uncertainty", f.min_uncertainty, "Set |M| = sqrt(N(N+1))");
    cmd->add_option("--gamma0", f.atoms.gamma0, "Single-atom emission rate")->capture_default_str();
    cmd->add_option("--gamma-hat", f.atoms.gamma_hat, "Collective damping ratio gamma/gamma0")
        ->capture_default_str();
    cmd->add_option("--omega-dd", f.atoms.omega_dd, "Dipole-dipole coupling (units of gamma0)")
        ->capture_default_str();
    cmd->add_option("--delta", f.atoms.delta, "Detuning / gamma0")->capture_default_str();
    add_output_flags(cmd, f);
}

// Writes the table to --out (or stdout) in the requested format.
void emit(const SharedFlags& f, const Table& t, const std::string& title) {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    if (!f.out.empty()) {
        file = std::make_unique<std::ofstream>(f.out);
        if (!*file) throw Error(ErrorKind::InvalidConfig, "cannot write " + f.out);
        os = file.get();
    }
    if (f.format == "svg") {
        write_svg(*os, t, title);
    } else {
        write_csv(*os, t);
    }
}

std::vector<double> n_grid(double lo, double hi, std::size_t points) {
    ScanSpec s;
    s.variable = ScanVariable::n_mean;
    s.lo = lo;
    s.hi = hi;
    s.count = points;
    s.validate();
    return s.grid();
}

Table matrix_table(const DensityMatrix& rho) {
    Table t;
    t.columns = {"row", "col", "re", "im"};
    const Mat4 m = rho.matrix_in(Basis::canonical);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.rows.push_back({double(i), double(j), m(i, j).real(), m(i, j).imag()});
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two atoms in a broadband squeezed reservoir: dynamics, asymptotic states and entanglement"};
    app.set_config("--config", "", "Configuration file: [subcommand] sections of key = value (flags take precedence)");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("sqent ") + sqent::version);

    SharedFlags flags;
    IntegratorConfig cfg;
    int status = 0;

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Integrate the master equation and write a trajectory CSV");
    add_shared_flags(evolve, flags);
    std::string init = "g";
    double t_end = 10.0;
    std::size_t samples = 101;
    evolve->add_option("--init", init, "Initial state: e|s|a|g|product(thA,phA,thB,phB)|file:PATH")
        ->capture_default_str();
    evolve->add_option("--t", t_end, "Duration (units of 1/gamma0)")->capture_default_str();
    evolve->add_option("--samples", samples, "Number of output rows")->capture_default_str();
    evolve->add_option("--step", cfg.step, "Initial step")->capture_default_str();
    evolve->add_option("--rel-tol", cfg.rel_tol, "Relative tolerance")->capture_default_str();
    evolve->add_option("--abs-tol", cfg.abs_tol, "Absolute tolerance")->capture_default_str();
    evolve->callback([&] {
        const auto p = flags.params();
        const auto rho0 = parse_initial_state(init);
        Table t = trajectory_table(rho0, p, t_end, samples, cfg);
        echo_parameters(t, flags.resolved_bath(), flags.atoms);
        t.meta("init", init);
        emit(flags, t, "evolve");
    });

    // steady
    auto* steady = app.add_subcommand("steady", "Stationary state (closed form, nullspace and optional dynamics)");
    add_shared_flags(steady, flags);
    double fidelity = 0.0;
    std::string steady_init;
    steady->add_option("--F", fidelity, "Fidelity <a|rho|a> selecting the Dicke-limit state (taken from --init when given)")->capture_default_str();
    steady->add_option("--init", steady_init, "Also relax this initial state numerically and compare");
    steady->add_option("--eps", cfg.stationarity_eps, "Stationarity threshold on ||L rho||_1")
        ->capture_default_str();
    steady->add_option("--t-max", cfg.t_max, "Integration horizon (default: from the spectral gap)");
    steady->callback([&] {
        const auto p = flags.params();
        const auto gen = build_generator(p);
        const auto space = stationary_space(gen);
        double f = fidelity;
        if (!steady_init.empty() && p.regime() == Regime::dicke) {
            f = fidelity_antisymmetric(parse_initial_state(steady_init));
        }
        const DensityMatrix closed = p.regime() == Regime::separated ? unique_asymptotic(p) : dicke_asymptotic(p, f);
        const DensityMatrix oracle =
            p.regime() == Regime::separated ? space.unique_state() : space.state_with_fidelity(f);

        Table t = matrix_table(closed);
        echo_parameters(t, flags.resolved_bath(), flags.atoms);
        t.meta("regime", p.regime() == Regime::separated ? "separated" : "dicke");
        t.meta("F", fidelity_antisymmetric(closed));
        t.meta("concurrence", concurrence(closed));
        t.meta("nullspace_dim", double(space.dimension));
        t.meta("nullspace_ill_conditioned", space.ill_conditioned ? "true" : "false");
        t.meta("nullspace_max_abs_diff", (closed.matrix() - oracle.matrix()).cwiseAbs().maxCoeff());
        t.meta("stationarity_residual", stationarity_residual(gen, closed));
        bool converged = true;
        if (!steady_init.empty()) {
            const auto res = evolve_to_stationary(parse_initial_state(steady_init), p, cfg);
            converged = res.converged;
            t.meta("init", steady_init);
            t.meta("evolved_time", res.elapsed);
            t.meta("evolved_residual", res.residual);
            t.meta("evolved_converged", res.converged ? "true" : "false");
            t.meta("evolved_max_abs_diff", (closed.matrix() - res.rho.matrix_in(Basis::canonical)).cwiseAbs().maxCoeff());
            t.meta("evolved_concurrence", concurrence(res.rho));
        }
        emit(flags, t, "steady");
        if (!converged) {
            std::cerr << "sqent: integration did not reach stationarity before t_max\n";
            status = exit_not_converged;
        }
    });

    // thresholds
    auto* thr = app.add_subcommand("thresholds", "Fidelity thresholds F_cr, F1, F2 (Dicke limit)");
    add_shared_flags(thr, flags);
    thr->callback([&] {
        const auto p = flags.params();
        const Thresholds th = thresholds(p);
        Table t;
        echo_parameters(t, flags.resolved_bath(), flags.atoms);
        t.columns = {"F_cr", "F1", "F2"};
        t.rows.push_back({th.f_cr, th.f1, th.f2});
        emit(flags, t, "thresholds");
    });

    // decompose
    auto* dec = app.add_subcommand("decompose", "Gibbs + |a> + |psi> mixture of the Dicke-limit state");
    add_shared_flags(dec, flags);
    dec->add_option("--F", fidelity, "Initial fidelity")->required();
    dec->callback([&] {
        const auto p = flags.params();
        MixtureDecomposition d;
        try {
            d = decompose(p, fidelity);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::BelowCritical) {
                std::cerr << "sqent: F_cr = " << std::setprecision(12) << critical_fidelity(p) << "\n";
            }
            throw;
        }
        const DensityMatrix target = dicke_asymptotic(p, fidelity);
        const double residual = (d.reconstruct() - target.matrix()).cwiseAbs().maxCoeff();

        std::ostream& report = flags.out.empty() ? std::cerr : std::cout;
        report << std::setprecision(12) << "rho_as = (1-p-q) rho_beta + p |a><a| + q |psi><psi|\n"
               << "  F        = " << fidelity << "\n"
               << "  F_cr     = " << critical_fidelity(p) << "\n"
               << "  p        = " << d.p << "\n"
               << "  q        = " << d.q << "\n"
               << "  1-p-q    = " << d.gibbs_weight() << "\n"
               << "  beta*omega  = " << (d.beta_omega ? format_number(*d.beta_omega) : "undefined") << "\n"
               << "  beta*omega1 = " << (d.beta_omega1 ? format_number(*d.beta_omega1) : "undefined") << "\n"
               << "  gibbs degenerate = " << (d.gibbs_degenerate ? "yes" : "no") << "\n"
               << "  psi = " << d.psi(can::gg) << " |00> + " << d.psi(can::ee) << " |11>\n"
               << "  rho_beta diag = (" << d.gibbs(0, 0).real() << ", " << d.gibbs(1, 1).real() << ", "
               << d.gibbs(2, 2).real() << ", " << d.gibbs(3, 3).real() << ")\n"
               << "  reconstruction residual = " << residual << "\n";

        Table t;
        echo_parameters(t, flags.resolved_bath(), flags.atoms);
        t.columns = {"F",         "F_cr",        "p",           "q",           "gibbs_weight", "beta_omega",
                     "beta_omega1", "psi00_re",  "psi00_im",    "psi11_re",    "psi11_im",     "gibbs_11",
                     "gibbs_10",  "gibbs_01",    "gibbs_00",    "residual"};
        const double nan = std::nan("");
        t.rows.push_back({fidelity, critical_fidelity(p), d.p, d.q, d.gibbs_weight(), d.beta_omega.value_or(nan),
                          d.beta_omega1.value_or(nan), d.psi(can::gg).real(), d.psi(can::gg).imag(),
                          d.psi(can::ee).real(), d.psi(can::ee).imag(), d.gibbs(0, 0).real(), d.gibbs(1, 1).real(),
                          d.gibbs(2, 2).real(), d.gibbs(3, 3).real(), residual});
        emit(flags, t, "decompose");
    });

    // figure scans
    double n_lo = 0.0, n_hi = 3.0;
    std::size_t points = 301;
    auto add_n_range = [&](CLI::App* cmd) {
        cmd->add_option("--N-min", n_lo, "Lower end of the N grid")->capture_default_str();
        cmd->add_option("--N-max", n_hi, "Upper end of the N grid")->capture_default_str();
        cmd->add_option("--points", points, "Number of grid points")->capture_default_str();
    };

    auto* fig1 = app.add_subcommand("fig1", "C(rho_u) vs N for gamma_hat < 1, one column per detuning");
    double fig1_gamma_hat = 0.85;
    std::vector<double> fig1_deltas{0.0, 0.5, 1.0};
    fig1->add_option("--gamma-hat", fig1_gamma_hat, "Collective damping ratio")->capture_default_str();
    fig1->add_option("--deltas", fig1_deltas, "Detunings")->delimiter(',')->capture_default_str();
    fig1->add_option("--Mphase", flags.bath.m_phase, "Squeezing phase")->capture_default_str();
    add_n_range(fig1);
    add_output_flags(fig1, flags);
    fig1->callback([&] {
        emit(flags, fig1_table(fig1_gamma_hat, fig1_deltas, n_grid(n_lo, n_hi, points), flags.bath.m_phase),
             "C(rho_u) vs N");
    });

    auto* fig2 = app.add_subcommand("fig2", "C(rho_as) vs F in the Dicke limit");
    double fig2_n = 1.0, fig2_delta = 0.8;
    std::size_t f_points = 101;
    fig2->add_option("--N", fig2_n, "Mean photon number")->capture_default_str();
    fig2->add_option("--delta", fig2_delta, "Detuning / gamma0")->capture_default_str();
    fig2->add_option("--points", f_points, "Number of F grid points")->capture_default_str();
    fig2->add_option("--Mphase", flags.bath.m_phase, "Squeezing phase")->capture_default_str();
    add_output_flags(fig2, flags);
    fig2->callback([&] {
        ScanSpec s;
        s.variable = ScanVariable::fidelity;
        s.lo = 0.0;
        s.hi = 1.0;
        s.count = f_points;
        s.validate();
        emit(flags, fig2_table(fig2_n, fig2_delta, s.grid(), flags.bath.m_phase), "C(rho_as) vs F");
    });

    auto* fig3 = app.add_subcommand("fig3", "C(rho_as(F=0)) vs N in the Dicke limit, one column per detuning");
    std::vector<double> fig3_deltas{0.0, 0.8, 2.0};
    fig3->add_option("--deltas", fig3_deltas, "Detunings")->delimiter(',')->capture_default_str();
    fig3->add_option("--Mphase", flags.bath.m_phase, "Squeezing phase")->capture_default_str();
    add_n_range(fig3);
    add_output_flags(fig3, flags);
    fig3->callback([&] {
        emit(flags, fig3_table(fig3_deltas, n_grid(n_lo, n_hi, points), flags.bath.m_phase), "C(rho_as, F=0) vs N");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    } catch (const Error& e) {
        std::cerr << "sqent: " << e.what() << "\n";
        return is_validation_error(e.kind()) ? exit_validation : exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "sqent: " << e.what() << "\n";
        return exit_domain;
    }
    return status;
}
