// scan.hpp — parameter sweeps, figure tables and CSV/SVG emission used by the
// command-line tool.

#pragma once

#include "sqent/asymptotic.hpp"
#include "sqent/entanglement.hpp"
#include "sqent/evolve.hpp"
#include "sqent/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace sqent {

inline constexpr const char* version = "1.0.0";

// Evaluates fn(i) for i in [0, count) on a worker pool; results are stored by
// index so output order never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn, unsigned workers = 0) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(count);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

enum class ScanVariable { n_mean, fidelity, delta };

inline const char* to_string(ScanVariable v) {
    switch (v) {
        case ScanVariable::n_mean: return "N";
        case ScanVariable::fidelity: return "F";
        case ScanVariable::delta: return "delta";
    }
    return "?";
}

struct ScanSpec {
    ScanVariable variable{ScanVariable::n_mean};
    double lo{0.0};
    double hi{3.0};
    std::size_t count{301};
    BathParams bath{};
    AtomParams atoms{};
    std::string output;

    void validate() const {
        if (!(lo < hi)) throw Error(ErrorKind::InvalidScan, "scan range requires lo < hi");
        if (count < 2) throw Error(ErrorKind::InvalidScan, "scan needs at least two samples");
        if (variable == ScanVariable::fidelity && (lo < 0.0 || hi > 1.0)) {
            throw Error(ErrorKind::InvalidScan, "fidelity range must lie in [0, 1]");
        }
        if (variable == ScanVariable::n_mean && lo < 0.0) {
            throw Error(ErrorKind::InvalidScan, "N range must be non-negative");
        }
    }

    std::vector<double> grid() const {
        std::vector<double> g(count);
        for (std::size_t i = 0; i < count; ++i) {
            g[i] = (i + 1 == count) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        return g;
    }
};

// Column-oriented numeric table with '#'-prefixed metadata.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void meta(std::string key, double value) {
        std::ostringstream os;
        os << std::setprecision(15) << value;
        metadata.emplace_back(std::move(key), os.str());
    }
    void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> c;
        c.reserve(rows.size());
        for (const auto& r : rows) c.push_back(r.at(j));
        return c;
    }
};

inline std::string format_number(double x) {
    if (x == 0.0) return "0";  // also folds -0
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

inline void write_csv(std::ostream& os, const Table& t) {
    os << "# sqent " << version << "\n";
    for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << "\n";
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_number(r[j]);
        os << "\n";
    }
}

// Line plot of every column against the first one.
inline void write_svg(std::ostream& os, const Table& t, const std::string& title) {
    constexpr double width = 640, height = 400, margin = 50;
    const auto x = t.column(0);
    double xmin = x.front(), xmax = x.back();
    double ymin = 0.0, ymax = 1e-12;
    for (std::size_t j = 1; j < t.columns.size(); ++j)
        for (double v : t.column(j)) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (xmax == xmin) xmax = xmin + 1.0;
    auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double v) { return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">" << t.columns[0]
       << " [" << format_number(xmin) << ", " << format_number(xmax) << "]</text>\n";
    for (std::size_t j = 1; j < t.columns.size(); ++j) {
        const char* color = colors[(j - 1) % 5];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t i = 0; i < t.rows.size(); ++i) os << px(x[i]) << "," << py(t.rows[i][j]) << " ";
        os << "\"/>\n";
        os << "<text x=\"" << width - margin - 90 << "\" y=\"" << margin + 16.0 * static_cast<double>(j)
           << "\" fill=\"" << color << "\">" << t.columns[j] << "</text>\n";
    }
    os << "</svg>\n";
}

inline void echo_parameters(Table& t, const BathParams& b, const AtomParams& a) {
    t.meta("N", b.n_mean);
    t.meta("Mabs", b.m_abs);
    t.meta("Mphase", b.m_phase);
    t.meta("gamma0", a.gamma0);
    t.meta("gamma_hat", a.gamma_hat);
    t.meta("omega_dd", a.omega_dd);
    t.meta("delta", a.delta);
}

inline std::string delta_column(const char* prefix, double d) { return std::string(prefix) + format_number(d); }

// C(rho_u) against N for a minimum-uncertainty bath, one column per detuning.
inline Table fig1_table(double gamma_hat, const std::vector<double>& deltas, const std::vector<double>& n_grid,
                        double m_phase = 0.0) {
    if (!(gamma_hat < 1.0)) throw Error(ErrorKind::RegimeError, "fig1 requires gamma_hat < 1");
    Table t;
    t.meta("figure", "fig1: concurrence of the unique asymptotic state vs N (minimum-uncertainty squeezing)");
    t.meta("gamma_hat", gamma_hat);
    t.meta("Mphase", m_phase);
    t.columns.push_back("N");
    for (double d : deltas) t.columns.push_back(delta_column("C_delta=", d));
    t.rows = parallel_map(n_grid.size(), [&](std::size_t i) {
        std::vector<double> row{n_grid[i]};
        for (double d : deltas) {
            const auto p = validate(BathParams::minimum_uncertainty(n_grid[i], m_phase), {1.0, gamma_hat, 0.0, d});
            row.push_back(concurrence_unique(p));
        }
        return row;
    });
    return t;
}

// C(rho_as) against F for a minimum-uncertainty bath in the Dicke limit.
inline Table fig2_table(double n, double delta, const std::vector<double>& f_grid, double m_phase = 0.0) {
    const auto p = validate(BathParams::minimum_uncertainty(n, m_phase), {1.0, 1.0, 0.0, delta});
    const Thresholds th = thresholds(p);
    Table t;
    t.meta("figure", "fig2: asymptotic concurrence vs initial fidelity (Dicke limit, minimum-uncertainty squeezing)");
    t.meta("N", n);
    t.meta("delta", delta);
    t.meta("Mphase", m_phase);
    t.meta("F_cr", th.f_cr);
    t.meta("F1", th.f1);
    t.meta("F2", th.f2);
    t.columns = {"F", "C"};
    t.rows = parallel_map(f_grid.size(), [&](std::size_t i) {
        return std::vector<double>{f_grid[i], asymptotic_concurrence(p, f_grid[i])};
    });
    return t;
}

// C(rho_as(F=0)) against N, one column per detuning.
inline Table fig3_table(const std::vector<double>& deltas, const std::vector<double>& n_grid,
                        double m_phase = 0.0) {
    Table t;
    t.meta("figure", "fig3: asymptotic concurrence of F = 0 initial states vs N (Dicke limit, minimum-uncertainty)");
    t.meta("Mphase", m_phase);
    t.columns.push_back("N");
    for (double d : deltas) t.columns.push_back(delta_column("C_delta=", d));
    t.rows = parallel_map(n_grid.size(), [&](std::size_t i) {
        std::vector<double> row{n_grid[i]};
        for (double d : deltas) {
            const auto p = validate(BathParams::minimum_uncertainty(n_grid[i], m_phase), {1.0, 1.0, 0.0, d});
            row.push_back(asymptotic_concurrence(p, 0.0));
        }
        return row;
    });
    return t;
}

inline const std::vector<std::string>& trajectory_columns() {
    static const std::vector<std::string> c = {"t",         "rho_ee",    "rho_ss",      "rho_aa",  "rho_gg",
                                               "re_rho_eg", "im_rho_eg", "concurrence", "fidelity"};
    return c;
}

inline std::vector<double> trajectory_row(double t, const DensityMatrix& rho) {
    const Mat4 c = rho.matrix_in(Basis::collective);
    return {t,
            c(col::e, col::e).real(),
            c(col::s, col::s).real(),
            c(col::a, col::a).real(),
            c(col::g, col::g).real(),
            c(col::e, col::g).real(),
            c(col::e, col::g).imag(),
            concurrence(rho),
            fidelity_antisymmetric(rho)};
}

// Samples rho(t) at `samples` evenly spaced times in [0, t_end].
inline Table trajectory_table(const DensityMatrix& rho0, const Parameters& p, double t_end, std::size_t samples,
                              const IntegratorConfig& cfg) {
    if (samples < 2) throw Error(ErrorKind::InvalidScan, "trajectory needs at least two samples");
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidConfig, "duration must be positive");
    Table t;
    t.columns = trajectory_columns();
    DensityMatrix rho = rho0;
    double max_corr = 0.0;
    t.rows.push_back(trajectory_row(0.0, rho));
    for (std::size_t i = 1; i < samples; ++i) {
        const double t0 = t_end * static_cast<double>(i - 1) / static_cast<double>(samples - 1);
        const double t1 = (i + 1 == samples) ? t_end : t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
        auto ev = integrate(rho, p, t1 - t0, cfg);
        max_corr = std::max(max_corr, ev.correction);
        rho = ev.rho;
        t.rows.push_back(trajectory_row(t1, rho));
    }
    t.meta("max_correction", max_corr);
    return t;
}

// Initial-state specs: e | s | a | g | product(thA,phA,thB,phB) | file:PATH.
// A product factor is cos(th/2)|0> + e^{i ph} sin(th/2)|1>. A file holds a
// canonical-basis 4x4 matrix as four lines of "re im" pairs.
inline DensityMatrix load_density_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidState, "cannot open " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double v;
        while (ls >> v) vals.push_back(v);
        if (!ls.eof()) throw Error(ErrorKind::InvalidState, "non-numeric entry in " + path);
    }
    if (vals.size() != 32) throw Error(ErrorKind::InvalidState, path + ": expected 32 numbers (4x4 re/im pairs)");
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cd(vals[8 * i + 2 * j], vals[8 * i + 2 * j + 1]);
    return DensityMatrix(m, Basis::canonical);
}

inline QubitState bloch_qubit(double theta, double phi) {
    return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
}

inline DensityMatrix parse_initial_state(const std::string& spec) {
    if (spec == "e") return collective_projector(col::e);
    if (spec == "s") return collective_projector(col::s);
    if (spec == "a") return collective_projector(col::a);
    if (spec == "g") return collective_projector(col::g);
    if (spec.rfind("file:", 0) == 0) return load_density_matrix(spec.substr(5));
    if (spec.rfind("product(", 0) == 0 && spec.back() == ')') {
        std::string body = spec.substr(8, spec.size() - 9);
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream is(body);
        double v[4];
        for (double& x : v)
            if (!(is >> x)) throw Error(ErrorKind::InvalidState, "product() expects four angles");
        std::string rest;
        if (is >> rest) throw Error(ErrorKind::InvalidState, "product() expects four angles");
        return DensityMatrix::pure(product_state(bloch_qubit(v[0], v[1]), bloch_qubit(v[2], v[3])),
                                   Basis::canonical);
    }
    throw Error(ErrorKind::InvalidState, "unknown initial state '" + spec + "'");
}

}  // namespace sqent
