// Command-line front end: spectra, density curves, Fourier transforms, and
// correspondence reports as CSV/JSON tables.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.
// Output is written only on success, and identical configurations produce
// byte-identical files.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rqmc/report_io.hpp"
#include "rqmc/rqmc.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_config = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

struct CommonOptions {
    std::string system = "kg-osc";
    std::string branch = "particle";
    std::string units = "natural";
    std::string format = "csv";
    std::string output = "-";
    // custom-unit overrides
    std::optional<double> m, omega, c, hbar, L;

    rqmc::PhysicalParams params() const {
        rqmc::PhysicalParams p = rqmc::natural_params();
        const bool has_override = m || omega || c || hbar || L;
        if (units == "natural") {
            if (has_override) {
                throw std::invalid_argument(
                    "parameter overrides require --units custom");
            }
            return p;
        }
        if (units != "custom") throw std::invalid_argument("unknown units '" + units + "'");
        if (m) p.mass = *m;
        if (omega) p.omega = *omega;
        if (c) p.c = *c;
        if (hbar) p.hbar = *hbar;
        if (L) p.box_length = *L;
        p.validate();
        return p;
    }

    rqmc::System parsed_system() const { return rqmc::parse_system(system); }
    rqmc::Branch parsed_branch() const { return rqmc::parse_branch(branch); }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--system", opt.system, "kg-osc | kg-box | dirac-osc | dirac-box")
        ->required();
    cmd->add_option("--branch", opt.branch, "particle | antiparticle");
    cmd->add_option("--units", opt.units, "natural | custom");
    cmd->add_option("--format", opt.format, "csv | json");
    cmd->add_option("--output", opt.output, "output path ('-' for stdout)");
    cmd->add_option("--m", opt.m, "mass (custom units)");
    cmd->add_option("--omega", opt.omega, "oscillator frequency (custom units)");
    cmd->add_option("--c", opt.c, "speed of light (custom units)");
    cmd->add_option("--hbar", opt.hbar, "reduced Planck constant (custom units)");
    cmd->add_option("--L", opt.L, "box length (custom units)");
}

void emit(const std::string& path, const std::string& payload) {
    if (path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path '" + path + "'");
    out << payload;
}

// ---- spectrum ----------------------------------------------------------

std::string run_spectrum(const CommonOptions& opt, int n_max, int count) {
    const auto system = opt.parsed_system();
    const auto branch = opt.parsed_branch();
    const auto params = opt.params();

    std::vector<rqmc::SpectrumEntry> entries;
    if (system == rqmc::System::dirac_box) {
        if (count < 1) throw std::invalid_argument("--count must be >= 1 for dirac-box");
        for (int j = 1; j <= count; ++j) {
            entries.push_back(rqmc::spectrum_entry({system, j, branch}, params));
        }
    } else {
        const int lo = rqmc::min_quantum_number(system);
        if (n_max < lo) throw std::invalid_argument("--n-max below the lowest level");
        for (int n = lo; n <= n_max; ++n) {
            entries.push_back(rqmc::spectrum_entry({system, n, branch}, params));
        }
    }

    std::ostringstream out;
    if (opt.format == "csv") {
        if (rqmc::is_oscillator(system)) {
            out << "n,E,kappa,S\n";
            for (const auto& e : entries) {
                out << e.state.n << ',' << fmt(e.energy) << ',' << fmt(e.kappa) << ','
                    << fmt(e.action) << '\n';
            }
        } else if (system == rqmc::System::kg_box) {
            out << "n,E,k\n";
            for (const auto& e : entries) {
                out << e.state.n << ',' << fmt(e.energy) << ',' << fmt(e.k) << '\n';
            }
        } else {
            out << "n,E,k,Phi,delta,Bsq,residual\n";
            for (const auto& e : entries) {
                out << e.state.n << ',' << fmt(e.energy) << ',' << fmt(e.k) << ','
                    << fmt(e.phi) << ',' << fmt(e.delta) << ',' << fmt(e.b_squared) << ','
                    << fmt(e.residual) << '\n';
            }
        }
    } else if (opt.format == "json") {
        out << "{\"system\": \"" << rqmc::to_string(system) << "\", \"branch\": \""
            << rqmc::to_string(branch) << "\", \"units\": \"" << opt.units
            << "\", \"entries\": [";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            if (i) out << ", ";
            out << "{\"n\": " << e.state.n << ", \"E\": " << fmt(e.energy);
            if (rqmc::is_oscillator(system)) {
                out << ", \"kappa\": " << fmt(e.kappa) << ", \"S\": " << fmt(e.action);
            } else {
                out << ", \"k\": " << fmt(e.k);
                if (system == rqmc::System::dirac_box) {
                    out << ", \"Phi\": " << fmt(e.phi) << ", \"delta\": " << fmt(e.delta)
                        << ", \"Bsq\": " << fmt(e.b_squared) << ", \"residual\": "
                        << fmt(e.residual);
                }
            }
            out << "}";
        }
        out << "]}\n";
    } else {
        throw std::invalid_argument("unknown format '" + opt.format + "'");
    }
    return out.str();
}

// ---- density ------------------------------------------------------------

std::string run_density(const CommonOptions& opt, int n, int grid_points,
                        std::optional<double> x_min, std::optional<double> x_max) {
    const rqmc::StateSpec state{opt.parsed_system(), n, opt.parsed_branch()};
    const auto params = opt.params();

    rqmc::GridSpec grid;
    grid.points = grid_points;
    if (x_min || x_max) {
        if (!x_min || !x_max)
            throw std::invalid_argument("--x-min and --x-max must be given together");
        grid.use_default_range = false;
        grid.x_min = *x_min;
        grid.x_max = *x_max;
    }
    const auto curve = rqmc::density_grid(state, params, grid);

    std::ostringstream out;
    if (opt.format == "csv") {
        out << "x,rho\n";
        for (std::size_t i = 0; i < curve.x.size(); ++i) {
            out << fmt(curve.x[i]) << ',' << fmt(curve.rho[i]) << '\n';
        }
    } else if (opt.format == "json") {
        out << "{\"system\": \"" << rqmc::to_string(state.system) << "\", \"branch\": \""
            << rqmc::to_string(state.branch) << "\", \"n\": " << n << ", \"units\": \""
            << opt.units << "\", \"norm_target\": " << fmt(curve.norm_target)
            << ", \"energy\": " << fmt(curve.energy);
        if (rqmc::is_oscillator(state.system)) {
            out << ", \"kappa\": " << fmt(rqmc::oscillator_kappa(n, params));
        }
        out << ", \"x\": [";
        for (std::size_t i = 0; i < curve.x.size(); ++i) {
            if (i) out << ", ";
            out << fmt(curve.x[i]);
        }
        out << "], \"rho\": [";
        for (std::size_t i = 0; i < curve.rho.size(); ++i) {
            if (i) out << ", ";
            out << fmt(curve.rho[i]);
        }
        out << "]}\n";
    } else {
        throw std::invalid_argument("unknown format '" + opt.format + "'");
    }
    return out.str();
}

// ---- ft -----------------------------------------------------------------

std::string run_ft(const CommonOptions& opt, int n, double p_max, int p_points) {
    const rqmc::StateSpec state{opt.parsed_system(), n, opt.parsed_branch()};
    state.validate();
    const auto params = opt.params();
    if (p_points < 2) throw std::invalid_argument("--p-points must be >= 2");
    if (!(p_max > 0.0)) throw std::invalid_argument("--p-max must be > 0");

    const auto entry = rqmc::spectrum_entry(state, params);

    std::vector<rqmc::TransformSample> rows;
    for (int i = 0; i < p_points; ++i) {
        const double p = p_max * i / (p_points - 1);
        std::complex<double> analytic;
        std::complex<double> asym;
        switch (state.system) {
            case rqmc::System::kg_oscillator:
                analytic = rqmc::kg_oscillator_ft(n, params, p, state.branch);
                asym = std::abs(entry.energy) / params.rest_energy() *
                       rqmc::classical_oscillator_ft(entry.kappa, p, params);
                break;
            case rqmc::System::dirac_oscillator: {
                analytic = rqmc::dirac_oscillator_ft(n, params, p, state.branch);
                const auto coeff = rqmc::dirac_oscillator_coefficients(n, params, state.branch);
                double bessel = coeff.upper_weight *
                                rqmc::classical_oscillator_ft(entry.kappa, p, params);
                if (n >= 1) {
                    bessel += coeff.lower_weight *
                              rqmc::classical_oscillator_ft(
                                  rqmc::oscillator_kappa(n - 1, params), p, params);
                }
                asym = bessel;
                break;
            }
            default:
                analytic = rqmc::box_ft_asymptotic(params, entry.energy, state.system, p);
                asym = analytic;
                break;
        }
        const std::complex<double> numeric = rqmc::ft_numeric(state, params, p, 1e-10);
        if (rqmc::is_box(state.system)) {
            // the boxes have no elementary closed form in the library; the
            // asymptotic envelope doubles as the analytic column
            rows.push_back({p, asym, rqmc::TransformSource::asymptotic});
            rows.push_back({p, numeric, rqmc::TransformSource::numeric_oracle});
        } else {
            rows.push_back({p, analytic, rqmc::TransformSource::analytic});
            rows.push_back({p, numeric, rqmc::TransformSource::numeric_oracle});
            rows.push_back({p, asym, rqmc::TransformSource::asymptotic});
        }
    }

    std::ostringstream out;
    if (opt.format == "csv") {
        out << "p,re,im,source\n";
        for (const auto& r : rows) {
            out << fmt(r.p) << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
                << rqmc::to_string(r.source) << '\n';
        }
    } else if (opt.format == "json") {
        out << "{\"system\": \"" << rqmc::to_string(state.system) << "\", \"n\": " << n
            << ", \"samples\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out << ", ";
            out << "{\"p\": " << fmt(rows[i].p) << ", \"re\": " << fmt(rows[i].value.real())
                << ", \"im\": " << fmt(rows[i].value.imag()) << ", \"source\": \""
                << rqmc::to_string(rows[i].source) << "\"}";
        }
        out << "]}\n";
    } else {
        throw std::invalid_argument("unknown format '" + opt.format + "'");
    }
    return out.str();
}

// ---- converge -----------------------------------------------------------

std::string run_converge(const CommonOptions& opt, const std::string& n_list_text,
                         double window_scale, const std::string& target_name) {
    if (opt.format != "json" && opt.format != "csv") {
        throw std::invalid_argument("unknown format '" + opt.format + "'");
    }
    if (opt.format == "csv") {
        throw std::invalid_argument("converge reports are JSON only; use --format json");
    }
    std::vector<int> n_list;
    std::stringstream ss(n_list_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const int value = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad --n-list entry '" + item + "'");
        n_list.push_back(value);
    }

    rqmc::ClassicalTarget target = rqmc::ClassicalTarget::turning_point;
    if (target_name == "x0") target = rqmc::ClassicalTarget::amplitude;
    else if (target_name != "kappa") throw std::invalid_argument("unknown --target '" + target_name + "'");

    rqmc::WindowPolicy policy{window_scale};
    auto report = rqmc::convergence_study(opt.parsed_system(), opt.parsed_branch(), n_list,
                                          opt.params(), policy, target);
    report.units = opt.units;
    return rqmc::report_to_json(report);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relativistic bound-state densities, spectra, and transforms"};
    app.require_subcommand(1);

    CommonOptions spectrum_opt, density_opt, ft_opt, converge_opt;

    auto* spectrum = app.add_subcommand("spectrum", "energy levels and derived parameters");
    int n_max = -1, count = -1;
    add_common(spectrum, spectrum_opt);
    spectrum->add_option("--n-max", n_max, "highest level (non dirac-box systems)");
    spectrum->add_option("--count", count, "number of roots (dirac-box)");

    auto* density = app.add_subcommand("density", "sampled probability density");
    int density_n = 0, grid_points = 2001;
    std::optional<double> x_min, x_max;
    add_common(density, density_opt);
    density->add_option("--n", density_n, "quantum number")->required();
    density->add_option("--grid-points", grid_points, "sample count (default 2001)");
    density->add_option("--x-min", x_min, "grid start (default per system)");
    density->add_option("--x-max", x_max, "grid end (default per system)");

    auto* ft = app.add_subcommand("ft", "Fourier transform of the density");
    int ft_n = 0, p_points = 51;
    double p_max = 5.0;
    add_common(ft, ft_opt);
    ft->add_option("--n", ft_n, "quantum number")->required();
    ft->add_option("--p-max", p_max, "largest momentum (default 5)");
    ft->add_option("--p-points", p_points, "momentum samples (default 51)");

    auto* converge = app.add_subcommand("converge", "correspondence report");
    std::string n_list_text = "10,20,40,80,160";
    double window_scale = 1.0;
    std::string target_name = "kappa";
    add_common(converge, converge_opt);
    converge->add_option("--n-list", n_list_text, "comma-separated levels");
    converge->add_option("--window-scale", window_scale, "coarse-grain window multiplier");
    converge->add_option("--target", target_name, "kappa | x0 (oscillators)");
    converge_opt.format = "json";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return exit_config;
    }

    try {
        std::string payload;
        const CommonOptions* opt = nullptr;
        if (spectrum->parsed()) {
            opt = &spectrum_opt;
            payload = run_spectrum(spectrum_opt, n_max, count);
        } else if (density->parsed()) {
            opt = &density_opt;
            payload = run_density(density_opt, density_n, grid_points, x_min, x_max);
        } else if (ft->parsed()) {
            opt = &ft_opt;
            payload = run_ft(ft_opt, ft_n, p_max, p_points);
        } else {
            opt = &converge_opt;
            payload = run_converge(converge_opt, n_list_text, window_scale, target_name);
        }
        emit(opt->output, payload);
        return exit_ok;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}
