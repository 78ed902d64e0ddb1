#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rqmc/core.hpp"
#include "rqmc/densities.hpp"
#include "rqmc/parallel.hpp"
#include "rqmc/quadrature.hpp"
#include "rqmc/spectra.hpp"

namespace rqmc {

// Classical position distribution of the harmonic oscillator,
// 1 / (pi sqrt(x0^2 - x^2)) on (-x0, x0).  Evaluation exactly at a turning
// point is rejected; the singularity is integrable but the value is not
// representable.
inline double classical_oscillator_density(double x0, double x) {
    if (!(x0 > 0.0)) throw std::invalid_argument("classical_oscillator_density: x0 must be > 0");
    const double ax = std::abs(x);
    if (ax == x0) throw std::invalid_argument("classical_oscillator_density: |x| == x0 is singular");
    if (ax > x0) return 0.0;
    return 1.0 / (detail::pi * std::sqrt(x0 * x0 - x * x));
}

// 1/L inside [0, L] (boundary points take the inside value), zero outside.
inline double classical_box_density(double L, double x) {
    if (!(L > 0.0)) throw std::invalid_argument("classical_box_density: L must be > 0");
    if (x < 0.0 || x > L) return 0.0;
    return 1.0 / L;
}

// Closed-form classical target with its CDF; the CDF is what coarse-grained
// comparisons sample, so the arcsine endpoint divergence never has to be
// evaluated pointwise.
struct ClassicalDensity {
    enum class Kind { arcsine, uniform };
    Kind kind = Kind::arcsine;
    double scale = 1.0; // x0 for arcsine, L for uniform

    double pdf(double x) const {
        return kind == Kind::arcsine ? classical_oscillator_density(scale, x)
                                     : classical_box_density(scale, x);
    }

    double cdf(double x) const {
        if (kind == Kind::arcsine) {
            const double u = std::clamp(x / scale, -1.0, 1.0);
            return 0.5 + std::asin(u) / detail::pi;
        }
        return std::clamp(x / scale, 0.0, 1.0);
    }

    // exact average over [x-h, x+h]
    double coarse(double x, double h) const { return (cdf(x + h) - cdf(x - h)) / (2.0 * h); }

    static ClassicalDensity arcsine(double x0) { return {Kind::arcsine, x0}; }
    static ClassicalDensity uniform(double L) { return {Kind::uniform, L}; }
};

// Classical amplitude fixed by the state's energy: |E| -> mc^2 + (m omega^2/2) x0^2.
// For the Dirac oscillator the fixing uses the half-shifted level N = n + 1/2
// (particle) or N = n - 1/2 (antiparticle), which is what makes kappa of the
// dominant density component converge to x0 in the non-relativistic limit.
inline double amplitude_from_state(const StateSpec& s, const PhysicalParams& p) {
    s.validate();
    p.validate();
    if (!is_oscillator(s.system))
        throw std::invalid_argument("amplitude_from_state: oscillator systems only");
    const double mc2 = p.rest_energy();
    double e2 = 0.0; // |E|^2 - m^2 c^4, always computed cancellation-free
    if (s.system == System::kg_oscillator) {
        e2 = 2.0 * (s.n + 0.5) * mc2 * p.hbar * p.omega;
    } else {
        const double abs_e = std::abs(dirac_oscillator_energy(s.n, p, s.branch));
        if (abs_e == mc2)
            throw std::invalid_argument("amplitude_from_state: |E| = mc^2 has zero amplitude");
        const double shifted = s.branch == Branch::particle ? s.n + 0.5 : s.n - 0.5;
        e2 = 2.0 * shifted * p.hbar * p.omega * mc2;
    }
    const double abs_e = std::sqrt(mc2 * mc2 + e2);
    // x0^2 = 2 (|E| - mc^2) / (m omega^2) with |E| - mc^2 = e2 / (|E| + mc^2)
    const double x0_sq = 2.0 * e2 / ((abs_e + mc2) * p.mass * p.omega * p.omega);
    return std::sqrt(x0_sq);
}

// Inverse of the energy fixing: the admissible level whose classical energy
// is nearest to mc^2 + (m omega^2/2) x0^2.
inline int quantum_number_from_amplitude(double x0, const PhysicalParams& p,
                                         System system, Branch branch) {
    p.validate();
    if (!(x0 > 0.0))
        throw std::invalid_argument("quantum_number_from_amplitude: x0 must be > 0");
    if (!is_oscillator(system))
        throw std::invalid_argument("quantum_number_from_amplitude: oscillator systems only");
    const double mc2 = p.rest_energy();
    const double e_classical = mc2 + 0.5 * p.mass * p.omega * p.omega * x0 * x0;
    const double e2 = e_classical * e_classical - mc2 * mc2;
    double level = 0.0;
    if (system == System::kg_oscillator) {
        level = e2 / (2.0 * mc2 * p.hbar * p.omega) - 0.5;
    } else {
        const double shifted = e2 / (2.0 * p.hbar * p.omega * mc2); // N = n +/- 1/2
        level = branch == Branch::particle ? shifted - 0.5 : shifted + 0.5;
    }
    const int n = static_cast<int>(std::lround(level));
    const int n_min = system == System::dirac_oscillator && branch == Branch::antiparticle
                          ? 1
                          : min_quantum_number(system);
    if (n < n_min)
        throw std::invalid_argument("quantum_number_from_amplitude: amplitude below the lowest level");
    return n;
}

namespace detail {

inline void require_uniform_grid(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("curve grid needs at least 2 points");
    const double dx = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs((x[i] - x[i - 1]) - dx) > 1e-9 * std::abs(dx)) {
            throw std::invalid_argument("coarse_grain: uniform grid required");
        }
    }
}

// half-width in whole grid cells actually used by the discrete boxcar
inline int coarse_half_cells(double window, double dx) {
    return std::max(1, static_cast<int>(std::lround(window / (2.0 * dx))));
}

} // namespace detail

// Boxcar smoothing of a sampled curve: each output value is the trapezoid
// average of the curve over [x - h, x + h] (truncated at the grid edges),
// then the whole curve is rescaled so the integral matches the input.
inline DensityCurve coarse_grain(const DensityCurve& curve, double window) {
    detail::require_uniform_grid(curve.x);
    const double dx = curve.grid_spacing();
    if (!(window >= 2.0 * dx))
        throw std::invalid_argument("coarse_grain: window must be at least 2 grid spacings");
    const int r = detail::coarse_half_cells(window, dx);
    const std::size_t n = curve.x.size();

    std::vector<double> cumulative(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        cumulative[i] = cumulative[i - 1] + 0.5 * (curve.rho[i] + curve.rho[i - 1]) * dx;
    }

    DensityCurve out = curve;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(r) ? i - r : 0;
        const std::size_t hi = std::min(n - 1, i + static_cast<std::size_t>(r));
        out.rho[i] = (cumulative[hi] - cumulative[lo]) / (curve.x[hi] - curve.x[lo]);
    }

    const double before = trapezoid(curve.x, curve.rho);
    const double after = trapezoid(out.x, out.rho);
    if (after > 0.0 && before > 0.0) {
        const double fix = before / after;
        for (auto& v : out.rho) v *= fix;
    }
    return out;
}

// L1 distance between two curves after normalizing each to unit integral.
// Curves on different grids are compared on the first curve's grid with
// linear interpolation (zero outside the second grid's range).
inline double l1_distance(const DensityCurve& a, const DensityCurve& b) {
    if (a.x.size() < 2 || b.x.size() < 2)
        throw std::invalid_argument("l1_distance: curves need at least 2 points");
    if (b.x.front() >= a.x.back() || b.x.back() <= a.x.front())
        throw std::invalid_argument("l1_distance: curve grids do not overlap");

    const double norm_a = trapezoid(a.x, a.rho);
    const double norm_b = trapezoid(b.x, b.rho);
    if (!(norm_a > 0.0) || !(norm_b > 0.0))
        throw std::invalid_argument("l1_distance: curves must have positive integral");

    auto sample_b = [&](double x) -> double {
        if (x <= b.x.front() || x >= b.x.back()) {
            // exact grid-end points are kept, beyond the range is zero
            if (x == b.x.front()) return b.rho.front();
            if (x == b.x.back()) return b.rho.back();
            return 0.0;
        }
        const double t = (x - b.x.front()) / (b.x.back() - b.x.front());
        const std::size_t i = std::min(b.x.size() - 2,
                                       static_cast<std::size_t>(t * (b.x.size() - 1)));
        const double w = (x - b.x[i]) / (b.x[i + 1] - b.x[i]);
        return b.rho[i] * (1.0 - w) + b.rho[i + 1] * w;
    };

    const bool same_grid = a.x.size() == b.x.size() && a.x.front() == b.x.front() &&
                           a.x.back() == b.x.back();
    std::vector<double> diff(a.x.size());
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        const double bv = same_grid ? b.rho[i] : sample_b(a.x[i]);
        diff[i] = std::abs(a.rho[i] / norm_a - bv / norm_b);
    }
    return trapezoid(a.x, diff);
}

// Optional user-supplied evaluator for the j-th correction integral of the
// asymptotic expansion; the library itself only produces the leading
// classical term.
struct CorrectionSeriesHook {
    std::function<double(int j, double x, double kappa)> term;
    explicit operator bool() const { return static_cast<bool>(term); }
};

// Leading classical term plus, when a hook is injected, the correction series
// sum_j (-hbar^2/S^2)^j i_j(x, kappa) / (2 pi kappa).
inline double classical_with_corrections(double x, double kappa, double action,
                                         const PhysicalParams& p,
                                         const CorrectionSeriesHook& hook = {},
                                         int max_terms = 0) {
    double value = classical_oscillator_density(kappa, x);
    if (hook && max_terms > 0) {
        const double ratio = -(p.hbar * p.hbar) / (action * action);
        double factor = 1.0;
        for (int j = 1; j <= max_terms; ++j) {
            factor *= ratio;
            value += factor * hook.term(j, x, kappa) / (2.0 * detail::pi * kappa);
        }
    }
    return value;
}

enum class ClassicalTarget {
    turning_point, // arcsine at kappa of the dominant component
    amplitude      // arcsine at x0 from the energy fixing
};

struct WindowPolicy {
    double scale = 1.0; // multiplies the per-system default width
};

struct ConvergenceEntry {
    int n = 0;
    double distance = 0.0; // coarse-grained L1 distance to the study target
    double residual = 0.0; // same metric against the turning-point target
    double action = 0.0;   // S at the dominant component (oscillators)
};

struct CorrespondenceReport {
    System system = System::kg_oscillator;
    Branch branch = Branch::particle;
    std::string units = "natural";
    std::vector<ConvergenceEntry> entries;
    double exponent = 0.0;        // slope of log(residual) vs log(S) (oscillators)
    double exponent_stderr = 0.0; // or log(distance) vs log(n) for boxes
    bool monotone = false;        // distances strictly decreasing over the n list
    std::string window_policy;
};

namespace detail {

struct LineFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    if (n > 2) {
        const double intercept = my - fit.slope * mx;
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double resid = y[i] - (intercept + fit.slope * x[i]);
            ss += resid * resid;
        }
        fit.stderr_slope = std::sqrt(ss / (static_cast<double>(n) - 2.0) / sxx);
    }
    return fit;
}

// dominant Hermite component index: the antiparticle Dirac density is carried
// by H_{n-1}
inline int dominant_index(const StateSpec& s) {
    if (s.system == System::dirac_oscillator && s.branch == Branch::antiparticle) return s.n - 1;
    return s.n;
}

struct StudyPoint {
    double distance;
    double residual;
    double action;
};

inline StudyPoint study_oscillator_point(const StateSpec& s, const PhysicalParams& p,
                                         double window_scale, ClassicalTarget target) {
    const int dom = dominant_index(s);
    const double kappa_dom = oscillator_kappa(dom, p);
    const double kappa_max = oscillator_kappa(s.n, p);

    GridSpec grid;
    grid.use_default_range = false;
    grid.x_min = -(1.25 * kappa_max + 2.0 / std::sqrt(alpha(p)));
    grid.x_max = -grid.x_min;
    grid.points = std::max(4001, 20 * (2 * s.n + 1) + 1);
    DensityCurve curve = density_grid(s, p, grid);

    const double window = window_scale * kappa_dom / std::sqrt(static_cast<double>(std::max(s.n, 1)));
    DensityCurve smooth = coarse_grain(curve, window);
    const double h = coarse_half_cells(window, curve.grid_spacing()) * curve.grid_spacing();

    auto target_curve = [&](double radius) {
        DensityCurve cl = smooth;
        const auto density = ClassicalDensity::arcsine(radius);
        for (std::size_t i = 0; i < cl.x.size(); ++i) cl.rho[i] = density.coarse(cl.x[i], h);
        return cl;
    };

    const DensityCurve vs_kappa = target_curve(kappa_dom);
    StudyPoint point{};
    point.residual = l1_distance(smooth, vs_kappa);
    if (target == ClassicalTarget::turning_point) {
        point.distance = point.residual;
    } else {
        point.distance = l1_distance(smooth, target_curve(amplitude_from_state(s, p)));
    }
    point.action = oscillator_action(dom, p);
    return point;
}

inline StudyPoint study_box_point(const StateSpec& s, const PhysicalParams& p,
                                  double window_scale) {
    const double L = p.box_length;
    const SpectrumEntry entry = spectrum_entry(s, p);
    const double period = pi / entry.k; // density oscillation period
    const double dx = period / 32.0;

    // the grid must extend beyond the walls by more than twice the smoothing
    // half-width, otherwise the truncated kernel distorts the wall ramps
    const int half_cells = coarse_half_cells(window_scale * 2.0 * period, dx);
    const int margin_cells = 2 * half_cells + 64;

    GridSpec grid;
    grid.use_default_range = false;
    grid.x_min = -margin_cells * dx;
    grid.points = 2 * margin_cells + static_cast<int>(std::ceil(L / dx)) + 1;
    grid.x_max = grid.x_min + dx * (grid.points - 1);
    DensityCurve curve = density_grid(s, p, grid);

    // resample as exact cell averages: the box densities have elementary
    // antiderivatives, and cell averaging removes the half-cell bias a
    // pointwise sample of the wall discontinuity would leave behind
    auto cumulative = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        if (x >= L) x = L;
        if (s.system == System::kg_box) {
            const double dilation = std::abs(entry.energy) / p.rest_energy();
            return dilation * (x / L - std::sin(2.0 * s.n * pi * x / L) / (2.0 * s.n * pi));
        }
        const double phi2 = entry.phi * entry.phi;
        return entry.b_squared *
               (0.5 * (1.0 + phi2) * x -
                (1.0 - phi2) *
                    (std::sin(2.0 * entry.k * x - entry.delta) + std::sin(entry.delta)) /
                    (4.0 * entry.k));
    };
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        curve.rho[i] =
            (cumulative(curve.x[i] + 0.5 * dx) - cumulative(curve.x[i] - 0.5 * dx)) / dx;
    }

    const double window = window_scale * 2.0 * period;
    DensityCurve smooth = coarse_grain(curve, window);
    const double h = coarse_half_cells(window, curve.grid_spacing()) * curve.grid_spacing();

    DensityCurve cl = smooth;
    const auto uniform = ClassicalDensity::uniform(L);
    for (std::size_t i = 0; i < cl.x.size(); ++i) cl.rho[i] = uniform.coarse(cl.x[i], h);

    StudyPoint point{};
    point.distance = l1_distance(smooth, cl);
    point.residual = point.distance;
    point.action = 0.0;
    return point;
}

} // namespace detail

// The full correspondence pipeline for a list of levels: exact density,
// coarse-graining, distance to the classical target, and a power-law fit of
// the residuals.  Levels are processed concurrently (see RQMC_THREADS).
inline CorrespondenceReport convergence_study(System system, Branch branch,
                                              const std::vector<int>& n_list,
                                              const PhysicalParams& p,
                                              WindowPolicy policy = {},
                                              ClassicalTarget target = ClassicalTarget::turning_point) {
    p.validate();
    if (n_list.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 levels");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("convergence_study: n list must be strictly increasing");
    }

    CorrespondenceReport report;
    report.system = system;
    report.branch = branch;
    report.entries.resize(n_list.size());

    parallel_for_index(n_list.size(), [&](std::size_t i) {
        const StateSpec s{system, n_list[i], branch};
        detail::StudyPoint point =
            is_oscillator(system)
                ? detail::study_oscillator_point(s, p, policy.scale, target)
                : detail::study_box_point(s, p, policy.scale);
        report.entries[i] = {n_list[i], point.distance, point.residual, point.action};
    });

    report.monotone = true;
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        if (!(report.entries[i].distance < report.entries[i - 1].distance)) {
            report.monotone = false;
            break;
        }
    }

    std::vector<double> lx, ly;
    for (const auto& e : report.entries) {
        lx.push_back(is_oscillator(system) ? std::log(e.action)
                                           : std::log(static_cast<double>(e.n)));
        ly.push_back(std::log(is_oscillator(system) ? e.residual : e.distance));
    }
    const auto fit = detail::fit_line(lx, ly);
    report.exponent = fit.slope;
    report.exponent_stderr = fit.stderr_slope;

    char policy_text[160];
    if (is_oscillator(system)) {
        std::snprintf(policy_text, sizeof policy_text, "boxcar kappa/sqrt(n) scale=%.6g target=%s",
                      policy.scale,
                      target == ClassicalTarget::turning_point ? "kappa" : "x0");
    } else {
        std::snprintf(policy_text, sizeof policy_text, "boxcar 2*period scale=%.6g target=uniform",
                      policy.scale);
    }
    report.window_policy = policy_text;
    return report;
}

struct ResidualScaling {
    double exponent = 0.0;
    double exponent_stderr = 0.0;
    std::vector<ConvergenceEntry> entries;
};

// Empirical probe of the correction series: coarse-grained L1 residual
// against the turning-point arcsine, fitted as a power of the action S_n.
inline ResidualScaling residual_scaling(System system, Branch branch,
                                        const std::vector<int>& n_list,
                                        const PhysicalParams& p,
                                        WindowPolicy policy = {}) {
    if (!is_oscillator(system))
        throw std::invalid_argument("residual_scaling: oscillator systems only");
    const auto report = convergence_study(system, branch, n_list, p, policy,
                                          ClassicalTarget::turning_point);
    return {report.exponent, report.exponent_stderr, report.entries};
}

} // namespace rqmc
