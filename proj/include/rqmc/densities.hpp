#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "rqmc/core.hpp"
#include "rqmc/quadrature.hpp"
#include "rqmc/specfun.hpp"
#include "rqmc/spectra.hpp"

namespace rqmc {

// Component weights of the Dirac oscillator density,
//   rho_n = e^{-alpha x^2} (|a_n|^2 H_n^2 + |a'_n|^2 H_{n-1}^2),
// stored as the overflow-free ratios |a_n/A_n|^2 and |a'_n/A_{n-1}|^2 plus the
// logs of |A_n|^2 = sqrt(alpha/pi)/(2^n n!).  The signed energy makes the
// upper component dominate on the particle branch and the lower one on the
// antiparticle branch; the two ratios always sum to one.
struct DiracOscillatorCoefficients {
    double upper_weight; // |a_n / A_n|^2       = (E + mc^2) / (2E)
    double lower_weight; // |a'_n / A_{n-1}|^2  = (E - mc^2) / (2E), zero for n = 0
    double log_norm_upper; // ln |A_n|^2
    double log_norm_lower; // ln |A_{n-1}|^2, zero for n = 0
};

inline DiracOscillatorCoefficients
dirac_oscillator_coefficients(int n, const PhysicalParams& p, Branch branch) {
    StateSpec s{System::dirac_oscillator, n, branch};
    s.validate();
    const double energy = dirac_oscillator_energy(n, p, branch); // signed
    const double mc2 = p.rest_energy();
    DiracOscillatorCoefficients c{};
    if (n == 0) {
        c.upper_weight = 1.0;
        c.lower_weight = 0.0;
    } else {
        c.upper_weight = (energy + mc2) / (2.0 * energy);
        c.lower_weight = (energy - mc2) / (2.0 * energy);
    }
    const double log_a = 0.5 * std::log(alpha(p) / detail::pi);
    auto log_norm = [&](int m) { return log_a - m * std::log(2.0) - std::lgamma(m + 1.0); };
    c.log_norm_upper = log_norm(n);
    c.log_norm_lower = n >= 1 ? log_norm(n - 1) : 0.0;
    return c;
}

// rho_n(x) = (|E_n|/mc^2) sqrt(alpha/pi) H_n^2(sqrt(alpha)x) e^{-alpha x^2} / (2^n n!),
// evaluated as (|E_n|/mc^2) sqrt(alpha) h_n^2(sqrt(alpha) x).
inline double kg_oscillator_density(const StateSpec& s, const PhysicalParams& p, double x) {
    s.validate();
    if (s.system != System::kg_oscillator)
        throw std::invalid_argument("kg_oscillator_density: wrong system");
    const double a = alpha(p);
    const double dilation = std::abs(kg_oscillator_energy(s.n, p, s.branch)) / p.rest_energy();
    const double h = hermite_scaled(s.n, std::sqrt(a) * x);
    return dilation * std::sqrt(a) * h * h;
}

// rho_n(x) = (|E_n|/mc^2) (2/L) sin^2(n pi x / L) inside [0, L], zero outside.
inline double kg_box_density(const StateSpec& s, const PhysicalParams& p, double x) {
    s.validate();
    if (s.system != System::kg_box)
        throw std::invalid_argument("kg_box_density: wrong system");
    const double L = p.box_length;
    if (x < 0.0 || x > L) return 0.0;
    const double dilation = std::abs(kg_box_energy(s.n, p, s.branch)) / p.rest_energy();
    const double sn = std::sin(s.n * detail::pi * x / L);
    return dilation * (2.0 / L) * sn * sn;
}

inline double dirac_oscillator_density(const StateSpec& s, const PhysicalParams& p, double x) {
    s.validate();
    if (s.system != System::dirac_oscillator)
        throw std::invalid_argument("dirac_oscillator_density: wrong system");
    const auto c = dirac_oscillator_coefficients(s.n, p, s.branch);
    const double a = alpha(p);
    const auto h = hermite_scaled_pair(s.n, std::sqrt(a) * x);
    return std::sqrt(a) * (c.upper_weight * h.h_n * h.h_n +
                           c.lower_weight * h.h_nm1 * h.h_nm1);
}

namespace detail {

inline double dirac_box_density_value(double x, double k, const DiracBoxParameters& par,
                                      const PhysicalParams& p) {
    const double L = p.box_length;
    if (x < 0.0 || x > L) return 0.0;
    const double arg = k * x - 0.5 * par.delta;
    const double s = std::sin(arg);
    const double c = std::cos(arg);
    // large component sin^2, small component phi^2 cos^2; this assignment (and
    // the exact b_squared above) is what reduces to the Schroedinger box
    // profile, with nodes at the walls, in the non-relativistic limit
    return par.b_squared * (s * s + par.phi * par.phi * c * c);
}

} // namespace detail

inline double dirac_box_density(const StateSpec& s, const PhysicalParams& p, double x) {
    s.validate();
    if (s.system != System::dirac_box)
        throw std::invalid_argument("dirac_box_density: wrong system");
    const auto root = detail::dirac_box_root(s.n, p);
    const auto par = dirac_box_parameters(root.k, p);
    return detail::dirac_box_density_value(x, root.k, par, p);
}

// Precomputes the spectral data once so grids and quadratures do not
// re-solve roots per point.
class DensityEvaluator {
public:
    DensityEvaluator(const StateSpec& s, const PhysicalParams& p) : state_(s), params_(p) {
        s.validate();
        p.validate();
        entry_ = spectrum_entry(s, p);
        if (s.system == System::dirac_oscillator) {
            coeffs_ = dirac_oscillator_coefficients(s.n, p, s.branch);
        }
        if (s.system == System::dirac_box) {
            box_par_ = dirac_box_parameters(entry_.k, p);
        }
    }

    double operator()(double x) const {
        switch (state_.system) {
            case System::kg_oscillator: {
                const double a = alpha(params_);
                const double h = hermite_scaled(state_.n, std::sqrt(a) * x);
                return dilation() * std::sqrt(a) * h * h;
            }
            case System::kg_box: {
                const double L = params_.box_length;
                if (x < 0.0 || x > L) return 0.0;
                const double sn = std::sin(state_.n * detail::pi * x / L);
                return dilation() * (2.0 / L) * sn * sn;
            }
            case System::dirac_oscillator: {
                const double a = alpha(params_);
                const auto h = hermite_scaled_pair(state_.n, std::sqrt(a) * x);
                return std::sqrt(a) * (coeffs_.upper_weight * h.h_n * h.h_n +
                                       coeffs_.lower_weight * h.h_nm1 * h.h_nm1);
            }
            case System::dirac_box:
                return detail::dirac_box_density_value(x, entry_.k, box_par_, params_);
        }
        return 0.0;
    }

    const SpectrumEntry& entry() const { return entry_; }
    const StateSpec& state() const { return state_; }
    const PhysicalParams& params() const { return params_; }

    // expected integral of the density: |E|/mc^2 for Klein-Gordon, 1 for Dirac
    double norm_target() const {
        if (state_.system == System::kg_oscillator || state_.system == System::kg_box)
            return dilation();
        return 1.0;
    }

    // envelope scale: widest kappa for oscillators, box length for boxes
    double support_scale() const {
        if (is_oscillator(state_.system)) return entry_.kappa;
        return params_.box_length;
    }

private:
    double dilation() const { return std::abs(entry_.energy) / params_.rest_energy(); }

    StateSpec state_;
    PhysicalParams params_;
    SpectrumEntry entry_{};
    DiracOscillatorCoefficients coeffs_{};
    DiracBoxParameters box_par_{};
};

// Sampled density with its metadata.
struct DensityCurve {
    StateSpec state{};
    std::vector<double> x;
    std::vector<double> rho;
    double norm_target = 1.0;
    double energy = 0.0;

    double grid_spacing() const {
        return x.size() >= 2 ? (x.back() - x.front()) / static_cast<double>(x.size() - 1) : 0.0;
    }
};

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        sum += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    return sum;
}

struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    int points = 2001;
    bool use_default_range = true; // [-1.2 kappa, 1.2 kappa] or [-0.1 L, 1.1 L]
};

inline DensityCurve density_grid(const StateSpec& s, const PhysicalParams& p,
                                 const GridSpec& spec = {}) {
    if (spec.points < 2) throw std::invalid_argument("density_grid: need at least 2 points");
    DensityEvaluator eval(s, p);
    double lo = spec.x_min;
    double hi = spec.x_max;
    if (spec.use_default_range) {
        if (is_oscillator(s.system)) {
            // 1.2 kappa plus four oscillator lengths: the extra margin keeps
            // the full tail on the grid at small n, where kappa alone is
            // comparable to the ground-state width
            const double kappa = eval.entry().kappa;
            const double margin = 4.0 / std::sqrt(alpha(p));
            lo = -(1.2 * kappa + margin);
            hi = 1.2 * kappa + margin;
        } else {
            lo = -0.1 * p.box_length;
            hi = 1.1 * p.box_length;
        }
    }
    if (!(hi > lo)) throw std::invalid_argument("density_grid: x_max must exceed x_min");

    DensityCurve curve;
    curve.state = s;
    curve.norm_target = eval.norm_target();
    curve.energy = eval.entry().energy;
    curve.x.resize(static_cast<std::size_t>(spec.points));
    curve.rho.resize(static_cast<std::size_t>(spec.points));
    const double step = (hi - lo) / (spec.points - 1);
    for (int i = 0; i < spec.points; ++i) {
        const double xi = lo + i * step;
        curve.x[static_cast<std::size_t>(i)] = xi;
        curve.rho[static_cast<std::size_t>(i)] = eval(xi);
    }
    return curve;
}

// Integral of the density over its full support by adaptive Simpson; for
// oscillators the window [-w kappa, w kappa] is widened from w = 3 until the
// tail no longer contributes at 1e-12 relative.
inline double density_norm_quadrature(const DensityEvaluator& eval,
                                      double rel_tol = 1e-10) {
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    const auto& s = eval.state();
    if (is_box(s.system)) {
        opts.min_panels = 64 * (s.n + 1);
        return integrate_simpson(eval, 0.0, eval.params().box_length, opts);
    }
    opts.min_panels = 32 * (s.n + 4);
    const double kappa = eval.entry().kappa;
    double w = 3.0;
    double total = integrate_simpson(eval, -w * kappa, w * kappa, opts);
    for (int i = 0; i < 6; ++i) {
        QuadratureOptions tail_opts;
        tail_opts.rel_tol = 1e-6;
        tail_opts.abs_tol = 1e-14 * std::abs(total);
        const double tail = integrate_simpson(eval, w * kappa, 2.0 * w * kappa, tail_opts) +
                            integrate_simpson(eval, -2.0 * w * kappa, -w * kappa, tail_opts);
        if (std::abs(tail) < 1e-12 * std::abs(total)) break;
        total += tail;
        w *= 2.0;
    }
    return total;
}

inline double density_norm_quadrature(const StateSpec& s, const PhysicalParams& p,
                                      double rel_tol = 1e-10) {
    return density_norm_quadrature(DensityEvaluator(s, p), rel_tol);
}

} // namespace rqmc
