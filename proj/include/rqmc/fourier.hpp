#pragma once

#include <cmath>
#include <complex>

#include "rqmc/core.hpp"
#include "rqmc/densities.hpp"
#include "rqmc/quadrature.hpp"
#include "rqmc/specfun.hpp"
#include "rqmc/spectra.hpp"

namespace rqmc {

// Convention: f(p) = integral rho(x) e^{-i p x / hbar} dx, so f(0) equals the
// density's integral.
enum class TransformSource { analytic, numeric_oracle, asymptotic };

inline const char* to_string(TransformSource s) {
    switch (s) {
        case TransformSource::analytic: return "analytic";
        case TransformSource::numeric_oracle: return "numeric-oracle";
        case TransformSource::asymptotic: return "asymptotic";
    }
    return "?";
}

struct TransformSample {
    double p = 0.0;
    std::complex<double> value{};
    TransformSource source = TransformSource::analytic;
};

// Quadrature Fourier transform of an arbitrary density closure over [a, b].
template <class Rho>
std::complex<double> ft_numeric(Rho&& rho, double a, double b, double p,
                                const PhysicalParams& params,
                                QuadratureOptions opts = {}) {
    params.validate();
    const double s = p / params.hbar;
    auto integrand = [&](double x) {
        return rho(x) * std::complex<double>(std::cos(s * x), -std::sin(s * x));
    };
    return integrate_simpson(integrand, a, b, opts);
}

// Fourier transform of a state's exact density.  The panel floor tracks both
// the density oscillation count and the momentum phase so the doubling loop
// cannot converge on an unresolved integrand.
inline std::complex<double> ft_numeric(const StateSpec& s, const PhysicalParams& p,
                                       double momentum, double rel_tol = 1e-10) {
    DensityEvaluator eval(s, p);
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    const double scale = eval.support_scale();
    const double phase_cycles = std::abs(momentum) * scale / p.hbar;
    if (is_box(s.system)) {
        opts.min_panels = 64 * (s.n + 1) + 16 * static_cast<std::int64_t>(phase_cycles);
        return ft_numeric(eval, 0.0, p.box_length, momentum, p, opts);
    }
    opts.min_panels = 32 * (s.n + 4) + 16 * static_cast<std::int64_t>(phase_cycles);
    const double kappa = eval.entry().kappa;
    double w = 3.0;
    // the Gaussian tail beyond 3 kappa is negligible at every tested n, but
    // widen the window until that is verified (|integrand| <= rho pointwise,
    // so the density mass in the tail bounds the transform tail)
    std::complex<double> total = ft_numeric(eval, -w * kappa, w * kappa, momentum, p, opts);
    for (int i = 0; i < 4; ++i) {
        QuadratureOptions tail_opts;
        tail_opts.rel_tol = 1e-6;
        tail_opts.abs_tol = 1e-14 * std::abs(total) + 1e-300;
        const double tail_mass =
            integrate_simpson(eval, w * kappa, 2.0 * w * kappa, tail_opts) +
            integrate_simpson(eval, -2.0 * w * kappa, -w * kappa, tail_opts);
        if (std::abs(tail_mass) < 1e-12 * std::abs(total) + 1e-14) break;
        w *= 2.0;
        total = ft_numeric(eval, -w * kappa, w * kappa, momentum, p, opts);
    }
    return total;
}

// f_n(p) = (|E_n|/mc^2) e^{-p^2/(4 m omega hbar)} L_n(p^2/(2 m omega hbar)).
// The Laguerre argument is quadratic in p; the linear form fails the numeric
// oracle (and dimensional analysis) and is kept out of the library.
inline double kg_oscillator_ft(int n, const PhysicalParams& p, double momentum,
                               Branch branch = Branch::particle) {
    p.validate();
    if (n < 0) throw std::invalid_argument("kg_oscillator_ft: n must be >= 0");
    const double dilation = std::abs(kg_oscillator_energy(n, p, branch)) / p.rest_energy();
    const double mwh = p.mass * p.omega * p.hbar;
    const double p2 = momentum * momentum;
    return dilation * std::exp(-p2 / (4.0 * mwh)) * laguerre(n, p2 / (2.0 * mwh));
}

// f_n(p) = e^{-p^2/(4 m omega hbar)} [ w_n L_n + w'_n L_{n-1} ](p^2/(2 m omega hbar))
// with the component weights of the density; reduces to the bare Gaussian at n = 0.
inline double dirac_oscillator_ft(int n, const PhysicalParams& p, double momentum,
                                  Branch branch = Branch::particle) {
    p.validate();
    const auto c = dirac_oscillator_coefficients(n, p, branch);
    const double mwh = p.mass * p.omega * p.hbar;
    const double t = momentum * momentum / (2.0 * mwh);
    double value = c.upper_weight * laguerre(n, t);
    if (n >= 1) value += c.lower_weight * laguerre(n - 1, t);
    return std::exp(-0.5 * t) * value;
}

// Large-n envelope of the box transforms:
//   kg:    (|E|/mc^2) (i hbar / pL) (e^{-iLp/hbar} - 1)
//   dirac: (1 + phi^2) |B|^2 (i hbar / 2p) (e^{-iLp/hbar} - 1)
// with the exact p -> 0 limits |E|/mc^2 and (1 + phi^2)|B|^2 L / 2.
inline std::complex<double> box_ft_asymptotic(const PhysicalParams& p, double energy,
                                              System system, double momentum) {
    p.validate();
    if (!is_box(system)) throw std::invalid_argument("box_ft_asymptotic: box systems only");
    const double L = p.box_length;
    const double E = std::abs(energy);
    double prefactor = 0.0;
    if (system == System::kg_box) {
        prefactor = E / p.rest_energy() / L;
    } else {
        const double mc2 = p.rest_energy();
        const double hkc = std::sqrt(E * E - mc2 * mc2);
        const double k = hkc / (p.hbar * p.c);
        const auto par = dirac_box_parameters(k, p);
        prefactor = (1.0 + par.phi * par.phi) * par.b_squared / 2.0;
    }
    if (momentum == 0.0) return {prefactor * L, 0.0};
    const double theta = L * momentum / p.hbar;
    const std::complex<double> phase{std::cos(theta), -std::sin(theta)};
    const std::complex<double> i{0.0, 1.0};
    return prefactor * (p.hbar / momentum) * i * (phase - 1.0);
}

// Transform of the classical arcsine density: J0(x0 p / hbar).
inline double classical_oscillator_ft(double x0, double momentum, const PhysicalParams& p) {
    p.validate();
    if (!(x0 > 0.0)) throw std::invalid_argument("classical_oscillator_ft: x0 must be > 0");
    return bessel_j0(x0 * momentum / p.hbar);
}

} // namespace rqmc
