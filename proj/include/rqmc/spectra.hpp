#pragma once

#include <cmath>
#include <vector>

#include "rqmc/core.hpp"
#include "rqmc/specfun.hpp"

namespace rqmc {

namespace detail {
inline double branch_sign(Branch b) { return b == Branch::particle ? 1.0 : -1.0; }
} // namespace detail

// E_n^2 = m^2 c^4 + 2 (n + 1/2) m c^2 hbar omega
inline double kg_oscillator_energy(int n, const PhysicalParams& p, Branch branch) {
    p.validate();
    if (n < 0) throw std::invalid_argument("kg_oscillator_energy: n must be >= 0");
    const double mc2 = p.rest_energy();
    return detail::branch_sign(branch) *
           std::sqrt(mc2 * mc2 + 2.0 * (n + 0.5) * mc2 * p.hbar * p.omega);
}

// E_n^2 = m^2 c^4 + c^2 hbar^2 n^2 pi^2 / L^2
inline double kg_box_energy(int n, const PhysicalParams& p, Branch branch) {
    p.validate();
    if (n < 1) throw std::invalid_argument("kg_box_energy: n must be >= 1");
    const double mc2 = p.rest_energy();
    const double kn = n * detail::pi / p.box_length;
    const double hbar_k_c = p.hbar * kn * p.c;
    return detail::branch_sign(branch) * std::sqrt(mc2 * mc2 + hbar_k_c * hbar_k_c);
}

// E_n^2 = m^2 c^4 + 2 n hbar omega m c^2  (Moshinsky spectrum; E_0 = mc^2)
inline double dirac_oscillator_energy(int n, const PhysicalParams& p, Branch branch) {
    p.validate();
    if (n < 0) throw std::invalid_argument("dirac_oscillator_energy: n must be >= 0");
    const double mc2 = p.rest_energy();
    return detail::branch_sign(branch) *
           std::sqrt(mc2 * mc2 + 2.0 * n * p.hbar * p.omega * mc2);
}

// kappa_n = sqrt(2 hbar (n + 1/2) / (m omega)), the relativistic turning point.
inline double oscillator_kappa(int n, const PhysicalParams& p) {
    p.validate();
    if (n < 0) throw std::invalid_argument("oscillator_kappa: n must be >= 0");
    return std::sqrt(2.0 * p.hbar * (n + 0.5) / (p.mass * p.omega));
}

// S_n = 4 sqrt(2 pi) m omega kappa_n^2
inline double oscillator_action(int n, const PhysicalParams& p) {
    const double kappa = oscillator_kappa(n, p);
    return 4.0 * std::sqrt(2.0 * detail::pi) * p.mass * p.omega * kappa * kappa;
}

struct DiracBoxRoot {
    double k;        // wavenumber, first positive solutions in increasing order
    double residual; // |tan(kL) + hbar k/(m c)| at the converged root
};

namespace detail {

// Quantization condition tan(kL) = -hbar k/(m c), one root per branch of tan.
// Bisection locates the j-th root inside ((j-1/2)pi/L, j pi/L); a few Newton
// steps in extended precision on sin(kL) + (hbar k/(m c)) cos(kL) = 0 then
// polish it, which keeps the reported residual meaningful at large j where
// the tan form is steep.
inline DiracBoxRoot dirac_box_root(int j, const PhysicalParams& p) {
    const double L = p.box_length;
    const double slope = p.hbar / (p.mass * p.c);
    const double lo0 = (j - 0.5) * pi / L;
    const double hi0 = j * pi / L;

    auto g = [&](double k) { return std::tan(k * L) + slope * k; };

    // g -> -inf at the left endpoint and g(hi0) > 0, so the signs are known
    // without evaluating at the singular edge.
    double lo = lo0;
    double hi = hi0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval exhausted in double
        (g(mid) < 0.0 ? lo : hi) = mid;
        if ((hi - lo) <= 1e-13 * hi) break;
    }
    if ((hi - lo) > 1e-9 * hi) {
        throw numeric_error("dirac_box_root: bisection failed to converge");
    }

    long double k = 0.5L * (static_cast<long double>(lo) + static_cast<long double>(hi));
    const long double Ll = L;
    const long double sl = slope;
    for (int it = 0; it < 6; ++it) {
        const long double s = std::sin(k * Ll);
        const long double c = std::cos(k * Ll);
        const long double h = s + sl * k * c;
        const long double dh = Ll * c + sl * c - sl * k * Ll * s;
        if (dh == 0.0L) break;
        k -= h / dh;
    }
    const long double residual = std::fabs(std::tan(k * Ll) + sl * k);
    return {static_cast<double>(k), static_cast<double>(residual)};
}

} // namespace detail

inline std::vector<DiracBoxRoot> dirac_box_roots(const PhysicalParams& p, int count) {
    p.validate();
    if (count < 1) throw std::invalid_argument("dirac_box_roots: count must be >= 1");
    std::vector<DiracBoxRoot> roots;
    roots.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j) roots.push_back(detail::dirac_box_root(j, p));
    return roots;
}

struct DiracBoxParameters {
    double energy;    // E_k > 0
    double phi;       // hbar k c / (E_k + m c^2), in [0, 1)
    double delta;     // phase, branch with delta -> 0^- as phi -> 0
    double b_squared; // normalization constant of the box density
};

// Derived spectral quantities for a dirac-box wavenumber.  b_squared is the
// exact normalizer of the density for any k > 0, not only at quantization
// roots; at a root it reduces to E(E + mc^2) / (E^2 L + hbar m c^3).
inline DiracBoxParameters dirac_box_parameters(double k, const PhysicalParams& p) {
    p.validate();
    if (!(k > 0.0)) throw std::invalid_argument("dirac_box_parameters: k must be > 0");
    const double mc2 = p.rest_energy();
    const double hkc = p.hbar * k * p.c;
    const double energy = std::sqrt(mc2 * mc2 + hkc * hkc);
    const double phi = hkc / (energy + mc2);
    if (phi == 1.0) {
        throw std::invalid_argument("dirac_box_parameters: phi == 1 (phase formula singular)");
    }
    const double delta = -2.0 * std::atan(phi);
    const double L = p.box_length;
    const double phi2 = phi * phi;
    const double osc = std::sin(2.0 * k * L - delta) + std::sin(delta);
    const double inv_b2 = 0.5 * (1.0 + phi2) * L - (1.0 - phi2) * osc / (4.0 * k);
    return {energy, phi, delta, 1.0 / inv_b2};
}

// Energy of any state; for dirac-box this solves the quantization condition
// for the n-th root.
inline double state_energy(const StateSpec& s, const PhysicalParams& p) {
    s.validate();
    switch (s.system) {
        case System::kg_oscillator: return kg_oscillator_energy(s.n, p, s.branch);
        case System::kg_box: return kg_box_energy(s.n, p, s.branch);
        case System::dirac_oscillator: return dirac_oscillator_energy(s.n, p, s.branch);
        case System::dirac_box: {
            const auto root = detail::dirac_box_root(s.n, p);
            return detail::branch_sign(s.branch) * dirac_box_parameters(root.k, p).energy;
        }
    }
    throw std::invalid_argument("state_energy: unknown system");
}

// Everything the CLI and the density builders need about one level.
struct SpectrumEntry {
    StateSpec state{};
    double energy = 0.0; // signed by branch
    // oscillators
    double kappa = 0.0;
    double action = 0.0;
    // boxes
    double k = 0.0;
    // dirac-box extras
    double phi = 0.0;
    double delta = 0.0;
    double b_squared = 0.0;
    double residual = 0.0;
};

inline SpectrumEntry spectrum_entry(const StateSpec& s, const PhysicalParams& p) {
    s.validate();
    p.validate();
    SpectrumEntry e;
    e.state = s;
    switch (s.system) {
        case System::kg_oscillator:
            e.energy = kg_oscillator_energy(s.n, p, s.branch);
            e.kappa = oscillator_kappa(s.n, p);
            e.action = oscillator_action(s.n, p);
            break;
        case System::dirac_oscillator:
            e.energy = dirac_oscillator_energy(s.n, p, s.branch);
            e.kappa = oscillator_kappa(s.n, p);
            e.action = oscillator_action(s.n, p);
            break;
        case System::kg_box:
            e.energy = kg_box_energy(s.n, p, s.branch);
            e.k = s.n * detail::pi / p.box_length;
            break;
        case System::dirac_box: {
            const auto root = detail::dirac_box_root(s.n, p);
            const auto par = dirac_box_parameters(root.k, p);
            e.energy = detail::branch_sign(s.branch) * par.energy;
            e.k = root.k;
            e.phi = par.phi;
            e.delta = par.delta;
            e.b_squared = par.b_squared;
            e.residual = root.residual;
            break;
        }
    }
    return e;
}

} // namespace rqmc
