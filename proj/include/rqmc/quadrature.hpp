#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "rqmc/core.hpp"

namespace rqmc {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    // lower bound on panel count before convergence may be declared; raise it
    // for integrands with many oscillations so the first estimates resolve them
    std::int64_t min_panels = 64;
    std::int64_t max_panels = std::int64_t{1} << 23;
};

namespace detail {

template <class T>
inline double magnitude(const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>) return std::abs(v);
    else return std::abs(static_cast<double>(v));
}

} // namespace detail

// Composite Simpson with panel doubling: trapezoid sums are refined by
// reusing previous evaluations, Simpson values follow by Richardson
// extrapolation, and the loop stops once two successive Simpson estimates
// agree to the requested tolerance.
template <class F>
auto integrate_simpson(F&& f, double a, double b, const QuadratureOptions& opts = {})
    -> decltype(f(a)) {
    using value_type = decltype(f(a));
    if (!(b > a)) throw std::invalid_argument("integrate_simpson: requires b > a");

    const double width = b - a;
    value_type trapezoid = 0.5 * width * (f(a) + f(b));
    value_type simpson{};
    value_type simpson_prev{};
    bool have_prev = false;

    for (std::int64_t panels = 1; panels <= opts.max_panels; panels *= 2) {
        // refine trapezoid with midpoints of the current panels
        const double h = width / static_cast<double>(panels);
        value_type mids{};
        for (std::int64_t i = 0; i < panels; ++i) {
            mids += f(a + (static_cast<double>(i) + 0.5) * h);
        }
        const value_type trap_next = 0.5 * (trapezoid + h * mids);
        simpson = (4.0 * trap_next - trapezoid) / 3.0;
        trapezoid = trap_next;

        if (have_prev && 2 * panels >= opts.min_panels) {
            const double diff = detail::magnitude(simpson - simpson_prev);
            if (diff <= opts.rel_tol * detail::magnitude(simpson) + opts.abs_tol) {
                return simpson;
            }
        }
        simpson_prev = simpson;
        have_prev = true;
    }
    throw numeric_error("integrate_simpson: no convergence within panel budget");
}

// Integral over (center-radius, center+radius) of a function with
// inverse-square-root endpoint singularities: substituting
// x = center + radius*sin(t) removes them exactly.  The composite midpoint
// rule keeps every evaluation strictly inside the interval.
template <class F>
auto integrate_arcsine_endpoints(F&& f, double center, double radius,
                                 const QuadratureOptions& opts = {}) -> decltype(f(center)) {
    using value_type = decltype(f(center));
    if (!(radius > 0.0)) throw std::invalid_argument("integrate_arcsine_endpoints: radius must be > 0");
    const double pi = 3.14159265358979323846264338327950288;
    auto g = [&](double t) {
        const double x = center + radius * std::sin(t);
        return f(x) * (radius * std::cos(t));
    };
    value_type prev{};
    bool have_prev = false;
    for (std::int64_t n = std::max<std::int64_t>(opts.min_panels, 32); n <= opts.max_panels;
         n *= 2) {
        const double h = pi / static_cast<double>(n);
        value_type sum{};
        for (std::int64_t i = 0; i < n; ++i) {
            sum += g(-0.5 * pi + (static_cast<double>(i) + 0.5) * h);
        }
        sum = sum * h;
        if (have_prev) {
            const double diff = detail::magnitude(sum - prev);
            if (diff <= opts.rel_tol * detail::magnitude(sum) + opts.abs_tol) return sum;
        }
        prev = sum;
        have_prev = true;
    }
    throw numeric_error("integrate_arcsine_endpoints: no convergence within panel budget");
}

} // namespace rqmc
