#pragma once

#include <cmath>
#include <stdexcept>

#include "rqmc/core.hpp"

namespace rqmc {

namespace detail {
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline const double quarter_root_pi_inv = 0.75112554446494248285870300477623; // pi^(-1/4)
} // namespace detail

// Orthonormal Hermite function h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)).
// The normalized three-term recurrence keeps every intermediate bounded, so the
// evaluation stays finite for n well beyond the overflow point of raw H_n.
inline double hermite_scaled(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_scaled: n must be >= 0");
    const double h0 = detail::quarter_root_pi_inv * std::exp(-0.5 * x * x);
    if (n == 0) return h0;
    double prev = h0;
    double cur = std::sqrt(2.0) * x * h0;
    for (int k = 1; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * cur -
                            std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct HermitePair {
    double h_n;
    double h_nm1; // h_{n-1}(x); zero when n == 0
};

// One recurrence sweep yielding h_n and h_{n-1} together (the Dirac
// oscillator density needs both at every grid point).
inline HermitePair hermite_scaled_pair(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_scaled_pair: n must be >= 0");
    const double h0 = detail::quarter_root_pi_inv * std::exp(-0.5 * x * x);
    if (n == 0) return {h0, 0.0};
    double prev = h0;
    double cur = std::sqrt(2.0) * x * h0;
    for (int k = 1; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * cur -
                            std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

// Laguerre polynomial L_n(x) by the standard recurrence
// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
inline double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

inline double bessel_j0_series(double x) {
    // power series in (x/2)^2; converges quickly for |x| <= 8
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

inline double bessel_j0_asymptotic(double x) {
    // Hankel expansion: J0 = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
    // u_m = prod_{i<=m}(2i-1)^2 / (m! (8x)^m), P takes even m, Q odd m.
    // The series is asymptotic: stop at the smallest term.
    double u = 1.0;
    double p = 1.0;
    double q = 0.0;
    double prev_mag = 1.0;
    for (int m = 1; m <= 30; ++m) {
        const double odd = 2.0 * m - 1.0;
        u *= odd * odd / (m * 8.0 * x);
        if (std::abs(u) >= prev_mag) break; // divergence sets in
        prev_mag = std::abs(u);
        const int half = (m + 1) / 2;
        const double signed_u = (half % 2 == 0) ? u : -u;
        if (m % 2 == 0) p += signed_u; else q += signed_u;
        if (std::abs(u) < 1e-18) break;
    }
    const double z = x - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(z) - q * std::sin(z));
}

} // namespace detail

// Bessel function of the first kind, order zero, accurate to about 1e-11
// absolute over |x| <= 50.  The power series is used up to |x| = 13 (its
// rounding floor stays near 1e-12 there); beyond that the Hankel expansion
// truncated at its smallest term is well inside the tolerance.  Below 13 the
// Hankel floor would dominate, which is why the usual |x| = 8 split is not
// used here.
inline double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= 13.0) return detail::bessel_j0_series(x);
    return detail::bessel_j0_asymptotic(x);
}

} // namespace rqmc
