#pragma once

// Special functions for the harmonic-potential steady state: erf/erfc,
// the imaginary error function erfi, and the single generalized
// hypergeometric instance 2F2(1,1;3/2,2;z) appearing in the normalisation.

#include <cmath>
#include <stdexcept>
#include <string>

#include "dealersim/quadrature.hpp"

namespace dealersim {

struct SeriesTolerance {
    double rel_tol = 1e-12;
    int max_terms = 500;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("SeriesTolerance: rel_tol must be > 0");
        if (max_terms < 10)
            throw std::invalid_argument("SeriesTolerance: max_terms must be >= 10");
    }
};

// erf and erfc with oddness made exact by reducing through |x|.
inline double erf(double x) {
    const double v = std::erf(std::abs(x));
    return x < 0.0 ? -v : v;
}

inline double erfc(double x) { return std::erfc(x); }

namespace detail {

inline constexpr double kTwoOverSqrtPi = 1.1283791670955125739;

// Maclaurin series: erfi(x) = (2/sqrt(pi)) sum x^(2n+1) / (n! (2n+1)).
// All terms are positive, so no cancellation; used for moderate |x|.
inline double erfi_series(double x) {
    const double x2 = x * x;
    double term = x;       // x^(2n+1) / n!
    double sum = term;     // term / (2n+1) accumulated
    for (int n = 1; n < 2000; ++n) {
        term *= x2 / static_cast<double>(n);
        const double contrib = term / static_cast<double>(2 * n + 1);
        sum += contrib;
        if (contrib < 1e-17 * sum) break;
    }
    return kTwoOverSqrtPi * sum;
}

// Dawson integral D(x) = exp(-x^2) int_0^x exp(t^2) dt for x > 3, computed
// from the substituted form int_0^x exp(-s(2x - s)) ds whose integrand is
// bounded by 1 and decays like exp(-2xs).
inline double dawson_scaled_integral(double x) {
    // For the 3 < x < 6 range served here min(x, 36/x) = x, i.e. no truncation.
    const double s_hi = std::min(x, 36.0 / x);
    return integrate([x](double s) { return std::exp(-s * (2.0 * x - s)); }, 0.0,
                     s_hi, 1e-13);
}

// Asymptotic expansion 2x D(x) ~ sum_k (2k-1)!! / (2x^2)^k, truncated at the
// smallest term; below 1e-16 relative for x >= 6.
inline double dawson_asymptotic(double x) {
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * static_cast<double>(2 * k - 1) * inv2x2;
        if (next >= term) break;  // series started diverging
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / (2.0 * x);
}

}  // namespace detail

// erfi(x) = (2/sqrt(pi)) int_0^x exp(t^2) dt. Odd by construction. The guard
// |x| <= 30 bounds the exp(x^2) growth; the result still overflows to inf
// for |x| beyond about 26.6 where exp(x^2) leaves double range.
inline double erfi(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("erfi: non-finite argument");
    const double ax = std::abs(x);
    if (ax > 30.0)
        throw std::overflow_error("erfi: |x| > 30 exceeds the overflow guard");
    double v;
    if (ax <= 3.0) {
        v = detail::erfi_series(ax);
    } else {
        const double dawson = ax < 6.0 ? detail::dawson_scaled_integral(ax)
                                       : detail::dawson_asymptotic(ax);
        v = detail::kTwoOverSqrtPi * std::exp(ax * ax) * dawson;
    }
    return x < 0.0 ? -v : v;
}

// 2F2(1,1;3/2,2;z) by direct term recursion
//   t_0 = 1,  t_{n+1} = t_n (n+1) z / ((n+3/2)(n+2)).
// Entire in z. For z < 0 the terms eventually alternate with decreasing
// magnitude, so the first omitted term bounds the truncation error; the
// stopping rule requires both a decreasing term and |term| <= rel_tol |sum|.
inline double hyp2f2_1_1_32_2(double z, SeriesTolerance tol = {}) {
    tol.validate();
    if (!std::isfinite(z))
        throw std::invalid_argument("hyp2f2_1_1_32_2: non-finite argument");
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < tol.max_terms; ++n) {
        const double next =
            term * (static_cast<double>(n + 1) * z) /
            ((static_cast<double>(n) + 1.5) * static_cast<double>(n + 2));
        sum += next;
        const bool decreasing = std::abs(next) < std::abs(term);
        term = next;
        if (decreasing && std::abs(next) <= tol.rel_tol * std::abs(sum)) return sum;
    }
    throw std::runtime_error(
        "hyp2f2_1_1_32_2: no convergence within " + std::to_string(tol.max_terms) +
        " terms at z = " + std::to_string(z));
}

}  // namespace dealersim
