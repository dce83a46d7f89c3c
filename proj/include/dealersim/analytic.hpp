#pragma once

// Closed-form results: the tent-function steady state, the order-book
// profile, transaction-interval and diffusion constants, the exact steady
// densities with an avoiding potential (general and harmonic), and the
// next-leading-order mean-field profile for finite N. These are the oracles
// the Monte Carlo and finite-difference solvers are validated against.

#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "dealersim/core.hpp"
#include "dealersim/csv.hpp"
#include "dealersim/quadrature.hpp"
#include "dealersim/specfun.hpp"

namespace dealersim {

inline constexpr double kSqrt2Pi = 2.5066282746310005024;

// Steady relative-price density for N = 2: phi(r) = max{0, (L/2 - |r|)/(L^2/4)}.
inline double tent_pdf(double r, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("tent_pdf: L must be > 0");
    const double v = (L / 2.0 - std::abs(r)) / (L * L / 4.0);
    return v > 0.0 ? v : 0.0;
}

// Normalised average order-book profile: the tent shifted by L/2,
// peaked at depth r = L/2 from the centre of mass.
inline double orderbook_profile(double r, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("orderbook_profile: L must be > 0");
    return tent_pdf(r - L / 2.0, L);
}

// <tau> = L^2 / (2 sigma^2), equivalently L^2 / (4 sigma_cm^2).
inline double mean_transaction_interval(double L, double sigma2) {
    if (!(L > 0.0) || !(sigma2 > 0.0))
        throw std::invalid_argument("mean_transaction_interval: need L, sigma2 > 0");
    return L * L / (2.0 * sigma2);
}

// D(N=2) = sigma_cm^2 / 2 = sigma^2 / 4.
inline double com_diffusion_constant_n2(double sigma2) {
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("com_diffusion_constant_n2: sigma2 must be > 0");
    return sigma2 / 4.0;
}

// ---------------------------------------------------------------------------
// General symmetric avoiding potential:
//   phi(r) = (1/Z) exp(-2U(r)/sigma_cm^2) { G(L/2) - G(|r|) },  |r| <= L/2
//   G(r)   = int_0^r exp(2U(x)/sigma_cm^2) dx
//   Z      = int_{-L/2}^{L/2} exp(-2U(r)/sigma_cm^2) { G(L/2) - G(|r|) } dr
// ---------------------------------------------------------------------------

namespace detail {

inline void check_symmetric_potential(const std::function<double(double)>& U,
                                      double L) {
    if (std::abs(U(0.0)) > 1e-12)
        throw std::invalid_argument("potential: U(0) must be 0");
    for (int j = 1; j <= 16; ++j) {
        const double x = j * (L / 2.0) / 16.0;
        const double up = U(x);
        const double um = U(-x);
        if (!std::isfinite(up) || !std::isfinite(um))
            throw std::invalid_argument("potential: U not finite on [-L/2, L/2]");
        if (std::abs(up - um) > 1e-10 * std::max(1.0, std::abs(up)))
            throw std::invalid_argument("potential: U must be even in r");
    }
}

}  // namespace detail

// Evaluates the general-potential steady density with all integrals done by
// adaptive quadrature to 1e-10 relative. Construction precomputes G(L/2) and Z.
class GeneralPotentialProfile {
public:
    GeneralPotentialProfile(double L, double sigma_cm2,
                            std::function<double(double)> U)
        : L_(L), sigma_cm2_(sigma_cm2), U_(std::move(U)) {
        if (!(L > 0.0) || !(sigma_cm2 > 0.0))
            throw std::invalid_argument(
                "GeneralPotentialProfile: need L, sigma_cm2 > 0");
        detail::check_symmetric_potential(U_, L_);
        g_half_ = g(L_ / 2.0);
        // Z by evenness: twice the integral over [0, L/2].
        z_ = 2.0 * integrate(
                       [this](double r) { return unnormalised(r); }, 0.0, L_ / 2.0,
                       1e-10);
    }

    double operator()(double r) const {
        const double ar = std::abs(r);
        if (ar > L_ / 2.0) return 0.0;
        return unnormalised(ar) / z_;
    }

    double normalisation() const { return z_; }

private:
    double g(double r) const {
        return integrate(
            [this](double x) { return std::exp(2.0 * U_(x) / sigma_cm2_); }, 0.0, r,
            1e-10);
    }

    double unnormalised(double ar) const {
        return std::exp(-2.0 * U_(ar) / sigma_cm2_) * (g_half_ - g(ar));
    }

    double L_;
    double sigma_cm2_;
    std::function<double(double)> U_;
    double g_half_ = 0.0;
    double z_ = 1.0;
};

inline double steady_pdf_general_potential(double r, double L, double sigma_cm2,
                                           const std::function<double(double)>& U) {
    return GeneralPotentialProfile(L, sigma_cm2, U)(r);
}

// ---------------------------------------------------------------------------
// Harmonic avoiding potential U(r) = u^2 r^2 / 2:
//   phi(r) = (1/Z) exp(-u^2 r^2 / sigma_cm^2)
//            [ erfi(uL/(2 sigma_cm)) - erfi(u|r|/sigma_cm) ],  |r| <= L/2
// with Z in closed form through erf * erfi and 2F2.
// ---------------------------------------------------------------------------

inline double harmonic_z_closed_form(double L, double sigma_cm, double u) {
    if (!(L > 0.0) || !(sigma_cm > 0.0) || !(u > 0.0))
        throw std::invalid_argument("harmonic_z_closed_form: need L, sigma_cm, u > 0");
    const double a = u * L / (2.0 * sigma_cm);
    const double s2 = sigma_cm * sigma_cm;
    const double pi = 3.14159265358979323846;
    const double term_erf = 2.0 * pi * s2 * erf(a) * erfi(a);
    const double term_2f2 = u * u * L * L * hyp2f2_1_1_32_2(-a * a);
    return (term_erf - term_2f2) / (2.0 * u * sigma_cm * std::sqrt(pi));
}

inline double harmonic_z_quadrature(double L, double sigma_cm, double u,
                                    double rel_tol = 1e-10) {
    if (!(L > 0.0) || !(sigma_cm > 0.0) || !(u > 0.0))
        throw std::invalid_argument("harmonic_z_quadrature: need L, sigma_cm, u > 0");
    const double a = u * L / (2.0 * sigma_cm);
    const double erfi_a = erfi(a);
    const double s2 = sigma_cm * sigma_cm;
    return 2.0 * integrate(
                     [&](double r) {
                         return std::exp(-u * u * r * r / s2) *
                                (erfi_a - erfi(u * r / sigma_cm));
                     },
                     0.0, L / 2.0, rel_tol);
}

inline double steady_pdf_harmonic(double r, double L, double sigma_cm, double u) {
    const double z = harmonic_z_closed_form(L, sigma_cm, u);
    const double ar = std::abs(r);
    if (ar > L / 2.0) return 0.0;
    const double a = u * L / (2.0 * sigma_cm);
    const double s2 = sigma_cm * sigma_cm;
    return std::exp(-u * u * ar * ar / s2) * (erfi(a) - erfi(u * ar / sigma_cm)) / z;
}

// ---------------------------------------------------------------------------
// NLO mean-field profile for finite N:
//   phi_N(r) = (4 eps / L^2) [ F((|r|-L/2)/eps) - 2 F(|r|/eps) ]
//   F(x)     = exp(-x^2/2)/sqrt(2 pi) - (x/2) erfc(x/sqrt(2))
//   eps      = L / (2 sqrt(N))
// ---------------------------------------------------------------------------

inline double nlo_tail_function(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi - 0.5 * x * erfc(x / 1.4142135623730951);
}

inline double nlo_meanfield_pdf(double r, double L, int N) {
    if (!(L > 0.0)) throw std::invalid_argument("nlo_meanfield_pdf: L must be > 0");
    if (N < 2) throw std::invalid_argument("nlo_meanfield_pdf: N must be >= 2");
    const double eps = L / (2.0 * std::sqrt(static_cast<double>(N)));
    const double ar = std::abs(r);
    return 4.0 * eps / (L * L) *
           (nlo_tail_function((ar - L / 2.0) / eps) -
            2.0 * nlo_tail_function(ar / eps));
}

// ---------------------------------------------------------------------------
// Evaluable profile handle used by the CLI and the comparison drivers.
// ---------------------------------------------------------------------------

enum class ProfileKind { Tent, OrderBook, GeneralPotential, HarmonicPotential, MeanFieldNLO };

class AnalyticProfile {
public:
    static AnalyticProfile tent(const ModelParams& p) {
        return AnalyticProfile(ProfileKind::Tent, p);
    }
    static AnalyticProfile orderbook(const ModelParams& p) {
        return AnalyticProfile(ProfileKind::OrderBook, p);
    }
    static AnalyticProfile harmonic(const ModelParams& p) {
        if (!(p.u2 > 0.0))
            throw std::invalid_argument("AnalyticProfile::harmonic: u2 must be > 0");
        return AnalyticProfile(ProfileKind::HarmonicPotential, p);
    }
    static AnalyticProfile nlo(const ModelParams& p) {
        AnalyticProfile prof(ProfileKind::MeanFieldNLO, p);
        prof.epsilon_ = p.spread / (2.0 * std::sqrt(static_cast<double>(p.n_traders)));
        return prof;
    }
    static AnalyticProfile general(const ModelParams& p,
                                   std::function<double(double)> U) {
        AnalyticProfile prof(ProfileKind::GeneralPotential, p);
        prof.general_ = std::make_shared<GeneralPotentialProfile>(
            p.spread, p.sigma_cm2(), std::move(U));
        return prof;
    }

    ProfileKind kind() const { return kind_; }
    const ModelParams& params() const { return params_; }
    double boundary_layer_epsilon() const { return epsilon_; }

    double operator()(double r) const {
        switch (kind_) {
            case ProfileKind::Tent:
                return tent_pdf(r, params_.spread);
            case ProfileKind::OrderBook:
                return orderbook_profile(r, params_.spread);
            case ProfileKind::GeneralPotential:
                return (*general_)(r);
            case ProfileKind::HarmonicPotential:
                return steady_pdf_harmonic(r, params_.spread, params_.sigma_cm(),
                                           std::sqrt(params_.u2));
            case ProfileKind::MeanFieldNLO:
                return nlo_meanfield_pdf(r, params_.spread, params_.n_traders);
        }
        throw std::logic_error("AnalyticProfile: unknown kind");
    }

    // Columns r, phi(r) at the bin centers of the supplied grid.
    void write_csv(std::ostream& os, const GridSpec& grid) const {
        os << "r,phi\n";
        for (int k = 0; k < grid.n_bins(); ++k) {
            const double r = grid.bin_center(k);
            csv_row(os, r, (*this)(r));
        }
    }

private:
    AnalyticProfile(ProfileKind kind, const ModelParams& p) : kind_(kind), params_(p) {
        params_.validate();
    }

    ProfileKind kind_;
    ModelParams params_;
    double epsilon_ = 0.0;
    std::shared_ptr<GeneralPotentialProfile> general_;
};

}  // namespace dealersim
