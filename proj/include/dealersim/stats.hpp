#pragma once

// Histogramming, distance metrics, transaction-interval statistics and
// mean-square-displacement estimation, shared by the simulator and solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dealersim/core.hpp"
#include "dealersim/csv.hpp"

namespace dealersim {

// Binned density estimate. `weights` holds raw bin masses (sample counts or
// fractional weights); the normalised density of bin k is
// weights[k] / (n_samples * dr). Out-of-range samples are tallied separately
// but still count towards n_samples, matching the ergodic time average where
// every sampled instant contributes to the normalisation.
struct DensityEstimate {
    GridSpec grid;
    std::vector<double> weights;
    double n_samples = 0.0;
    double out_of_range = 0.0;

    DensityEstimate() : weights(static_cast<std::size_t>(grid.n_bins()), 0.0) {}
    explicit DensityEstimate(const GridSpec& g)
        : grid(g), weights(static_cast<std::size_t>(g.n_bins()), 0.0) {
        grid.validate();
    }

    double density(int k) const {
        return n_samples > 0.0 ? weights[static_cast<std::size_t>(k)] /
                                     (n_samples * grid.dr)
                               : 0.0;
    }
};

inline void accumulate(DensityEstimate& est, double r, double weight = 1.0) {
    if (std::isnan(r)) throw std::invalid_argument("accumulate: NaN sample");
    const int k = est.grid.bin_index(r);
    if (k < 0)
        est.out_of_range += weight;
    else
        est.weights[static_cast<std::size_t>(k)] += weight;
    est.n_samples += weight;
}

inline void merge(DensityEstimate& into, const DensityEstimate& from) {
    if (!(into.grid == from.grid))
        throw std::invalid_argument("merge: grid mismatch");
    for (std::size_t k = 0; k < into.weights.size(); ++k)
        into.weights[k] += from.weights[k];
    into.n_samples += from.n_samples;
    into.out_of_range += from.out_of_range;
}

// Two-dimensional histogram (used for the N = 2 joint density).
struct Density2D {
    GridSpec gx;
    GridSpec gy;
    std::vector<double> weights;  // row-major, x index major
    double n_samples = 0.0;
    double out_of_range = 0.0;

    Density2D() = default;
    Density2D(const GridSpec& x, const GridSpec& y)
        : gx(x), gy(y),
          weights(static_cast<std::size_t>(x.n_bins()) *
                      static_cast<std::size_t>(y.n_bins()),
                  0.0) {}

    void add(double x, double y, double w) {
        if (std::isnan(x) || std::isnan(y))
            throw std::invalid_argument("Density2D::add: NaN sample");
        const int kx = gx.bin_index(x);
        const int ky = gy.bin_index(y);
        if (kx < 0 || ky < 0)
            out_of_range += w;
        else
            weights[static_cast<std::size_t>(kx) *
                        static_cast<std::size_t>(gy.n_bins()) +
                    static_cast<std::size_t>(ky)] += w;
        n_samples += w;
    }

    // Marginal over the second coordinate, as a DensityEstimate on gx.
    DensityEstimate marginal_x() const {
        DensityEstimate est(gx);
        const std::size_t ny = static_cast<std::size_t>(gy.n_bins());
        for (std::size_t kx = 0; kx < static_cast<std::size_t>(gx.n_bins()); ++kx) {
            double s = 0.0;
            for (std::size_t ky = 0; ky < ny; ++ky) s += weights[kx * ny + ky];
            est.weights[kx] = s;
        }
        est.n_samples = n_samples;
        est.out_of_range = out_of_range;
        return est;
    }
};

inline void merge(Density2D& into, const Density2D& from) {
    if (!(into.gx == from.gx) || !(into.gy == from.gy))
        throw std::invalid_argument("merge: 2D grid mismatch");
    for (std::size_t k = 0; k < into.weights.size(); ++k)
        into.weights[k] += from.weights[k];
    into.n_samples += from.n_samples;
    into.out_of_range += from.out_of_range;
}

// L1 distance between two normalised estimates on a common grid,
// sum_k |rho_a(k) - rho_b(k)| dr, bounded by 2.
inline double l1_distance(const DensityEstimate& a, const DensityEstimate& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("l1_distance: grid mismatch");
    double s = 0.0;
    for (int k = 0; k < a.grid.n_bins(); ++k)
        s += std::abs(a.density(k) - b.density(k)) * a.grid.dr;
    return s;
}

// Same metric against a profile evaluated at bin centers.
template <typename Profile>
double l1_distance(const DensityEstimate& a, const Profile& profile) {
    double s = 0.0;
    for (int k = 0; k < a.grid.n_bins(); ++k)
        s += std::abs(a.density(k) - profile(a.grid.bin_center(k))) * a.grid.dr;
    return s;
}

// And between two profiles on a reference grid.
template <typename ProfileA, typename ProfileB>
double l1_profiles(const ProfileA& pa, const ProfileB& pb, const GridSpec& grid) {
    double s = 0.0;
    for (int k = 0; k < grid.n_bins(); ++k) {
        const double r = grid.bin_center(k);
        s += std::abs(pa(r) - pb(r)) * grid.dr;
    }
    return s;
}

struct IntervalStats {
    double mean = 0.0;
    std::size_t count = 0;
    std::vector<double> intervals;  // sorted, for CDF export

    void write_cdf_csv(std::ostream& os) const {
        os << "tau,cdf\n";
        for (std::size_t i = 0; i < intervals.size(); ++i)
            csv_row(os, intervals[i],
                    static_cast<double>(i + 1) / static_cast<double>(count));
    }
};

inline IntervalStats interval_stats(const std::vector<TransactionEvent>& events) {
    if (events.size() < 2)
        throw std::invalid_argument("interval_stats: need at least 2 events");
    IntervalStats st;
    st.intervals.reserve(events.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 1; i < events.size(); ++i) {
        const double tau = events[i].time - events[i - 1].time;
        if (tau < 0.0)
            throw std::invalid_argument("interval_stats: event times decrease");
        st.intervals.push_back(tau);
        sum += tau;
    }
    st.count = st.intervals.size();
    st.mean = sum / static_cast<double>(st.count);
    std::sort(st.intervals.begin(), st.intervals.end());
    return st;
}

// Least-squares slope of the mean-square displacement over lags in
// [max_lag/10, max_lag] (time units), for a uniformly sampled series of
// (t, z) points. The diffusion constant is slope / 2.
inline double msd_slope(const std::vector<std::pair<double, double>>& series,
                        double max_lag) {
    if (series.size() < 16)
        throw std::invalid_argument("msd_slope: series too short");
    const double dt_s = series[1].first - series[0].first;
    if (!(dt_s > 0.0)) throw std::invalid_argument("msd_slope: degenerate series");
    const auto n = series.size();
    const int lag_hi = static_cast<int>(std::floor(max_lag / dt_s));
    const int lag_lo = std::max(1, lag_hi / 10);
    if (lag_hi < lag_lo + 2)
        throw std::invalid_argument("msd_slope: max_lag too small for sampling step");
    if (n < static_cast<std::size_t>(10 * lag_hi))
        throw std::invalid_argument("msd_slope: series shorter than 10 * max_lag");

    // Overlapping-window MSD estimate per lag, then an affine fit in lag time.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (int lag = lag_lo; lag <= lag_hi; ++lag) {
        double acc = 0.0;
        const std::size_t upto = n - static_cast<std::size_t>(lag);
        for (std::size_t i = 0; i < upto; ++i) {
            const double d = series[i + static_cast<std::size_t>(lag)].second -
                             series[i].second;
            acc += d * d;
        }
        const double msd = acc / static_cast<double>(upto);
        const double x = lag * dt_s;
        sx += x;
        sy += msd;
        sxx += x * x;
        sxy += x * msd;
        ++m;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("msd_slope: degenerate lag range");
    return (m * sxy - sx * sy) / denom;
}

// Probability mass of the normalised estimate carried by bins whose centers
// lie in [r_lo, r_hi).
inline double tail_mass(const DensityEstimate& est, double r_lo, double r_hi) {
    if (!(r_lo < r_hi)) throw std::invalid_argument("tail_mass: need r_lo < r_hi");
    if (r_lo < est.grid.r_min - 1e-12 || r_hi > est.grid.r_max + 1e-12)
        throw std::invalid_argument("tail_mass: range outside grid");
    double s = 0.0;
    for (int k = 0; k < est.grid.n_bins(); ++k) {
        const double c = est.grid.bin_center(k);
        if (c >= r_lo && c < r_hi) s += est.density(k) * est.grid.dr;
    }
    return s;
}

inline void write_density_csv(std::ostream& os, const DensityEstimate& est) {
    os << "r,phi_hat\n";
    for (int k = 0; k < est.grid.n_bins(); ++k)
        csv_row(os, est.grid.bin_center(k), est.density(k));
}

}  // namespace dealersim
