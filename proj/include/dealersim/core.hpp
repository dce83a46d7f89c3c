#pragma once

// Domain types shared by every solver: model parameters, market state,
// transaction events, histogram grids and simulation schedules, plus the
// centre-of-mass / relative-price coordinate change and the transaction rule.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dealersim {

// Physical parameters of the dealer model. All traders share the spread L;
// midprices diffuse with variance sigma2 per unit time; u2 is the strength
// of the midprice-attraction potential U(r) = u2 r^2 / 2 (0 disables it).
struct ModelParams {
    int n_traders = 2;
    double spread = 2.0;   // L, price
    double sigma2 = 1.0;   // price^2 / time
    double u2 = 0.0;       // 1 / time

    ModelParams() = default;
    ModelParams(int n, double L, double s2, double u2_ = 0.0)
        : n_traders(n), spread(L), sigma2(s2), u2(u2_) {
        validate();
    }

    void validate() const {
        if (n_traders < 2)
            throw std::invalid_argument("ModelParams: need at least 2 traders");
        if (!(spread > 0.0))
            throw std::invalid_argument("ModelParams: spread L must be > 0");
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("ModelParams: sigma2 must be > 0");
        if (!(u2 >= 0.0))
            throw std::invalid_argument("ModelParams: u2 must be >= 0");
    }

    // Centre-of-mass noise variance for the two-body case, sigma_cm^2 = sigma^2/2.
    double sigma_cm2() const { return sigma2 / 2.0; }
    double sigma() const { return std::sqrt(sigma2); }
    double sigma_cm() const { return std::sqrt(sigma_cm2()); }
};

// Midprices of all traders at a given time.
struct MarketState {
    std::vector<double> midprices;
    double time = 0.0;

    int n_traders() const { return static_cast<int>(midprices.size()); }

    double com() const {
        double sum = 0.0;
        for (double z : midprices) sum += z;
        return sum / static_cast<double>(midprices.size());
    }
};

struct TransactionEvent {
    double time = 0.0;
    int buyer_index = 0;
    int seller_index = 0;
    double price = 0.0;
    int taker_index = 0;
};

// Uniform binning over [r_min, r_max), left-closed right-open bins of width dr.
struct GridSpec {
    double r_min = -3.0;
    double r_max = 3.0;
    double dr = 1e-2;

    GridSpec() = default;
    GridSpec(double lo, double hi, double width) : r_min(lo), r_max(hi), dr(width) {
        validate();
    }

    void validate() const {
        if (!(dr > 0.0)) throw std::invalid_argument("GridSpec: dr must be > 0");
        if (!(r_max > r_min))
            throw std::invalid_argument("GridSpec: r_max must exceed r_min");
        const double ratio = (r_max - r_min) / dr;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            throw std::invalid_argument(
                "GridSpec: (r_max - r_min) must be an integer multiple of dr");
        if (std::llround(ratio) < 8)
            throw std::invalid_argument("GridSpec: need at least 8 bins");
    }

    int n_bins() const { return static_cast<int>(std::llround((r_max - r_min) / dr)); }

    // Bin index for a sample, or -1 when the sample falls outside [r_min, r_max).
    // Membership is decided on r itself; the index uses multiplication by the
    // reciprocal width (hot loops hoist the same reciprocal) with a clamp
    // guarding against ulp-level rounding at the top edge.
    int bin_index(double r) const {
        if (!(r >= r_min && r < r_max)) return -1;
        const int n = n_bins();
        const int k = static_cast<int>((r - r_min) * (1.0 / dr));
        return k >= n ? n - 1 : k;
    }

    double bin_left(int k) const { return r_min + k * dr; }
    double bin_center(int k) const { return r_min + (k + 0.5) * dr; }

    // Index of the node r_k = r_min + k dr coinciding with r, or -1 if r is not
    // a node to within 1e-9 relative. ML solving requires 0 and +-L/2 as nodes.
    int node_index(double r) const {
        const double pos = (r - r_min) / dr;
        const double rounded = std::round(pos);
        if (std::abs(pos - rounded) > 1e-9 * std::max(1.0, std::abs(pos))) return -1;
        if (rounded < 0.0 || rounded > static_cast<double>(n_bins())) return -1;
        return static_cast<int>(rounded);
    }

    bool operator==(const GridSpec& o) const {
        return r_min == o.r_min && r_max == o.r_max && dr == o.dr;
    }
};

// Time discretisation and run horizon: the simulation covers [-t_init, t_end)
// and samples are kept for t >= 0 only.
struct SimSchedule {
    double dt = 1e-4;
    double t_init = 20.0;
    double t_end = 1e4;
    std::uint64_t seed = 12345;
    int n_runs = 1;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SimSchedule: dt must be > 0");
        if (!(t_init >= 0.0))
            throw std::invalid_argument("SimSchedule: t_init must be >= 0");
        if (!(t_end > 0.0))
            throw std::invalid_argument("SimSchedule: t_end must be > 0");
        if (n_runs < 1) throw std::invalid_argument("SimSchedule: n_runs must be >= 1");
    }

    // Keeps the per-step displacement well below the spread.
    void validate_against(const ModelParams& p) const {
        validate();
        const double cap = 1e-2 * std::min(1.0, p.spread * p.spread / p.sigma2);
        if (dt > cap)
            throw std::invalid_argument(
                "SimSchedule: dt " + std::to_string(dt) +
                " violates stability guard dt <= " + std::to_string(cap));
    }
};

// (z1, z2) -> (z_cm, r) with z_cm = (z1+z2)/2 and r = (z1-z2)/2. Two-body only.
inline std::pair<double, double> to_cm_relative(const MarketState& state) {
    if (state.n_traders() != 2)
        throw std::invalid_argument("to_cm_relative: defined for exactly 2 traders");
    const double z1 = state.midprices[0];
    const double z2 = state.midprices[1];
    return {(z1 + z2) / 2.0, (z1 - z2) / 2.0};
}

inline MarketState from_cm_relative(double z_cm, double r, double time = 0.0) {
    return MarketState{{z_cm + r, z_cm - r}, time};
}

struct TransactionOutcome {
    double zi_new = 0.0;
    double zj_new = 0.0;
    double price = 0.0;
};

// Requote rule: both parties jump to the common midpoint, which is also the
// transaction price. The pair's centre of mass is preserved bit-exactly
// because all three outputs are the same expression.
inline TransactionOutcome resolve_transaction(double zi, double zj, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("resolve_transaction: L must be > 0");
    if (std::abs(zi - zj) < L)
        throw std::invalid_argument(
            "resolve_transaction: no transaction, |zi - zj| < L");
    const double mid = (zi + zj) / 2.0;
    return {mid, mid, mid};
}

}  // namespace dealersim
