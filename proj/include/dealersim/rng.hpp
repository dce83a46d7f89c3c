#pragma once

// Self-contained pseudo-random machinery: xoshiro256++ over splitmix64 seeding,
// plus a 256-layer ziggurat for standard normal draws. Everything here is pure
// integer/double arithmetic, so streams are reproducible across platforms and
// independent of the C++ standard library's distribution internals.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

namespace dealersim {

// splitmix64 finaliser (Vigna). Used both as a seed expander and as the
// ensemble seed-derivation rule: child i of master seed s is
// derive_seed(s, i), which is insensitive to the order runs are launched in.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(s);
}

// xoshiro256++ (Blackman & Vigna, public domain reference implementation).
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53 significant bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> state_;
};

// Standard normal draws via the ziggurat (256 layers, ZIGNOR constants).
// One 64-bit word serves layer index (8 bits), sign (1 bit) and mantissa
// (53 bits) per attempt; rejections draw fresh words. Tables are stored
// per instance with the mantissa scale folded in, which keeps the common
// path at a handful of instructions.
class GaussianZiggurat {
public:
    static constexpr int kLayers = 256;
    static constexpr double kR = 3.6541528853610088;   // tail start
    static constexpr double kV = 4.92867323399e-3;     // common layer area

    explicit GaussianZiggurat(std::uint64_t seed) : gen_(seed) {
        auto gauss = [](double t) { return std::exp(-0.5 * t * t); };
        std::array<double, kLayers + 1> x{};
        x[1] = kR;
        x[0] = kV / gauss(kR);  // virtual base strip with the same area
        for (int i = 2; i <= kLayers; ++i)
            x[i] = std::sqrt(-2.0 * std::log(kV / x[i - 1] + gauss(x[i - 1])));
        x[kLayers] = 0.0;
        for (int i = 0; i < kLayers; ++i) {
            xscaled_[i] = x[i] * 0x1.0p-53;
            xnext_[i] = x[i + 1];
        }
        for (int i = 0; i <= kLayers; ++i) f_[i] = gauss(x[i]);
    }

    double operator()() {
        const std::uint64_t bits = gen_.next();
        const int layer = static_cast<int>(bits & 0xFF);
        const double x = static_cast<double>(bits >> 11) * xscaled_[layer];
        const std::uint64_t sign = (bits << 55) & 0x8000000000000000ULL;
        if (x < xnext_[layer])
            return std::bit_cast<double>(std::bit_cast<std::uint64_t>(x) ^ sign);
        return std::bit_cast<double>(
            std::bit_cast<std::uint64_t>(reject(layer, x)) ^ sign);
    }

    std::uint64_t next_bits() { return gen_.next(); }
    double uniform() { return gen_.uniform(); }

private:
    // Wedge and tail handling, off the hot path.
    __attribute__((noinline)) double reject(int layer, double x) {
        for (;;) {
            if (layer == 0) {
                // Marsaglia tail algorithm for |x| > R.
                for (;;) {
                    const double u1 = gen_.uniform();
                    const double u2 = gen_.uniform();
                    if (u1 <= 0.0 || u2 <= 0.0) continue;
                    const double a = -std::log(u1) / kR;
                    const double b = -std::log(u2);
                    if (b + b >= a * a) return kR + a;
                }
            }
            const double y = f_[layer] + gen_.uniform() * (f_[layer + 1] - f_[layer]);
            if (y < std::exp(-0.5 * x * x)) return x;
            const std::uint64_t bits = gen_.next();
            layer = static_cast<int>(bits & 0xFF);
            x = static_cast<double>(bits >> 11) * xscaled_[layer];
            if (x < xnext_[layer]) return x;
        }
    }

    Xoshiro256pp gen_;
    std::array<double, kLayers> xscaled_{};
    std::array<double, kLayers> xnext_{};
    std::array<double, kLayers + 1> f_{};
};

}  // namespace dealersim
