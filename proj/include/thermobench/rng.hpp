#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace thermobench {

// Counter-based generator built on the splitmix64 finalizer. State is a
// (key, counter) pair, so a given seed produces the same stream on every
// platform regardless of call history elsewhere. Used for everything that
// must be reproducible: synthetic data, shuffles, init, dropout, bootstrap.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Stateless access: value at an arbitrary counter position.
    static std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
        return mix(key ^ (counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    }

    // Derive an independent stream key (per country, per tree, per seed ...).
    static std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
        return mix(key ^ mix(index + 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t next_u64() { return at(key_, counter_++); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_double_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Box-Muller without a cached spare, so consumption stays counter-aligned.
    double next_gaussian() {
        const double u = next_double_open();
        const double v = next_double();
        return std::sqrt(-2.0 * std::log(u)) *
               std::cos(2.0 * std::numbers::pi * v);
    }

    // Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Multiply-shift rejection-free mapping; bias is < 2^-53 for n << 2^53.
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace thermobench
