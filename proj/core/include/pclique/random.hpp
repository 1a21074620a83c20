#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace pclique {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Folds a list of tags into a base seed. derive_seed(b, {c, r}) names the
/// stream for replicate r of configuration c; distinct tag lists give
/// (with overwhelming probability) unrelated streams.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) noexcept;

/// Counter-based generator: the i-th output is mix64(key + i * golden), so a
/// stream is fully determined by its key and never depends on scheduling.
/// All variate generation is implemented here rather than through <random>
/// distributions, whose output is implementation-defined.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform on (0, 1).
    double uniform_open() noexcept;

    /// Uniform integer on [0, bound); bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept;

    double standard_normal() noexcept;

    /// Gamma(shape, 1) by Marsaglia-Tsang; shape > 0.
    double gamma(double shape) noexcept;

    /// Fills out with a Dirichlet(concentration) draw; both spans have equal size.
    void dirichlet(std::span<const double> concentration, std::span<double> out) noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Fisher-Yates shuffle driven by a RandomStream (portable, unlike std::shuffle).
template <typename T>
void shuffle(std::span<T> values, RandomStream& rng) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_index(i));
        using std::swap;
        swap(values[i - 1], values[j]);
    }
}

}  // namespace pclique
