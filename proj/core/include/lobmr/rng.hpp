#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace lobmr {

/// SplitMix64 output function. Bijective 64-bit mixer, used both as a stream
/// derivation hash and as the core of the counter-based generator below.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a child stream key from a master seed and a list of tags
/// (run index, side, period, ...). Order-sensitive.
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::initializer_list<std::uint64_t> tags) {
    std::uint64_t k = splitmix64(master ^ 0x6a09e667f3bcc908ULL);
    for (std::uint64_t t : tags)
        k = splitmix64(k ^ splitmix64(t + 0x3c6ef372fe94f82bULL));
    return k;
}

/// Counter-based generator: state is (key, counter); each draw mixes
/// key + counter * golden ratio. Streams with distinct keys are independent
/// for Monte Carlo purposes, and a stream's output depends only on its key
/// and how many draws were made from it, never on scheduling.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key = 0) : key_(key), counter_(0) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1], safe as a log() argument.
    double uniform_pos() { return 1.0 - uniform(); }

    std::uint64_t key() const { return key_; }
    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace lobmr
