#pragma once

#include <cstdint>
#include <vector>

#include "lobmr/rng.hpp"

namespace lobmr {

/// Joint law of the (bid, ask) queue sizes drawn right after a price change.
/// Sparse pmf on {1,...,n_max}^2.
class ReinitDistribution {
public:
    struct Entry {
        int n_bid = 1;
        int n_ask = 1;
        double mass = 0.0;
    };

    ReinitDistribution() = default;
    explicit ReinitDistribution(std::vector<Entry> entries, int n_max = kDefaultNMax);

    static ReinitDistribution point_mass(int n_bid, int n_ask);

    const std::vector<Entry>& entries() const { return entries_; }
    int max_bid() const { return max_bid_; }
    int max_ask() const { return max_ask_; }
    int n_max() const { return n_max_; }

    std::pair<int, int> sample(CounterRng& rng) const;

    static constexpr int kDefaultNMax = 50;

private:
    std::vector<Entry> entries_;
    std::vector<double> cum_;
    int max_bid_ = 0;
    int max_ask_ = 0;
    int n_max_ = kDefaultNMax;
};

} // namespace lobmr
