#include "lobmr/reinit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lobmr {

ReinitDistribution::ReinitDistribution(std::vector<Entry> entries, int n_max)
    : entries_(std::move(entries)), n_max_(n_max) {
    if (entries_.empty())
        throw std::invalid_argument("reinit: at least one support point required");
    double total = 0.0;
    for (const Entry& e : entries_) {
        if (e.n_bid < 1 || e.n_ask < 1)
            throw std::invalid_argument("reinit: support must lie on N* x N* (sizes >= 1)");
        if (e.n_bid > n_max_ || e.n_ask > n_max_) {
            std::ostringstream os;
            os << "reinit: support point (" << e.n_bid << "," << e.n_ask
               << ") exceeds n_max = " << n_max_;
            throw std::invalid_argument(os.str());
        }
        if (!(e.mass >= 0.0))
            throw std::invalid_argument("reinit: masses must be nonnegative");
        total += e.mass;
        max_bid_ = std::max(max_bid_, e.n_bid);
        max_ask_ = std::max(max_ask_, e.n_ask);
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("reinit: masses must sum to 1 (within 1e-12)");
    cum_.resize(entries_.size());
    double c = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        c += entries_[i].mass;
        cum_[i] = c;
    }
}

ReinitDistribution ReinitDistribution::point_mass(int n_bid, int n_ask) {
    return ReinitDistribution({{n_bid, n_ask, 1.0}});
}

std::pair<int, int> ReinitDistribution::sample(CounterRng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    std::size_t i =
        std::min(static_cast<std::size_t>(it - cum_.begin()), entries_.size() - 1);
    return {entries_[i].n_bid, entries_[i].n_ask};
}

} // namespace lobmr
