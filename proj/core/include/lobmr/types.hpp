#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lobmr {

using cplx = std::complex<double>;

/// Book event type: +1 limit-order arrival (queue grows), -1 market order or
/// cancellation (queue shrinks).
enum class EventType : int {
    Arrival = +1,
    Departure = -1,
};

/// Matrix index convention used everywhere: row/col 0 <-> +1, row/col 1 <-> -1.
inline constexpr int idx(EventType e) { return e == EventType::Arrival ? 0 : 1; }

inline constexpr EventType event_from_index(int i) {
    return i == 0 ? EventType::Arrival : EventType::Departure;
}

inline constexpr EventType event_from_sign(int s) {
    return s > 0 ? EventType::Arrival : EventType::Departure;
}

inline constexpr int sign(EventType e) { return static_cast<int>(e); }

enum class Side : int { Bid = 0, Ask = 1 };

inline const char* to_string(Side s) { return s == Side::Bid ? "bid" : "ask"; }

/// 2x2 matrix indexed by (previous event, next event).
template <typename T>
using EventMatrix = std::array<std::array<T, 2>, 2>;

} // namespace lobmr
