#include "lobmr/kernel.hpp"

#include <cmath>
#include <sstream>

namespace lobmr {

bool ValidationReport::has_hard_error() const {
    for (const auto& i : issues)
        if (i.hard) return true;
    return false;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& i : issues)
        os << (i.hard ? "error" : "invalid") << " [" << i.code << "] " << i.message << "\n";
    return os.str();
}

double MarkovRenewalKernelSide::h1() const {
    return h_mean(EventType::Arrival, EventType::Arrival) +
           h_mean(EventType::Departure, EventType::Departure);
}

double MarkovRenewalKernelSide::h2() const {
    return h_mean(EventType::Departure, EventType::Arrival) +
           h_mean(EventType::Arrival, EventType::Departure);
}

double MarkovRenewalKernelSide::max_mean_duration() const {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, H[i][j].mean());
    return m;
}

ValidationReport validate_side(const MarkovRenewalKernelSide& k) {
    ValidationReport rep;
    auto add = [&](std::string code, std::string msg, bool hard = false) {
        rep.issues.push_back({std::move(code), std::move(msg), hard});
    };

    for (int i = 0; i < 2; ++i) {
        double row = 0.0;
        for (int j = 0; j < 2; ++j) {
            const double p = k.P[i][j];
            if (!(p > 0.0 && p < 1.0)) {
                std::ostringstream os;
                os << "P(" << (i == 0 ? "1" : "-1") << "," << (j == 0 ? "1" : "-1")
                   << ") = " << p << " violates 0 < P(i,j) < 1";
                add("A1", os.str());
            }
            row += p;
        }
        if (std::abs(row - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "row " << (i == 0 ? "+1" : "-1") << " not stochastic (sum = " << row << ")";
            add("row-stochastic", os.str());
        }
    }

    const double p11 = k.P[0][0];
    const double pmm = k.P[1][1];
    if (p11 - pmm > 1e-12) {
        std::ostringstream os;
        os << "transience: P(1,1) = " << p11 << " > P(-1,-1) = " << pmm
           << "; depletion has probability < 1";
        add("transience", os.str(), /*hard=*/true);
    }

    if (!(k.v0_up >= 0.0 && k.v0_up <= 1.0))
        add("v0", "v0(+1) must lie in [0,1]");

    static const char* lbl[2] = {"1", "-1"};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            try {
                k.H[i][j].check();
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "H(" << lbl[i] << "," << lbl[j] << "): " << e.what();
                add("duration", os.str());
            }
        }
    return rep;
}

std::pair<double, double> duration_moments(const DurationDistribution& d) {
    return {d.mean(), d.second_moment()};
}

} // namespace lobmr
