#pragma once

#include <optional>
#include <string>

#include "lobmr/kernel.hpp"
#include "lobmr/reinit.hpp"

namespace lobmr {

/// Full model specification: both side kernels, the reinitialization laws f
/// (after an up-move) and f~ (after a down-move), the optional initial-period
/// law f0, and the tick size.
struct ModelSpec {
    MarkovRenewalKernelSide bid;
    MarkovRenewalKernelSide ask;
    ReinitDistribution reinit_up;    // f
    ReinitDistribution reinit_down;  // f~
    std::optional<ReinitDistribution> reinit_initial; // f0, defaults to f
    double tick = 0.01;

    const ReinitDistribution& f0() const {
        return reinit_initial ? *reinit_initial : reinit_up;
    }
    const MarkovRenewalKernelSide& side(Side s) const {
        return s == Side::Bid ? bid : ask;
    }

    ValidationReport validate() const;
};

inline constexpr int kModelSchemaVersion = 1;

/// Strict JSON I/O: unknown keys are rejected, schema_version is checked.
/// Duration entries are keyed "pp", "pm", "mp", "mm" (first letter: previous
/// event, second: next; p = +1, m = -1).
ModelSpec model_from_json_text(const std::string& text);
ModelSpec load_model(const std::string& path);
std::string model_to_json_text(const ModelSpec& m);
void save_model(const ModelSpec& m, const std::string& path);

} // namespace lobmr
