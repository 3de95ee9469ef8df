#include "biharm/types.hpp"

#include <cmath>

namespace biharm {

std::string to_string(TerminationKind kind) {
    switch (kind) {
        case TerminationKind::ReachedRmax: return "ReachedRmax";
        case TerminationKind::PositivityLost: return "PositivityLost";
        case TerminationKind::Overflow: return "Overflow";
        case TerminationKind::StepUnderflow: return "StepUnderflow";
    }
    return "Unknown";
}

double Trajectory::log_u(std::size_t i) const {
    const double offset = sample_log_scale.empty() ? 0.0 : sample_log_scale[i];
    return offset + std::log(samples[i].u);
}

}  // namespace biharm
