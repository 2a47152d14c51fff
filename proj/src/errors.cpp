#include "gds/errors.hpp"

namespace gds {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "InvalidArgument";
        case ErrorCode::pole_proximity: return "PoleProximity";
        case ErrorCode::dominance_unavailable: return "DominanceUnavailable";
        case ErrorCode::boundary_zero: return "BoundaryZero";
        case ErrorCode::isolation_failure: return "IsolationFailure";
        case ErrorCode::higher_order_pole: return "HigherOrderPole";
        case ErrorCode::pole_collision: return "PoleCollision";
        case ErrorCode::degenerate_pole: return "DegeneratePole";
        case ErrorCode::infinite_volume: return "InfiniteVolume";
        case ErrorCode::hypothesis_violation: return "HypothesisViolation";
        case ErrorCode::path_budget_exceeded: return "PathBudgetExceeded";
        case ErrorCode::convergence_failure: return "ConvergenceFailure";
        case ErrorCode::dimension_cap: return "DimensionCap";
        case ErrorCode::parse_error: return "ParseError";
    }
    return "UnknownError";
}

std::string ValidationReport::joined(const std::string& sep) const {
    std::string out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i > 0) out += sep;
        out += violations[i];
    }
    return out;
}

}  // namespace gds
