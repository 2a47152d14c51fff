#ifndef GDS_ERRORS_HPP
#define GDS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace gds {

/// Failure categories surfaced by the solvers. CLI maps these to exit code 2.
enum class ErrorCode {
    invalid_argument,
    pole_proximity,
    dominance_unavailable,
    boundary_zero,
    isolation_failure,
    higher_order_pole,
    pole_collision,
    degenerate_pole,
    infinite_volume,
    hypothesis_violation,
    path_budget_exceeded,
    convergence_failure,
    dimension_cap,
    parse_error,
};

const char* error_code_name(ErrorCode code);

class SolverError : public std::runtime_error {
  public:
    SolverError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

/// Collected constraint violations. Empty means the object is valid.
/// Validation never throws; callers decide what a dirty report means.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string message) { violations.push_back(std::move(message)); }
    std::string joined(const std::string& sep = "\n") const;
};

}  // namespace gds

#endif
