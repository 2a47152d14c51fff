#ifndef GDS_REPORT_HPP
#define GDS_REPORT_HPP

#include <span>
#include <string>

#include "gds/dimensions.hpp"

namespace gds {

/// Full-precision float formatting (17 significant digits), used everywhere a
/// machine-readable value is emitted so output is byte-reproducible.
std::string format_full(double x);

/// 6 significant digits, for human tables.
std::string format_human(double x);

struct SweepRow {
    double eps = 0.0;
    double v_formula = 0.0;
    double v_oracle = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool within_bound = false;
};

/// CSV with header `eps,v_formula,v_oracle,abs_err,rel_err,within_bound`,
/// one row per grid point, within_bound as 1/0.
std::string sweep_csv(std::span<const SweepRow> rows);

/// JSON document for a dimension set: method, strip, lattice metadata when
/// present, zeros sorted by (Im, Re).
std::string dims_json(const ComplexDimensionSet& dims);

}  // namespace gds

#endif
