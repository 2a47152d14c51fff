#include "gds/numeric.hpp"

#include <stdexcept>

namespace gds {

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> pts(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < n; ++k)
        pts[k] = std::exp(llo + (lhi - llo) * k / (n - 1));
    pts.front() = lo;
    pts.back() = hi;
    return pts;
}

std::vector<double> log_grid_open(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 1) throw std::invalid_argument("log_grid_open: bad range");
    std::vector<double> pts(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < n; ++k)
        pts[k] = std::exp(llo + (lhi - llo) * (k + 1) / (n + 1));
    return pts;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (!(hi > lo) || n < 2) throw std::invalid_argument("linear_grid: bad range");
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        pts[k] = lo + (hi - lo) * k / (n - 1);
    pts.front() = lo;
    pts.back() = hi;
    return pts;
}

}  // namespace gds
