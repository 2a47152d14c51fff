#ifndef GDS_NUMERIC_HPP
#define GDS_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <vector>

namespace gds {

using Complex = std::complex<double>;

/// b^s for real b > 0 and complex s, via exp(s ln b).
inline Complex real_base_pow(double base, Complex s) {
    return std::exp(s * std::log(base));
}

/// Kahan compensated accumulator for long oscillatory sums.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// n geometrically spaced points including both endpoints (n >= 2).
std::vector<double> log_grid(double lo, double hi, int n);

/// n geometrically spaced points strictly inside (lo, hi), at log-fractions
/// (k+1)/(n+1).
std::vector<double> log_grid_open(double lo, double hi, int n);

/// n linearly spaced points including both endpoints (n >= 2).
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace gds

#endif
