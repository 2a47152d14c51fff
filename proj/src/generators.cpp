#include "gds/generators.hpp"

#include <algorithm>
#include <cmath>

namespace gds {

namespace {
constexpr double kPoleRadius = 1e-9;  // no Mellin evaluation closer to an integer pole
}

GeneratorProfile::GeneratorProfile(int space_dimension, std::vector<ProfilePiece> pieces,
                                   double volume)
    : n_(space_dimension), pieces_(std::move(pieces)), volume_(volume) {
    if (n_ < 1) throw SolverError(ErrorCode::invalid_argument, "space dimension must be >= 1");
    if (pieces_.empty())
        throw SolverError(ErrorCode::invalid_argument, "profile needs at least one piece");
    for (const ProfilePiece& p : pieces_) {
        if (static_cast<int>(p.coefficients.size()) != n_ + 1)
            throw SolverError(ErrorCode::invalid_argument,
                              "each piece needs exactly n+1 coefficients");
        if (!std::isfinite(p.breakpoint))
            throw SolverError(ErrorCode::invalid_argument, "non-finite breakpoint");
    }
    if (!std::isfinite(volume_))
        throw SolverError(ErrorCode::invalid_argument, "non-finite volume");

    // Differences k_i^m - k_i^{m+1} with the sentinel piece (0,...,0,Vol).
    std::vector<double> sentinel(static_cast<std::size_t>(n_) + 1, 0.0);
    sentinel[n_] = volume_;
    mellin_deltas_.resize(pieces_.size());
    for (std::size_t m = 0; m < pieces_.size(); ++m) {
        const std::vector<double>& next =
            (m + 1 < pieces_.size()) ? pieces_[m + 1].coefficients : sentinel;
        mellin_deltas_[m].resize(static_cast<std::size_t>(n_) + 1);
        for (int i = 0; i <= n_; ++i)
            mellin_deltas_[m][i] = pieces_[m].coefficients[i] - next[i];
    }
}

double GeneratorProfile::tube_volume(double eps) const {
    if (eps < 0.0)
        throw SolverError(ErrorCode::invalid_argument, "tube volume needs eps >= 0");
    if (eps >= inradius()) return volume_;
    const ProfilePiece* piece = &pieces_.back();
    for (const ProfilePiece& p : pieces_) {
        if (eps <= p.breakpoint) {
            piece = &p;
            break;
        }
    }
    double v = 0.0;
    for (int i = 0; i <= n_; ++i) v += piece->coefficients[i] * std::pow(eps, n_ - i);
    return v;
}

Complex GeneratorProfile::mellin_transform(Complex s) const {
    for (int i = 0; i <= n_; ++i)
        if (std::abs(s - Complex(static_cast<double>(i), 0.0)) < kPoleRadius)
            throw SolverError(ErrorCode::pole_proximity,
                              "Mellin transform sampled within 1e-9 of the pole s = " +
                                  std::to_string(i));
    Complex sum = 0.0;
    for (std::size_t m = 0; m < pieces_.size(); ++m) {
        const double g = pieces_[m].breakpoint;
        const double lg = std::log(g);
        for (int i = 0; i <= n_; ++i) {
            const double c = mellin_deltas_[m][i];
            if (c == 0.0) continue;
            sum += c * std::exp((s - static_cast<double>(i)) * lg) / (s - static_cast<double>(i));
        }
    }
    return sum;
}

double GeneratorProfile::mellin_integer_residue(int i) const {
    if (i < 0 || i > n_)
        throw SolverError(ErrorCode::invalid_argument, "Mellin residue index out of 0..n");
    double r = 0.0;
    for (const auto& delta : mellin_deltas_) r += delta[i];
    return r;
}

ValidationReport validate_profile(const GeneratorProfile& profile) {
    ValidationReport report;
    const int n = profile.space_dimension();
    const auto& pieces = profile.pieces();
    const double vol = profile.volume();
    const double scale = std::max(1.0, std::abs(vol));
    const double ctol = 1e-9 * scale;

    if (!(vol > 0.0)) report.add("volume must be positive, got " + std::to_string(vol));

    double prev = 0.0;  // implicit g_0 = 0
    for (std::size_t m = 0; m < pieces.size(); ++m) {
        if (!(pieces[m].breakpoint > prev))
            report.add("piece " + std::to_string(m + 1) + ": breakpoint " +
                       std::to_string(pieces[m].breakpoint) + " not strictly increasing");
        prev = pieces[m].breakpoint;
    }

    if (std::abs(pieces.front().coefficients[n]) > 1e-12 * scale)
        report.add("ZeroLimitViolation: first piece has constant coefficient " +
                   std::to_string(pieces.front().coefficients[n]) + ", so V(0) != 0");

    auto piece_value = [&](const ProfilePiece& p, double eps) {
        double v = 0.0;
        for (int i = 0; i <= n; ++i) v += p.coefficients[i] * std::pow(eps, n - i);
        return v;
    };
    for (std::size_t m = 0; m + 1 < pieces.size(); ++m) {
        const double g = pieces[m].breakpoint;
        const double left = piece_value(pieces[m], g);
        const double right = piece_value(pieces[m + 1], g);
        if (std::abs(left - right) > ctol)
            report.add("ContinuityViolation at breakpoint " + std::to_string(g) + ": " +
                       std::to_string(left) + " vs " + std::to_string(right));
    }
    {
        const double g = pieces.back().breakpoint;
        const double left = piece_value(pieces.back(), g);
        if (std::abs(left - vol) > ctol)
            report.add("ContinuityViolation at inradius " + std::to_string(g) + ": V(g) = " +
                       std::to_string(left) + " vs volume " + std::to_string(vol));
    }

    // Monotonicity by dense sampling; a violation signals bad input.
    if (report.ok()) {
        const double g = profile.inradius();
        const int samples = 10'000;
        double last = profile.tube_volume(0.0);
        for (int k = 1; k <= samples; ++k) {
            const double eps = g * k / samples;
            const double v = profile.tube_volume(eps);
            if (v < last - 1e-12 * scale) {
                report.add("tube volume decreasing near eps = " + std::to_string(eps));
                break;
            }
            last = v;
        }
    }
    return report;
}

}  // namespace gds
