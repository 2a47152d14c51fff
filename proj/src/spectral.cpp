#include "gds/spectral.hpp"

#include <cmath>

namespace gds {

namespace {
constexpr int kPowerIterationCap = 100'000;
}

double spectral_radius(const Eigen::MatrixXd& m, double tol) {
    const Eigen::Index n = m.rows();
    if (n == 1) return std::abs(m(0, 0));
    // Iterate on M + I: primitive for irreducible nonnegative M, so the
    // 1-norm estimates converge even for periodic graphs.
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    for (int iter = 0; iter < kPowerIterationCap; ++iter) {
        Eigen::VectorXd y = m * x + x;
        const double norm = y.lpNorm<1>();
        if (!(norm > 0.0))
            throw SolverError(ErrorCode::convergence_failure,
                              "power iteration collapsed to the zero vector");
        const double next = norm - 1.0;
        x = y / norm;
        if (iter > 0 && std::abs(next - estimate) < tol) return next;
        estimate = next;
    }
    throw SolverError(ErrorCode::convergence_failure,
                      "power iteration did not converge within " +
                          std::to_string(kPowerIterationCap) + " iterations");
}

SimValue sim_value(const MWGraph& graph, double tol) {
    if (!(tol > 0.0)) throw SolverError(ErrorCode::invalid_argument, "sim_value: tol must be > 0");
    const double inner_tol = tol / 10.0;
    auto rho = [&](double s) { return spectral_radius(graph.matrix_at_real(s), inner_tol); };

    double lo = 0.0;
    const double rho0 = rho(0.0);
    if (rho0 < 1.0 + tol) {
        // A(0) counts edges; an out-degree-1 cycle gives rho exactly 1, D = 0.
        SimValue sv;
        sv.value = 0.0;
        sv.bracket_width = 0.0;
        sv.rho_residual = std::abs(rho0 - 1.0);
        return sv;
    }
    double hi = static_cast<double>(graph.space_dimension());
    int doubling = 0;
    while (rho(hi) >= 1.0) {
        hi *= 2.0;
        if (++doubling > 64)
            throw SolverError(ErrorCode::convergence_failure,
                              "sim_value bracket expansion failed (rho never drops below 1)");
    }

    const double width_target = std::max(1e-15, tol / 100.0);
    for (int iter = 0; iter < 200 && (hi - lo) > width_target; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (rho(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    SimValue sv;
    sv.value = 0.5 * (lo + hi);
    sv.bracket_width = hi - lo;
    sv.rho_residual = std::abs(rho(sv.value) - 1.0);
    if (sv.rho_residual > tol)
        throw SolverError(ErrorCode::convergence_failure,
                          "sim_value residual " + std::to_string(sv.rho_residual) +
                              " exceeds tolerance");
    return sv;
}

Eigen::VectorXd perron_vector(const MWGraph& graph, double d) {
    const Eigen::MatrixXd a = graph.matrix_at_real(d);
    const Eigen::Index n = a.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int iter = 0; iter < kPowerIterationCap; ++iter) {
        Eigen::VectorXd y = a * x + x;
        y /= y.lpNorm<1>();
        const double step = (y - x).lpNorm<1>();
        x = y;
        if (step < 1e-14) break;
    }
    for (Eigen::Index u = 0; u < n; ++u)
        if (!(x(u) > 0.0))
            throw SolverError(ErrorCode::convergence_failure,
                              "Perron vector has a non-positive entry; input not irreducible?");
    const double residual = (a * x - x).lpNorm<1>();
    if (residual > 1e-10)
        throw SolverError(ErrorCode::convergence_failure,
                          "Perron residual " + std::to_string(residual) + " too large; is d the sim-value?");
    return x;
}

Eigen::VectorXd total_volumes(const MWGraph& graph,
                              const std::vector<GeneratorProfile>& profiles) {
    const int n = graph.vertex_count();
    if (static_cast<int>(profiles.size()) != n)
        throw SolverError(ErrorCode::invalid_argument, "one generator profile per vertex required");
    const double dim = graph.space_dimension();
    const Eigen::MatrixXd a = graph.matrix_at_real(dim);
    // rho(A(n)) < 1 is equivalent to D < n (rho is strictly decreasing).
    const double rho = spectral_radius(a, 1e-13);
    if (rho >= 1.0)
        throw SolverError(ErrorCode::infinite_volume,
                          "rho(A(n)) = " + std::to_string(rho) +
                              " >= 1: the spray has infinite total volume (D >= n)");

    Eigen::VectorXd vol_g(n);
    for (int u = 0; u < n; ++u) vol_g(u) = profiles[u].volume();
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - a;
    Eigen::VectorXd x = system.partialPivLu().solve(vol_g);
    const double residual = (system * x - vol_g).lpNorm<1>();
    if (residual > 1e-12 * std::max(1.0, vol_g.lpNorm<1>()))
        throw SolverError(ErrorCode::convergence_failure, "total volume solve residual too large");
    for (int u = 0; u < n; ++u)
        if (!(x(u) > 0.0))
            throw SolverError(ErrorCode::convergence_failure,
                              "total volume vector has a non-positive entry");
    return x;
}

}  // namespace gds
