#ifndef GDS_SPECTRAL_HPP
#define GDS_SPECTRAL_HPP

#include <Eigen/Dense>

#include "gds/generators.hpp"
#include "gds/mw_graph.hpp"

namespace gds {

/// The unique s >= 0 with spectral radius rho(A(s)) = 1.
struct SimValue {
    double value = 0.0;
    double bracket_width = 0.0;  // final bisection bracket
    double rho_residual = 0.0;   // |rho(A(value)) - 1|
};

/// Spectral radius of a nonnegative matrix by power iteration with 1-norm
/// normalization. Iterates on M + I, which is primitive whenever M is
/// irreducible, so periodic graphs converge too. Stops when successive
/// estimates differ by less than tol; iteration cap 1e5.
double spectral_radius(const Eigen::MatrixXd& m, double tol);

/// Bisection on s -> rho(A(s)) - 1. The bracket starts at [0, n] and the
/// right end doubles until rho < 1, so values D >= n are still found.
SimValue sim_value(const MWGraph& graph, double tol = 1e-12);

/// Positive eigenvector p with A(D) p = p, normalized to unit 1-norm.
Eigen::VectorXd perron_vector(const MWGraph& graph, double d);

/// Per-vertex total spray volumes: solves (I - A(n)) x = vol_G, the closed
/// form of the Neumann series. Throws infinite_volume when rho(A(n)) >= 1.
Eigen::VectorXd total_volumes(const MWGraph& graph,
                              const std::vector<GeneratorProfile>& profiles);

}  // namespace gds

#endif
