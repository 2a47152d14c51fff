#ifndef GDS_ORACLE_HPP
#define GDS_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gds/generators.hpp"
#include "gds/mw_graph.hpp"

namespace gds {

struct OracleOptions {
    std::uint64_t path_cap = 100'000'000;
    /// Group paths by their common log-ratio lattice instead of walking each
    /// one. Changes cost from (g_max/eps)^D to polynomial in log(1/eps);
    /// requires the edge ratios to share a lattice. Results are identical.
    bool lattice_grouping = false;
    double sim_tol = 1e-12;
};

struct OracleResult {
    double eps = 0.0;
    std::vector<double> per_vertex;             // V_{S_u}(eps)
    double combined = 0.0;                      // sum over vertices
    std::uint64_t paths_expanded = 0;           // paths visited (or covered by grouping)
    std::vector<double> normalized_by_eps_n;    // f_u = V_{S_u}(eps) / eps^n
    std::vector<double> normalized_by_scaling;  // W_u = V_{S_u}(eps) / eps^(n-D)
};

/// Exact inner tube volumes straight from the defining functional equation
///   V_{S_u}(eps) = sum_{v,e in E_uv} r_e^n V_{S_v}(eps/r_e) + V_{G_u}(eps),
/// unrolled over paths and split at saturation:
///   V_{S_u}(eps) = Vol(S_u)
///                + sum over paths a from u with r(a) g_{t(a)} > eps of
///                  r(a)^n (V_{G_{t(a)}}(eps/r(a)) - Vol(G_{t(a)})).
/// A path subtree is pruned once r(a) g_max <= eps: every extension is
/// saturated and contributes a zero correction. Exact up to rounding.
class Oracle {
  public:
    Oracle(MWGraph graph, std::vector<GeneratorProfile> profiles, OracleOptions options = {});

    OracleResult tube_volume(double eps) const;

    /// Oracle over a grid, carrying W_u = V/eps^(n-D) per point.
    std::vector<OracleResult> normalized_scaling_profile(std::span<const double> eps_grid) const;

    double sim_value() const { return d_; }
    const Eigen::VectorXd& total_volumes() const { return vol_s_; }
    double max_inradius() const { return g_max_; }
    const MWGraph& graph() const { return graph_; }
    const std::vector<GeneratorProfile>& profiles() const { return profiles_; }

    /// Correction sum over paths of length <= depth_cap with pruning off.
    /// Matches tube_volume wherever every unsaturated path fits in the cap;
    /// exists to test pruning soundness.
    double correction_without_pruning(int start, double eps, int depth_cap) const;

  private:
    double correction_dfs(int start, double eps, std::uint64_t& visited) const;
    double correction_grouped(int start, double eps, std::uint64_t& visited) const;

    MWGraph graph_;
    std::vector<GeneratorProfile> profiles_;
    OracleOptions options_;
    double d_ = 0.0;
    Eigen::VectorXd vol_s_;
    std::vector<double> inradius_;
    double g_max_ = 0.0;
    // Lattice grouping data: edge exponents k_e with r_e = exp(-k_e * lambda).
    double lattice_lambda_ = 0.0;
    std::vector<int> edge_exponent_;
    bool lattice_ready_ = false;
};

}  // namespace gds

#endif
