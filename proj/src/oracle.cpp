#include "gds/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gds/exppoly.hpp"
#include "gds/spectral.hpp"

namespace gds {

namespace {

double ipow(double x, int n) {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= x;
    return out;
}

}  // namespace

Oracle::Oracle(MWGraph graph, std::vector<GeneratorProfile> profiles, OracleOptions options)
    : graph_(std::move(graph)), profiles_(std::move(profiles)), options_(options) {
    if (static_cast<int>(profiles_.size()) != graph_.vertex_count())
        throw SolverError(ErrorCode::invalid_argument, "one generator profile per vertex required");
    for (const GeneratorProfile& p : profiles_)
        if (p.space_dimension() != graph_.space_dimension())
            throw SolverError(ErrorCode::invalid_argument,
                              "profile space dimension does not match the graph");
    {
        ValidationReport report = validate_graph(graph_);
        for (std::size_t u = 0; u < profiles_.size(); ++u) {
            ValidationReport pr = validate_profile(profiles_[u]);
            for (const std::string& v : pr.violations)
                report.add("generator \"" + graph_.vertex_name(static_cast<int>(u)) + "\": " + v);
        }
        if (!report.ok())
            throw SolverError(ErrorCode::invalid_argument, report.joined("; "));
    }

    d_ = gds::sim_value(graph_, options_.sim_tol).value;
    vol_s_ = gds::total_volumes(graph_, profiles_);  // throws infinite_volume when D >= n
    inradius_.reserve(profiles_.size());
    for (const GeneratorProfile& p : profiles_) inradius_.push_back(p.inradius());
    g_max_ = *std::max_element(inradius_.begin(), inradius_.end());

    if (options_.lattice_grouping) {
        std::vector<double> logs;
        logs.reserve(graph_.edges().size());
        for (const GraphEdge& e : graph_.edges()) logs.push_back(-e.log_ratio);
        auto ls = common_log_lattice(logs, 1e-9, 64);
        if (!ls)
            throw SolverError(ErrorCode::invalid_argument,
                              "lattice grouping requested but the edge ratios share no lattice");
        lattice_lambda_ = ls->lambda;
        edge_exponent_ = ls->exponents;
        lattice_ready_ = true;
    }
}

double Oracle::correction_dfs(int start, double eps, std::uint64_t& visited) const {
    const int n = graph_.space_dimension();
    const double min_ratio = eps / g_max_;
    PathCursor cursor(graph_, start, min_ratio);
    KahanSum sum;
    while (cursor.advance()) {
        if (cursor.visited() > options_.path_cap) {
            const double predicted = std::pow(g_max_ / eps, d_);
            throw SolverError(ErrorCode::path_budget_exceeded,
                              "path cap " + std::to_string(options_.path_cap) +
                                  " exceeded at eps = " + std::to_string(eps) +
                                  " (expected about " + std::to_string(predicted) + " paths)");
        }
        const double r = cursor.ratio();
        const int v = cursor.terminal();
        if (r * inradius_[v] > eps) {
            const double scaled = ipow(r, n);
            sum.add(scaled * (profiles_[v].tube_volume(eps / r) - profiles_[v].volume()));
        }
    }
    visited += cursor.visited();
    return sum.value();
}

double Oracle::correction_grouped(int start, double eps, std::uint64_t& visited) const {
    const int n = graph_.space_dimension();
    const int verts = graph_.vertex_count();
    const double lambda = lattice_lambda_;
    // largest exponent k with exp(-k lambda) * g_max > eps
    const double k_lim = std::log(g_max_ / eps) / lambda;
    if (k_lim < 0.0) {
        ++visited;  // the empty path is always enumerated
        return 0.0;
    }
    const int k_max = static_cast<int>(std::floor(k_lim)) + 1;

    // counts[k][v]: paths from start to v with total exponent k; exact while
    // below 2^53, far beyond the path cap regime this replaces.
    std::vector<std::vector<double>> counts(static_cast<std::size_t>(k_max) + 1,
                                            std::vector<double>(verts, 0.0));
    counts[0][start] = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        bool any = false;
        for (int v = 0; v < verts; ++v) any = any || counts[k][v] > 0.0;
        if (!any) continue;
        for (std::size_t id = 0; id < graph_.edges().size(); ++id) {
            const GraphEdge& e = graph_.edges()[id];
            const int next = k + edge_exponent_[id];
            if (next <= k_max && counts[k][e.from] > 0.0)
                counts[next][e.to] += counts[k][e.from];
        }
    }

    KahanSum sum;
    double logical_paths = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        const double r = std::exp(-lambda * k);
        // k = 0 is the empty path, enumerated unconditionally by the cursor
        const bool within_budget = k == 0 || r > eps / g_max_;
        for (int v = 0; v < verts; ++v) {
            if (counts[k][v] == 0.0) continue;
            if (within_budget) logical_paths += counts[k][v];
            if (r * inradius_[v] > eps)
                sum.add(counts[k][v] * ipow(r, n) *
                        (profiles_[v].tube_volume(eps / r) - profiles_[v].volume()));
        }
    }
    visited += static_cast<std::uint64_t>(std::min(logical_paths, 1.8e19));
    return sum.value();
}

OracleResult Oracle::tube_volume(double eps) const {
    if (!(eps > 0.0))
        throw SolverError(ErrorCode::invalid_argument, "oracle needs eps > 0");
    const int verts = graph_.vertex_count();
    const int n = graph_.space_dimension();
    OracleResult res;
    res.eps = eps;
    res.per_vertex.resize(verts);
    res.normalized_by_eps_n.resize(verts);
    res.normalized_by_scaling.resize(verts);
    std::uint64_t visited = 0;
    KahanSum combined;
    for (int u = 0; u < verts; ++u) {
        const double correction = lattice_ready_ ? correction_grouped(u, eps, visited)
                                                 : correction_dfs(u, eps, visited);
        res.per_vertex[u] = vol_s_(u) + correction;
        combined.add(res.per_vertex[u]);
        res.normalized_by_eps_n[u] = res.per_vertex[u] / ipow(eps, n);
        res.normalized_by_scaling[u] = res.per_vertex[u] / std::pow(eps, n - d_);
    }
    res.combined = combined.value();
    res.paths_expanded = visited;
    return res;
}

std::vector<OracleResult> Oracle::normalized_scaling_profile(
    std::span<const double> eps_grid) const {
    std::vector<OracleResult> out;
    out.reserve(eps_grid.size());
    for (double eps : eps_grid) out.push_back(tube_volume(eps));
    return out;
}

double Oracle::correction_without_pruning(int start, double eps, int depth_cap) const {
    const int n = graph_.space_dimension();
    KahanSum sum;
    // explicit stack of (vertex, ratio, depth); no ratio pruning at all
    struct State {
        int vertex;
        double ratio;
        int depth;
    };
    std::vector<State> stack{{start, 1.0, 0}};
    while (!stack.empty()) {
        const State s = stack.back();
        stack.pop_back();
        if (s.ratio * inradius_[s.vertex] > eps)
            sum.add(ipow(s.ratio, n) *
                    (profiles_[s.vertex].tube_volume(eps / s.ratio) - profiles_[s.vertex].volume()));
        if (s.depth < depth_cap)
            for (int id : graph_.edges_from(s.vertex)) {
                const GraphEdge& e = graph_.edges()[id];
                stack.push_back({e.to, s.ratio * e.ratio, s.depth + 1});
            }
    }
    return sum.value();
}

}  // namespace gds
