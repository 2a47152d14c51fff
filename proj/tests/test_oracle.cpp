#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gds/oracle.hpp"
#include "gds/spectral.hpp"
#include "support/reference.hpp"

using namespace gds;
using testsupport::cantor_graph;
using testsupport::cantor_profiles;
using testsupport::cantor_tube_volume_exact;
using testsupport::two_node_graph;
using testsupport::two_node_profiles;

TEST_CASE("Cantor string spot values") {
    const Oracle oracle(cantor_graph(), cantor_profiles());
    CHECK(std::abs(oracle.tube_volume(1.0 / 6.0).combined - 1.0) <= 1e-12);
    CHECK(std::abs(oracle.tube_volume(1.0 / 18.0).combined - 7.0 / 9.0) <= 1e-12);
    CHECK(oracle.tube_volume(0.5).combined == doctest::Approx(1.0));
}

TEST_CASE("Cantor oracle equals the interval-counting formula everywhere") {
    const Oracle oracle(cantor_graph(), cantor_profiles());
    for (double eps : log_grid(1e-5, 0.4, 40))
        CHECK(std::abs(oracle.tube_volume(eps).combined - cantor_tube_volume_exact(eps)) <=
              1e-12 * cantor_tube_volume_exact(eps));
}

TEST_CASE("two-node system saturates to the total volumes") {
    const Oracle oracle(two_node_graph(), two_node_profiles());
    for (double eps : {std::sqrt(2.0) / 2.0, 0.8, 2.0}) {
        const OracleResult r = oracle.tube_volume(eps);
        CHECK(std::abs(r.per_vertex[0] - 4.0) <= 1e-10);
        CHECK(std::abs(r.per_vertex[1] - 2.0) <= 1e-10);
    }
    // and the saturation values are exactly total_volumes
    const Eigen::VectorXd vols = total_volumes(two_node_graph(), two_node_profiles());
    const OracleResult r = oracle.tube_volume(1.5);
    CHECK(r.per_vertex[0] == doctest::Approx(vols(0)).epsilon(1e-14));
    CHECK(r.per_vertex[1] == doctest::Approx(vols(1)).epsilon(1e-14));
}

TEST_CASE("path counts reported for the Cantor string") {
    const Oracle oracle(cantor_graph(), cantor_profiles());
    // pruning keeps paths with r > 6 eps: at eps = 1/20 that is the empty
    // path plus the two length-1 paths; at eps >= 1/6 only the empty path
    CHECK(oracle.tube_volume(1.0 / 20.0).paths_expanded == 3);
    CHECK(oracle.tube_volume(0.5).paths_expanded == 1);
}

TEST_CASE("functional equation self-consistency") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> log_eps(std::log(1e-3), std::log(0.5));
    for (const auto& [graph, profiles] :
         {std::pair{two_node_graph(), two_node_profiles()},
          std::pair{cantor_graph(), cantor_profiles()}}) {
        const Oracle oracle(graph, profiles);
        for (int trial = 0; trial < 20; ++trial) {
            const double eps = std::exp(log_eps(rng));
            const OracleResult at_eps = oracle.tube_volume(eps);
            for (int u = 0; u < graph.vertex_count(); ++u) {
                double rhs = profiles[u].tube_volume(eps);
                for (int id : graph.edges_from(u)) {
                    const GraphEdge& e = graph.edges()[id];
                    const double scaled =
                        std::pow(e.ratio, graph.space_dimension()) *
                        oracle.tube_volume(eps / e.ratio).per_vertex[e.to];
                    rhs += scaled;
                }
                CHECK(std::abs(at_eps.per_vertex[u] - rhs) <= 1e-10 * at_eps.per_vertex[u]);
            }
        }
    }
}

TEST_CASE("oracle is nondecreasing in eps") {
    const Oracle oracle(two_node_graph(), two_node_profiles());
    double last = 0.0;
    for (double eps : log_grid(1e-3, 1.0, 60)) {
        const double v = oracle.tube_volume(eps).combined;
        CHECK(v >= last - 1e-13);
        last = v;
    }
}

TEST_CASE("pruned and unpruned corrections agree where both are defined") {
    const Oracle oracle(two_node_graph(), two_node_profiles());
    const Eigen::VectorXd vols = oracle.total_volumes();
    // every ratio is <= 1/2, so paths longer than log2(g_max/eps) are all
    // saturated and a depth cap of 7 already covers eps >= 0.02; the cap has
    // to stay small because disabling pruning is exponential in depth
    for (double eps : {0.02, 0.05, 0.2}) {
        for (int u = 0; u < 2; ++u) {
            const double pruned = oracle.tube_volume(eps).per_vertex[u] - vols(u);
            const double unpruned = oracle.correction_without_pruning(u, eps, 7);
            CHECK(std::abs(pruned - unpruned) <= 1e-13 * (1.0 + std::abs(pruned)));
        }
    }
}

TEST_CASE("the path budget aborts with a diagnostic") {
    OracleOptions opts;
    opts.path_cap = 100;
    const Oracle oracle(two_node_graph(), two_node_profiles(), opts);
    CHECK_THROWS_AS(oracle.tube_volume(1e-4), SolverError);
    try {
        oracle.tube_volume(1e-4);
    } catch (const SolverError& e) {
        CHECK(e.code() == ErrorCode::path_budget_exceeded);
        CHECK(std::string(e.what()).find("eps") != std::string::npos);
    }
}

TEST_CASE("lattice grouping changes cost, not results") {
    OracleOptions grouped;
    grouped.lattice_grouping = true;
    for (const auto& [graph, profiles] :
         {std::pair{two_node_graph(), two_node_profiles()},
          std::pair{cantor_graph(), cantor_profiles()}}) {
        const Oracle plain(graph, profiles);
        const Oracle fast(graph, profiles, grouped);
        for (double eps : log_grid(1e-3, 0.5, 12)) {
            const OracleResult a = plain.tube_volume(eps);
            const OracleResult b = fast.tube_volume(eps);
            CHECK(a.paths_expanded == b.paths_expanded);
            for (int u = 0; u < graph.vertex_count(); ++u)
                CHECK(std::abs(a.per_vertex[u] - b.per_vertex[u]) <=
                      1e-12 * (1.0 + a.per_vertex[u]));
        }
    }
}

TEST_CASE("grouping requires a lattice of edge ratios") {
    const MWGraph g({"a"}, {{0, 0, 0.5, 0.0}, {0, 0, 1.0 / 3.0, 0.0}}, 1);
    const GeneratorProfile interval(1, {{0.05, {2.0, 0.0}}}, 0.1);
    OracleOptions grouped;
    grouped.lattice_grouping = true;
    CHECK_THROWS_AS(Oracle(g, {interval}, grouped), SolverError);
}

TEST_CASE("the scaling-normalized volume W stays bounded (two-node system)") {
    const Oracle oracle(two_node_graph(), two_node_profiles());
    const auto grid = log_grid(1e-3, 1e-1, 20);
    const auto rows = oracle.normalized_scaling_profile(grid);
    REQUIRE(rows.size() == grid.size());
    double w_min = 1e300, w_max = 0.0;
    for (const OracleResult& r : rows) {
        const double w = r.normalized_by_scaling[0] + r.normalized_by_scaling[1];
        w_min = std::min(w_min, w);
        w_max = std::max(w_max, w);
    }
    CHECK(w_max / w_min <= 10.0);
}

TEST_CASE("(V(eps) + 2 eps) / eps^{1-D} is exactly log-periodic for the Cantor string") {
    const Oracle oracle(cantor_graph(), cantor_profiles());
    const double d = oracle.sim_value();
    auto u_of = [&](double eps) {
        return (oracle.tube_volume(eps).combined + 2.0 * eps) / std::pow(eps, 1.0 - d);
    };
    for (double eps : {1e-3, 3e-3, 1e-2, 0.05}) {
        CHECK(std::abs(u_of(eps) - u_of(eps / 3.0)) <= 1e-11 * u_of(eps));
    }
}

TEST_CASE("W itself becomes log-periodic only as eps -> 0") {
    OracleOptions grouped;
    grouped.lattice_grouping = true;
    const Oracle oracle(cantor_graph(), cantor_profiles(), grouped);
    auto w_of = [&](double eps) { return oracle.tube_volume(eps).normalized_by_scaling[0]; };
    // at moderate eps the eps^D term is clearly visible
    CHECK(std::abs(w_of(1e-2) - w_of(1e-2 / 3.0)) > 1e-3);
    // deep in the scaling regime it is below 1e-9 relative
    const double eps = 1e-18;
    CHECK(std::abs(w_of(eps) - w_of(eps / 3.0)) <= 1e-9 * w_of(eps));
}

TEST_CASE("a single-point grid gives W = V / eps^{n-D}") {
    const Oracle oracle(cantor_graph(), cantor_profiles());
    const double eps = 0.01;
    const auto rows = oracle.normalized_scaling_profile(std::vector<double>{eps});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].normalized_by_scaling[0] ==
          doctest::Approx(rows[0].per_vertex[0] / std::pow(eps, 1.0 - oracle.sim_value())));
}

TEST_CASE("oracle result fields are mutually consistent") {
    const Oracle oracle(two_node_graph(), two_node_profiles());
    const double eps = 0.01;
    const OracleResult r = oracle.tube_volume(eps);
    double sum = 0.0;
    for (int u = 0; u < 2; ++u) {
        sum += r.per_vertex[u];
        CHECK(r.per_vertex[u] > 0.0);
        CHECK(r.per_vertex[u] <= oracle.total_volumes()(u) + 1e-12);
        CHECK(r.normalized_by_eps_n[u] ==
              doctest::Approx(r.per_vertex[u] / (eps * eps)).epsilon(1e-14));
        CHECK(r.normalized_by_scaling[u] ==
              doctest::Approx(r.per_vertex[u] / std::pow(eps, 2.0 - oracle.sim_value()))
                  .epsilon(1e-14));
    }
    CHECK(r.combined == doctest::Approx(sum).epsilon(1e-15));
    CHECK(r.eps == eps);
}

TEST_CASE("oracle rejects non-positive eps") {
    const Oracle oracle(cantor_graph(), cantor_profiles());
    CHECK_THROWS_AS(oracle.tube_volume(0.0), SolverError);
    CHECK_THROWS_AS(oracle.tube_volume(-1.0), SolverError);
}

TEST_CASE("oracle refuses infinite-volume systems") {
    const MWGraph g({"a"},
                    {{0, 0, 1.0 / 3.0, 0.0},
                     {0, 0, 1.0 / 3.0, 0.0},
                     {0, 0, 1.0 / 3.0, 0.0},
                     {0, 0, 1.0 / 3.0, 0.0}},
                    1);
    CHECK_THROWS_AS(Oracle(g, cantor_profiles()), SolverError);
}
