#ifndef GDS_CONFIG_HPP
#define GDS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gds/generators.hpp"
#include "gds/mw_graph.hpp"

namespace gds {

struct SolverSettings {
    double sim_tol = 1e-12;
    double dims_tol = 1e-9;
    double delta = 1.0;
    double lattice_tol = 1e-9;
    int max_denominator = 64;
    double truncation_height = 200.0;
    std::uint64_t path_cap = 100'000'000;
    bool lattice_grouping = false;
};

/// A spray model as loaded from disk: graph, one generator profile per
/// vertex (profiles ordered by the graph's dense vertex order), settings.
struct SprayConfig {
    MWGraph graph;
    std::vector<GeneratorProfile> profiles;
    SolverSettings settings;
};

/// Parses the JSON spray description. Numeric fields accept plain numbers or
/// exact fraction strings like "1/3", which are divided once so lattice
/// detection sees exact ratios. Structural problems are collected and thrown
/// together as a parse_error. Semantic validity is checked separately.
SprayConfig load_spray_config(const std::string& path);
SprayConfig parse_spray_config(const std::string& json_text, const std::string& origin);

/// Graph validation plus per-generator profile validation, with generator
/// messages prefixed by the vertex name.
ValidationReport validate_spray(const SprayConfig& config);

}  // namespace gds

#endif
