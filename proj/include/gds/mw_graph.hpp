#ifndef GDS_MW_GRAPH_HPP
#define GDS_MW_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gds/errors.hpp"
#include "gds/numeric.hpp"

namespace gds {

struct GraphEdge {
    int from = 0;
    int to = 0;
    double ratio = 0.0;
    double log_ratio = 0.0;  // ln(ratio), cached at construction
};

/// Weighted directed multigraph with contraction ratios in (0,1).
/// Vertex identifiers are opaque strings mapped to dense indices at
/// construction; all matrices use the dense index order. Immutable.
class MWGraph {
  public:
    MWGraph(std::vector<std::string> vertex_names, std::vector<GraphEdge> edges,
            int space_dimension);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int space_dimension() const { return space_dimension_; }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::string& vertex_name(int u) const { return vertex_names_[u]; }
    int vertex_index(const std::string& name) const;  // throws on unknown name

    const std::vector<GraphEdge>& edges() const { return edges_; }
    std::span<const int> edges_from(int u) const;
    double min_edge_ratio() const;

    /// A(s) with a_uv(s) = sum over edges u->v of r_e^s.
    Eigen::MatrixXcd matrix_at(Complex s) const;
    Eigen::MatrixXd matrix_at_real(double s) const;

  private:
    std::vector<std::string> vertex_names_;
    std::vector<GraphEdge> edges_;
    int space_dimension_;
    std::vector<int> out_edges_flat_;    // edge ids grouped by source vertex
    std::vector<int> out_edges_offset_;  // size |V|+1
};

/// Checks the Mauldin-Williams conditions: every ratio in (0,1), every vertex
/// with an outgoing edge, strong connectivity. Never aborts; lists everything.
ValidationReport validate_graph(const MWGraph& graph);

/// A directed path: start vertex, edge id sequence (empty allowed), cached
/// weight r(path) = product of edge ratios, terminal vertex.
struct Path {
    int start = 0;
    std::vector<int> edge_ids;
    double ratio = 1.0;
    int terminal = 0;
};

/// Depth-first cursor over the paths starting at a fixed vertex. Yields the
/// empty path first, then every extension whose weight stays strictly above
/// min_ratio (weights only shrink, so the pruned subtree is complete).
/// min_ratio must be positive, otherwise the enumeration would be infinite.
class PathCursor {
  public:
    PathCursor(const MWGraph& graph, int start, double min_ratio);

    /// Moves to the next path in DFS order. First call lands on the empty
    /// path. Returns false once the enumeration is exhausted.
    bool advance();

    double ratio() const { return ratio_; }
    int terminal() const { return terminal_; }
    std::span<const int> edge_ids() const { return {edge_stack_.data(), edge_stack_.size()}; }
    std::uint64_t visited() const { return visited_; }
    Path current() const;

  private:
    struct Frame {
        int slot;       // index into the terminal vertex's out-edge list
        double ratio;   // path weight up to and including this edge
    };

    bool descend_first_child();
    bool shift_or_pop();

    const MWGraph* graph_;
    int start_;
    double min_ratio_;
    bool begun_ = false;
    bool done_ = false;
    double ratio_ = 1.0;
    int terminal_;
    std::vector<int> edge_stack_;
    std::vector<Frame> frames_;
    std::uint64_t visited_ = 0;
};

/// Convenience wrapper: materializes every path with weight > min_ratio.
std::vector<Path> enumerate_paths(const MWGraph& graph, int start, double min_ratio);

}  // namespace gds

#endif
