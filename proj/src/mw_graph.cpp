#include "gds/mw_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace gds {

MWGraph::MWGraph(std::vector<std::string> vertex_names, std::vector<GraphEdge> edges,
                 int space_dimension)
    : vertex_names_(std::move(vertex_names)),
      edges_(std::move(edges)),
      space_dimension_(space_dimension) {
    const int n = vertex_count();
    if (n < 1) throw SolverError(ErrorCode::invalid_argument, "graph needs at least one vertex");
    if (space_dimension_ < 1)
        throw SolverError(ErrorCode::invalid_argument, "space dimension must be >= 1");
    std::set<std::string> seen(vertex_names_.begin(), vertex_names_.end());
    if (static_cast<int>(seen.size()) != n)
        throw SolverError(ErrorCode::invalid_argument, "duplicate vertex identifiers");
    for (GraphEdge& e : edges_) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw SolverError(ErrorCode::invalid_argument, "edge endpoint out of range");
        if (!(e.ratio > 0.0) || !std::isfinite(e.ratio))
            throw SolverError(ErrorCode::invalid_argument, "edge ratio must be positive");
        e.log_ratio = std::log(e.ratio);
    }

    out_edges_offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const GraphEdge& e : edges_) ++out_edges_offset_[e.from + 1];
    for (int u = 0; u < n; ++u) out_edges_offset_[u + 1] += out_edges_offset_[u];
    out_edges_flat_.resize(edges_.size());
    std::vector<int> cursor(out_edges_offset_.begin(), out_edges_offset_.end() - 1);
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
        out_edges_flat_[cursor[edges_[id].from]++] = id;
}

int MWGraph::vertex_index(const std::string& name) const {
    for (int u = 0; u < vertex_count(); ++u)
        if (vertex_names_[u] == name) return u;
    throw SolverError(ErrorCode::invalid_argument, "unknown vertex identifier \"" + name + "\"");
}

std::span<const int> MWGraph::edges_from(int u) const {
    return {out_edges_flat_.data() + out_edges_offset_[u],
            static_cast<std::size_t>(out_edges_offset_[u + 1] - out_edges_offset_[u])};
}

double MWGraph::min_edge_ratio() const {
    double r = 1.0;
    for (const GraphEdge& e : edges_) r = std::min(r, e.ratio);
    return r;
}

Eigen::MatrixXcd MWGraph::matrix_at(Complex s) const {
    const int n = vertex_count();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (const GraphEdge& e : edges_) a(e.from, e.to) += std::exp(s * e.log_ratio);
    return a;
}

Eigen::MatrixXd MWGraph::matrix_at_real(double s) const {
    const int n = vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const GraphEdge& e : edges_) a(e.from, e.to) += std::exp(s * e.log_ratio);
    return a;
}

ValidationReport validate_graph(const MWGraph& graph) {
    ValidationReport report;
    const int n = graph.vertex_count();

    for (int id = 0; id < static_cast<int>(graph.edges().size()); ++id) {
        const GraphEdge& e = graph.edges()[id];
        if (!(e.ratio > 0.0) || !(e.ratio < 1.0))
            report.add("edge " + std::to_string(id) + " (\"" + graph.vertex_name(e.from) +
                       "\" -> \"" + graph.vertex_name(e.to) + "\") has ratio " +
                       std::to_string(e.ratio) + " outside (0,1)");
    }
    for (int u = 0; u < n; ++u)
        if (graph.edges_from(u).empty())
            report.add("vertex \"" + graph.vertex_name(u) + "\" has no outgoing edges");

    // Strong connectivity: forward and backward reachability from vertex 0.
    auto sweep = [&](bool forward) {
        std::vector<char> reached(static_cast<std::size_t>(n), 0);
        std::deque<int> queue{0};
        reached[0] = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (const GraphEdge& e : graph.edges()) {
                const int src = forward ? e.from : e.to;
                const int dst = forward ? e.to : e.from;
                if (src == v && !reached[dst]) {
                    reached[dst] = 1;
                    queue.push_back(dst);
                }
            }
        }
        return reached;
    };
    const auto fwd = sweep(true);
    const auto bwd = sweep(false);
    for (int u = 0; u < n; ++u) {
        if (!fwd[u])
            report.add("not strongly connected: vertex \"" + graph.vertex_name(u) +
                       "\" is unreachable from \"" + graph.vertex_name(0) + "\"");
        if (!bwd[u])
            report.add("not strongly connected: vertex \"" + graph.vertex_name(u) +
                       "\" cannot reach \"" + graph.vertex_name(0) + "\"");
    }
    return report;
}

PathCursor::PathCursor(const MWGraph& graph, int start, double min_ratio)
    : graph_(&graph), start_(start), min_ratio_(min_ratio), terminal_(start) {
    if (start < 0 || start >= graph.vertex_count())
        throw SolverError(ErrorCode::invalid_argument, "path enumeration: bad start vertex");
    if (!(min_ratio > 0.0))
        throw SolverError(ErrorCode::invalid_argument,
                          "path enumeration requires min_ratio > 0 (finite enumeration)");
}

bool PathCursor::descend_first_child() {
    const auto out = graph_->edges_from(terminal_);
    for (int slot = 0; slot < static_cast<int>(out.size()); ++slot) {
        const GraphEdge& e = graph_->edges()[out[slot]];
        const double next = ratio_ * e.ratio;
        if (next > min_ratio_) {
            frames_.push_back({slot, next});
            edge_stack_.push_back(out[slot]);
            terminal_ = e.to;
            ratio_ = next;
            ++visited_;
            return true;
        }
    }
    return false;
}

bool PathCursor::shift_or_pop() {
    while (!frames_.empty()) {
        const std::size_t k = frames_.size() - 1;
        const int parent = graph_->edges()[edge_stack_[k]].from;
        const double parent_ratio = (k == 0) ? 1.0 : frames_[k - 1].ratio;
        const auto out = graph_->edges_from(parent);
        for (int slot = frames_[k].slot + 1; slot < static_cast<int>(out.size()); ++slot) {
            const GraphEdge& e = graph_->edges()[out[slot]];
            const double next = parent_ratio * e.ratio;
            if (next > min_ratio_) {
                frames_[k] = {slot, next};
                edge_stack_[k] = out[slot];
                terminal_ = e.to;
                ratio_ = next;
                ++visited_;
                return true;
            }
        }
        frames_.pop_back();
        edge_stack_.pop_back();
    }
    done_ = true;
    return false;
}

bool PathCursor::advance() {
    if (done_) return false;
    if (!begun_) {
        // the empty path, weight exactly 1
        begun_ = true;
        terminal_ = start_;
        ratio_ = 1.0;
        ++visited_;
        return true;
    }
    if (descend_first_child()) return true;
    return shift_or_pop();
}

Path PathCursor::current() const {
    Path p;
    p.start = start_;
    p.edge_ids.assign(edge_stack_.begin(), edge_stack_.end());
    p.ratio = ratio_;
    p.terminal = terminal_;
    return p;
}

std::vector<Path> enumerate_paths(const MWGraph& graph, int start, double min_ratio) {
    std::vector<Path> paths;
    PathCursor cursor(graph, start, min_ratio);
    while (cursor.advance()) paths.push_back(cursor.current());
    return paths;
}

}  // namespace gds
