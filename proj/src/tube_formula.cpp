#include "gds/tube_formula.hpp"

#include <algorithm>
#include <cmath>

#include "gds/spectral.hpp"

namespace gds {

namespace {
constexpr double kIntegerCollisionRadius = 1e-6;
constexpr double kDegenerateDetTol = 1e-9;
}

ZetaSystem::ZetaSystem(MWGraph graph, std::vector<GeneratorProfile> profiles)
    : graph_(std::move(graph)), profiles_(std::move(profiles)) {
    const int verts = graph_.vertex_count();
    if (static_cast<int>(profiles_.size()) != verts)
        throw SolverError(ErrorCode::invalid_argument, "one generator profile per vertex required");
    ValidationReport report = validate_graph(graph_);
    for (int u = 0; u < verts; ++u) {
        if (profiles_[u].space_dimension() != graph_.space_dimension())
            report.add("generator \"" + graph_.vertex_name(u) +
                       "\": space dimension does not match the graph");
        ValidationReport pr = validate_profile(profiles_[u]);
        for (const std::string& v : pr.violations)
            report.add("generator \"" + graph_.vertex_name(u) + "\": " + v);
    }
    if (!report.ok()) throw SolverError(ErrorCode::invalid_argument, report.joined("; "));

    d_ = gds::sim_value(graph_, 1e-12).value;
    const int n = graph_.space_dimension();
    if (!(d_ > n - 1.0) || !(d_ < n))
        throw SolverError(ErrorCode::hypothesis_violation,
                          "the tube formula requires n-1 < D < n, got D = " + std::to_string(d_) +
                              " with n = " + std::to_string(n));
    det_adj_ = det_and_adjugate(identity_minus_mw_matrix(graph_), verts);
    det_derivative_ = det_adj_.det.derivative();
}

Complex ZetaSystem::zeta(int u, Complex s) const {
    const Complex detv = det_adj_.det.evaluate(s);
    if (std::abs(detv) < 1e-12 * det_adj_.det.magnitude_scale(s.real()))
        throw SolverError(ErrorCode::pole_proximity,
                          "zeta sampled too close to a zero of det(I - A(s))");
    Complex sum = 0.0;
    for (int v = 0; v < graph_.vertex_count(); ++v) {
        const Complex mellin = profiles_[v].mellin_transform(s);  // guards the integer poles
        sum += adjugate(u, v).evaluate(s) * mellin;
    }
    return sum / detv;
}

Complex ZetaSystem::residue_at_dimension(int u, Complex omega, double eps) const {
    if (!(eps > 0.0)) throw SolverError(ErrorCode::invalid_argument, "residue needs eps > 0");
    const int n = graph_.space_dimension();
    for (int i = 0; i <= n; ++i)
        if (std::abs(omega - Complex(static_cast<double>(i), 0.0)) < kIntegerCollisionRadius)
            throw SolverError(ErrorCode::pole_collision,
                              "complex dimension collides with the integer pole s = " +
                                  std::to_string(i));
    const Complex dprime = det_derivative_.evaluate(omega);
    if (std::abs(dprime) < 1e-8 * det_derivative_.magnitude_scale(omega.real()))
        throw SolverError(ErrorCode::higher_order_pole,
                          "det'(omega) vanishes: residue defined for simple zeros only");
    Complex sum = 0.0;
    for (int v = 0; v < graph_.vertex_count(); ++v)
        sum += adjugate(u, v).evaluate(omega) * profiles_[v].mellin_transform(omega);
    return std::exp((static_cast<double>(n) - omega) * std::log(eps)) * sum / dprime;
}

double ZetaSystem::residue_at_integer(int u, int i, double eps) const {
    const int n = graph_.space_dimension();
    if (i < 0 || i > n - 1)
        throw SolverError(ErrorCode::invalid_argument, "integer pole index must lie in 0..n-1");
    if (!(eps > 0.0)) throw SolverError(ErrorCode::invalid_argument, "residue needs eps > 0");
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(graph_.vertex_count(), graph_.vertex_count()) -
        graph_.matrix_at_real(static_cast<double>(i));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    if (std::abs(lu.determinant()) < kDegenerateDetTol)
        throw SolverError(ErrorCode::degenerate_pole,
                          "det(I - A(" + std::to_string(i) +
                              ")) ~ 0: integer pole collides with a complex dimension");
    Eigen::VectorXd residues(graph_.vertex_count());
    for (int v = 0; v < graph_.vertex_count(); ++v)
        residues(v) = profiles_[v].mellin_integer_residue(i);
    const Eigen::VectorXd combined = lu.solve(residues);
    return std::pow(eps, n - i) * combined(u);
}

double ZetaSystem::validity_bound() const {
    const double r_min = graph_.min_edge_ratio();
    double g_first = profiles_.front().first_breakpoint();
    for (const GeneratorProfile& p : profiles_)
        g_first = std::min(g_first, p.first_breakpoint());
    return std::pow(r_min, graph_.vertex_count() - 1) * g_first;
}

ComplexDimensionSet ZetaSystem::find_dimensions(double height, DimensionOptions options) const {
    if (!options.right_edge)
        options.right_edge = 0.5 * (d_ + graph_.space_dimension());  // D < c < n
    return find_complex_dimensions(det_adj_.det, height, options);
}

TubeFormulaResult tube_volume_formula(const ZetaSystem& zs, const ComplexDimensionSet& dims,
                                      double eps, double height) {
    if (!(eps > 0.0)) throw SolverError(ErrorCode::invalid_argument, "tube formula needs eps > 0");
    if (dims.strip.height < height - 1e-9)
        throw SolverError(ErrorCode::invalid_argument,
                          "dimension set was computed below the requested truncation height");
    const int verts = zs.graph().vertex_count();
    const int n = zs.space_dimension();

    TubeFormulaResult result;
    result.eps = eps;
    result.truncation_height = height;

    // Integer poles 0..n-1 first; they are the |Im| = 0 block.
    for (int i = 0; i < n; ++i) {
        PoleContribution contrib;
        contrib.pole = Complex(static_cast<double>(i), 0.0);
        contrib.per_vertex.resize(verts);
        double sum = 0.0;
        for (int u = 0; u < verts; ++u) {
            const double r = zs.residue_at_integer(u, i, eps);
            contrib.per_vertex[u] = r;
            sum += r;
        }
        contrib.combined = sum;
        result.contributions.push_back(std::move(contrib));
    }

    // Complex dimensions: real zeros contribute directly, each Im > 0 zero is
    // folded with its conjugate into 2 Re(res).
    std::vector<ComplexZero> selected;
    for (const ComplexZero& z : dims.zeros) {
        if (std::abs(z.location.imag()) > height + 1e-12 * std::max(1.0, height)) continue;
        if (z.location.imag() < 0.0) continue;
        if (z.multiplicity > 1)
            throw SolverError(ErrorCode::higher_order_pole,
                              "complex dimension of multiplicity " +
                                  std::to_string(z.multiplicity) +
                                  " present: residues implemented for simple zeros only");
        selected.push_back(z);
    }
    std::sort(selected.begin(), selected.end(), [](const ComplexZero& a, const ComplexZero& b) {
        if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
        return a.location.real() < b.location.real();
    });

    double discarded = 0.0;
    for (const ComplexZero& z : selected) {
        PoleContribution contrib;
        contrib.pole = z.location;
        contrib.per_vertex.resize(verts);
        Complex sum = 0.0;
        for (int u = 0; u < verts; ++u) {
            const Complex r = zs.residue_at_dimension(u, z.location, eps);
            contrib.per_vertex[u] = r;
            sum += r;
        }
        if (z.location.imag() > 0.0) {
            contrib.conjugate_paired = true;
            contrib.combined = 2.0 * sum.real();
        } else {
            contrib.combined = sum.real();
            discarded += std::abs(sum.imag());
        }
        result.contributions.push_back(std::move(contrib));
    }

    // Increasing |Im| with compensated summation keeps the oscillatory
    // truncation error interpretable.
    KahanSum total;
    for (const PoleContribution& c : result.contributions) total.add(c.combined);
    result.value = total.value();
    result.discarded_imaginary = discarded;
    result.within_validity_bound = eps < zs.validity_bound();
    return result;
}

}  // namespace gds
