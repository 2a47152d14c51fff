#ifndef GDS_TUBE_FORMULA_HPP
#define GDS_TUBE_FORMULA_HPP

#include <vector>

#include "gds/dimensions.hpp"
#include "gds/exppoly.hpp"
#include "gds/generators.hpp"
#include "gds/mw_graph.hpp"

namespace gds {

/// Everything the residue tube formula needs: the graph, the generator
/// profiles, the symbolic det/adjugate of I - A(s), and the sim-value D.
/// Construction enforces n-1 < D < n, which the residue formula requires.
class ZetaSystem {
  public:
    ZetaSystem(MWGraph graph, std::vector<GeneratorProfile> profiles);

    const MWGraph& graph() const { return graph_; }
    const std::vector<GeneratorProfile>& profiles() const { return profiles_; }
    int space_dimension() const { return graph_.space_dimension(); }
    double sim_value() const { return d_; }
    const ExpPolynomial& det() const { return det_adj_.det; }
    const ExpPolynomial& det_derivative() const { return det_derivative_; }
    const ExpPolynomial& adjugate(int u, int v) const { return det_adj_.adj(u, v); }

    /// Geometric zeta function of vertex u:
    ///   zeta_u(s) = sum_v adj(I-A(s))_uv / det(I-A(s)) * M_v(s),
    /// where M_v is the Mellin transform of V_{G_v}(eps)/eps^n.
    /// Throws pole_proximity near the integer poles or a zero of det.
    Complex zeta(int u, Complex s) const;

    /// res(zeta_u(s) eps^{n-s}; omega) at a simple zero omega of det:
    ///   eps^{n-omega} sum_v adj_uv(omega) M_v(omega) / det'(omega).
    /// Throws higher_order_pole when det'(omega) vanishes and pole_collision
    /// when omega sits within 1e-6 of an integer in 0..n.
    Complex residue_at_dimension(int u, Complex omega, double eps) const;

    /// res(zeta_u(s) eps^{n-s}; i) at an integer pole i in 0..n-1:
    ///   eps^{n-i} [(I - A(i))^{-1} m]_u with m_v the Mellin residue of
    ///   profile v at i. Throws degenerate_pole when det(I - A(i)) ~ 0.
    double residue_at_integer(int u, int i, double eps) const;

    /// Sufficient pointwise validity threshold r_min^{|V|-1} min_u g_{1,u}
    /// (first breakpoints; the inradius in the monophase case).
    double validity_bound() const;

    /// Complex dimensions up to |Im| <= height; the right search edge is
    /// (D + n)/2, between D and n.
    ComplexDimensionSet find_dimensions(double height, DimensionOptions options = {}) const;

  private:
    MWGraph graph_;
    std::vector<GeneratorProfile> profiles_;
    double d_;
    DetAdjResult det_adj_;
    ExpPolynomial det_derivative_;
};

struct PoleContribution {
    Complex pole;                      // the pole itself (Im >= 0 for paired zeros)
    std::vector<Complex> per_vertex;   // residue of zeta_u eps^{n-s} at the pole
    double combined = 0.0;             // real contribution (conjugate pair folded)
    bool conjugate_paired = false;
};

struct TubeFormulaResult {
    double eps = 0.0;
    double value = 0.0;
    std::vector<PoleContribution> contributions;
    double truncation_height = 0.0;
    bool within_validity_bound = false;
    double discarded_imaginary = 0.0;
};

/// Truncated residue tube formula: integer poles 0..n-1 plus every complex
/// dimension with |Im| <= height, conjugate pairs folded to 2 Re(res) and
/// terms accumulated in increasing |Im| with compensated summation.
/// dims must have been computed to at least the requested height.
TubeFormulaResult tube_volume_formula(const ZetaSystem& zs, const ComplexDimensionSet& dims,
                                      double eps, double height);

}  // namespace gds

#endif
