#ifndef GDS_DIMENSIONS_HPP
#define GDS_DIMENSIONS_HPP

#include <optional>
#include <vector>

#include "gds/exppoly.hpp"

namespace gds {

struct ComplexZero {
    Complex location;
    int multiplicity = 1;
};

struct StripInfo {
    double left = 0.0;    // c_l
    double right = 0.0;   // right search edge
    double height = 0.0;  // |Im| <= height
};

enum class DimensionMethod { automatic, lattice, generic };

struct LatticeInfo {
    double lambda = 0.0;
    double period = 0.0;
};

/// Zeros of det(I - A(s)) in a strip, with multiplicities, sorted by
/// (Im, Re) and closed under conjugation.
struct ComplexDimensionSet {
    std::vector<ComplexZero> zeros;
    StripInfo strip;
    DimensionMethod method = DimensionMethod::automatic;  // method actually used
    std::optional<LatticeInfo> lattice;

    int total_multiplicity() const;
};

struct DimensionOptions {
    double tol = 1e-9;
    DimensionMethod method = DimensionMethod::automatic;
    double delta = 1.0;         // dominance margin for the left abscissa
    double lattice_tol = 1e-9;
    int max_denominator = 64;
    std::optional<double> right_edge;  // default: zero-free bound + margin
};

/// Leftmost abscissa c_l < 0 with |det| > delta for all Re(s) <= c_l, found by
/// doubling scan: the minimal-base term must dominate the others by delta.
/// The dominance bound is monotone to the left once positive, so the check at
/// c_l covers the whole half plane. Throws dominance_unavailable when the
/// minimal-base coefficient is (numerically) cancelled.
double left_abscissa(const ExpPolynomial& det, double delta);

struct ComplexRect {
    double re_lo, re_hi, im_lo, im_hi;
};

/// Number of zeros of det inside the rectangle, counted with multiplicity,
/// by winding number along the boundary. Edges are sampled adaptively until
/// consecutive argument steps stay below pi/2. A boundary sample too close to
/// a zero triggers an outward jitter of tol*10 per attempt, max 8 attempts,
/// after which boundary_zero is thrown.
int count_zeros_in_rectangle(const ExpPolynomial& det, ComplexRect rect, double tol = 1e-9);

/// All zeros with |Im| <= height. Lattice inputs reduce to a polynomial in
/// z = exp(-lambda s) whose roots replicate vertically with period 2*pi/lambda;
/// otherwise the strip is tiled and subdivided by zero count until each zero
/// is isolated, then polished by Newton.
ComplexDimensionSet find_complex_dimensions(const ExpPolynomial& det, double height,
                                            const DimensionOptions& options = {});

}  // namespace gds

#endif
