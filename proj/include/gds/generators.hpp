#ifndef GDS_GENERATORS_HPP
#define GDS_GENERATORS_HPP

#include <vector>

#include "gds/errors.hpp"
#include "gds/numeric.hpp"

namespace gds {

/// One polynomial piece of a tube-volume profile, valid up to `breakpoint`.
/// coefficients[i] multiplies eps^(n-i), i = 0..n.
struct ProfilePiece {
    double breakpoint = 0.0;
    std::vector<double> coefficients;
};

/// Piecewise-polynomial inner tube volume of a generator in R^n.
/// The last breakpoint is the inradius g; beyond it the volume is constant
/// Vol(G). Monophase is the single-piece case. A valid profile has strictly
/// increasing positive breakpoints, coefficients[n] = 0 on the first piece
/// (so V(0) = 0), continuity across breakpoints, V(g) = Vol(G), and V
/// nondecreasing on [0, g].
class GeneratorProfile {
  public:
    GeneratorProfile(int space_dimension, std::vector<ProfilePiece> pieces, double volume);

    int space_dimension() const { return n_; }
    const std::vector<ProfilePiece>& pieces() const { return pieces_; }
    double volume() const { return volume_; }
    double inradius() const { return pieces_.back().breakpoint; }
    double first_breakpoint() const { return pieces_.front().breakpoint; }
    bool monophase() const { return pieces_.size() == 1; }

    /// V(eps): piecewise polynomial below the inradius, Vol(G) above.
    double tube_volume(double eps) const;

    /// Closed form of the Mellin transform of V(eps)/eps^n:
    ///   sum_m sum_i (k_i^m - k_i^{m+1}) g_m^{s-i} / (s-i)
    /// with the sentinel piece k^{M+1} = (0,...,0,Vol). Analytic continuation
    /// of the defining integral; poles at s = 0..n.
    /// Throws pole_proximity when s is within 1e-9 of an integer pole.
    Complex mellin_transform(Complex s) const;

    /// Residue of the Mellin transform at the integer pole s = i.
    /// Telescopes to k_i of the first piece for i < n and to -Vol(G) at i = n.
    double mellin_integer_residue(int i) const;

  private:
    int n_;
    std::vector<ProfilePiece> pieces_;
    double volume_;
    // Difference coefficients (k_i^m - k_i^{m+1}) including the sentinel row.
    std::vector<std::vector<double>> mellin_deltas_;
};

ValidationReport validate_profile(const GeneratorProfile& profile);

}  // namespace gds

#endif
