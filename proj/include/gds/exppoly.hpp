#ifndef GDS_EXPPOLY_HPP
#define GDS_EXPPOLY_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gds/numeric.hpp"

namespace gds {

class MWGraph;

/// One term c * b^s with b in (0, 1]. base 1 encodes a constant.
/// log_base caches ln(b) so evaluation avoids a log per term.
struct ExpTerm {
    double coeff;
    double base;
    double log_base;
};

/// Finite sum of real-coefficient exponentials c_j * b_j^s, kept canonical:
/// bases sorted descending, like bases merged, zero coefficients dropped.
/// Bases are considered equal when their logs differ by at most 1e-12.
class ExpPolynomial {
  public:
    ExpPolynomial() = default;

    static ExpPolynomial constant(double value);
    static ExpPolynomial term(double coeff, double base);
    static ExpPolynomial from_terms(std::span<const std::pair<double, double>> coeff_base);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Complex evaluate(Complex s) const;
    double evaluate_real(double s) const;

    /// Sum of |c_j| b_j^x; the natural magnitude scale on the line Re(s)=x.
    double magnitude_scale(double x) const;

    /// Term-wise d/ds: coefficients become c_j ln(b_j); the constant vanishes.
    ExpPolynomial derivative() const;

    ExpPolynomial operator-() const;
    friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b);
    friend ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b);
    friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b);
    friend ExpPolynomial operator*(double c, const ExpPolynomial& a);

  private:
    static ExpPolynomial canonicalize(std::vector<ExpTerm> raw);

    std::vector<ExpTerm> terms_;
};

/// Symbolic determinant and adjugate of a square ExpPolynomial matrix,
/// row-major. Cofactor expansion; dimension capped at 8.
struct DetAdjResult {
    int dim = 0;
    ExpPolynomial det;
    std::vector<ExpPolynomial> adjugate;  // row-major dim x dim

    const ExpPolynomial& adj(int row, int col) const { return adjugate[row * dim + col]; }
};

DetAdjResult det_and_adjugate(const std::vector<ExpPolynomial>& matrix, int dim);

/// Symbolic I - A(s) for a Mauldin-Williams graph, row-major |V| x |V|.
std::vector<ExpPolynomial> identity_minus_mw_matrix(const MWGraph& graph);

/// Arithmetic progression structure of the log-bases: ln(1/b_j) = k_j * lambda
/// with integer k_j of gcd 1. period = 2*pi/lambda.
struct LatticeStructure {
    double lambda = 0.0;
    double period = 0.0;
    std::vector<int> exponents;  // aligned with the inspected base list
};

/// Common lattice of a list of logs (all >= 0; zero maps to exponent 0).
/// Rational reconstruction by continued fractions with bounded denominator.
std::optional<LatticeStructure> common_log_lattice(std::span<const double> logs, double tol,
                                                   int max_denominator);

/// Lattice structure of an ExpPolynomial's bases (exponents aligned with
/// ep.terms()). Requires at least one base < 1; returns nullopt when the
/// log-ratios admit no rational reconstruction within tol.
std::optional<LatticeStructure> lattice_structure(const ExpPolynomial& ep, double tol = 1e-9,
                                                  int max_denominator = 64);

}  // namespace gds

#endif
