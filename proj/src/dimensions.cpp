#include "gds/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gds/errors.hpp"

namespace gds {

namespace {

constexpr double kEdgeProximityRel = 1e-13;  // |det| below this times scale means "on a zero"
constexpr double kClusterRadius = 1e-7;      // multiplicity clustering for polynomial roots
constexpr int kMaxJitterAttempts = 8;
constexpr double kRightEdgeMargin = 0.5;     // added to the zero-free abscissa

struct BoundaryZeroHit {};  // internal: boundary sample too close to a zero

int round_to_int(double x) { return static_cast<int>(std::lround(x)); }

// Winding number of det along the rectangle boundary. Each edge is sampled
// with an initial density bounded by the fastest term oscillation, then
// bisected until consecutive argument steps stay below pi/2.
class WindingAccumulator {
  public:
    explicit WindingAccumulator(const ExpPolynomial& det) : det_(det) {
        double max_freq = 0.0;
        for (const ExpTerm& t : det.terms()) max_freq = std::max(max_freq, -t.log_base);
        initial_step_ = (max_freq > 0.0) ? (M_PI / (2.0 * max_freq)) : 1.0;
    }

    int run(const ComplexRect& r) {
        total_ = 0.0;
        const Complex sw(r.re_lo, r.im_lo), se(r.re_hi, r.im_lo);
        const Complex ne(r.re_hi, r.im_hi), nw(r.re_lo, r.im_hi);
        edge(sw, se);
        edge(se, ne);
        edge(ne, nw);
        edge(nw, sw);
        const double winding = total_ / (2.0 * M_PI);
        const int count = round_to_int(winding);
        if (std::abs(winding - count) > 0.25) throw BoundaryZeroHit{};
        return count;
    }

  private:
    Complex sample(Complex s) const {
        const Complex f = det_.evaluate(s);
        if (std::abs(f) < kEdgeProximityRel * det_.magnitude_scale(s.real()))
            throw BoundaryZeroHit{};
        return f;
    }

    void edge(Complex a, Complex b) {
        const double len = std::abs(b - a);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / initial_step_)));
        Complex prev_s = a, prev_f = sample(a);
        for (int k = 1; k <= pieces; ++k) {
            const Complex s = a + (b - a) * (static_cast<double>(k) / pieces);
            const Complex f = sample(s);
            segment(prev_s, prev_f, s, f, 0);
            prev_s = s;
            prev_f = f;
        }
    }

    void segment(Complex sa, Complex fa, Complex sb, Complex fb, int depth) {
        const double dphi = std::arg(fb / fa);
        if (std::abs(dphi) < M_PI / 2.0) {
            total_ += dphi;
            return;
        }
        if (depth > 48) throw BoundaryZeroHit{};
        const Complex mid = 0.5 * (sa + sb);
        const Complex fm = sample(mid);
        segment(sa, fa, mid, fm, depth + 1);
        segment(mid, fm, sb, fb, depth + 1);
    }

    const ExpPolynomial& det_;
    double initial_step_;
    double total_ = 0.0;
};

int count_zeros_no_perturb(const ExpPolynomial& det, const ComplexRect& rect) {
    WindingAccumulator acc(det);
    return acc.run(rect);  // may throw BoundaryZeroHit
}

// Newton iteration on det, with the multiplicity-m step m*f/f'.
Complex newton_polish(const ExpPolynomial& det, const ExpPolynomial& det_prime, Complex s0,
                      int multiplicity) {
    Complex s = s0;
    for (int iter = 0; iter < 80; ++iter) {
        const Complex f = det.evaluate(s);
        const Complex fp = det_prime.evaluate(s);
        if (std::abs(fp) < 1e-280) break;
        const Complex step = static_cast<double>(multiplicity) * f / fp;
        s -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(s))) break;
    }
    return s;
}

// Rightmost abscissa that can carry a zero: right of it the largest-base term
// dominates the sum of the rest in absolute value.
double zero_free_abscissa(const ExpPolynomial& det) {
    const auto& terms = det.terms();
    const ExpTerm& lead = terms.front();  // largest base
    auto rest = [&](double sigma) {
        double sum = 0.0;
        for (std::size_t j = 1; j < terms.size(); ++j)
            sum += std::abs(terms[j].coeff) *
                   std::exp(sigma * (terms[j].log_base - lead.log_base));
        return sum;
    };
    double hi = 1.0;
    while (rest(hi) >= std::abs(lead.coeff) && hi < 1e6) hi *= 2.0;
    if (hi >= 1e6)
        throw SolverError(ErrorCode::convergence_failure, "no zero-free right half plane found");
    double lo = 0.0;
    while (rest(lo) <= std::abs(lead.coeff) && lo > -1e6) lo -= std::max(1.0, std::abs(lo));
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (rest(mid) >= std::abs(lead.coeff))
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

struct RootCluster {
    Complex center;
    int multiplicity;
};

// Greedy clustering of close roots; a multiple root comes out of the
// eigensolver as a tight cluster.
std::vector<RootCluster> cluster_roots(std::vector<Complex> roots, double radius) {
    std::vector<RootCluster> clusters;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) <= radius) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        clusters.push_back({sum / static_cast<double>(count), count});
    }
    return clusters;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && coeffs[degree] == 0.0) --degree;
    if (degree < 1) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<Complex> roots(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) roots[i] = solver.eigenvalues()(i);
    return roots;
}

void sort_zeros(std::vector<ComplexZero>& zeros) {
    std::sort(zeros.begin(), zeros.end(), [](const ComplexZero& a, const ComplexZero& b) {
        if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
        return a.location.real() < b.location.real();
    });
}

// Enforce exact conjugate symmetry: snap near-real zeros onto the axis and
// replace each (z, conj partner) pair by the symmetrized pair.
std::vector<ComplexZero> symmetrize(std::vector<ComplexZero> zeros, double tol) {
    const double axis_tol = std::max(tol, 1e-12);
    std::vector<ComplexZero> reals, upper, lower;
    for (ComplexZero& z : zeros) {
        if (std::abs(z.location.imag()) <= axis_tol) {
            z.location = Complex(z.location.real(), 0.0);
            reals.push_back(z);
        } else if (z.location.imag() > 0.0) {
            upper.push_back(z);
        } else {
            lower.push_back(z);
        }
    }
    std::vector<ComplexZero> out = reals;
    std::vector<bool> used(lower.size(), false);
    for (const ComplexZero& z : upper) {
        int best = -1;
        double best_dist = 100.0 * std::max(tol, 1e-9);
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(std::conj(lower[j].location) - z.location);
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(j);
            }
        }
        if (best < 0)
            throw SolverError(ErrorCode::convergence_failure,
                              "zero set not closed under conjugation");
        used[best] = true;
        const Complex sym = 0.5 * (z.location + std::conj(lower[best].location));
        out.push_back({sym, z.multiplicity});
        out.push_back({std::conj(sym), z.multiplicity});
    }
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (!used[j])
            throw SolverError(ErrorCode::convergence_failure,
                              "zero set not closed under conjugation");
    sort_zeros(out);
    return out;
}

ComplexDimensionSet lattice_path(const ExpPolynomial& det, double height,
                                 const DimensionOptions& options, const LatticeStructure& ls,
                                 const StripInfo& strip) {
    const double lambda = ls.lambda;
    const double period = ls.period;

    int max_exp = 0;
    for (int k : ls.exponents) max_exp = std::max(max_exp, k);
    std::vector<double> coeffs(static_cast<std::size_t>(max_exp) + 1, 0.0);
    for (std::size_t j = 0; j < det.terms().size(); ++j)
        coeffs[ls.exponents[j]] += det.terms()[j].coeff;

    // Roots smaller than any |z| a zero in the strip could have are artifacts
    // (z = 0 appears when the polynomial has no constant term).
    const double z_floor = 0.5 * std::exp(-lambda * (strip.right + kRightEdgeMargin));
    const ExpPolynomial det_prime = det.derivative();

    std::vector<ComplexZero> zeros;
    for (const RootCluster& cluster : cluster_roots(polynomial_roots(coeffs), kClusterRadius)) {
        if (std::abs(cluster.center) <= z_floor) continue;
        const double sigma = -std::log(std::abs(cluster.center)) / lambda;
        const double base_offset = -std::arg(cluster.center) / lambda;
        const long k_lo = std::lround(std::floor((-height - base_offset) / period));
        const long k_hi = std::lround(std::ceil((height - base_offset) / period));
        for (long k = k_lo; k <= k_hi; ++k) {
            const double im = base_offset + static_cast<double>(k) * period;
            if (std::abs(im) > height + 1e-12 * std::max(1.0, height)) continue;
            Complex s(sigma, im);
            s = newton_polish(det, det_prime, s, cluster.multiplicity);
            zeros.push_back({s, cluster.multiplicity});
        }
    }

    ComplexDimensionSet result;
    result.zeros = symmetrize(std::move(zeros), options.tol);
    result.strip = strip;
    result.method = DimensionMethod::lattice;
    result.lattice = LatticeInfo{lambda, period};
    return result;
}

struct PendingRect {
    ComplexRect rect;
    int count;
};

// A multiple zero cut by a subdivision line is found once per adjacent
// rectangle; coincident locations merge back with summed multiplicity.
std::vector<ComplexZero> merge_coincident(std::vector<ComplexZero> zeros, double radius) {
    std::vector<ComplexZero> merged;
    std::vector<bool> used(zeros.size(), false);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (used[i]) continue;
        Complex sum = zeros[i].location * static_cast<double>(zeros[i].multiplicity);
        int mult = zeros[i].multiplicity;
        used[i] = true;
        for (std::size_t j = i + 1; j < zeros.size(); ++j) {
            if (!used[j] && std::abs(zeros[j].location - zeros[i].location) <= radius) {
                sum += zeros[j].location * static_cast<double>(zeros[j].multiplicity);
                mult += zeros[j].multiplicity;
                used[j] = true;
            }
        }
        merged.push_back({sum / static_cast<double>(mult), mult});
    }
    return merged;
}

double rect_diameter(const ComplexRect& r) {
    return std::hypot(r.re_hi - r.re_lo, r.im_hi - r.im_lo);
}

bool inside(const ComplexRect& r, Complex s) {
    return s.real() >= r.re_lo && s.real() <= r.re_hi && s.imag() >= r.im_lo &&
           s.imag() <= r.im_hi;
}

ComplexDimensionSet generic_path(const ExpPolynomial& det, double height,
                                 const DimensionOptions& options, const StripInfo& strip) {
    const ExpPolynomial det_prime = det.derivative();
    const double margin = std::max(100.0 * options.tol, 1e-7);
    ComplexRect root_rect{strip.left, strip.right, -height - margin, height + margin};

    const int total = count_zeros_in_rectangle(det, root_rect, options.tol);
    std::vector<ComplexZero> zeros;
    std::deque<PendingRect> pending;
    if (total > 0) pending.push_back({root_rect, total});

    const double isolate_size = std::max(100.0 * options.tol, 1e-8);
    static constexpr double kCutFractions[] = {0.5, 0.53, 0.47, 0.57, 0.43, 0.61, 0.39, 0.65};
    long processed = 0;

    while (!pending.empty()) {
        if (++processed > 200'000)
            throw SolverError(ErrorCode::isolation_failure,
                              "zero isolation did not terminate (rectangle budget exhausted)");
        const PendingRect item = pending.front();
        pending.pop_front();
        const ComplexRect& r = item.rect;

        if (item.count == 1) {
            const Complex center(0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi));
            const Complex polished = newton_polish(det, det_prime, center, 1);
            const double residual = std::abs(det.evaluate(polished));
            if (inside(r, polished) &&
                residual <= 1e-8 * std::max(1.0, det.magnitude_scale(polished.real()))) {
                zeros.push_back({polished, 1});
                continue;
            }
        }
        if (rect_diameter(r) <= isolate_size) {
            // unresolved cluster: report the center with the counted multiplicity
            const Complex center(0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi));
            zeros.push_back({center, item.count});
            continue;
        }

        const bool split_vertical = (r.im_hi - r.im_lo) >= (r.re_hi - r.re_lo);
        bool split_ok = false;
        for (double fraction : kCutFractions) {
            ComplexRect a = r, b = r;
            if (split_vertical) {
                const double cut = r.im_lo + fraction * (r.im_hi - r.im_lo);
                a.im_hi = cut;
                b.im_lo = cut;
            } else {
                const double cut = r.re_lo + fraction * (r.re_hi - r.re_lo);
                a.re_hi = cut;
                b.re_lo = cut;
            }
            try {
                const int ca = count_zeros_no_perturb(det, a);
                const int cb = count_zeros_no_perturb(det, b);
                if (ca + cb != item.count) continue;  // a zero slipped through the cut
                if (ca > 0) pending.push_back({a, ca});
                if (cb > 0) pending.push_back({b, cb});
                split_ok = true;
                break;
            } catch (const BoundaryZeroHit&) {
                continue;  // cut landed on a zero; try another fraction
            }
        }
        if (!split_ok)
            throw SolverError(ErrorCode::isolation_failure,
                              "could not split rectangle [" + std::to_string(r.re_lo) + "," +
                                  std::to_string(r.re_hi) + "]x[" + std::to_string(r.im_lo) +
                                  "," + std::to_string(r.im_hi) + "] cleanly");
    }

    // Trim the search margin back to the requested height.
    std::erase_if(zeros, [&](const ComplexZero& z) {
        return std::abs(z.location.imag()) > height + 1e-12 * std::max(1.0, height);
    });

    ComplexDimensionSet result;
    result.zeros = symmetrize(merge_coincident(std::move(zeros), kClusterRadius), options.tol);
    result.strip = strip;
    result.method = DimensionMethod::generic;
    return result;
}

}  // namespace

int ComplexDimensionSet::total_multiplicity() const {
    int total = 0;
    for (const ComplexZero& z : zeros) total += z.multiplicity;
    return total;
}

double left_abscissa(const ExpPolynomial& det, double delta) {
    if (!(delta > 0.0))
        throw SolverError(ErrorCode::invalid_argument, "left_abscissa: delta must be > 0");
    const auto& terms = det.terms();
    if (terms.empty())
        throw SolverError(ErrorCode::dominance_unavailable, "determinant is identically zero");

    const ExpTerm& min_term = terms.back();  // smallest base
    double max_abs = 0.0;
    for (const ExpTerm& t : terms) max_abs = std::max(max_abs, std::abs(t.coeff));
    if (std::abs(min_term.coeff) <= 1e-12 * max_abs)
        throw SolverError(ErrorCode::dominance_unavailable,
                          "minimal-base coefficient cancelled; no dominance bound available");

    if (terms.size() == 1) {
        // a constant (or single term): |det| = |c| b^x, already dominant
        if (min_term.base == 1.0 && std::abs(min_term.coeff) > delta) return -1.0;
    }

    // phi(x) = |c_min| - sum_{j != min} |c_j| (b_j/b_min)^x is monotone in x,
    // so once phi > 0 and the dominance margin m(x) = b_min^x phi(x) exceeds
    // delta at c_l, it exceeds delta on the whole half plane Re(s) <= c_l.
    auto phi = [&](double x) {
        double sum = 0.0;
        for (std::size_t j = 0; j + 1 < terms.size(); ++j)
            sum += std::abs(terms[j].coeff) * std::exp(x * (terms[j].log_base - min_term.log_base));
        return std::abs(min_term.coeff) - sum;
    };
    double x = -1.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double p = phi(x);
        if (p > 0.0) {
            const double dominance = std::exp(x * min_term.log_base) * p;
            if (dominance > delta) return x;
        }
        x *= 2.0;
    }
    throw SolverError(ErrorCode::dominance_unavailable,
                      "dominance margin " + std::to_string(delta) + " unreachable");
}

int count_zeros_in_rectangle(const ExpPolynomial& det, ComplexRect rect, double tol) {
    if (!(rect.re_hi > rect.re_lo) || !(rect.im_hi > rect.im_lo))
        throw SolverError(ErrorCode::invalid_argument, "count_zeros: degenerate rectangle");
    const double jitter = std::max(tol, 1e-12) * 10.0;
    for (int attempt = 0; attempt < kMaxJitterAttempts; ++attempt) {
        ComplexRect r = rect;
        const double pad = jitter * attempt;
        r.re_lo -= pad;
        r.re_hi += pad;
        r.im_lo -= pad;
        r.im_hi += pad;
        try {
            return count_zeros_no_perturb(det, r);
        } catch (const BoundaryZeroHit&) {
            continue;
        }
    }
    throw SolverError(ErrorCode::boundary_zero,
                      "rectangle boundary stays too close to a zero after " +
                          std::to_string(kMaxJitterAttempts) + " perturbations");
}

ComplexDimensionSet find_complex_dimensions(const ExpPolynomial& det, double height,
                                            const DimensionOptions& options) {
    if (!(height > 0.0))
        throw SolverError(ErrorCode::invalid_argument, "dimension search height must be > 0");
    if (det.is_zero())
        throw SolverError(ErrorCode::invalid_argument, "determinant is identically zero");

    StripInfo strip;
    strip.left = left_abscissa(det, options.delta);
    strip.height = height;

    if (det.terms().size() == 1) {  // a lone term never vanishes
        ComplexDimensionSet empty;
        empty.strip = strip;
        empty.strip.right = options.right_edge.value_or(strip.left);
        empty.method = DimensionMethod::generic;
        return empty;
    }
    strip.right = options.right_edge.value_or(zero_free_abscissa(det) + kRightEdgeMargin);

    std::optional<LatticeStructure> ls;
    if (options.method != DimensionMethod::generic)
        ls = lattice_structure(det, options.lattice_tol, options.max_denominator);
    if (options.method == DimensionMethod::lattice && !ls)
        throw SolverError(ErrorCode::invalid_argument,
                          "lattice method requested but the bases have no common lattice");

    if (ls) return lattice_path(det, height, options, *ls, strip);
    return generic_path(det, height, options, strip);
}

}  // namespace gds
