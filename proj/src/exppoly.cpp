#include "gds/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "gds/errors.hpp"
#include "gds/mw_graph.hpp"

namespace gds {

namespace {

constexpr double kBaseMergeTol = 1e-12;   // bases equal iff |ln b_i - ln b_j| <= this
constexpr double kCancelRel = 1e-14;      // merged coefficient treated as cancelled
constexpr int kMaxSymbolicDim = 8;

ExpTerm make_term(double coeff, double base) {
    if (!(base > 0.0) || base > 1.0)
        throw SolverError(ErrorCode::invalid_argument,
                          "exponential polynomial base must lie in (0, 1]");
    return {coeff, base, std::log(base)};
}

}  // namespace

ExpPolynomial ExpPolynomial::canonicalize(std::vector<ExpTerm> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const ExpTerm& a, const ExpTerm& b) { return a.log_base > b.log_base; });
    ExpPolynomial out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i;
        double coeff = 0.0;
        double abs_sum = 0.0;
        while (j < raw.size() && raw[i].log_base - raw[j].log_base <= kBaseMergeTol) {
            coeff += raw[j].coeff;
            abs_sum += std::abs(raw[j].coeff);
            ++j;
        }
        if (coeff != 0.0 && std::abs(coeff) > kCancelRel * abs_sum)
            out.terms_.push_back({coeff, raw[i].base, raw[i].log_base});
        i = j;
    }
    return out;
}

ExpPolynomial ExpPolynomial::constant(double value) { return term(value, 1.0); }

ExpPolynomial ExpPolynomial::term(double coeff, double base) {
    return canonicalize({make_term(coeff, base)});
}

ExpPolynomial ExpPolynomial::from_terms(std::span<const std::pair<double, double>> coeff_base) {
    std::vector<ExpTerm> raw;
    raw.reserve(coeff_base.size());
    for (const auto& [c, b] : coeff_base) raw.push_back(make_term(c, b));
    return canonicalize(std::move(raw));
}

Complex ExpPolynomial::evaluate(Complex s) const {
    Complex sum = 0.0;
    for (const ExpTerm& t : terms_) sum += t.coeff * std::exp(s * t.log_base);
    return sum;
}

double ExpPolynomial::evaluate_real(double s) const {
    double sum = 0.0;
    for (const ExpTerm& t : terms_) sum += t.coeff * std::exp(s * t.log_base);
    return sum;
}

double ExpPolynomial::magnitude_scale(double x) const {
    double sum = 0.0;
    for (const ExpTerm& t : terms_) sum += std::abs(t.coeff) * std::exp(x * t.log_base);
    return sum;
}

ExpPolynomial ExpPolynomial::derivative() const {
    std::vector<ExpTerm> raw;
    raw.reserve(terms_.size());
    for (const ExpTerm& t : terms_)
        raw.push_back({t.coeff * t.log_base, t.base, t.log_base});
    return canonicalize(std::move(raw));
}

ExpPolynomial ExpPolynomial::operator-() const {
    ExpPolynomial out = *this;
    for (ExpTerm& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
    std::vector<ExpTerm> raw = a.terms_;
    raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
    return ExpPolynomial::canonicalize(std::move(raw));
}

ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b) { return a + (-b); }

ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b) {
    std::vector<ExpTerm> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const ExpTerm& ta : a.terms_)
        for (const ExpTerm& tb : b.terms_)
            raw.push_back({ta.coeff * tb.coeff, ta.base * tb.base, ta.log_base + tb.log_base});
    return ExpPolynomial::canonicalize(std::move(raw));
}

ExpPolynomial operator*(double c, const ExpPolynomial& a) {
    std::vector<ExpTerm> raw = a.terms_;
    for (ExpTerm& t : raw) t.coeff *= c;
    return ExpPolynomial::canonicalize(std::move(raw));
}

namespace {

// Determinant of the submatrix spanned by the given row/column ids,
// cofactor expansion along the first listed row.
ExpPolynomial sub_det(const std::vector<ExpPolynomial>& m, int dim, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
    if (rows.size() == 1) return m[rows[0] * dim + cols[0]];
    ExpPolynomial det;
    std::vector<int> tail_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const ExpPolynomial& pivot = m[rows[0] * dim + cols[j]];
        if (pivot.is_zero()) continue;
        std::vector<int> rest_cols;
        rest_cols.reserve(cols.size() - 1);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (k != j) rest_cols.push_back(cols[k]);
        ExpPolynomial contrib = pivot * sub_det(m, dim, tail_rows, rest_cols);
        det = (j % 2 == 0) ? det + contrib : det - contrib;
    }
    return det;
}

}  // namespace

DetAdjResult det_and_adjugate(const std::vector<ExpPolynomial>& matrix, int dim) {
    if (dim < 1 || matrix.size() != static_cast<std::size_t>(dim) * dim)
        throw SolverError(ErrorCode::invalid_argument, "det_and_adjugate: malformed matrix");
    if (dim > kMaxSymbolicDim)
        throw SolverError(ErrorCode::dimension_cap,
                          "symbolic determinant capped at dimension 8, got " +
                              std::to_string(dim));
    DetAdjResult res;
    res.dim = dim;
    std::vector<int> all(static_cast<std::size_t>(dim));
    std::iota(all.begin(), all.end(), 0);
    res.det = sub_det(matrix, dim, all, all);
    res.adjugate.assign(static_cast<std::size_t>(dim) * dim, {});
    if (dim == 1) {
        res.adjugate[0] = ExpPolynomial::constant(1.0);
        return res;
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            // adj_ij = (-1)^{i+j} * minor with row j, column i removed
            std::vector<int> rows, cols;
            for (int r = 0; r < dim; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 0; c < dim; ++c)
                if (c != i) cols.push_back(c);
            ExpPolynomial cof = sub_det(matrix, dim, rows, cols);
            res.adjugate[i * dim + j] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return res;
}

std::vector<ExpPolynomial> identity_minus_mw_matrix(const MWGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<std::vector<std::pair<double, double>>> entries(
        static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u) entries[u * n + u].push_back({1.0, 1.0});
    for (const GraphEdge& e : graph.edges())
        entries[e.from * n + e.to].push_back({-1.0, e.ratio});
    std::vector<ExpPolynomial> m(static_cast<std::size_t>(n) * n);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = ExpPolynomial::from_terms(entries[k]);
    return m;
}

namespace {

// Best rational approximation p/q of x >= 0 with q <= max_den, by continued
// fractions (convergents plus the final semiconvergent).
bool best_rational(double x, int max_den, long long& p_out, long long& q_out) {
    long long p_prev = 1, q_prev = 0;  // convergent k-1
    long long p_cur = static_cast<long long>(std::floor(x)), q_cur = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        if (frac < 1e-15) break;
        const double inv = 1.0 / frac;
        const double ai_f = std::floor(inv);
        if (ai_f > 1e18) break;
        const long long ai = static_cast<long long>(ai_f);
        const long long p_next = ai * p_cur + p_prev;
        const long long q_next = ai * q_cur + q_prev;
        if (q_next > max_den) {
            // largest semiconvergent still within the bound
            const long long t = (max_den - q_prev) / q_cur;
            if (t > 0) {
                const long long p_semi = t * p_cur + p_prev;
                const long long q_semi = t * q_cur + q_prev;
                if (std::abs(x - double(p_semi) / double(q_semi)) <
                    std::abs(x - double(p_cur) / double(q_cur))) {
                    p_cur = p_semi;
                    q_cur = q_semi;
                }
            }
            break;
        }
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        frac = inv - ai_f;
    }
    p_out = p_cur;
    q_out = q_cur;
    return q_cur >= 1 && q_cur <= max_den;
}

}  // namespace

std::optional<LatticeStructure> common_log_lattice(std::span<const double> logs, double tol,
                                                   int max_denominator) {
    double l_min = 0.0;
    for (double l : logs)
        if (l > 0.0 && (l_min == 0.0 || l < l_min)) l_min = l;
    if (l_min == 0.0) return std::nullopt;  // no nontrivial base

    std::vector<long long> nums(logs.size(), 0), dens(logs.size(), 1);
    long long lcm = 1;
    for (std::size_t j = 0; j < logs.size(); ++j) {
        if (logs[j] <= 0.0) continue;
        long long p = 0, q = 1;
        if (!best_rational(logs[j] / l_min, max_denominator, p, q)) return std::nullopt;
        if (std::abs(logs[j] / l_min - double(p) / double(q)) > tol) return std::nullopt;
        nums[j] = p;
        dens[j] = q;
        lcm = std::lcm(lcm, q);
        if (lcm > 1'000'000) return std::nullopt;
    }

    double lambda = l_min / static_cast<double>(lcm);
    std::vector<int> exponents(logs.size(), 0);
    long long g = 0;
    for (std::size_t j = 0; j < logs.size(); ++j) {
        if (logs[j] <= 0.0) continue;
        exponents[j] = static_cast<int>(nums[j] * (lcm / dens[j]));
        g = std::gcd(g, static_cast<long long>(exponents[j]));
    }
    if (g > 1) {
        lambda *= static_cast<double>(g);
        for (int& k : exponents) k = static_cast<int>(k / g);
    }
    // reconstruction check against the original logs
    for (std::size_t j = 0; j < logs.size(); ++j)
        if (std::abs(logs[j] - exponents[j] * lambda) > tol) return std::nullopt;

    LatticeStructure ls;
    ls.lambda = lambda;
    ls.period = 2.0 * M_PI / lambda;
    ls.exponents = std::move(exponents);
    return ls;
}

std::optional<LatticeStructure> lattice_structure(const ExpPolynomial& ep, double tol,
                                                  int max_denominator) {
    std::vector<double> logs;
    logs.reserve(ep.terms().size());
    for (const ExpTerm& t : ep.terms()) logs.push_back(-t.log_base);  // ln(1/b) >= 0
    return common_log_lattice(logs, tol, max_denominator);
}

}  // namespace gds
