#include "stbc/diversity.hpp"

#include "stbc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stbc {

namespace {

/// Running minimum over difference matrices.
class GainAccumulator {
public:
    GainAccumulator(std::size_t n, double scale, double tol) : n_(n), scale2_(scale * scale), tol_(tol) {}

    /// diff is the unscaled codeword difference.
    void add(const CMat& diff, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        ++pairs_;
        const CMat g = gram(diff) * scale2_;
        const std::size_t r = numeric_rank(g, tol_);
        const double value = r == 0 ? 0.0 : std::pow(std::max(det_plus(g, r), 0.0), 1.0 / double(r));
        if (r < min_rank_ || (r == min_rank_ && value < best_)) {
            min_rank_ = r;
            best_ = value;
            first_ = a;
            second_ = b;
        }
    }

    GainReport report(GainMode mode) const {
        GainReport rep;
        rep.mode = mode;
        rep.pairs_checked = pairs_;
        rep.min_rank = pairs_ ? min_rank_ : 0;
        rep.full_diversity = pairs_ && min_rank_ == n_;
        rep.det_plus_gain = pairs_ ? best_ : 0.0;
        rep.coding_gain = rep.full_diversity ? best_ : 0.0;
        rep.argmin_first = first_;
        rep.argmin_second = second_;
        return rep;
    }

private:
    std::size_t n_;
    double scale2_;
    double tol_;
    std::size_t pairs_ = 0;
    std::size_t min_rank_ = std::numeric_limits<std::size_t>::max();
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> first_, second_;
};

std::vector<Complex> symbols_of(const SignalSet& set, const std::vector<std::size_t>& idx) {
    std::vector<Complex> x(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) x[i] = set.points[idx[i]];
    return x;
}

} // namespace

std::string to_string(GainMode mode) { return mode == GainMode::exhaustive ? "exhaustive" : "single-symbol"; }

double det_plus(const CMat& g, std::size_t r) {
    const std::size_t n = g.rows();
    if (!g.square()) throw DimensionError("det_plus needs a square matrix");
    if (r == 0) return 1.0;
    if (r > n) throw Error("det_plus: rank exceeds size");
    if (r == n) return determinant(g).real();
    // elementary symmetric function e_r of the eigenvalues
    std::vector<std::size_t> subset(r);
    for (std::size_t i = 0; i < r; ++i) subset[i] = i;
    double sum = 0.0;
    while (true) {
        CMat minor(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) minor(i, j) = g(subset[i], subset[j]);
        sum += determinant(minor).real();
        std::size_t i = r;
        while (i > 0 && subset[i - 1] == n - r + i - 1) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < r; ++j) subset[j] = subset[j - 1] + 1;
    }
    return sum;
}

GainReport coding_gain(const LinearDesign& design, const SignalSet& set, GainMode mode, double scale, double tol) {
    if (set.size() < 2) throw Error("coding gain needs at least two signal points");
    GainAccumulator acc(design.N(), scale, tol);
    const std::size_t K = design.K();
    const std::size_t q = set.size();

    if (mode == GainMode::single_symbol) {
        std::vector<Complex> delta(K);
        std::vector<std::size_t> a(K, 0), b(K, 0);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t u = 0; u < q; ++u)
                for (std::size_t v = u + 1; v < q; ++v) {
                    delta[k] = set.points[u] - set.points[v];
                    a[k] = u;
                    b[k] = v;
                    acc.add(evaluate(design, delta), a, b);
                    delta[k] = 0.0;
                    a[k] = b[k] = 0;
                }
        return acc.report(mode);
    }

    double count = std::pow(double(q), double(K));
    if (count * (count - 1) / 2 > double(kPairBudget))
        throw BudgetError("exhaustive enumeration of " + std::to_string(q) + "^" + std::to_string(K) +
                          " codewords exceeds the pair budget; use single-symbol mode");
    const auto n = static_cast<std::size_t>(count);
    std::vector<std::vector<std::size_t>> indices(n, std::vector<std::size_t>(K));
    std::vector<CMat> words;
    words.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t rem = c;
        for (std::size_t k = K; k-- > 0;) {
            indices[c][k] = rem % q;
            rem /= q;
        }
        words.push_back(evaluate(design, symbols_of(set, indices[c])));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc.add(words[i] - words[j], indices[i], indices[j]);
    return acc.report(mode);
}

bool verify_full_diversity(const LinearDesign& design, const SignalSet& set, GainMode mode, double tol) {
    return coding_gain(design, set, mode, 1.0, tol).full_diversity;
}

GcpdCheck gcpd_equality_check(const GciodSpec& spec, const LinearDesign& design, const SignalSet& set) {
    if (spec.N() != design.N() || spec.L() != design.L() || spec.K != design.K())
        throw Error("gcpd_equality_check: spec does not describe the design");
    const double lambda = coding_gain(design, set, GainMode::single_symbol).coding_gain;
    const double g = gcpd(set, unsigned(spec.N1), unsigned(spec.N2));
    const bool match = std::abs(lambda - g) <= 1e-9 * std::max(std::abs(lambda), std::abs(g));
    return {lambda, g, match};
}

} // namespace stbc
