#include "stbc/design.hpp"

#include "stbc/error.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

namespace stbc {

LinearDesign::LinearDesign(std::string name, std::size_t L, std::size_t N, std::size_t K, std::vector<CMat> weights)
    : name_(std::move(name)), L_(L), N_(N), K_(K), weights_(std::move(weights)) {
    if (K_ < 1) throw Error("design needs at least one symbol");
    if (N_ < 1 || L_ < N_)
        throw Error("design must satisfy L >= N >= 1, got L=" + std::to_string(L_) + " N=" + std::to_string(N_));
    if (weights_.size() != 2 * K_)
        throw DimensionError("design with K=" + std::to_string(K_) + " needs " + std::to_string(2 * K_) +
                             " weight matrices, got " + std::to_string(weights_.size()));
    for (const auto& w : weights_)
        if (w.rows() != L_ || w.cols() != N_) throw DimensionError("weight matrix is not L x N");
}

LinearDesign LinearDesign::from_map(std::string name, std::size_t L, std::size_t N, std::size_t K,
                                    const std::function<CMat(std::span<const Complex>)>& map) {
    std::vector<CMat> weights;
    weights.reserve(2 * K);
    std::vector<Complex> probe(K);
    for (std::size_t k = 0; k < K; ++k) {
        probe[k] = 1.0;
        weights.push_back(map(probe));
        probe[k] = kJ;
        weights.push_back(map(probe));
        probe[k] = 0.0;
    }
    return LinearDesign(std::move(name), L, N, K, std::move(weights));
}

LinearDesign LinearDesign::renamed(std::string name) const {
    LinearDesign out = *this;
    out.name_ = std::move(name);
    return out;
}

CMat evaluate(const LinearDesign& design, std::span<const Complex> symbols) {
    if (symbols.size() != design.K())
        throw DimensionError("expected " + std::to_string(design.K()) + " symbols, got " +
                             std::to_string(symbols.size()));
    CMat s(design.L(), design.N());
    for (std::size_t k = 0; k < design.K(); ++k) {
        if (symbols[k].real() != 0.0) s += design.weight(2 * k) * symbols[k].real();
        if (symbols[k].imag() != 0.0) s += design.weight(2 * k + 1) * symbols[k].imag();
    }
    return s;
}

bool same_weights(const LinearDesign& a, const LinearDesign& b, double tol) {
    if (a.L() != b.L() || a.N() != b.N() || a.K() != b.K()) return false;
    for (std::size_t k = 0; k < a.weights().size(); ++k) {
        if (tol == 0.0 ? !a.weight(k).identical(b.weight(k)) : !approx_equal(a.weight(k), b.weight(k), tol))
            return false;
    }
    return true;
}

SdReport check_anticommuting(const std::vector<CMat>& weights, bool skip_partners, double tol) {
    SdReport report;
    for (std::size_t k = 0; k < weights.size(); ++k)
        for (std::size_t l = k + 1; l < weights.size(); ++l) {
            if (skip_partners && (k ^ 1) == l) continue;
            const double residual = max_abs(anticommutator(weights[k], weights[l]));
            report.max_residual = std::max(report.max_residual, residual);
            if (residual > tol) {
                report.holds = false;
                ++report.violation_count;
                if (report.violations.size() < kMaxReportedViolations) report.violations.push_back({k, l, residual});
            }
        }
    return report;
}

SdReport check_sd_general(const LinearDesign& design, double tol) {
    return check_anticommuting(design.weights(), true, tol);
}

SdReport check_iq_orthogonality_report(const LinearDesign& design, double tol) {
    SdReport report;
    for (std::size_t k = 0; k < design.K(); ++k) {
        const double residual = max_abs(anticommutator(design.weight(2 * k), design.weight(2 * k + 1)));
        report.max_residual = std::max(report.max_residual, residual);
        if (residual > tol) {
            report.holds = false;
            ++report.violation_count;
            if (report.violations.size() < kMaxReportedViolations)
                report.violations.push_back({2 * k, 2 * k + 1, residual});
        }
    }
    return report;
}

bool check_iq_orthogonality(const LinearDesign& design, double tol) {
    return check_iq_orthogonality_report(design, tol).holds;
}

DesignClass classify(const LinearDesign& design, const SignalSet* set, double tol) {
    DesignClass c;
    c.sd_general = check_sd_general(design, tol);
    c.iq_orthogonality = check_iq_orthogonality_report(design, tol);
    c.is_sd_general = c.sd_general.holds;
    c.is_iq_orthogonal = c.iq_orthogonality.holds;
    c.is_sd_strict = c.is_sd_general && c.is_iq_orthogonal;

    const std::size_t n = design.N();
    bool all_full = true;
    for (const auto& w : design.weights()) {
        const std::size_t r = numeric_rank(gram(w), tol);
        c.weight_gram_ranks.push_back(r);
        all_full = all_full && r == n;
    }
    for (std::size_t k = 0; k < design.K(); ++k) {
        const CMat sum = gram(design.weight(2 * k)) + gram(design.weight(2 * k + 1));
        if (numeric_rank(sum, tol) != n) c.rank_deficient_symbols.push_back(k);
    }
    c.diversity_necessary = c.rank_deficient_symbols.empty();

    const bool fsdd = c.is_sd_strict && c.diversity_necessary;
    c.ufsdd = fsdd && all_full;
    c.restricted = fsdd && !all_full;
    if (set) {
        c.set_cpd = cpd(*set);
        c.rfsdd_with_set = c.restricted && *c.set_cpd > tol;
    }
    return c;
}

SquareRates max_square_rates(std::size_t N) {
    if (N == 0) throw Error("antenna count must be positive");
    const auto a = static_cast<std::int64_t>(std::countr_zero(N));
    const auto n = static_cast<std::int64_t>(N);
    return {Rational(a + 1, n), Rational(2 * a, n)};
}

} // namespace stbc
