#pragma once

#include "stbc/complex_matrix.hpp"
#include "stbc/constellation.hpp"
#include "stbc/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stbc {

/// Linear STBC S = sum_k x_kI A_{2k} + x_kQ A_{2k+1}, with 2K weight matrices of size L x N.
class LinearDesign {
public:
    LinearDesign(std::string name, std::size_t L, std::size_t N, std::size_t K, std::vector<CMat> weights);

    /// Builds the design from a real-linear codeword map by probing it with unit symbols.
    static LinearDesign from_map(std::string name, std::size_t L, std::size_t N, std::size_t K,
                                 const std::function<CMat(std::span<const Complex>)>& map);

    const std::string& name() const noexcept { return name_; }
    std::size_t L() const noexcept { return L_; }
    std::size_t N() const noexcept { return N_; }
    std::size_t K() const noexcept { return K_; }
    Rational rate() const { return {std::int64_t(K_), std::int64_t(L_)}; }

    const std::vector<CMat>& weights() const noexcept { return weights_; }
    const CMat& weight(std::size_t k) const { return weights_.at(k); }

    LinearDesign renamed(std::string name) const;

private:
    std::string name_;
    std::size_t L_, N_, K_;
    std::vector<CMat> weights_;
};

CMat evaluate(const LinearDesign& design, std::span<const Complex> symbols);

/// Exact entrywise equality of all weights (names are ignored).
bool same_weights(const LinearDesign& a, const LinearDesign& b, double tol = 0.0);

struct PairViolation {
    std::size_t k;
    std::size_t l;
    double residual; ///< max |entry| of A_k^H A_l + A_l^H A_k
};

struct SdReport {
    bool holds = true;
    std::size_t violation_count = 0;
    double max_residual = 0.0;
    std::vector<PairViolation> violations; ///< first kMaxReportedViolations failing pairs
};

inline constexpr std::size_t kMaxReportedViolations = 32;

/// Anticommutator condition on every weight pair outside each symbol's own I/Q pair.
SdReport check_sd_general(const LinearDesign& design, double tol = kDefaultTol);

/// Anticommutator condition on each symbol's own I/Q pair.
SdReport check_iq_orthogonality_report(const LinearDesign& design, double tol = kDefaultTol);
bool check_iq_orthogonality(const LinearDesign& design, double tol = kDefaultTol);

/// Anticommutator check over an arbitrary weight list, all k != l except partners when skip_partners.
SdReport check_anticommuting(const std::vector<CMat>& weights, bool skip_partners, double tol);

struct DesignClass {
    bool is_sd_general = false;
    bool is_iq_orthogonal = false;
    bool is_sd_strict = false;
    bool diversity_necessary = false;
    bool ufsdd = false;
    bool restricted = false; ///< SD strict, necessary condition met, some A_k^H A_k rank deficient
    std::optional<bool> rfsdd_with_set;
    std::optional<double> set_cpd;
    std::vector<std::size_t> weight_gram_ranks; ///< rank of A_k^H A_k per k
    std::vector<std::size_t> rank_deficient_symbols; ///< k whose A_2k^H A_2k + A_2k+1^H A_2k+1 is singular
    SdReport sd_general;
    SdReport iq_orthogonality;
};

DesignClass classify(const LinearDesign& design, const SignalSet* set = nullptr, double tol = kDefaultTol);

struct SquareRates {
    Rational glcod_rate;
    Rational rfsdd_rate;
};
/// (a+1)/N and 2a/N for N = 2^a b with b odd.
SquareRates max_square_rates(std::size_t N);

} // namespace stbc
