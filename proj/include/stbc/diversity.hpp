#pragma once

#include "stbc/constellation.hpp"
#include "stbc/constructions.hpp"
#include "stbc/design.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stbc {

enum class GainMode { exhaustive, single_symbol };

std::string to_string(GainMode mode);

inline constexpr std::size_t kPairBudget = 1'000'000;

struct GainReport {
    bool full_diversity = false;
    /// min over pairs of det(B^H B)^(1/N); zero when some difference is rank deficient
    double coding_gain = 0.0;
    std::size_t min_rank = 0;
    /// min of det+(B^H B)^(1/r) over the pairs of minimal rank r
    double det_plus_gain = 0.0;
    std::vector<std::size_t> argmin_first;  ///< symbol indices of the first codeword
    std::vector<std::size_t> argmin_second; ///< symbol indices of the second codeword
    std::size_t pairs_checked = 0;
    GainMode mode = GainMode::exhaustive;
};

/// Product of the non-zero eigenvalues of the Hermitian PSD matrix g whose rank is r,
/// as the sum of all r x r principal minors.
double det_plus(const CMat& g, std::size_t r);

/// Brute-force determinant and rank criteria over codeword pairs of scale * S.
GainReport coding_gain(const LinearDesign& design, const SignalSet& set, GainMode mode, double scale = 1.0,
                       double tol = kDefaultTol);

bool verify_full_diversity(const LinearDesign& design, const SignalSet& set, GainMode mode = GainMode::exhaustive,
                           double tol = kDefaultTol);

struct GcpdCheck {
    double lambda;
    double gcpd;
    bool match;
};
/// Single-symbol coding gain of a composed design against the GCPD of the set, relative tolerance 1e-9.
GcpdCheck gcpd_equality_check(const GciodSpec& spec, const LinearDesign& design, const SignalSet& set);

} // namespace stbc
