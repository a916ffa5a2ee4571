#pragma once

#include "stbc/complex_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stbc {

enum class SetKind { qam, psk };

/// Finite signal set with bit labels and rotation bookkeeping.
struct SignalSet {
    std::vector<Complex> points;
    std::vector<std::uint32_t> labels; ///< Gray label of each point
    unsigned bits_per_symbol = 0;
    std::string label;
    double rotation_deg = 0.0;
    std::optional<double> d; ///< lattice half-spacing, for lattice sets

    std::size_t size() const noexcept { return points.size(); }
};

/// Square M-QAM or M-PSK. For unit-energy QAM, d = sqrt(3 / (2 (M - 1))); otherwise d = 1.
SignalSet make_signal_set(SetKind kind, std::size_t m, bool unit_energy = true);

SignalSet rotate(const SignalSet& set, double theta_deg);

/// Minimum over distinct pairs of |dI| * |dQ|.
double cpd(const SignalSet& set);

/// Generalized CPD with exponents 2 n1 / (n1 + n2) and 2 n2 / (n1 + n2),
/// taking the smaller of the two orderings for each pair.
double gcpd(const SignalSet& set, unsigned n1, unsigned n2);

struct CpdOptimum {
    double theta_deg;
    double cpd_over_4d2;
};
CpdOptimum optimal_rotation_cpd();

struct GcpdOptimum {
    double x0;
    double theta_deg;
    double gcpd_over_4d2;
    double residual; ///< |(1 - 1/x0)^(2 n1) (1 + x0)^(2 n2) - 1|
};
/// Closed-form optimum for QPSK. Arguments are reordered so that n1 >= n2;
/// n1 == n2 returns the CPD optimum.
GcpdOptimum optimal_rotation_gcpd_qpsk(unsigned n1, unsigned n2);

std::uint32_t gray_code(std::uint32_t n) noexcept;

double mean_energy(const SignalSet& set);

} // namespace stbc
