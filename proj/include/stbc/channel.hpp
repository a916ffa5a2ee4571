#pragma once

#include "stbc/constellation.hpp"
#include "stbc/design.hpp"
#include "stbc/rational.hpp"
#include "stbc/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stbc {

enum class ChannelKind { quasi_static, rapid };
enum class Decoder { single_symbol, joint_ml };

std::string to_string(ChannelKind kind);
std::string to_string(Decoder decoder);

struct ChannelModel {
    ChannelKind kind = ChannelKind::quasi_static;
    std::size_t N = 1; ///< transmit antennas
    std::size_t M = 1; ///< receive antennas
    std::size_t L = 1; ///< block length
};

/// One fading realization: a single N x M matrix (quasi-static) or one per time slot (rapid).
struct ChannelDraw {
    ChannelKind kind = ChannelKind::quasi_static;
    std::vector<CMat> gains;
};

ChannelDraw draw_channel(const ChannelModel& model, StreamRng& rng);
CMat draw_noise(std::size_t L, std::size_t M, StreamRng& rng);

/// Channel seen by the extended design: H itself, or the stacked (N L) x M matrix of per-slot gains.
CMat effective_channel(const ChannelDraw& draw);

/// Weight matrices placed block-diagonally so that rapid fading becomes V = S_ext H_ext + W.
struct ExtendedDesign {
    LinearDesign base;
    std::vector<CMat> ext_weights; ///< each L x N L; row t occupies columns [t N, (t + 1) N)
};

ExtendedDesign extend(const LinearDesign& design);
CMat evaluate(const ExtendedDesign& ext, std::span<const Complex> symbols);

/// Anticommutator condition over all pairs k != l of extended weights.
SdReport check_rapid_sd(const ExtendedDesign& ext, double tol = kDefaultTol);

struct RapidDiversityReport {
    bool holds = false;
    bool row_count_ok = false;          ///< every I/Q pair spans at least r non-zero rows
    std::optional<std::size_t> failing_symbol;
    bool every_weight_rank_r = false;   ///< sufficiency case (i)
    bool nonzero_cpd = false;           ///< sufficiency case (ii)
    double set_cpd = 0.0;
};
RapidDiversityReport check_rapid_full_diversity(const ExtendedDesign& ext, const SignalSet& set, std::size_t r,
                                                double tol = kDefaultTol);

Rational max_rapid_rate(std::size_t L);

/// sqrt(L / E[tr(S^H S)]) for independent uniform symbols from the set.
double power_scale(const LinearDesign& design, const SignalSet& set);

/// Transmitter and receivers for one design, set, channel kind and SNR.
/// The codeword is scaled so that E[tr(S^H S)] = L, then by sqrt(rho).
class Link {
public:
    Link(const LinearDesign& design, const SignalSet& set, ChannelKind kind, double rho);

    const LinearDesign& design() const noexcept { return design_; }
    const SignalSet& set() const noexcept { return set_; }
    double amplitude() const noexcept { return amplitude_; }
    bool single_symbol_decodable() const noexcept { return sd_ok_; }

    CMat transmit(const std::vector<std::size_t>& symbols, const ChannelDraw& draw, const CMat& noise) const;

    /// Per-symbol argmin of ||V - (s_I A_2i + s_Q A_2i+1) H||^2; ties go to the lowest index.
    std::vector<std::size_t> sd_decode(const CMat& V, const ChannelDraw& draw) const;
    /// Exhaustive argmin over all |A|^K codewords.
    std::vector<std::size_t> joint_ml_decode(const CMat& V, const ChannelDraw& draw) const;

private:
    /// amplitude * A_k * H for every weight, each L x M.
    std::vector<CMat> weighted_channel(const ChannelDraw& draw) const;

    LinearDesign design_;
    SignalSet set_;
    ChannelKind kind_;
    std::vector<CMat> weights_; ///< base or extended weights
    double amplitude_;
    bool sd_ok_;
};

inline constexpr std::size_t kJointMlBudget = 1'000'000;

CMat transmit(const LinearDesign& design, const SignalSet& set, const std::vector<std::size_t>& symbols,
              const ChannelDraw& draw, const CMat& noise, double rho);
std::vector<std::size_t> sd_decode(const LinearDesign& design, const SignalSet& set, const CMat& V,
                                   const ChannelDraw& draw, double rho);
std::vector<std::size_t> joint_ml_decode(const LinearDesign& design, const SignalSet& set, const CMat& V,
                                         const ChannelDraw& draw, double rho);

struct SimConfig {
    std::vector<double> snr_grid_db;
    std::size_t min_frames = 1000;
    std::size_t min_bit_errors = 100;
    std::size_t max_frames = 10'000'000; ///< stop even if min_bit_errors is not reached
    std::uint64_t seed = 1;
    Decoder decoder = Decoder::single_symbol;
    unsigned threads = 0; ///< 0 selects default_thread_count()
    std::size_t chunk_frames = 512;
};

struct BerPoint {
    double snr_db = 0.0;
    double ber = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    std::uint64_t frames = 0;
    bool min_errors_reached = false;
};

struct BerCurve {
    std::string design_name;
    std::string set_label;
    double rotation_deg = 0.0;
    std::uint64_t seed = 0;
    ChannelKind channel = ChannelKind::quasi_static;
    Decoder decoder = Decoder::single_symbol;
    std::size_t rx = 1;
    /// rate * log2 |A|; differs from the labelled bits when |A| is not a power of two
    double throughput_bits = 0.0;
    bool rate_mismatched = false;
    std::vector<BerPoint> points;
};

BerCurve simulate_ber(const LinearDesign& design, const SignalSet& set, const ChannelModel& channel,
                      const SimConfig& config);

/// SNR (dB) where the curve crosses `target`, by log-linear interpolation; empty when not bracketed.
std::optional<double> snr_at_ber(const BerCurve& curve, double target);

} // namespace stbc
