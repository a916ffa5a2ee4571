#pragma once

#include "stbc/constructions.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stbc {

/// E[log2(1 + rho X / n)] for X ~ Gamma(n, 1), by adaptive Gauss-Kronrod quadrature.
double capacity_siso_equiv(std::size_t n_eff, double rho_eff);

/// (K/L) C(M N, 1, M L rho / K)
double mmi_glcod(std::size_t N, std::size_t M, std::size_t K, std::size_t L, double rho);

/// (K / 2L) [C(M N1, 1, 2 L1 M rho / K) + C(M N2, 1, 2 L2 M rho / K)]
double mmi_gciod(const GciodSpec& spec, std::size_t M, double rho);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Monte Carlo E[log2 det(I + (rho/N) H^H H)] over iid unit-variance complex Gaussian N x M channels.
McEstimate capacity_mimo_mc(std::size_t N, std::size_t M, double rho, std::size_t samples, std::uint64_t seed,
                            unsigned threads = 0);

enum class MmiScheme { channel, glcod, gciod };
std::string to_string(MmiScheme scheme);

struct MmiPoint {
    double snr_db = 0.0;
    double bits = 0.0;
    double stderr_ = 0.0; ///< zero for closed forms
};

struct MmiCurve {
    MmiScheme scheme = MmiScheme::channel;
    std::string method; ///< "integral" or "monte-carlo"
    std::size_t samples = 0;
    std::vector<MmiPoint> points;
};

} // namespace stbc
