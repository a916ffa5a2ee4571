#include "stbc/mmi.hpp"

#include "stbc/error.hpp"
#include "stbc/parallel.hpp"
#include "stbc/rng.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace stbc {

double capacity_siso_equiv(std::size_t n_eff, double rho_eff) {
    if (n_eff < 1) throw Error("effective diversity order must be >= 1");
    if (!(rho_eff >= 0)) throw Error("effective SNR must be non-negative");
    if (rho_eff == 0.0) return 0.0;
    const double n = double(n_eff);
    const double log_norm = std::lgamma(n);
    const double a = rho_eff / n;
    auto density_times_log = [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::log1p(a * x) * std::exp((n - 1.0) * std::log(x) - x - log_norm);
    };
    using boost::math::quadrature::gauss_kronrod;
    // split at the mode so the peak of large-order densities is resolved
    const double split = std::max(1.0, n - 1.0);
    double err_lo = 0.0, err_hi = 0.0;
    const double lo = gauss_kronrod<double, 61>::integrate(density_times_log, 0.0, split, 15, 1e-13, &err_lo);
    const double hi = gauss_kronrod<double, 61>::integrate(density_times_log, split,
                                                           std::numeric_limits<double>::infinity(), 15, 1e-13, &err_hi);
    return (lo + hi) / std::log(2.0);
}

double mmi_glcod(std::size_t N, std::size_t M, std::size_t K, std::size_t L, double rho) {
    if (N < 1 || M < 1 || K < 1 || L < 1) throw Error("GLCOD parameters must be positive");
    const double k = double(K), l = double(L);
    return k / l * capacity_siso_equiv(M * N, double(M) * l * rho / k);
}

double mmi_gciod(const GciodSpec& spec, std::size_t M, double rho) {
    if (spec.K == 0 || spec.K % 2 || spec.N1 < 1 || spec.N2 < 1 || spec.L1 < 1 || spec.L2 < 1 || M < 1)
        throw Error("invalid GCIOD parameters");
    const double k = double(spec.K), l = double(spec.L()), m = double(M);
    return k / (2.0 * l) *
           (capacity_siso_equiv(M * spec.N1, 2.0 * double(spec.L1) * m * rho / k) +
            capacity_siso_equiv(M * spec.N2, 2.0 * double(spec.L2) * m * rho / k));
}

namespace {

double log2_det_hermitian_pd(CMat a) {
    // positive definite, so elimination needs no pivoting
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const double p = a(c, c).real();
        s += std::log2(p);
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex f = a(r, c) / p;
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return s;
}

} // namespace

McEstimate capacity_mimo_mc(std::size_t N, std::size_t M, double rho, std::size_t samples, std::uint64_t seed,
                            unsigned threads) {
    if (samples < 1000) throw Error("Monte Carlo capacity needs at least 1000 samples");
    if (N < 1 || M < 1) throw Error("antenna counts must be positive");
    if (!(rho >= 0)) throw Error("SNR must be non-negative");
    if (rho == 0.0) return {0.0, 0.0};

    constexpr std::size_t chunk = 1000;
    const std::size_t chunks = (samples + chunk - 1) / chunk;
    std::vector<double> sum(chunks), sum_sq(chunks);
    parallel_for(chunks, threads ? threads : default_thread_count(), [&](std::size_t c) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = c * chunk; i < std::min(samples, (c + 1) * chunk); ++i) {
            StreamRng rng(seed, i);
            CMat h(N, M);
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t b = 0; b < M; ++b) h(a, b) = rng.complex_gaussian();
            CMat g = gram(h) * (rho / double(N));
            for (std::size_t d = 0; d < M; ++d) g(d, d) += 1.0;
            const double v = log2_det_hermitian_pd(std::move(g));
            s += v;
            s2 += v * v;
        }
        sum[c] = s;
        sum_sq[c] = s2;
    });
    double s = 0.0, s2 = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        s += sum[c];
        s2 += sum_sq[c];
    }
    const double n = double(samples);
    const double mean = s / n;
    const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

std::string to_string(MmiScheme scheme) {
    switch (scheme) {
    case MmiScheme::channel: return "channel";
    case MmiScheme::glcod: return "glcod";
    case MmiScheme::gciod: return "gciod";
    }
    return "unknown";
}

} // namespace stbc
