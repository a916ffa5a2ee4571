#include "stbc/constellation.hpp"

#include "stbc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace stbc {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / kPi; }

unsigned ceil_log2(std::size_t n) {
    unsigned b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

void require_pairs(const SignalSet& set) {
    if (set.size() < 2) throw Error("distance needs at least two signal points");
}

} // namespace

std::uint32_t gray_code(std::uint32_t n) noexcept { return n ^ (n >> 1); }

SignalSet make_signal_set(SetKind kind, std::size_t m, bool unit_energy) {
    SignalSet set;
    if (kind == SetKind::qam) {
        const auto q = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
        if (m < 4 || q * q != m) throw Error("QAM size must be a perfect square >= 4, got " + std::to_string(m));
        const double d = unit_energy ? std::sqrt(3.0 / (2.0 * (static_cast<double>(m) - 1.0))) : 1.0;
        const unsigned half_bits = ceil_log2(q);
        set.bits_per_symbol = 2 * half_bits;
        for (std::size_t k = 1; k <= q; ++k)
            for (std::size_t l = 1; l <= q; ++l) {
                const double re = (2.0 * double(k) - 1.0 - double(q)) * d;
                const double im = (2.0 * double(l) - 1.0 - double(q)) * d;
                set.points.emplace_back(re, im);
                set.labels.push_back((gray_code(std::uint32_t(k - 1)) << half_bits) | gray_code(std::uint32_t(l - 1)));
            }
        set.d = d;
        set.label = std::to_string(m) + "-QAM";
    } else {
        if (m < 2) throw Error("PSK size must be >= 2, got " + std::to_string(m));
        set.bits_per_symbol = ceil_log2(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double phase = 2.0 * kPi * double(k) / double(m);
            // exact values on the axes keep QPSK free of round-off
            Complex z = std::polar(1.0, phase);
            if (4 * k % m == 0) {
                static constexpr Complex axis[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                z = axis[4 * k / m];
            }
            set.points.push_back(z);
            set.labels.push_back(gray_code(std::uint32_t(k)));
        }
        set.label = std::to_string(m) + "-PSK";
    }
    return set;
}

SignalSet rotate(const SignalSet& set, double theta_deg) {
    SignalSet out = set;
    if (theta_deg == 0.0) return out;
    const Complex w = std::polar(1.0, deg2rad(theta_deg));
    for (auto& p : out.points) p *= w;
    out.rotation_deg += theta_deg;
    return out;
}

double cpd(const SignalSet& set) {
    require_pairs(set);
    double best = INFINITY;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const Complex diff = set.points[i] - set.points[j];
            best = std::min(best, std::abs(diff.real()) * std::abs(diff.imag()));
        }
    return best;
}

double gcpd(const SignalSet& set, unsigned n1, unsigned n2) {
    if (n1 == 0 || n2 == 0) throw Error("gcpd block sizes must be positive");
    if (n1 == n2) return cpd(set);
    require_pairs(set);
    const double a = 2.0 * n1 / double(n1 + n2);
    const double b = 2.0 * n2 / double(n1 + n2);
    double best = INFINITY;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const Complex diff = set.points[i] - set.points[j];
            const double di = std::abs(diff.real());
            const double dq = std::abs(diff.imag());
            const double v = std::min(std::pow(di, a) * std::pow(dq, b), std::pow(di, b) * std::pow(dq, a));
            best = std::min(best, v);
        }
    return best;
}

CpdOptimum optimal_rotation_cpd() { return {rad2deg(std::atan(2.0) / 2.0), 1.0 / std::sqrt(5.0)}; }

GcpdOptimum optimal_rotation_gcpd_qpsk(unsigned n1, unsigned n2) {
    if (n1 == 0 || n2 == 0) throw Error("gcpd block sizes must be positive");
    if (n1 < n2) std::swap(n1, n2);
    const double e1 = 2.0 * n1;
    const double e2 = 2.0 * n2;
    auto residual = [&](double x) { return std::abs(std::pow(1.0 / x - 1.0, e1) * std::pow(1.0 + x, e2) - 1.0); };

    if (n1 == n2) {
        const auto opt = optimal_rotation_cpd();
        const double x0 = std::tan(deg2rad(opt.theta_deg));
        return {x0, opt.theta_deg, opt.cpd_over_4d2, residual(x0)};
    }

    // log form of the root equation: decreasing from e2 ln 1.5 > 0 at 0.5 to -inf at 1
    auto f = [&](double x) { return e1 * std::log(1.0 / x - 1.0) + e2 * std::log1p(x); };
    double lo = 0.5;
    double hi = std::nextafter(1.0, 0.0);
    if (!(f(lo) > 0.0 && f(hi) < 0.0)) throw Error("gcpd rotation root not bracketed in (0.5, 1)");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x0 = 0.5 * (lo + hi);
    const double value = std::pow(x0, e1 / double(n1 + n2)) / (1.0 + x0 * x0);
    return {x0, rad2deg(std::atan(x0)), value, residual(x0)};
}

double mean_energy(const SignalSet& set) {
    double s = 0.0;
    for (const auto& p : set.points) s += std::norm(p);
    return set.points.empty() ? 0.0 : s / double(set.size());
}

} // namespace stbc
