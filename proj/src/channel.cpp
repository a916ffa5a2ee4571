#include "stbc/channel.hpp"

#include "stbc/error.hpp"
#include "stbc/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace stbc {

std::string to_string(ChannelKind kind) { return kind == ChannelKind::quasi_static ? "quasistatic" : "rapid"; }
std::string to_string(Decoder decoder) { return decoder == Decoder::single_symbol ? "sd" : "jointml"; }

ChannelDraw draw_channel(const ChannelModel& model, StreamRng& rng) {
    ChannelDraw draw;
    draw.kind = model.kind;
    const std::size_t count = model.kind == ChannelKind::quasi_static ? 1 : model.L;
    for (std::size_t t = 0; t < count; ++t) {
        CMat h(model.N, model.M);
        for (std::size_t i = 0; i < model.N; ++i)
            for (std::size_t j = 0; j < model.M; ++j) h(i, j) = rng.complex_gaussian();
        draw.gains.push_back(std::move(h));
    }
    return draw;
}

CMat draw_noise(std::size_t L, std::size_t M, StreamRng& rng) {
    CMat w(L, M);
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < M; ++j) w(i, j) = rng.complex_gaussian();
    return w;
}

CMat effective_channel(const ChannelDraw& draw) {
    if (draw.gains.empty()) throw Error("empty channel draw");
    if (draw.kind == ChannelKind::quasi_static) return draw.gains.front();
    CMat h = draw.gains.front();
    for (std::size_t t = 1; t < draw.gains.size(); ++t) h = vstack(h, draw.gains[t]);
    return h;
}

ExtendedDesign extend(const LinearDesign& design) {
    const std::size_t L = design.L(), N = design.N();
    ExtendedDesign ext{design, {}};
    for (const auto& w : design.weights()) {
        CMat e(L, N * L);
        for (std::size_t t = 0; t < L; ++t)
            for (std::size_t j = 0; j < N; ++j) e(t, t * N + j) = w(t, j);
        ext.ext_weights.push_back(std::move(e));
    }
    return ext;
}

CMat evaluate(const ExtendedDesign& ext, std::span<const Complex> symbols) {
    if (symbols.size() != ext.base.K()) throw DimensionError("symbol count does not match design");
    CMat s(ext.base.L(), ext.base.N() * ext.base.L());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        s += ext.ext_weights[2 * k] * symbols[k].real();
        s += ext.ext_weights[2 * k + 1] * symbols[k].imag();
    }
    return s;
}

SdReport check_rapid_sd(const ExtendedDesign& ext, double tol) {
    return check_anticommuting(ext.ext_weights, false, tol);
}

RapidDiversityReport check_rapid_full_diversity(const ExtendedDesign& ext, const SignalSet& set, std::size_t r,
                                                double tol) {
    RapidDiversityReport rep;
    auto row_nonzero = [tol](const CMat& m, std::size_t t) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (std::abs(m(t, j)) > tol) return true;
        return false;
    };
    rep.row_count_ok = true;
    for (std::size_t k = 0; k < ext.base.K() && rep.row_count_ok; ++k) {
        std::size_t rows = 0;
        for (std::size_t t = 0; t < ext.base.L(); ++t)
            if (row_nonzero(ext.ext_weights[2 * k], t) || row_nonzero(ext.ext_weights[2 * k + 1], t)) ++rows;
        if (rows < r) {
            rep.row_count_ok = false;
            rep.failing_symbol = k;
        }
    }
    rep.every_weight_rank_r = std::all_of(ext.ext_weights.begin(), ext.ext_weights.end(),
                                          [&](const CMat& w) { return numeric_rank(gram(w), tol) >= r; });
    rep.set_cpd = cpd(set);
    rep.nonzero_cpd = rep.set_cpd > tol;
    rep.holds = rep.row_count_ok && (rep.every_weight_rank_r || rep.nonzero_cpd);
    return rep;
}

Rational max_rapid_rate(std::size_t L) {
    if (L < 1) throw Error("block length must be positive");
    return {2, std::int64_t(L)};
}

double power_scale(const LinearDesign& design, const SignalSet& set) {
    const std::size_t K = design.K();
    double mi = 0, mq = 0, ii = 0, qq = 0, iq = 0;
    for (const auto& p : set.points) {
        mi += p.real();
        mq += p.imag();
        ii += p.real() * p.real();
        qq += p.imag() * p.imag();
        iq += p.real() * p.imag();
    }
    const double n = double(set.size());
    mi /= n, mq /= n, ii /= n, qq /= n, iq /= n;
    const double mean[2] = {mi, mq};
    const double second[2][2] = {{ii, iq}, {iq, qq}};

    double energy = 0.0;
    for (std::size_t a = 0; a < 2 * K; ++a)
        for (std::size_t b = 0; b < 2 * K; ++b) {
            const double m = (a / 2 == b / 2) ? second[a % 2][b % 2] : mean[a % 2] * mean[b % 2];
            if (m == 0.0) continue;
            energy += m * trace(gram(design.weight(a), design.weight(b))).real();
        }
    if (!(energy > 0)) throw Error("design carries no energy for this signal set");
    return std::sqrt(double(design.L()) / energy);
}

Link::Link(const LinearDesign& design, const SignalSet& set, ChannelKind kind, double rho)
    : design_(design), set_(set), kind_(kind) {
    if (!(rho >= 0)) throw Error("SNR must be non-negative");
    amplitude_ = std::sqrt(rho) * power_scale(design, set);
    if (kind == ChannelKind::quasi_static) {
        weights_ = design.weights();
        sd_ok_ = check_sd_general(design).holds;
    } else {
        auto ext = extend(design);
        sd_ok_ = check_rapid_sd(ext).holds;
        weights_ = std::move(ext.ext_weights);
    }
}

std::vector<CMat> Link::weighted_channel(const ChannelDraw& draw) const {
    if (draw.kind != kind_) throw Error("channel draw kind does not match the link");
    const CMat h = effective_channel(draw);
    if (h.rows() != weights_.front().cols())
        throw DimensionError("channel has " + std::to_string(h.rows()) + " rows, design needs " +
                             std::to_string(weights_.front().cols()));
    std::vector<CMat> out;
    out.reserve(weights_.size());
    for (const auto& w : weights_) out.push_back(matmul(w, h) * amplitude_);
    return out;
}

CMat Link::transmit(const std::vector<std::size_t>& symbols, const ChannelDraw& draw, const CMat& noise) const {
    if (symbols.size() != design_.K()) throw DimensionError("symbol count does not match design");
    const auto b = weighted_channel(draw);
    if (noise.rows() != b.front().rows() || noise.cols() != b.front().cols())
        throw DimensionError("noise must be L x M");
    CMat v = noise;
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        if (symbols[k] >= set_.size()) throw Error("symbol index out of range");
        const Complex s = set_.points[symbols[k]];
        v += b[2 * k] * s.real();
        v += b[2 * k + 1] * s.imag();
    }
    return v;
}

namespace {

double residual_norm(const CMat& v, const CMat& bi, const CMat& bq, Complex s) {
    double m = 0.0;
    const auto& vd = v.data();
    const auto& id = bi.data();
    const auto& qd = bq.data();
    for (std::size_t e = 0; e < vd.size(); ++e) m += std::norm(vd[e] - s.real() * id[e] - s.imag() * qd[e]);
    return m;
}

} // namespace

std::vector<std::size_t> Link::sd_decode(const CMat& V, const ChannelDraw& draw) const {
    if (!sd_ok_) throw Error("design '" + design_.name() + "' is not single-symbol decodable on this channel");
    const auto b = weighted_channel(draw);
    if (V.rows() != b.front().rows() || V.cols() != b.front().cols()) throw DimensionError("received block must be L x M");
    std::vector<std::size_t> out(design_.K());
    for (std::size_t i = 0; i < design_.K(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < set_.size(); ++c) {
            const double m = residual_norm(V, b[2 * i], b[2 * i + 1], set_.points[c]);
            if (m < best) {
                best = m;
                out[i] = c;
            }
        }
    }
    return out;
}

std::vector<std::size_t> Link::joint_ml_decode(const CMat& V, const ChannelDraw& draw) const {
    const std::size_t K = design_.K(), q = set_.size();
    if (std::pow(double(q), double(K)) > double(kJointMlBudget))
        throw BudgetError("joint ML over " + std::to_string(q) + "^" + std::to_string(K) + " codewords exceeds budget");
    const auto b = weighted_channel(draw);
    if (V.rows() != b.front().rows() || V.cols() != b.front().cols()) throw DimensionError("received block must be L x M");
    // contribution of symbol k taking point c
    std::vector<std::vector<CMat>> part(K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t c = 0; c < q; ++c) {
            const Complex s = set_.points[c];
            part[k].push_back(b[2 * k] * s.real() + b[2 * k + 1] * s.imag());
        }
    std::vector<std::size_t> idx(K, 0), best_idx(K, 0);
    double best = std::numeric_limits<double>::infinity();
    const std::size_t size = V.data().size();
    std::vector<Complex> acc(size);
    while (true) {
        std::copy(V.data().begin(), V.data().end(), acc.begin());
        for (std::size_t k = 0; k < K; ++k) {
            const auto& p = part[k][idx[k]].data();
            for (std::size_t e = 0; e < size; ++e) acc[e] -= p[e];
        }
        double m = 0.0;
        for (const auto& z : acc) m += std::norm(z);
        if (m < best) {
            best = m;
            best_idx = idx;
        }
        std::size_t k = K;
        while (k > 0 && ++idx[k - 1] == q) idx[--k] = 0;
        if (k == 0) break;
    }
    return best_idx;
}

CMat transmit(const LinearDesign& design, const SignalSet& set, const std::vector<std::size_t>& symbols,
              const ChannelDraw& draw, const CMat& noise, double rho) {
    return Link(design, set, draw.kind, rho).transmit(symbols, draw, noise);
}

std::vector<std::size_t> sd_decode(const LinearDesign& design, const SignalSet& set, const CMat& V,
                                   const ChannelDraw& draw, double rho) {
    return Link(design, set, draw.kind, rho).sd_decode(V, draw);
}

std::vector<std::size_t> joint_ml_decode(const LinearDesign& design, const SignalSet& set, const CMat& V,
                                         const ChannelDraw& draw, double rho) {
    return Link(design, set, draw.kind, rho).joint_ml_decode(V, draw);
}

namespace {

struct ChunkCount {
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
};

ChunkCount run_chunk(const Link& link, const ChannelModel& model, const SimConfig& config, std::size_t chunk) {
    ChunkCount count;
    const auto& set = link.set();
    const std::size_t K = link.design().K();
    std::vector<std::size_t> tx(K);
    const std::uint64_t first = std::uint64_t(chunk) * config.chunk_frames;
    for (std::uint64_t f = first; f < first + config.chunk_frames; ++f) {
        StreamRng rng(config.seed, f);
        for (auto& s : tx) s = rng.uniform_index(set.size());
        const ChannelDraw draw = draw_channel(model, rng);
        const CMat noise = draw_noise(model.L, model.M, rng);
        const CMat v = link.transmit(tx, draw, noise);
        const auto rx = config.decoder == Decoder::single_symbol ? link.sd_decode(v, draw) : link.joint_ml_decode(v, draw);
        for (std::size_t k = 0; k < K; ++k)
            count.bit_errors += std::uint64_t(std::popcount(set.labels[tx[k]] ^ set.labels[rx[k]]));
        ++count.frames;
    }
    return count;
}

} // namespace

BerCurve simulate_ber(const LinearDesign& design, const SignalSet& set, const ChannelModel& channel,
                      const SimConfig& config) {
    if (channel.N != design.N() || channel.L != design.L())
        throw DimensionError("channel model does not match the design dimensions");
    if (config.min_bit_errors < 100) throw Error("min_bit_errors must be at least 100");
    if (config.chunk_frames == 0) throw Error("chunk_frames must be positive");
    if (config.max_frames < config.min_frames) throw Error("max_frames must be at least min_frames");

    BerCurve curve;
    curve.design_name = design.name();
    curve.set_label = set.label;
    curve.rotation_deg = set.rotation_deg;
    curve.seed = config.seed;
    curve.channel = channel.kind;
    curve.decoder = config.decoder;
    curve.rx = channel.M;
    curve.throughput_bits = design.rate().value() * std::log2(double(set.size()));
    curve.rate_mismatched = !std::has_single_bit(set.size());

    const unsigned threads = config.threads ? config.threads : default_thread_count();
    const std::uint64_t bits_per_frame = std::uint64_t(design.K()) * set.bits_per_symbol;

    for (double snr_db : config.snr_grid_db) {
        const Link link(design, set, channel.kind, std::pow(10.0, snr_db / 10.0));
        if (config.decoder == Decoder::single_symbol && !link.single_symbol_decodable())
            throw Error("design '" + design.name() + "' is not single-symbol decodable on a " + to_string(channel.kind) +
                        " channel; use the joint ML decoder");
        BerPoint point;
        point.snr_db = snr_db;
        std::size_t next_chunk = 0;
        bool done = false;
        while (!done) {
            // chunks are scanned in index order, so the stopping point does not depend on the thread count
            std::vector<ChunkCount> wave(threads);
            parallel_for(threads, threads, [&](std::size_t i) { wave[i] = run_chunk(link, channel, config, next_chunk + i); });
            next_chunk += threads;
            for (const auto& c : wave) {
                point.frames += c.frames;
                point.bit_errors += c.bit_errors;
                const bool enough = point.frames >= config.min_frames && point.bit_errors >= config.min_bit_errors;
                if (enough || point.frames >= config.max_frames) {
                    point.min_errors_reached = point.bit_errors >= config.min_bit_errors;
                    done = true;
                    break;
                }
            }
        }
        point.bits = point.frames * bits_per_frame;
        point.ber = double(point.bit_errors) / double(point.bits);
        curve.points.push_back(point);
    }
    return curve;
}

std::optional<double> snr_at_ber(const BerCurve& curve, double target) {
    const auto& p = curve.points;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p[i].ber >= target && p[i + 1].ber <= target && p[i + 1].ber > 0) {
            const double l0 = std::log10(p[i].ber), l1 = std::log10(p[i + 1].ber), lt = std::log10(target);
            if (l0 == l1) return p[i].snr_db;
            return p[i].snr_db + (lt - l0) / (l1 - l0) * (p[i + 1].snr_db - p[i].snr_db);
        }
    }
    return std::nullopt;
}

} // namespace stbc
