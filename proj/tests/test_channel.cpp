#include "stbc/channel.hpp"
#include "stbc/constructions.hpp"
#include "stbc/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stbc;
using stbc::test::random_symbols;

namespace {

const Complex j = kJ;

SignalSet qpsk_diamond() { return rotate(make_signal_set(SetKind::psk, 4), 45.0 - optimal_rotation_cpd().theta_deg); }
SignalSet qam_rotated(std::size_t m) { return rotate(make_signal_set(SetKind::qam, m), optimal_rotation_cpd().theta_deg); }

/// Weights I, jI, [[0,1],[1,0]], j[[0,1],[1,0]]: the two symbols interfere.
LinearDesign coupled_design() {
    const CMat x{{0.0, 1.0}, {1.0, 0.0}};
    return LinearDesign("coupled", 2, 2, 2, {CMat::identity(2), CMat::identity(2) * j, x, x * j});
}

/// diag(x0, x1): each symbol sits on one time slot only.
LinearDesign uninterleaved_diagonal() {
    const CMat e0{{1.0, 0.0}, {0.0, 0.0}}, e1{{0.0, 0.0}, {0.0, 1.0}};
    return LinearDesign("diag", 2, 2, 2, {e0, e0 * j, e1, e1 * j});
}

std::vector<std::size_t> random_indices(StreamRng& rng, std::size_t k, std::size_t q) {
    std::vector<std::size_t> s(k);
    for (auto& v : s) v = rng.uniform_index(q);
    return s;
}

SimConfig quick_config(std::vector<double> grid) {
    SimConfig c;
    c.snr_grid_db = std::move(grid);
    c.min_frames = 1000;
    c.min_bit_errors = 100;
    c.max_frames = 200'000;
    c.seed = 7;
    c.threads = 1;
    return c;
}

} // namespace

TEST(Transmit, NoiselessReceptionIsScaledCodewordTimesChannel) {
    const LinearDesign d = catalog("alamouti");
    const SignalSet s = make_signal_set(SetKind::psk, 4);
    StreamRng rng(1, 2);
    const ChannelDraw h = draw_channel({ChannelKind::quasi_static, 2, 2, 2}, rng);
    const std::vector<std::size_t> idx{1, 3};
    const double rho = 10.0;
    const CMat v = transmit(d, s, idx, h, CMat(2, 2), rho);
    const std::vector<Complex> x{s.points[1], s.points[3]};
    const CMat expect = evaluate(d, x) * h.gains[0] * (std::sqrt(rho) * power_scale(d, s));
    EXPECT_TRUE(approx_equal(v, expect, 1e-12));
    EXPECT_NEAR(power_scale(d, s), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(transmit(d, s, {0}, h, CMat(2, 2), rho), DimensionError);
    EXPECT_THROW(transmit(d, s, idx, h, CMat(2, 1), rho), DimensionError);
    EXPECT_THROW(transmit(d, s, {0, 4}, h, CMat(2, 2), rho), Error);
}

TEST(PowerScale, Examples) {
    EXPECT_NEAR(power_scale(catalog("ciod4"), qpsk_diamond()), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(power_scale(catalog("cod34_4"), make_signal_set(SetKind::psk, 8)), 1 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(power_scale(catalog("rate12_cod8"), make_signal_set(SetKind::qam, 16)), 0.5, 1e-12);
}

TEST(PowerScale, MatchesSampleAverageEnergy) {
    for (const char* name : {"ciod4", "gciod3", "cod34_4", "alamouti"}) {
        const LinearDesign d = catalog(name);
        const SignalSet s = rotate(make_signal_set(SetKind::psk, 8), 11.0);
        StreamRng rng(3, 0);
        double e = 0;
        const int n = 20000;
        for (int t = 0; t < n; ++t) {
            const auto idx = random_indices(rng, d.K(), s.size());
            std::vector<Complex> x(d.K());
            for (std::size_t k = 0; k < d.K(); ++k) x[k] = s.points[idx[k]];
            e += frobenius_norm_sq(evaluate(d, x));
        }
        const double scale = power_scale(d, s);
        EXPECT_NEAR(scale * scale * e / n, double(d.L()), 0.02 * double(d.L())) << name;
    }
}

TEST(Decoding, SingleSymbolEqualsJointMlForCiod4) {
    const LinearDesign d = catalog("ciod4");
    const SignalSet s = qpsk_diamond();
    const Link link(d, s, ChannelKind::quasi_static, std::pow(10.0, 1.0));
    std::size_t disagreements = 0, errors = 0;
    for (std::uint64_t t = 0; t < 10000; ++t) {
        StreamRng rng(11, t);
        const auto tx = random_indices(rng, d.K(), s.size());
        const ChannelDraw h = draw_channel({ChannelKind::quasi_static, 4, 1, 4}, rng);
        const CMat v = link.transmit(tx, h, draw_noise(4, 1, rng));
        const auto a = link.sd_decode(v, h), b = link.joint_ml_decode(v, h);
        disagreements += a != b;
        errors += a != tx;
    }
    EXPECT_EQ(disagreements, 0u);
    EXPECT_GT(errors, 0u); // the comparison covered erroneous decisions too
}

TEST(Decoding, SingleSymbolEqualsJointMlForCiod2UnderRapidFading) {
    const LinearDesign d = catalog("ciod2");
    const SignalSet s = qam_rotated(16);
    const Link link(d, s, ChannelKind::rapid, 10.0);
    ASSERT_TRUE(link.single_symbol_decodable());
    for (std::uint64_t t = 0; t < 2000; ++t) {
        StreamRng rng(5, t);
        const auto tx = random_indices(rng, 2, s.size());
        const ChannelDraw h = draw_channel({ChannelKind::rapid, 2, 2, 2}, rng);
        const CMat v = link.transmit(tx, h, draw_noise(2, 2, rng));
        EXPECT_EQ(link.sd_decode(v, h), link.joint_ml_decode(v, h));
    }
}

TEST(Decoding, SingleSymbolCodeAndTrivialDesign) {
    const LinearDesign d = catalog("trivial1");
    const SignalSet s = make_signal_set(SetKind::psk, 8);
    const Link link(d, s, ChannelKind::quasi_static, 1e6);
    for (std::uint64_t t = 0; t < 200; ++t) {
        StreamRng rng(9, t);
        const auto tx = random_indices(rng, 1, s.size());
        const ChannelDraw h = draw_channel({ChannelKind::quasi_static, 1, 2, 1}, rng);
        const CMat v = link.transmit(tx, h, draw_noise(1, 2, rng));
        EXPECT_EQ(link.sd_decode(v, h), tx);
        EXPECT_EQ(link.joint_ml_decode(v, h), tx);
    }
}

TEST(Decoding, RefusesSingleSymbolDecodingOfCoupledDesigns) {
    const SignalSet s = make_signal_set(SetKind::psk, 4);
    StreamRng rng(1, 1);
    const ChannelDraw h = draw_channel({ChannelKind::quasi_static, 2, 1, 2}, rng);
    EXPECT_THROW(sd_decode(coupled_design(), s, CMat(2, 1), h, 1.0), Error);
    EXPECT_NO_THROW(joint_ml_decode(coupled_design(), s, CMat(2, 1), h, 1.0));
    const ChannelDraw r = draw_channel({ChannelKind::rapid, 2, 1, 2}, rng);
    EXPECT_THROW(sd_decode(catalog("alamouti"), s, CMat(2, 1), r, 1.0), Error);
    EXPECT_THROW(joint_ml_decode(catalog("ciod8"), make_signal_set(SetKind::qam, 16), CMat(8, 1),
                                 draw_channel({ChannelKind::quasi_static, 8, 1, 8}, rng), 1.0),
                 BudgetError);
    EXPECT_THROW(simulate_ber(catalog("alamouti"), s, {ChannelKind::rapid, 2, 1, 2}, quick_config({10})), Error);
    EXPECT_THROW(sd_decode(catalog("alamouti"), s, CMat(2, 1), r, 1.0), Error);
    EXPECT_THROW(Link(catalog("alamouti"), s, ChannelKind::quasi_static, -1.0), Error);
}

TEST(Decoding, ChannelKindMismatchIsRejected) {
    const LinearDesign d = catalog("ciod2");
    const SignalSet s = qam_rotated(4);
    StreamRng rng(1, 1);
    const ChannelDraw r = draw_channel({ChannelKind::rapid, 2, 1, 2}, rng);
    const Link quasi(d, s, ChannelKind::quasi_static, 1.0);
    EXPECT_THROW(quasi.sd_decode(CMat(2, 1), r), Error);
}

TEST(RapidFading, ExtendedCodewordExamples) {
    const LinearDesign d = catalog("alamouti");
    const ExtendedDesign ext = extend(d);
    ASSERT_EQ(ext.ext_weights.size(), 4u);
    EXPECT_EQ(ext.ext_weights[0].rows(), 2u);
    EXPECT_EQ(ext.ext_weights[0].cols(), 4u);
    const auto x = random_symbols(2);
    const CMat s = evaluate(ext, x);
    const CMat expect{{x[0], x[1], 0.0, 0.0}, {0.0, 0.0, -std::conj(x[1]), std::conj(x[0])}};
    EXPECT_TRUE(approx_equal(s, expect, 1e-15));
    // S_ext^H S_ext keeps the cross term conj(x0) x1 that quasi-static fading cancels
    const CMat g = gram(s);
    EXPECT_NEAR(std::abs(g(0, 1) - std::conj(x[0]) * x[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(gram(evaluate(d, x))(0, 1)), 0.0, 1e-12);
}

TEST(RapidFading, ExtendedCodewordPreservesEnergyAndRowProducts) {
    for (const auto& name : catalog_names()) {
        const LinearDesign d = catalog(name);
        const ExtendedDesign ext = extend(d);
        for (int t = 0; t < 10; ++t) {
            const auto x = random_symbols(d.K());
            const CMat s = evaluate(d, x), se = evaluate(ext, x);
            EXPECT_NEAR(trace(gram(se)).real(), trace(gram(s)).real(), 1e-9) << name;
            // equal per-slot gains reduce the rapid model to the quasi-static one
            StreamRng rng(2, std::uint64_t(t));
            const ChannelDraw h = draw_channel({ChannelKind::quasi_static, d.N(), 2, d.L()}, rng);
            const ChannelDraw same{ChannelKind::rapid, std::vector<CMat>(d.L(), h.gains[0])};
            EXPECT_TRUE(approx_equal(se * effective_channel(same), s * h.gains[0], 1e-12)) << name;
        }
    }
}

TEST(RapidFading, SingleSymbolDecodabilityExamples) {
    EXPECT_TRUE(check_rapid_sd(extend(catalog("ciod2"))).holds);
    EXPECT_TRUE(check_rapid_sd(extend(catalog("trivial1"))).holds);
    const SdReport al = check_rapid_sd(extend(catalog("alamouti")));
    EXPECT_FALSE(al.holds);
    ASSERT_FALSE(al.violations.empty());
    EXPECT_EQ(al.violations.front().k, 0u);
    EXPECT_EQ(al.violations.front().l, 2u);
    EXPECT_FALSE(check_rapid_sd(extend(catalog("ciod4"))).holds);
    EXPECT_FALSE(check_rapid_sd(extend(catalog("cod34_4"))).holds);
}

TEST(RapidFading, FullDiversityExamples) {
    const ExtendedDesign c2 = extend(catalog("ciod2"));
    const RapidDiversityReport rot = check_rapid_full_diversity(c2, qam_rotated(4), 2);
    EXPECT_TRUE(rot.holds);
    EXPECT_TRUE(rot.row_count_ok);
    EXPECT_FALSE(rot.every_weight_rank_r);
    EXPECT_TRUE(rot.nonzero_cpd);
    EXPECT_NEAR(rot.set_cpd, 2 / std::sqrt(5.0), 1e-12);
    const RapidDiversityReport plain = check_rapid_full_diversity(c2, make_signal_set(SetKind::qam, 4), 2);
    EXPECT_FALSE(plain.holds);
    EXPECT_TRUE(plain.row_count_ok);

    const RapidDiversityReport diag = check_rapid_full_diversity(extend(uninterleaved_diagonal()), qam_rotated(4), 2);
    EXPECT_FALSE(diag.holds);
    EXPECT_FALSE(diag.row_count_ok);
    EXPECT_EQ(diag.failing_symbol, 0u);
    EXPECT_TRUE(check_rapid_full_diversity(extend(uninterleaved_diagonal()), qam_rotated(4), 1).holds);
}

TEST(RapidFading, MaximumRate) {
    EXPECT_EQ(max_rapid_rate(2), Rational(1));
    EXPECT_EQ(max_rapid_rate(4), Rational(1, 2));
    EXPECT_EQ(max_rapid_rate(1), Rational(2));
    EXPECT_EQ(catalog("ciod2").rate(), max_rapid_rate(2));
    EXPECT_THROW(max_rapid_rate(0), Error);
}

TEST(Simulation, HighSnrGivesNoErrors) {
    SimConfig c = quick_config({60});
    c.max_frames = 1000;
    const BerCurve curve = simulate_ber(catalog("ciod4"), qpsk_diamond(), {ChannelKind::quasi_static, 4, 1, 4}, c);
    ASSERT_EQ(curve.points.size(), 1u);
    EXPECT_EQ(curve.points[0].bit_errors, 0u);
    EXPECT_EQ(curve.points[0].ber, 0.0);
    EXPECT_EQ(curve.points[0].frames, 1024u);
    EXPECT_EQ(curve.points[0].bits, 1024u * 8u);
    EXPECT_FALSE(curve.points[0].min_errors_reached);
}

TEST(Simulation, TransmitDiversityBeatsSingleAntenna) {
    const SignalSet s = make_signal_set(SetKind::psk, 4);
    const SimConfig c = quick_config({15});
    const double coded =
        simulate_ber(catalog("alamouti"), s, {ChannelKind::quasi_static, 2, 1, 2}, c).points[0].ber;
    const double uncoded = simulate_ber(catalog("trivial1"), s, {ChannelKind::quasi_static, 1, 1, 1}, c).points[0].ber;
    EXPECT_LT(coded, uncoded / 3);
    // single-antenna Rayleigh QPSK with Gray labels: 0.5 (1 - sqrt(g / (1 + g))), g = rho / 2
    const double g = std::pow(10.0, 1.5) / 2;
    EXPECT_NEAR(uncoded, 0.5 * (1 - std::sqrt(g / (1 + g))), 0.2 * uncoded);
}

TEST(Simulation, DeterministicAndIndependentOfThreadCount) {
    SimConfig c = quick_config({0, 5, 10});
    const ChannelModel m{ChannelKind::quasi_static, 4, 1, 4};
    const BerCurve a = simulate_ber(catalog("ciod4"), qpsk_diamond(), m, c);
    const BerCurve b = simulate_ber(catalog("ciod4"), qpsk_diamond(), m, c);
    c.threads = 3;
    const BerCurve t3 = simulate_ber(catalog("ciod4"), qpsk_diamond(), m, c);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(a.points[i].bit_errors, b.points[i].bit_errors);
        EXPECT_EQ(a.points[i].frames, b.points[i].frames);
        EXPECT_EQ(a.points[i].bit_errors, t3.points[i].bit_errors);
        EXPECT_EQ(a.points[i].frames, t3.points[i].frames);
        EXPECT_TRUE(a.points[i].min_errors_reached);
        if (i) EXPECT_LT(a.points[i].ber, a.points[i - 1].ber);
    }
    c.seed = 8;
    const BerCurve other = simulate_ber(catalog("ciod4"), qpsk_diamond(), m, c);
    EXPECT_NE(other.points[0].bit_errors, a.points[0].bit_errors);
}

TEST(Simulation, ConfigurationIsValidated) {
    SimConfig c = quick_config({0});
    c.min_bit_errors = 99;
    EXPECT_THROW(simulate_ber(catalog("alamouti"), make_signal_set(SetKind::psk, 4), {ChannelKind::quasi_static, 2, 1, 2}, c),
                 Error);
    EXPECT_THROW(simulate_ber(catalog("alamouti"), make_signal_set(SetKind::psk, 4),
                              {ChannelKind::quasi_static, 3, 1, 2}, quick_config({0})),
                 DimensionError);
    const BerCurve r = simulate_ber(catalog("alamouti"), make_signal_set(SetKind::psk, 4),
                                    {ChannelKind::rapid, 2, 1, 2}, [] {
                                        SimConfig j = quick_config({10});
                                        j.decoder = Decoder::joint_ml;
                                        return j;
                                    }());
    EXPECT_GT(r.points[0].bit_errors, 0u);
    EXPECT_EQ(r.channel, ChannelKind::rapid);
}

TEST(Simulation, ThroughputBookkeeping) {
    SimConfig c = quick_config({0});
    const BerCurve p6 = simulate_ber(catalog("ciod2"), rotate(make_signal_set(SetKind::psk, 6), 5.0),
                                     {ChannelKind::quasi_static, 2, 1, 2}, c);
    EXPECT_TRUE(p6.rate_mismatched);
    EXPECT_NEAR(p6.throughput_bits, std::log2(6.0), 1e-12);
    const BerCurve q = simulate_ber(catalog("ciod4"), qpsk_diamond(), {ChannelKind::quasi_static, 4, 1, 4}, c);
    EXPECT_FALSE(q.rate_mismatched);
    EXPECT_EQ(q.throughput_bits, 2.0);
}

TEST(SnrAtBer, LogLinearInterpolation) {
    BerCurve c;
    c.points = {{0, 1e-1}, {10, 1e-3}, {20, 1e-4}};
    EXPECT_NEAR(*snr_at_ber(c, 1e-2), 5.0, 1e-12);
    EXPECT_NEAR(*snr_at_ber(c, 1e-3), 10.0, 1e-12);
    EXPECT_NEAR(*snr_at_ber(c, std::pow(10.0, -3.5)), 15.0, 1e-12);
    EXPECT_FALSE(snr_at_ber(c, 1e-5).has_value());
    EXPECT_FALSE(snr_at_ber(c, 0.5).has_value());
}
