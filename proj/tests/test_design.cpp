#include "stbc/constellation.hpp"
#include "stbc/constructions.hpp"
#include "stbc/design.hpp"
#include "stbc/design_json.hpp"
#include "stbc/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <utility>

using namespace stbc;
using stbc::test::cross_term_design;
using stbc::test::random_symbols;

namespace {

const Complex j = kJ;

SignalSet diamond_qpsk() { return rotate(make_signal_set(SetKind::psk, 4), 13.2825); }

std::set<std::pair<std::size_t, std::size_t>> violation_set(const SdReport& r) {
    std::set<std::pair<std::size_t, std::size_t>> s;
    for (const auto& v : r.violations) s.insert({v.k, v.l});
    return s;
}

} // namespace

TEST(Evaluate, Examples) {
    const std::vector<Complex> x{1.0, j};
    EXPECT_TRUE(approx_equal(evaluate(catalog("alamouti"), x), CMat{{1.0, j}, {j, 1.0}}, 0.0));

    const LinearDesign c4 = catalog("ciod4");
    EXPECT_TRUE(approx_equal(evaluate(c4, std::vector<Complex>(4)), CMat(4, 4), 0.0));

    const std::vector<Complex> y{{1, 2}, {3, 4}};
    EXPECT_TRUE(approx_equal(evaluate(catalog("ciod2"), y), CMat::diagonal({{1, 4}, {3, 2}}), 0.0));

    EXPECT_THROW(evaluate(c4, std::vector<Complex>(3)), DimensionError);
}

TEST(LinearDesign, ValidatesShape) {
    EXPECT_THROW(LinearDesign("x", 2, 2, 1, {CMat(2, 2)}), DimensionError);
    EXPECT_THROW(LinearDesign("x", 2, 2, 1, {CMat(2, 2), CMat(2, 1)}), DimensionError);
    EXPECT_THROW(LinearDesign("x", 1, 2, 1, {CMat(1, 2), CMat(1, 2)}), Error);
    EXPECT_THROW(LinearDesign("x", 1, 1, 0, {}), Error);
    EXPECT_EQ(catalog("cod34_4").rate(), Rational(3, 4));
}

TEST(SdGeneral, Examples) {
    EXPECT_TRUE(check_sd_general(catalog("alamouti")).holds);

    const LinearDesign ex = cross_term_design();
    EXPECT_TRUE(check_sd_general(ex).holds);
    EXPECT_GT(max_abs(anticommutator(ex.weight(0), ex.weight(1))), 1.0);

    const CMat id = CMat::identity(2);
    const LinearDesign bad("bad", 2, 2, 2, {id, CMat(2, 2), id, CMat(2, 2)});
    const SdReport r = check_sd_general(bad);
    EXPECT_FALSE(r.holds);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].k, 0u);
    EXPECT_EQ(r.violations[0].l, 2u);
    EXPECT_DOUBLE_EQ(r.violations[0].residual, 2.0);
}

TEST(IqOrthogonality, Examples) {
    EXPECT_TRUE(check_iq_orthogonality(catalog("alamouti")));
    EXPECT_FALSE(check_iq_orthogonality(cross_term_design()));
    EXPECT_TRUE(check_iq_orthogonality(catalog("ciod4")));
}

TEST(IqOrthogonality, CrossTermTableOfTwoSymbolDesign) {
    // every anticommutator written out by hand
    const LinearDesign ex = cross_term_design();
    const CMat swap{{0.0, 1.0}, {1.0, 0.0}};
    const CMat expected_iq = swap * 2.0; // same for both symbols
    EXPECT_TRUE(approx_equal(anticommutator(ex.weight(0), ex.weight(1)), expected_iq, 1e-15));
    EXPECT_TRUE(approx_equal(anticommutator(ex.weight(2), ex.weight(3)), expected_iq, 1e-15));
    for (auto [k, l] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}})
        EXPECT_TRUE(approx_equal(anticommutator(ex.weight(k), ex.weight(l)), CMat(2, 2), 1e-15)) << k << "," << l;
    const SdReport iq = check_iq_orthogonality_report(ex);
    ASSERT_EQ(iq.violations.size(), 2u);
    EXPECT_EQ(iq.violations[0].k, 0u);
    EXPECT_EQ(iq.violations[1].k, 2u);
}

TEST(SdGeneral, ViolationSetSymmetricUnderRoleSwap) {
    for (int t = 0; t < 30; ++t) {
        // random 0/±1/±j weights produce a mix of passing and failing pairs
        std::uniform_int_distribution<int> pick(0, 4);
        const Complex vals[] = {0.0, 1.0, -1.0, j, -j};
        std::vector<CMat> w;
        for (int k = 0; k < 6; ++k) {
            CMat m(2, 2);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) m(a, b) = vals[pick(stbc::test::rng())];
            w.push_back(m);
        }
        const LinearDesign d("random", 2, 2, 3, w);
        // reverse the symbol order, keeping I/Q pairs together
        std::vector<CMat> rev;
        for (int k = 2; k >= 0; --k) {
            rev.push_back(w[2 * k]);
            rev.push_back(w[2 * k + 1]);
        }
        const LinearDesign r("reversed", 2, 2, 3, rev);
        auto mirrored = [](std::size_t idx) { return (2 - idx / 2) * 2 + idx % 2; };
        std::set<std::pair<std::size_t, std::size_t>> expected;
        for (auto [k, l] : violation_set(check_sd_general(d)))
            expected.insert({std::min(mirrored(k), mirrored(l)), std::max(mirrored(k), mirrored(l))});
        EXPECT_EQ(violation_set(check_sd_general(r)), expected);
        for (std::size_t k = 0; k < 6; ++k)
            for (std::size_t l = 0; l < 6; ++l)
                EXPECT_TRUE(approx_equal(anticommutator(w[k], w[l]), anticommutator(w[l], w[k]), 0.0));
    }
}

TEST(SdGeneral, GramHasNoCrossTerms) {
    for (const auto& name : {"alamouti", "cod34_4", "ciod2", "ciod4", "gciod3", "ciod8", "rate12_cod8"}) {
        const LinearDesign d = catalog(name);
        ASSERT_TRUE(check_sd_general(d).holds && check_iq_orthogonality(d)) << name;
        for (int t = 0; t < 100; ++t) {
            const auto x = random_symbols(d.K());
            const CMat s = evaluate(d, x);
            CMat sum(d.N(), d.N());
            for (std::size_t k = 0; k < d.K(); ++k) {
                const CMat tk = d.weight(2 * k) * x[k].real() + d.weight(2 * k + 1) * x[k].imag();
                sum += gram(tk);
            }
            EXPECT_LT(max_abs(gram(s) - sum), 1e-9) << name;
        }
    }
}

TEST(SdGeneral, BlockGramOfFourAntennaInterleavedCode) {
    const LinearDesign d = catalog("ciod4");
    for (int t = 0; t < 100; ++t) {
        const auto x = random_symbols(4);
        // x~_i = x_iI + j x_(i+2 mod 4)Q
        std::vector<Complex> xt(4);
        for (std::size_t i = 0; i < 4; ++i) xt[i] = {x[i].real(), x[(i + 2) % 4].imag()};
        const double a = std::norm(xt[0]) + std::norm(xt[1]);
        const double b = std::norm(xt[2]) + std::norm(xt[3]);
        const CMat expected = CMat::diagonal({a, a, b, b});
        EXPECT_LT(max_abs(gram(evaluate(d, x)) - expected), 1e-9);
    }
}

TEST(Classify, Examples) {
    const DesignClass a = classify(catalog("alamouti"));
    EXPECT_TRUE(a.ufsdd);
    EXPECT_TRUE(a.is_sd_strict);
    EXPECT_FALSE(a.restricted);

    const SignalSet rotated = diamond_qpsk();
    const DesignClass c = classify(catalog("ciod4"), &rotated);
    EXPECT_TRUE(c.is_sd_strict);
    EXPECT_TRUE(c.diversity_necessary);
    EXPECT_FALSE(c.ufsdd);
    ASSERT_TRUE(c.rfsdd_with_set.has_value());
    EXPECT_TRUE(*c.rfsdd_with_set);

    const SignalSet plain = make_signal_set(SetKind::qam, 4);
    const DesignClass u = classify(catalog("ciod4"), &plain);
    EXPECT_TRUE(u.restricted);
    EXPECT_FALSE(*u.rfsdd_with_set);
    EXPECT_EQ(*u.set_cpd, 0.0);
}

TEST(Classify, FlagImplicationsAndExclusivity) {
    const SignalSet sets[] = {diamond_qpsk(), make_signal_set(SetKind::qam, 4)};
    std::vector<LinearDesign> designs;
    for (const auto& n : catalog_names()) designs.push_back(catalog(n));
    designs.push_back(cross_term_design());
    for (const auto& d : designs)
        for (const auto& s : sets) {
            const DesignClass c = classify(d, &s);
            if (c.is_sd_strict) EXPECT_TRUE(c.is_sd_general) << d.name();
            if (c.ufsdd) EXPECT_TRUE(c.diversity_necessary) << d.name();
            EXPECT_FALSE(c.ufsdd && c.rfsdd_with_set.value_or(false)) << d.name();
        }
}

TEST(Classify, SumGramNecessaryConditionFails) {
    // x0 only ever reaches the first antenna
    const CMat e00{{1.0, 0.0}, {0.0, 0.0}}, e11{{0.0, 0.0}, {0.0, 1.0}};
    const LinearDesign d("deficient", 2, 2, 2, {e00, e00 * j, e11, e11 * j});
    const DesignClass c = classify(d);
    EXPECT_TRUE(c.is_sd_strict);
    EXPECT_FALSE(c.diversity_necessary);
    EXPECT_EQ(c.rank_deficient_symbols, (std::vector<std::size_t>{0, 1}));
}

TEST(MaxSquareRates, Examples) {
    EXPECT_EQ(max_square_rates(2).glcod_rate, Rational(1));
    EXPECT_EQ(max_square_rates(2).rfsdd_rate, Rational(1));
    EXPECT_EQ(max_square_rates(8).glcod_rate, Rational(1, 2));
    EXPECT_EQ(max_square_rates(8).rfsdd_rate, Rational(3, 4));
    EXPECT_EQ(max_square_rates(4).glcod_rate, Rational(3, 4));
    EXPECT_EQ(max_square_rates(4).rfsdd_rate, Rational(1));
    EXPECT_EQ(max_square_rates(12).glcod_rate, Rational(1, 4));
    EXPECT_EQ(max_square_rates(12).rfsdd_rate, Rational(1, 3));
    EXPECT_THROW(max_square_rates(0), Error);
}

TEST(MaxSquareRates, RestrictedRateDominatesOnPowersOfTwo) {
    for (std::size_t n = 2; n <= 1024; n *= 2) {
        const auto r = max_square_rates(n);
        if (n == 2) EXPECT_EQ(r.rfsdd_rate, r.glcod_rate);
        else EXPECT_GT(r.rfsdd_rate, r.glcod_rate) << n;
    }
    // for even N the restricted rate never falls below the GLCOD rate
    for (std::size_t n = 2; n <= 200; n += 2) EXPECT_GE(max_square_rates(n).rfsdd_rate, max_square_rates(n).glcod_rate);
}

TEST(DesignJson, RoundTripIsBitExact) {
    for (const auto& name : catalog_names()) {
        const LinearDesign d = catalog(name);
        const LinearDesign back = design_from_json(nlohmann::json::parse(design_to_json(d).dump()));
        EXPECT_TRUE(same_weights(d, back)) << name;
        EXPECT_EQ(back.name(), d.name());
    }
    std::vector<CMat> w;
    for (int k = 0; k < 4; ++k) w.push_back(stbc::test::random_matrix(3, 2) * (1.0 / 3.0));
    const LinearDesign r("random", 3, 2, 2, w);
    EXPECT_TRUE(same_weights(r, design_from_json(nlohmann::json::parse(design_to_json(r).dump()))));
}

TEST(DesignJson, RejectsMalformed) {
    nlohmann::json j = design_to_json(catalog("alamouti"));
    j["K"] = 3;
    EXPECT_THROW(design_from_json(j), Error);
    j = design_to_json(catalog("alamouti"));
    j["weights"][0][0][0] = {1.0};
    EXPECT_THROW(design_from_json(j), Error);
    j = design_to_json(catalog("alamouti"));
    j.erase("L");
    EXPECT_THROW(design_from_json(j), Error);
}
