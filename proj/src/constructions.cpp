#include "stbc/constructions.hpp"

#include "stbc/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace stbc {

namespace {

using Symbols = std::span<const Complex>;

Complex conj(Complex z) { return std::conj(z); }

/// x~_i = Re x_i + j Im x_{(i + K/2) mod K}
std::vector<Complex> interleave(Symbols x, const std::vector<std::size_t>& map) {
    std::vector<Complex> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = {x[i].real(), x[map[i]].imag()};
    return out;
}

std::vector<std::size_t> half_shift_map(std::size_t K) {
    std::vector<std::size_t> map(K);
    for (std::size_t i = 0; i < K; ++i) map[i] = (i + K / 2) % K;
    return map;
}

CMat alamouti_matrix(Complex x0, Complex x1) { return {{x0, x1}, {-conj(x1), conj(x0)}}; }

CMat cod34_matrix(Complex x0, Complex x1, Complex x2) {
    return {{x0, x1, x2, 0.0}, {-conj(x1), conj(x0), 0.0, x2}, {-conj(x2), 0.0, conj(x0), -x1}, {0.0, -conj(x2), conj(x1), x0}};
}

CMat glcod_matrix(unsigned stage, Symbols x) {
    if (stage == 0) return {{x[0]}};
    const CMat g = glcod_matrix(stage - 1, x.first(stage));
    const Complex xk = x[stage];
    const std::size_t n = g.rows();
    CMat out(2 * n, 2 * n);
    const CMat gh = conj_transpose(g);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = g(i, j);
            out(n + i, n + j) = gh(i, j);
        }
        out(i, n + i) = xk;
        out(n + i, i) = -conj(xk);
    }
    return out;
}

LinearDesign make_alamouti() {
    return LinearDesign::from_map("alamouti", 2, 2, 2, [](Symbols x) { return alamouti_matrix(x[0], x[1]); });
}

LinearDesign make_cod34() {
    return LinearDesign::from_map("cod34_4", 4, 4, 3, [](Symbols x) { return cod34_matrix(x[0], x[1], x[2]); });
}

LinearDesign make_ciod2() {
    return LinearDesign::from_map("ciod2", 2, 2, 2, [](Symbols x) {
        return CMat::diagonal({{x[0].real(), x[1].imag()}, {x[1].real(), x[0].imag()}});
    });
}

CMat ciod4_matrix(Symbols x) {
    const double x0i = x[0].real(), x0q = x[0].imag(), x1i = x[1].real(), x1q = x[1].imag();
    const double x2i = x[2].real(), x2q = x[2].imag(), x3i = x[3].real(), x3q = x[3].imag();
    return {{{x0i, x2q}, {x1i, x3q}, 0.0, 0.0},
            {{-x1i, x3q}, {x0i, -x2q}, 0.0, 0.0},
            {0.0, 0.0, {x2i, x0q}, {x3i, x1q}},
            {0.0, 0.0, {-x3i, x1q}, {x2i, -x0q}}};
}

LinearDesign make_ciod4() { return LinearDesign::from_map("ciod4", 4, 4, 4, ciod4_matrix); }

LinearDesign make_gciod3() {
    return LinearDesign::from_map("gciod3", 4, 3, 4, [](Symbols x) { return select_columns(ciod4_matrix(x), {0, 1, 2}); });
}

LinearDesign make_ciod8() {
    const auto map = half_shift_map(6);
    return LinearDesign::from_map("ciod8", 8, 8, 6, [map](Symbols x) {
        const auto t = interleave(x, map);
        return block_diag(cod34_matrix(t[0], t[1], t[2]), cod34_matrix(t[3], t[4], t[5]));
    });
}

LinearDesign make_rate12_cod8() {
    return LinearDesign::from_map("rate12_cod8", 8, 4, 4, [](Symbols x) {
        const CMat top{{x[0], x[1], x[2], x[3]},
                       {-x[1], x[0], -x[3], x[2]},
                       {-x[2], x[3], x[0], -x[1]},
                       {-x[3], -x[2], x[1], x[0]}};
        CMat bottom = top;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) bottom(i, j) = conj(top(i, j));
        return vstack(top, bottom);
    });
}

LinearDesign make_trivial1() {
    return LinearDesign::from_map("trivial1", 1, 1, 1, [](Symbols x) { return CMat{{x[0]}}; });
}

const std::map<std::string, LinearDesign (*)()>& registry() {
    static const std::map<std::string, LinearDesign (*)()> r{
        {"alamouti", make_alamouti}, {"cod34_4", make_cod34},         {"ciod2", make_ciod2},
        {"ciod4", make_ciod4},       {"gciod3", make_gciod3},         {"ciod8", make_ciod8},
        {"rate12_cod8", make_rate12_cod8}, {"trivial1", make_trivial1},
    };
    return r;
}

std::string joined_names() {
    std::string s;
    for (const auto& n : catalog_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
}

} // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

LinearDesign catalog(const std::string& name) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw Error("unknown design '" + name + "'; valid names: " + joined_names());
    return it->second();
}

GciodDesign catalog_gciod(const std::string& name) {
    GciodDesign g = [&] {
        if (name == "ciod2") return compose_gciod(catalog("trivial1"), catalog("trivial1"));
        if (name == "ciod4") return compose_gciod(catalog("alamouti"), catalog("alamouti"));
        if (name == "gciod3") return compose_gciod(catalog("alamouti"), delete_columns(catalog("alamouti"), {1}));
        if (name == "ciod8") return compose_gciod(catalog("cod34_4"), catalog("cod34_4"));
        throw Error("'" + name + "' is not a coordinate interleaved catalog design");
    }();
    g.design = g.design.renamed(name);
    return g;
}

LinearDesign square_glcod(unsigned stage) {
    if (stage > 6) throw Error("square_glcod stage limited to 6 (64 antennas)");
    const std::size_t n = std::size_t{1} << stage;
    return LinearDesign::from_map("glcod" + std::to_string(n), n, n, stage + 1,
                                  [stage](Symbols x) { return glcod_matrix(stage, x); });
}

LinearDesign square_ciod(std::size_t N) {
    if (N < 2 || !std::has_single_bit(N))
        throw Error("square CIOD needs an even power-of-two size, got " + std::to_string(N));
    const auto stage = static_cast<unsigned>(std::countr_zero(N)) - 1;
    const LinearDesign theta = square_glcod(stage);
    return compose_gciod(theta, theta).design.renamed("ciod" + std::to_string(N));
}

LinearDesign stack_glcod(const LinearDesign& base, std::size_t copies) {
    if (copies < 1) throw Error("stack_glcod needs at least one copy");
    if (copies == 1) return base;
    const std::size_t L = base.L(), N = base.N(), K = base.K();
    std::vector<CMat> weights;
    weights.reserve(2 * K * copies);
    for (std::size_t c = 0; c < copies; ++c)
        for (const auto& w : base.weights()) {
            CMat big(L * copies, N);
            for (std::size_t i = 0; i < L; ++i)
                for (std::size_t j = 0; j < N; ++j) big(c * L + i, j) = w(i, j);
            weights.push_back(std::move(big));
        }
    return LinearDesign(base.name() + "x" + std::to_string(copies), L * copies, N, K * copies, std::move(weights));
}

GciodDesign compose_gciod(const LinearDesign& theta1, const LinearDesign& theta2) {
    if (theta1.K() != theta2.K())
        throw Error("compose_gciod: blocks carry " + std::to_string(theta1.K()) + " and " +
                    std::to_string(theta2.K()) + " symbols; stack both to lcm = " +
                    std::to_string(std::lcm(theta1.K(), theta2.K())) + " symbols first");
    if (!is_glcod(theta1) || !is_glcod(theta2)) throw Error("compose_gciod: both blocks must be GLCODs");

    GciodSpec spec;
    spec.N1 = theta1.N();
    spec.N2 = theta2.N();
    spec.L1 = theta1.L();
    spec.L2 = theta2.L();
    spec.K = 2 * theta1.K();
    spec.interleave_map = half_shift_map(spec.K);

    const std::size_t half = theta1.K();
    auto map = [&](Symbols x) {
        const auto t = interleave(x, spec.interleave_map);
        const Symbols ts(t);
        return block_diag(evaluate(theta1, ts.first(half)), evaluate(theta2, ts.subspan(half)));
    };
    auto design = LinearDesign::from_map("gciod(" + theta1.name() + "," + theta2.name() + ")", spec.L(), spec.N(),
                                         spec.K, map);
    const Rational rate = harmonic_mean(theta1.rate(), theta2.rate());
    return {std::move(design), std::move(spec), rate};
}

LinearDesign delete_columns(const LinearDesign& design, const std::vector<std::size_t>& cols) {
    std::set<std::size_t> drop;
    for (auto c : cols) {
        if (c >= design.N())
            throw Error("delete_columns: column " + std::to_string(c) + " out of range for N=" + std::to_string(design.N()));
        if (!drop.insert(c).second) throw Error("delete_columns: duplicate column " + std::to_string(c));
    }
    if (drop.size() >= design.N()) throw Error("delete_columns: at least one column must remain");
    if (drop.empty()) return design;
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < design.N(); ++c)
        if (!drop.count(c)) keep.push_back(c);
    std::vector<CMat> weights;
    for (const auto& w : design.weights()) weights.push_back(select_columns(w, keep));
    return LinearDesign(design.name() + "_n" + std::to_string(keep.size()), design.L(), keep.size(), design.K(),
                        std::move(weights));
}

bool is_glcod(const LinearDesign& design, double tol) {
    if (!check_anticommuting(design.weights(), false, tol).holds) return false;
    for (std::size_t k = 0; k < design.K(); ++k) {
        const CMat gi = gram(design.weight(2 * k));
        const CMat gq = gram(design.weight(2 * k + 1));
        if (!approx_equal(gi, gq, tol)) return false;
        for (std::size_t i = 0; i < gi.rows(); ++i)
            for (std::size_t j = 0; j < gi.cols(); ++j) {
                if (i != j && std::abs(gi(i, j)) > tol) return false;
                if (i == j && gi(i, i).real() < -tol) return false;
            }
    }
    return true;
}

Rational gciod_rate_bound(std::size_t N) {
    if (N < 3) throw Error("gciod_rate_bound needs N >= 3");
    const std::size_t n = N - 2;
    const auto m = static_cast<std::int64_t>(n % 2 == 0 ? n / 2 : (n + 1) / 2);
    return {2 * (m + 1), 3 * m + 1};
}

Rational harmonic_mean(Rational a, Rational b) { return Rational(2) * a * b / (a + b); }

GlcodSpec known_glcod(std::size_t N) {
    // (L, K) of the best known designs; 5..8 are parameters of non-square designs from the literature.
    switch (N) {
    case 1: return {1, 1, 1, GlcodConstruction::iterative};
    case 2: return {2, 2, 2, GlcodConstruction::catalog};
    case 3: return {3, 4, 3, GlcodConstruction::catalog};
    case 4: return {4, 4, 3, GlcodConstruction::catalog};
    case 5: return {5, 15, 10, GlcodConstruction::reference};
    case 6: return {6, 30, 20, GlcodConstruction::reference};
    case 7: return {7, 56, 35, GlcodConstruction::reference};
    case 8: return {8, 112, 70, GlcodConstruction::reference};
    default: throw Error("known_glcod covers 1 <= N <= 8, got " + std::to_string(N));
    }
}

LinearDesign glcod_for_antennas(std::size_t N) {
    if (N < 1) throw Error("glcod_for_antennas needs N >= 1");
    const std::size_t size = std::bit_ceil(N);
    LinearDesign full = size == 2 ? catalog("alamouti") : size == 4 ? catalog("cod34_4")
                                                                    : square_glcod(unsigned(std::countr_zero(size)));
    if (size == 1) full = catalog("trivial1");
    std::vector<std::size_t> drop;
    for (std::size_t c = N; c < size; ++c) drop.push_back(c);
    return delete_columns(full, drop);
}

StackPlan plan_stacking(const GlcodSpec& theta1, const GlcodSpec& theta2) {
    StackPlan p;
    p.block_symbols = std::lcm(theta1.K, theta2.K);
    p.copies1 = p.block_symbols / theta1.K;
    p.copies2 = p.block_symbols / theta2.K;
    p.K = 2 * p.block_symbols;
    p.L = p.copies1 * theta1.L + p.copies2 * theta2.L;
    p.rate = Rational(std::int64_t(p.K), std::int64_t(p.L));
    return p;
}

GciodDesign compose_with_stacking(const LinearDesign& theta1, const LinearDesign& theta2) {
    const std::size_t k = std::lcm(theta1.K(), theta2.K());
    return compose_gciod(stack_glcod(theta1, k / theta1.K()), stack_glcod(theta2, k / theta2.K()));
}

RateTableEntry rate_efficient_gciod(std::size_t N) {
    if (N < 2 || N > 8) throw Error("rate table covers 2 <= N <= 8");
    if (N == 2) {
        const auto g = catalog_gciod("ciod2");
        return {N, g.rate, g.design.L(), true};
    }
    const std::size_t n2 = N - 2;
    if (known_glcod(n2).construction != GlcodConstruction::reference) {
        const auto g = compose_with_stacking(catalog("alamouti"), glcod_for_antennas(n2));
        return {N, g.rate, g.design.L(), true};
    }
    const auto plan = plan_stacking(known_glcod(2), known_glcod(n2));
    return {N, plan.rate, plan.L, false};
}

RateTableEntry delay_efficient_ciod(std::size_t N) {
    if (N < 2 || N > 8) throw Error("rate table covers 2 <= N <= 8");
    const std::size_t size = N <= 2 ? 2 : N <= 4 ? 4 : 8;
    const LinearDesign full = catalog(size == 2 ? "ciod2" : size == 4 ? "ciod4" : "ciod8");
    std::vector<std::size_t> drop;
    for (std::size_t c = N; c < size; ++c) drop.push_back(c);
    const LinearDesign d = delete_columns(full, drop);
    return {N, d.rate(), d.L(), true};
}

} // namespace stbc
