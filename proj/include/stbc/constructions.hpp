#pragma once

#include "stbc/design.hpp"
#include "stbc/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stbc {

enum class GlcodConstruction { catalog, iterative, stacked, reference };

/// Parameters of a generalized linear complex orthogonal design.
struct GlcodSpec {
    std::size_t N = 0;
    std::size_t L = 0;
    std::size_t K = 0;
    GlcodConstruction construction = GlcodConstruction::catalog;
    Rational rate() const { return {std::int64_t(K), std::int64_t(L)}; }
};

/// Block structure of a coordinate interleaved design diag(Theta1, Theta2).
struct GciodSpec {
    std::size_t N1 = 0, N2 = 0;
    std::size_t L1 = 0, L2 = 0;
    std::size_t K = 0; ///< total symbols, K/2 per block
    /// interleave_map[i] is the symbol whose quadrature part enters x~_i.
    std::vector<std::size_t> interleave_map;
    std::size_t N() const noexcept { return N1 + N2; }
    std::size_t L() const noexcept { return L1 + L2; }
};

struct GciodDesign {
    LinearDesign design;
    GciodSpec spec;
    Rational rate; ///< harmonic mean of the block rates
};

std::vector<std::string> catalog_names();
LinearDesign catalog(const std::string& name);

/// Composition recipe for the catalog entries that are coordinate interleaved
/// (ciod2, ciod4, gciod3, ciod8).
GciodDesign catalog_gciod(const std::string& name);

/// G_1 = [x0]; G_2n = [[G_n, x I], [-x* I, G_n^H]].
LinearDesign square_glcod(unsigned stage);

/// diag(Theta(x~), Theta(x~)) from two copies of the size N/2 iterative GLCOD; N a power of two.
LinearDesign square_ciod(std::size_t N);

/// Vertical stack of `copies` copies of base, each with fresh symbols.
LinearDesign stack_glcod(const LinearDesign& base, std::size_t copies);

/// Requires both inputs to carry the same number of symbols.
GciodDesign compose_gciod(const LinearDesign& theta1, const LinearDesign& theta2);

LinearDesign delete_columns(const LinearDesign& design, const std::vector<std::size_t>& cols);

/// Theta^H Theta diagonal and a function of |x_i|^2 only.
bool is_glcod(const LinearDesign& design, double tol = kDefaultTol);

/// Lower bound 2(m+1)/(3m+1) on the GCIOD rate for N = n + 2 antennas.
Rational gciod_rate_bound(std::size_t N);

Rational harmonic_mean(Rational a, Rational b);

/// Best known GLCOD parameters for 1 <= N <= 8 (size, delay, symbols).
GlcodSpec known_glcod(std::size_t N);

/// Smallest iterative square GLCOD with at least N columns, trimmed to N columns.
LinearDesign glcod_for_antennas(std::size_t N);

/// Copy counts and resulting parameters when two GLCODs are equalized by the lcm rule.
struct StackPlan {
    std::size_t copies1 = 0, copies2 = 0;
    std::size_t block_symbols = 0;
    std::size_t K = 0; ///< total GCIOD symbols
    std::size_t L = 0;
    Rational rate;
};
StackPlan plan_stacking(const GlcodSpec& theta1, const GlcodSpec& theta2);

/// Stacks both GLCODs to the lcm symbol count and composes them.
GciodDesign compose_with_stacking(const LinearDesign& theta1, const LinearDesign& theta2);

struct RateTableEntry {
    std::size_t N = 0;
    Rational rate;
    std::size_t L = 0;
    bool constructed = false; ///< false when only parameters are known
};

/// GCIOD from a 2-antenna block plus the best GLCOD for N-2 antennas (N = 2 uses two 1-antenna blocks).
RateTableEntry rate_efficient_gciod(std::size_t N);
/// Column-deleted square CIODs: N <= 4 from the size-2/4 codes, 5 <= N <= 8 from the 8-antenna code.
RateTableEntry delay_efficient_ciod(std::size_t N);

} // namespace stbc
