#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace stbc {

using Complex = std::complex<double>;

inline constexpr Complex kJ{0.0, 1.0};
inline constexpr double kDefaultTol = 1e-9;

/// Dense row-major complex matrix. Rejects non-finite entries on construction.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols);
    CMat(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    CMat(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMat zeros(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }
    static CMat identity(std::size_t n);
    static CMat diagonal(const std::vector<Complex>& diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const noexcept { return data_; }

    CMat& operator+=(const CMat& other);
    CMat& operator-=(const CMat& other);
    CMat& operator*=(Complex s);

    /// Exact comparison; only meant for checking bit-exact round trips.
    bool identical(const CMat& other) const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(CMat a, Complex s);
CMat operator*(Complex s, CMat a);
CMat operator*(const CMat& a, const CMat& b);

CMat conj_transpose(const CMat& m);
CMat transpose(const CMat& m);
CMat matmul(const CMat& a, const CMat& b);

/// a^H * b without forming the transpose.
CMat gram(const CMat& a, const CMat& b);
inline CMat gram(const CMat& a) { return gram(a, a); }

/// a^H b + b^H a
CMat anticommutator(const CMat& a, const CMat& b);

/// Determinant by partially pivoted Gaussian elimination.
Complex determinant(const CMat& m);

/// Number of pivots above tol after fully pivoted elimination.
std::size_t numeric_rank(const CMat& m, double tol = kDefaultTol);

double max_abs(const CMat& m);
double frobenius_norm_sq(const CMat& m);
Complex trace(const CMat& m);

bool approx_equal(const CMat& a, const CMat& b, double tol);

/// Keeps only the listed columns, in the given order.
CMat select_columns(const CMat& m, const std::vector<std::size_t>& cols);

/// Block-diagonal placement of a and b.
CMat block_diag(const CMat& a, const CMat& b);

/// Vertical concatenation; column counts must agree.
CMat vstack(const CMat& top, const CMat& bottom);

} // namespace stbc
