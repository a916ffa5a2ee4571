#include "stbc/complex_matrix.hpp"

#include "stbc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace stbc {

namespace {

void require_finite(const std::vector<Complex>& data) {
    for (const auto& z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error("matrix entry is not finite");
    }
}

void require_same_shape(const CMat& a, const CMat& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

} // namespace

CMat::CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMat::CMat(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("data length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    require_finite(data_);
}

CMat::CMat(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diagonal(const std::vector<Complex>& diag) {
    CMat m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(m.data_);
    return m;
}

CMat& CMat::operator+=(const CMat& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMat& CMat::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

bool CMat::identical(const CMat& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(CMat a, Complex s) { return a *= s; }
CMat operator*(Complex s, CMat a) { return a *= s; }
CMat operator*(const CMat& a, const CMat& b) { return matmul(a, b); }

CMat conj_transpose(const CMat& m) {
    CMat out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

CMat transpose(const CMat& m) {
    CMat out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    CMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

CMat gram(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows()) throw DimensionError("gram: row counts differ");
    CMat out(a.cols(), b.cols());
    for (std::size_t t = 0; t < a.rows(); ++t)
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex ati = std::conj(a(t, i));
            if (ati == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ati * b(t, j);
        }
    return out;
}

CMat anticommutator(const CMat& a, const CMat& b) {
    CMat ab = gram(a, b);
    CMat out(ab.rows(), ab.cols());
    // b^H a is the conjugate transpose of a^H b.
    for (std::size_t i = 0; i < ab.rows(); ++i)
        for (std::size_t j = 0; j < ab.cols(); ++j) out(i, j) = ab(i, j) + std::conj(ab(j, i));
    return out;
}

Complex determinant(const CMat& m) {
    if (!m.square()) throw DimensionError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    CMat a = m;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == Complex{}) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        const Complex p = a(col, col);
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = a(r, col) / p;
            if (f == Complex{}) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

std::size_t numeric_rank(const CMat& m, double tol) {
    if (!(tol > 0)) throw Error("numeric_rank: tolerance must be positive");
    CMat a = m;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
        std::size_t pr = step, pc = step;
        double best = 0.0;
        for (std::size_t r = step; r < rows; ++r)
            for (std::size_t c = step; c < cols; ++c)
                if (std::abs(a(r, c)) > best) {
                    best = std::abs(a(r, c));
                    pr = r;
                    pc = c;
                }
        if (best <= tol) break;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(pr, j), a(step, j));
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, pc), a(i, step));
        const Complex p = a(step, step);
        for (std::size_t r = step + 1; r < rows; ++r) {
            const Complex f = a(r, step) / p;
            for (std::size_t j = step; j < cols; ++j) a(r, j) -= f * a(step, j);
        }
        ++rank;
    }
    return rank;
}

double max_abs(const CMat& m) {
    double best = 0.0;
    for (const auto& z : m.data()) best = std::max(best, std::abs(z));
    return best;
}

double frobenius_norm_sq(const CMat& m) {
    double s = 0.0;
    for (const auto& z : m.data()) s += std::norm(z);
    return s;
}

Complex trace(const CMat& m) {
    if (!m.square()) throw DimensionError("trace of non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

bool approx_equal(const CMat& a, const CMat& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        if (std::abs(a.data()[i] - b.data()[i]) > tol) return false;
    return true;
}

CMat select_columns(const CMat& m, const std::vector<std::size_t>& cols) {
    CMat out(m.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= m.cols()) throw DimensionError("column index out of range");
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, cols[j]);
    }
    return out;
}

CMat block_diag(const CMat& a, const CMat& b) {
    CMat out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

CMat vstack(const CMat& top, const CMat& bottom) {
    if (top.cols() != bottom.cols()) throw DimensionError("vstack: column counts differ");
    std::vector<Complex> data = top.data();
    data.insert(data.end(), bottom.data().begin(), bottom.data().end());
    return CMat(top.rows() + bottom.rows(), top.cols(), std::move(data));
}

} // namespace stbc
