#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "niep/scalar.hpp"

namespace niep {

/// Dense square matrix over the exact Gaussian-rational field.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), e_(n * n) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix diagonal(const std::vector<ExactScalar>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t size() const { return n_; }

    ExactScalar& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const ExactScalar& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

    Matrix operator*(const Matrix& o) const {
        Matrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const ExactScalar& aik = (*this)(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < n_; ++j) {
                    const ExactScalar& bkj = o(k, j);
                    if (!bkj.is_zero()) r(i, j) += aik * bkj;
                }
            }
        return r;
    }
    Matrix operator+(const Matrix& o) const {
        Matrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    ExactScalar trace() const {
        ExactScalar t;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_real() const {
        for (const auto& x : e_)
            if (!x.is_real()) return false;
        return true;
    }

    /// direct sum: this ⊕ diag(tail)
    Matrix direct_sum_diag(const std::vector<ExactScalar>& tail) const {
        Matrix r(n_ + tail.size());
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < tail.size(); ++i) r(n_ + i, n_ + i) = tail[i];
        return r;
    }

  private:
    std::size_t n_ = 0;
    std::vector<ExactScalar> e_;
};

/// Unit lower triangular matrix. Real mode: all diagonal entries are 1.
/// Complex mode: diagonal entries are 1 or i. Entries strictly above the
/// diagonal are zero by construction.
class UnitLower {
  public:
    UnitLower() = default;
    explicit UnitLower(std::size_t n) : m_(Matrix::identity(n)) {}

    std::size_t size() const { return m_.size(); }
    const Matrix& matrix() const { return m_; }

    /// strictly-lower entries are assignable; diagonal may be set to 1 or i
    void set(std::size_t i, std::size_t j, ExactScalar v) {
        if (j > i) fail(ErrKind::WrongShape, "entry above diagonal in unit lower triangular matrix");
        if (j == i && !(v == ExactScalar(1) || v == ExactScalar::i()))
            fail(ErrKind::WrongShape, "diagonal of unit lower triangular matrix must be 1 or i");
        m_(i, j) = std::move(v);
    }
    const ExactScalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    bool complex_diagonal() const {
        for (std::size_t i = 0; i < size(); ++i)
            if (m_(i, i) == ExactScalar::i()) return true;
        return false;
    }

    UnitLower direct_sum_identity(std::size_t extra) const {
        UnitLower r(size() + extra);
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) r.m_(i, j) = m_(i, j);
        return r;
    }

    friend bool operator==(const UnitLower& a, const UnitLower& b) { return a.m_ == b.m_; }

  private:
    friend UnitLower unit_lower_inverse(const UnitLower&);
    Matrix m_;
};

/// Exact inverse by forward substitution; the diagonal maps 1 -> 1, i -> -i.
UnitLower unit_lower_inverse(const UnitLower& L);

/// C = L·A·L⁻¹, exactly.
Matrix similarity_transform(const UnitLower& L, const Matrix& A);

/// Asserts every entry of M has exactly zero imaginary part and returns the
/// same matrix; throws ImaginaryResidue naming the first offending entry.
Matrix strip_imaginary(const Matrix& M);

struct NonnegReport {
    bool ok = true;
    std::size_t row = 0, col = 0; // first violation when !ok
    ExactScalar value;
};

/// Entrywise nonnegativity. tol = 0 gives the exact-mode check; float mode
/// passes its tolerance and accepts entries down to -tol (and imaginary
/// residue up to tol in magnitude).
NonnegReport is_nonnegative(const Matrix& M, const Rational& tol = Rational(0));

/// s_k = trace(M^k) for k = 1..k_max, exact.
std::vector<ExactScalar> power_sums_matrix(const Matrix& M, int k_max);

} // namespace niep
