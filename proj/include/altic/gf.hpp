#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace altic {

// A field element value; always kept in [0, p).
using Fe = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Prime field GF(p). The transmission scheme needs at least one element
// besides 0 and 1, hence p >= 3.
class Field {
 public:
  explicit Field(std::uint32_t p) : p_(p) {
    if (p < 3) throw FieldTooSmall(p);
    if (!is_prime(p)) throw NonPrimeField(p);
  }

  std::uint32_t p() const { return p_; }

  // Bits carried by one symbol; the unit for rate-in-bits conversions.
  double bits_per_symbol() const { return std::log2(static_cast<double>(p_)); }

  Fe reduce(std::uint64_t v) const { return static_cast<Fe>(v % p_); }

  Fe add(Fe a, Fe b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return s >= p_ ? static_cast<Fe>(s - p_) : static_cast<Fe>(s);
  }

  Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }

  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

  Fe mul(Fe a, Fe b) const {
    return static_cast<Fe>((std::uint64_t{a} * b) % p_);
  }

  Fe pow(Fe a, std::uint64_t e) const {
    Fe r = 1;
    Fe base = static_cast<Fe>(a % p_);
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Extended Euclid; throws on 0.
  Fe inv(Fe a) const {
    if (a % p_ == 0) throw ZeroInverse();
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a % p_;
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += p_;
    return static_cast<Fe>(t);
  }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

// Dense row-major matrix over GF(p). Small and simple; the systems solved
// here are at most 9x9.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fe& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  Fe at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<Fe> e_;
};

inline std::vector<Fe> mat_vec(const Field& f, const Matrix& a,
                               const std::vector<Fe>& x) {
  std::vector<Fe> y(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Fe acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      acc = f.add(acc, f.mul(a.at(r, c), x[c]));
    }
    y[r] = acc;
  }
  return y;
}

// Row-echelon rank via Gaussian elimination. Takes a copy on purpose.
inline std::size_t rank(const Field& f, Matrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a.at(pivot, c) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(pivot, j));
    const Fe pinv = f.inv(a.at(r, c));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a.at(i, c) == 0) continue;
      const Fe factor = f.mul(a.at(i, c), pinv);
      for (std::size_t j = c; j < a.cols(); ++j) {
        a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(r, j)));
      }
    }
    ++r;
  }
  return r;
}

// Solves a*x = b for square a. First nonzero pivot per column, forward
// elimination, back substitution. Throws SingularMatrix when a has no
// inverse; exact arithmetic means no conditioning concerns.
inline std::vector<Fe> solve_linear_system(const Field& f, Matrix a,
                                           std::vector<Fe> b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) {
    throw SingularMatrix("solve requires a square system");
  }
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw SingularMatrix();
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(pivot, j));
      std::swap(b[c], b[pivot]);
    }
    const Fe pinv = f.inv(a.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c) == 0) continue;
      const Fe factor = f.mul(a.at(i, c), pinv);
      for (std::size_t j = c; j < n; ++j) {
        a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(c, j)));
      }
      b[i] = f.sub(b[i], f.mul(factor, b[c]));
    }
  }
  std::vector<Fe> x(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    Fe acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      acc = f.sub(acc, f.mul(a.at(i, j), x[j]));
    }
    x[i] = f.mul(acc, f.inv(a.at(i, i)));
  }
  return x;
}

}  // namespace altic
