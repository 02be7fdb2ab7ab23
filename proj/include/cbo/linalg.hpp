#pragma once

#include <cbo/error.hpp>
#include <cbo/field.hpp>
#include <cbo/matrix.hpp>
#include <cbo/random.hpp>
#include <cbo/rank_control.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cbo {
namespace detail {

/// Plain Gaussian elimination; consumes its input.
template <class Ops>
std::size_t rank_in_place(const Ops& ops, std::span<typename Ops::value_type> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && Ops::is_zero(a[pivot * cols + c])) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    auto inv = ops.inv(a[rank * cols + c]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (Ops::is_zero(a[i * cols + c])) continue;
      auto f = ops.mul(a[i * cols + c], inv);
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] = ops.sub_mul(a[i * cols + j], f, a[rank * cols + j]);
    }
    ++rank;
  }
  return rank;
}

/// Incremental rank profile. Rows are inserted one at a time into an
/// echelon basis keyed by leading column; after k rows, the rank of the
/// leading k x l block equals the number of pivot columns among the first l
/// (pivot columns of an echelon form are the lexicographically first
/// independent columns). O(rows * cols * rank) per matrix, no allocation
/// after construction.
template <class Ops>
class RankProfileBuilder {
public:
  using value_type = typename Ops::value_type;

  RankProfileBuilder(const Ops& ops, std::size_t cols)
      : ops_(&ops), cols_(cols), basis_(cols * cols, Ops::zero()), pivot_(cols, 0), work_(cols, Ops::zero()) {}

  /// Writes rows*cols profile entries (row-major) into `out`.
  void compute(std::span<const value_type> a, std::size_t rows, std::span<int> out) {
    std::fill(pivot_.begin(), pivot_.end(), 0);
    for (std::size_t k = 0; k < rows; ++k) {
      insert(a.subspan(k * cols_, cols_));
      int running = 0;
      for (std::size_t l = 0; l < cols_; ++l) {
        running += pivot_[l];
        out[k * cols_ + l] = running;
      }
    }
  }

private:
  void insert(std::span<const value_type> row) {
    std::copy(row.begin(), row.end(), work_.begin());
    for (std::size_t c = 0; c < cols_; ++c) {
      if (Ops::is_zero(work_[c])) continue;
      if (pivot_[c]) {
        // basis row c is normalized: leading 1 at column c
        const value_type f = work_[c];
        const value_type* b = &basis_[c * cols_];
        for (std::size_t j = c; j < cols_; ++j) work_[j] = ops_->sub_mul(work_[j], f, b[j]);
        continue;
      }
      const value_type inv = ops_->inv(work_[c]);
      value_type* b = &basis_[c * cols_];
      for (std::size_t j = 0; j < c; ++j) b[j] = Ops::zero();
      for (std::size_t j = c; j < cols_; ++j) b[j] = ops_->mul(work_[j], inv);
      pivot_[c] = 1;
      return;
    }
  }

  const Ops* ops_;
  std::size_t cols_;
  std::vector<value_type> basis_;
  std::vector<int> pivot_;
  std::vector<value_type> work_;
};

template <class F>
decltype(auto) visit_field(const Matrix& m, F&& f) {
  if (m.field().is_prime_field()) {
    ModPOps ops(m.field().modulus());
    std::vector<std::uint32_t> raw;
    raw.reserve(m.entries().size());
    for (const auto& s : m.entries()) raw.push_back(s.residue());
    return f(ops, raw);
  }
  RationalOps ops;
  std::vector<Rational> raw;
  raw.reserve(m.entries().size());
  for (const auto& s : m.entries()) raw.push_back(s.rational());
  return f(ops, raw);
}

inline void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw DomainError("field mismatch: " + a.field().name() + " vs " + b.field().name());
}

inline void require_borel(const Matrix& b, std::size_t n, const char* name) {
  if (b.rows() != n || b.cols() != n) throw DomainError(std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!b.is_upper_triangular()) throw DomainError(std::string(name) + " is not upper-triangular");
  if (!b.has_nonzero_diagonal()) throw DomainError(std::string(name) + " is not invertible");
}

} // namespace detail

inline std::size_t mat_rank(const Matrix& m) {
  return detail::visit_field(m, [&](const auto& ops, auto& raw) {
    return detail::rank_in_place(ops, std::span(raw), m.rows(), m.cols());
  });
}

/// Rank-control matrix via the incremental echelon scheme.
inline RankControl rank_control(const Matrix& m) {
  IntMatrix out(m.rows(), m.cols());
  if (m.rows() == 0 || m.cols() == 0) return RankControl(out);
  std::vector<int> buf(m.rows() * m.cols());
  detail::visit_field(m, [&](const auto& ops, auto& raw) {
    using Ops = std::decay_t<decltype(ops)>;
    detail::RankProfileBuilder<Ops> builder(ops, m.cols());
    builder.compute(std::span<const typename Ops::value_type>(raw), m.rows(), std::span(buf));
    return 0;
  });
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = buf[i * m.cols() + j];
  return RankControl(std::move(out));
}

/// Reference scheme: one independent elimination per leading block.
inline RankControl rank_control_naive(const Matrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t k = 1; k <= m.rows(); ++k)
    for (std::size_t l = 1; l <= m.cols(); ++l) {
      Matrix block(k, l, m.field());
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j) block(i, j) = m(i, j);
      out(k - 1, l - 1) = static_cast<int>(mat_rank(block));
    }
  return RankControl(std::move(out));
}

/// B^t S B for B in the Borel subgroup.
inline Matrix congruence_transform(const Matrix& b, const Matrix& s) {
  detail::require_same_field(b, s);
  if (!s.is_square()) throw DomainError("S must be square");
  detail::require_borel(b, s.rows(), "B");
  return b.transpose() * s * b;
}

/// L X B with L invertible lower-triangular and B invertible upper-triangular.
inline Matrix lu_transform(const Matrix& l, const Matrix& x, const Matrix& b) {
  detail::require_same_field(l, x);
  detail::require_same_field(x, b);
  if (l.rows() != x.rows() || l.cols() != x.rows()) throw DomainError("L must be square of size rows(X)");
  if (!l.is_lower_triangular()) throw DomainError("L is not lower-triangular");
  if (!l.has_nonzero_diagonal()) throw DomainError("L is not invertible");
  detail::require_borel(b, x.cols(), "B");
  return l * x * b;
}

/// Random element of the Borel subgroup over GF(p): nonzero diagonal,
/// uniform strict upper part. Deterministic in (n, p, seed).
inline Matrix borel_random(std::size_t n, FieldSpec field, std::uint64_t seed) {
  if (!field.is_prime_field()) throw DomainError("borel_random requires a prime field");
  if (n == 0) throw DomainError("borel_random requires n >= 1");
  Rng rng(seed);
  const std::uint32_t p = field.modulus();
  Matrix b(n, n, field);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, i) = Scalar::from_int(field, static_cast<long long>(1 + rng.below(p - 1)));
    for (std::size_t j = i + 1; j < n; ++j) b(i, j) = Scalar::from_int(field, static_cast<long long>(rng.below(p)));
  }
  return b;
}

/// Uniform random matrix over GF(p).
inline Matrix random_matrix(std::size_t rows, std::size_t cols, FieldSpec field, Rng& rng) {
  if (!field.is_prime_field()) throw DomainError("random sampling requires a prime field");
  Matrix m(rows, cols, field);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar::from_int(field, static_cast<long long>(rng.below(field.modulus())));
  return m;
}

/// Uniform random symmetric matrix over GF(p).
inline Matrix random_symmetric(std::size_t n, FieldSpec field, Rng& rng) {
  Matrix m = random_matrix(n, n, field, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
  return m;
}

/// Uniform random invertible matrix over GF(p) (rejection on singular draws).
inline Matrix random_invertible(std::size_t n, FieldSpec field, Rng& rng) {
  for (;;) {
    Matrix g = random_matrix(n, n, field, rng);
    if (mat_rank(g) == n) return g;
  }
}

} // namespace cbo
