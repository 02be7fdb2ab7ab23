#pragma once

#include <cbo/error.hpp>
#include <cbo/linalg.hpp>
#include <cbo/partial_perm.hpp>
#include <cbo/rank_control.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace cbo {

/// Which congruence/double-coset action is being studied.
enum class Variant { symmetric, nonsymmetric, antisymmetric };

inline std::string to_string(Variant v) {
  switch (v) {
  case Variant::symmetric: return "symmetric";
  case Variant::nonsymmetric: return "nonsymmetric";
  case Variant::antisymmetric: return "antisymmetric";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "symmetric") return Variant::symmetric;
  if (s == "nonsymmetric") return Variant::nonsymmetric;
  if (s == "antisymmetric") return Variant::antisymmetric;
  throw DomainError("unknown variant '" + std::string(s) + "'");
}

/// Dimension of the ambient space: symmetric n(n+1)/2, all n^2,
/// antisymmetric n(n-1)/2.
inline std::size_t ambient_dim(Variant v, std::size_t n) {
  switch (v) {
  case Variant::symmetric: return n * (n + 1) / 2;
  case Variant::nonsymmetric: return n * n;
  case Variant::antisymmetric: return n * (n - 1) / 2;
  }
  return 0;
}

struct DimensionReport {
  Variant variant = Variant::symmetric;
  std::size_t stat = 0;
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;

  nlohmann::ordered_json to_json() const {
    return {{"variant", to_string(variant)}, {"stat", stat}, {"ambient_dim", ambient_dim}, {"dim", dim}};
  }

  friend bool operator==(const DimensionReport&, const DimensionReport&) = default;
};

enum class DiagonalRegion {
  upper_with_diagonal, // i <= j
  strict_upper,        // i < j
  full                 // all (i, j)
};

/// Number of positions (i, j) in the region with r(i,j) = r(i-1,j-1),
/// reading r through the zero-padded border.
inline std::size_t count_diagonal_equalities(const RankControl& r, DiagonalRegion region) {
  std::size_t count = 0;
  for (std::size_t i = 1; i <= r.rows(); ++i)
    for (std::size_t j = 1; j <= r.cols(); ++j) {
      if (region == DiagonalRegion::upper_with_diagonal && i > j) continue;
      if (region == DiagonalRegion::strict_upper && i >= j) continue;
      if (r.value(i, j) == r.value(i - 1, j - 1)) ++count;
    }
  return count;
}

inline std::size_t d_count(const PartialInvolution& pi) {
  return count_diagonal_equalities(pattern_rank_control(pi), DiagonalRegion::upper_with_diagonal);
}

inline DimensionReport dim_symmetric(const PartialInvolution& pi) {
  DimensionReport r{Variant::symmetric, d_count(pi), ambient_dim(Variant::symmetric, pi.size()), 0};
  r.dim = r.ambient_dim - r.stat;
  return r;
}

/// (exc + inv)/2 of the core involution plus the reversed positions
/// n+1-i of the zero rows.
inline std::size_t incitti_d(const PartialInvolution& pi) {
  const std::size_t n = pi.size();
  const InvolutionDecomposition d = decompose(pi);
  const PermutationStats s = permutation_stats(d.core);
  std::size_t total = (s.exc + s.inv) / 2;
  for (std::size_t i : d.zero_rows) total += n + 1 - i;
  return total;
}

inline std::size_t involution_rank(const Permutation& sigma) {
  if (!sigma.is_involution()) throw DomainError("not an involution: " + sigma.to_string());
  const PermutationStats s = permutation_stats(sigma);
  return (s.exc + s.inv) / 2;
}

inline std::size_t e_count(const PartialPermutation& pi) {
  return count_diagonal_equalities(pattern_rank_control(pi), DiagonalRegion::full);
}

inline DimensionReport dim_nonsymmetric(const PartialPermutation& pi) {
  DimensionReport r{Variant::nonsymmetric, e_count(pi), ambient_dim(Variant::nonsymmetric, pi.size()), 0};
  r.dim = r.ambient_dim - r.stat;
  return r;
}

/// +1 at (i,j) and -1 at (j,i) for every 2-cycle i<j of sigma.
inline PatternMatrix antisym_pattern(const Permutation& sigma) {
  if (!sigma.is_involution()) throw DomainError("not an involution: " + sigma.to_string());
  PatternMatrix m(sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    auto j = static_cast<std::size_t>(sigma[i]);
    if (i < j) {
      m(i, j) = 1;
      m(j, i) = -1;
    }
  }
  return m;
}

inline Matrix antisym_representative(const Permutation& sigma) {
  return Matrix::from_ints(antisym_pattern(sigma), FieldSpec::rationals());
}

/// Recovers sigma from an antisymmetric +-1 pattern; fixed points are the
/// zero rows.
inline Permutation involution_from_antisym_pattern(const PatternMatrix& m) {
  if (!m.is_square()) throw DomainError("pattern must be square");
  const std::size_t n = m.rows();
  std::vector<int> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int v = m(i, j);
      if (v == 0) continue;
      if (m(j, i) != -v || i == j) throw DomainError("pattern is not antisymmetric");
      if ((i < j && v != 1) || (i > j && v != -1)) throw DomainError("antisymmetric pattern needs +1 above the diagonal");
      if (w[i] != static_cast<int>(i)) throw DomainError("row " + std::to_string(i + 1) + " has more than one nonzero");
      w[i] = static_cast<int>(j);
    }
  Permutation sigma(std::move(w));
  if (!sigma.is_involution()) throw DomainError("pattern does not encode an involution");
  return sigma;
}

inline std::size_t a_count(const Permutation& sigma) {
  return count_diagonal_equalities(rank_control(antisym_representative(sigma)), DiagonalRegion::strict_upper);
}

inline DimensionReport dim_antisymmetric(const Permutation& sigma) {
  DimensionReport r{Variant::antisymmetric, a_count(sigma), ambient_dim(Variant::antisymmetric, sigma.size()), 0};
  r.dim = r.ambient_dim - r.stat;
  return r;
}

} // namespace cbo
