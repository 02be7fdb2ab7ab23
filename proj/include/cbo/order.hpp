#pragma once

#include <cbo/error.hpp>
#include <cbo/linalg.hpp>
#include <cbo/partial_perm.hpp>
#include <cbo/rank_control.hpp>

#include <cstddef>
#include <string>

namespace cbo {

/// Componentwise order on rank-control matrices.
inline bool leq_R(const RankControl& p, const RankControl& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw DomainError("rank-control shape mismatch");
  const auto& a = p.matrix().data();
  const auto& b = q.matrix().data();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

enum class Comparison { less, greater, equal, incomparable };

inline const char* to_symbol(Comparison c) {
  switch (c) {
  case Comparison::less: return "<";
  case Comparison::greater: return ">";
  case Comparison::equal: return "=";
  case Comparison::incomparable: return "incomparable";
  }
  return "?";
}

inline Comparison compare_R(const RankControl& p, const RankControl& q) {
  bool le = leq_R(p, q), ge = leq_R(q, p);
  if (le && ge) return Comparison::equal;
  if (le) return Comparison::less;
  if (ge) return Comparison::greater;
  return Comparison::incomparable;
}

/// Bruhat order on partial permutations: pi <= sigma iff R(pi) >= R(sigma).
inline bool bruhat_leq(const PartialPermutation& pi, const PartialPermutation& sigma) {
  if (pi.size() != sigma.size()) throw DomainError("size mismatch");
  return leq_R(pattern_rank_control(sigma), pattern_rank_control(pi));
}

/// Closure order on congruence B-orbits: C_pi <= C_sigma iff R(pi) <= R(sigma).
inline bool orbit_leq(const PartialInvolution& pi, const PartialInvolution& sigma) {
  if (pi.size() != sigma.size()) throw DomainError("size mismatch");
  return leq_R(pattern_rank_control(pi), pattern_rank_control(sigma));
}

/// Whether the symmetric matrix S lies in the closure of the orbit of pi.
inline bool closure_contains(const PartialInvolution& pi, const Matrix& s) {
  if (s.rows() != pi.size() || s.cols() != pi.size()) throw DomainError("size mismatch");
  if (!s.is_symmetric()) throw DomainError("S is not symmetric");
  return leq_R(rank_control(s), pattern_rank_control(pi));
}

} // namespace cbo
