#pragma once

#include <cbo/dimension.hpp>
#include <cbo/error.hpp>
#include <cbo/field.hpp>
#include <cbo/linalg.hpp>
#include <cbo/order.hpp>
#include <cbo/partial_perm.hpp>
#include <cbo/poset.hpp>
#include <cbo/random.hpp>
#include <cbo/rank_control.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace cbo {

// ---------------------------------------------------------------------------
// Canonicalization

/// The partial involution whose orbit holds S, read off the rank profile.
inline PartialInvolution symmetric_canonicalize(const Matrix& s) {
  if (!s.is_symmetric()) throw DomainError("S is not symmetric");
  PartialPermutation p = pattern_from_rank_control(rank_control(s));
  if (!p.is_symmetric()) throw DomainError("rank profile of S decodes to a non-symmetric pattern");
  return PartialInvolution(std::move(p));
}

// ---------------------------------------------------------------------------
// Invariance fuzzing

enum class FuzzTransform {
  borel,  ///< B^t pi B with B upper-triangular invertible
  general ///< G^t pi G with G an arbitrary invertible matrix (negative control)
};

struct FuzzFailure {
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::uint32_t prime = 0;
  PatternMatrix pattern;
};

struct FuzzReport {
  std::size_t trials = 0;
  std::vector<FuzzFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Samples transforms of pi over GF(p) and checks that the rank profile is
/// unchanged. Trial t draws from derive_seed(seed, t).
inline FuzzReport invariance_fuzz(const PartialInvolution& pi, std::uint32_t p, std::size_t trials, std::uint64_t seed,
                                  FuzzTransform transform = FuzzTransform::borel) {
  const FieldSpec field = FieldSpec::prime(p);
  const std::size_t n = pi.size();
  const RankControl expected = pattern_rank_control(pi);
  const Matrix s = Matrix::from_ints(pi.matrix(), field);
  FuzzReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    Matrix image;
    if (transform == FuzzTransform::borel) {
      image = congruence_transform(borel_random(n, field, trial_seed), s);
    } else {
      Rng rng(trial_seed);
      Matrix g = random_invertible(n, field, rng);
      image = g.transpose() * s * g;
    }
    if (!(rank_control(image) == expected)) report.failures.push_back({seed, t, p, pi.matrix()});
  }
  return report;
}

/// Same check for the two-sided action L pi B on a partial permutation.
inline FuzzReport lu_invariance_fuzz(const PartialPermutation& pi, std::uint32_t p, std::size_t trials, std::uint64_t seed) {
  const FieldSpec field = FieldSpec::prime(p);
  const std::size_t n = pi.size();
  const RankControl expected = pattern_rank_control(pi);
  const Matrix x = Matrix::from_ints(pi.matrix(), field);
  FuzzReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    Matrix l = borel_random(n, field, derive_seed(trial_seed, 0)).transpose();
    Matrix b = borel_random(n, field, derive_seed(trial_seed, 1));
    if (!(rank_control(lu_transform(l, x, b)) == expected)) report.failures.push_back({seed, t, p, pi.matrix()});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Point counting

namespace detail {

/// Positions filled by one free coordinate: (flat index, negate?).
struct Slot {
  std::size_t index;
  bool negate;
};

inline std::vector<std::vector<Slot>> free_coordinates(Variant v, std::size_t n) {
  std::vector<std::vector<Slot>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      switch (v) {
      case Variant::nonsymmetric: out.push_back({{i * n + j, false}}); break;
      case Variant::symmetric:
        if (i == j) out.push_back({{i * n + j, false}});
        else if (i < j) out.push_back({{i * n + j, false}, {j * n + i, false}});
        break;
      case Variant::antisymmetric:
        if (i < j) out.push_back({{i * n + j, false}, {j * n + i, true}});
        break;
      }
    }
  return out;
}

constexpr std::uint64_t point_count_budget = 47045881; // 19^6

inline void check_feasible(Variant v, std::size_t n, std::uint32_t q) {
  if (!is_prime(q)) throw DomainError("point counting needs a prime q, got " + std::to_string(q));
  if (v == Variant::antisymmetric && q == 2) throw DomainError("antisymmetric point counting needs an odd prime");
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < ambient_dim(v, n); ++k) {
    total *= q;
    if (total > point_count_budget)
      throw DomainError("point count infeasible: " + std::to_string(q) + "^" + std::to_string(ambient_dim(v, n)) +
                        " exceeds 19^6 candidate matrices");
  }
}

/// Counts, for each target profile, the matrices of the variant over GF(q)
/// whose rank profile lies below it. Candidates with leading free
/// coordinate in [lead_begin, lead_end).
inline std::vector<std::uint64_t> count_below(const std::vector<IntMatrix>& targets, Variant v, std::size_t n, std::uint32_t q,
                                              std::uint32_t lead_begin, std::uint32_t lead_end) {
  const ModPOps ops = ModPOps::with_inverse_table(q);
  const auto coords = free_coordinates(v, n);
  const std::size_t f = coords.size();
  std::vector<std::uint64_t> counts(targets.size(), 0);
  std::vector<std::uint32_t> a(n * n, 0);
  std::vector<int> profile(n * n, 0);
  RankProfileBuilder<ModPOps> builder(ops, n);

  auto put = [&](std::size_t k, std::uint32_t value) {
    for (const Slot& s : coords[k]) a[s.index] = s.negate ? ops.neg(value) : value;
  };
  auto tally = [&] {
    builder.compute(std::span<const std::uint32_t>(a), n, std::span(profile));
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const int* bound = targets[t].data().data();
      bool below = true;
      for (std::size_t k = 0; k < n * n && below; ++k) below = profile[k] <= bound[k];
      counts[t] += below;
    }
  };

  if (f == 0) {
    tally();
    return counts;
  }
  std::vector<std::uint32_t> digit(f, 0);
  for (std::uint32_t lead = lead_begin; lead < lead_end; ++lead) {
    std::fill(digit.begin(), digit.end(), 0);
    for (std::size_t k = 1; k < f; ++k) put(k, 0);
    digit[0] = lead;
    put(0, lead);
    for (;;) {
      tally();
      std::size_t k = f - 1;
      while (k > 0 && digit[k] + 1 == q) {
        digit[k] = 0;
        put(k, 0);
        --k;
      }
      if (k == 0) break;
      ++digit[k];
      put(k, digit[k]);
    }
  }
  return counts;
}

inline RankControl pattern_profile(const PatternMatrix& pattern) {
  return rank_control(Matrix::from_ints(pattern, FieldSpec::rationals()));
}

} // namespace detail

/// GF(q)-point counts of the orbit closures of several patterns at once:
/// for each pattern, #{S in the variant's space : R(S) <=_R R(pattern)}.
/// The leading free coordinate is partitioned across hardware threads.
inline std::vector<std::uint64_t> closure_point_counts(const std::vector<PatternMatrix>& patterns, Variant v, std::uint32_t q) {
  if (patterns.empty()) return {};
  const std::size_t n = patterns.front().rows();
  std::vector<IntMatrix> targets;
  for (const auto& pat : patterns) {
    if (pat.rows() != n || pat.cols() != n) throw DomainError("patterns must share one square size");
    targets.push_back(detail::pattern_profile(pat).matrix());
  }
  detail::check_feasible(v, n, q);
  if (ambient_dim(v, n) == 0) return detail::count_below(targets, v, n, q, 0, 1);

  const std::uint32_t workers = std::max(1u, std::min(std::thread::hardware_concurrency(), q));
  if (workers == 1) return detail::count_below(targets, v, n, q, 0, q);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (std::uint32_t w = 0; w < workers; ++w) {
      std::uint32_t begin = q * w / workers, end = q * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = detail::count_below(targets, v, n, q, begin, end); });
    }
  }
  std::vector<std::uint64_t> total(patterns.size(), 0);
  for (const auto& part : partial)
    for (std::size_t t = 0; t < total.size(); ++t) total[t] += part[t];
  return total;
}

inline std::uint64_t closure_point_count(const PatternMatrix& pattern, Variant v, std::uint32_t q) {
  return closure_point_counts({pattern}, v, q).front();
}

/// Dimension of the orbit closure of `pattern` as given by the diagonal
/// equality counts.
inline std::size_t predicted_dim(const PatternMatrix& pattern, Variant v) {
  switch (v) {
  case Variant::symmetric: return dim_symmetric(PartialInvolution::from_matrix(pattern)).dim;
  case Variant::nonsymmetric: return dim_nonsymmetric(PartialPermutation::from_matrix(pattern)).dim;
  case Variant::antisymmetric: return dim_antisymmetric(involution_from_antisym_pattern(pattern)).dim;
  }
  return 0;
}

/// Polynomial through (x_k, y_k) in the monomial basis, exact.
inline std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t m = xs.size();
  std::vector<Rational> dd = ys; // Newton divided differences
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t k = m - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
  std::vector<Rational> coeffs(m, Rational(0));
  // Horner on the Newton form: p = dd[m-1]; p = p*(x - x_k) + dd[k]
  for (std::size_t k = m; k-- > 0;) {
    std::vector<Rational> next(m, Rational(0));
    for (std::size_t d = 0; d + 1 < m; ++d) {
      next[d + 1] += coeffs[d];
      next[d] -= coeffs[d] * xs[k];
    }
    next[0] += dd[k];
    coeffs = std::move(next);
  }
  return coeffs;
}

inline Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
  return v;
}

/// Fallback acceptance band for count(q2)/count(q1) against (q2/q1)^dim.
inline constexpr int ratio_tolerance = 2;

struct PointCountReport {
  PatternMatrix pattern;
  Variant variant = Variant::symmetric;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint64_t> counts;
  std::size_t fit_points = 0;              ///< leading primes used for the fit
  std::vector<Rational> coefficients;      ///< fitted polynomial, constant term first
  std::optional<std::size_t> fitted_degree; ///< empty when the held-out witness fails
  std::size_t interpolated_degree = 0;     ///< degree of the fit regardless of the witness
  bool held_out_ok = false;
  bool ratio_ok = false; ///< count(q2)/count(q1) within ratio_tolerance of (q2/q1)^predicted_dim
  std::size_t predicted_dim = 0;

  /// Held-out witness passes and degree matches, or the ratio fallback passes.
  bool consistent() const {
    if (held_out_ok) return fitted_degree && *fitted_degree == predicted_dim;
    return ratio_ok;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["pattern"] = detail::to_json(pattern);
    j["variant"] = to_string(variant);
    j["primes"] = primes;
    j["counts"] = counts;
    auto poly = nlohmann::ordered_json::array();
    for (const auto& c : coefficients) poly.push_back(c.str());
    j["coefficients"] = std::move(poly);
    if (fitted_degree)
      j["fitted_degree"] = *fitted_degree;
    else
      j["fitted_degree"] = "non-polynomial";
    j["held_out_ok"] = held_out_ok;
    j["ratio_ok"] = ratio_ok;
    j["predicted_dim"] = predicted_dim;
    return j;
  }
};

inline PointCountReport fit_counts(const PatternMatrix& pattern, Variant v, const std::vector<std::uint32_t>& primes,
                                   const std::vector<std::uint64_t>& counts) {
  const std::size_t amb = ambient_dim(v, pattern.rows());
  if (primes.size() < amb + 2)
    throw DomainError("dimension_fit needs at least " + std::to_string(amb + 2) + " primes, got " + std::to_string(primes.size()));
  PointCountReport r;
  r.pattern = pattern;
  r.variant = v;
  r.primes = primes;
  r.counts = counts;
  r.fit_points = amb + 1;
  r.predicted_dim = predicted_dim(pattern, v);

  std::vector<Rational> xs, ys;
  for (std::size_t k = 0; k < r.fit_points; ++k) {
    xs.emplace_back(primes[k]);
    ys.emplace_back(counts[k]);
  }
  r.coefficients = interpolate(xs, ys);
  std::size_t degree = 0;
  for (std::size_t k = 0; k < r.coefficients.size(); ++k)
    if (r.coefficients[k] != 0) degree = k;
  r.interpolated_degree = degree;
  r.held_out_ok = true;
  for (std::size_t k = r.fit_points; k < primes.size(); ++k)
    if (evaluate(r.coefficients, Rational(primes[k])) != Rational(counts[k])) r.held_out_ok = false;
  if (r.held_out_ok) r.fitted_degree = degree;

  const std::size_t last = primes.size() - 1;
  Rational observed(counts[last], counts[last - 1]);
  Rational expected = 1;
  for (std::size_t k = 0; k < r.predicted_dim; ++k) expected *= Rational(primes[last], primes[last - 1]);
  r.ratio_ok = observed * ratio_tolerance >= expected && observed <= expected * ratio_tolerance;
  return r;
}

inline std::vector<PointCountReport> dimension_fit_all(const std::vector<PatternMatrix>& patterns, Variant v,
                                                       const std::vector<std::uint32_t>& primes) {
  if (patterns.empty()) return {};
  const std::size_t amb = ambient_dim(v, patterns.front().rows());
  if (primes.size() < amb + 2)
    throw DomainError("dimension_fit needs at least " + std::to_string(amb + 2) + " primes, got " + std::to_string(primes.size()));
  std::vector<std::vector<std::uint64_t>> by_prime;
  for (std::uint32_t q : primes) by_prime.push_back(closure_point_counts(patterns, v, q));
  std::vector<PointCountReport> out;
  for (std::size_t t = 0; t < patterns.size(); ++t) {
    std::vector<std::uint64_t> counts;
    for (const auto& c : by_prime) counts.push_back(c[t]);
    out.push_back(fit_counts(patterns[t], v, primes, counts));
  }
  return out;
}

inline PointCountReport dimension_fit(const PatternMatrix& pattern, Variant v, const std::vector<std::uint32_t>& primes) {
  return dimension_fit_all({pattern}, v, primes).front();
}

// ---------------------------------------------------------------------------
// Bruhat order without rank-control matrices

struct BruhatOracle {
  std::vector<Permutation> permutations; ///< lexicographic order
  Relation leq;                          ///< reflexive

  std::size_t index_of(const Permutation& w) const {
    auto it = std::lower_bound(permutations.begin(), permutations.end(), w);
    if (it == permutations.end() || !(*it == w)) throw DomainError("permutation not in oracle");
    return static_cast<std::size_t>(it - permutations.begin());
  }
};

/// Transitive closure of the covers w < w*t, t a transposition, with the
/// inversion number rising by exactly one.
inline BruhatOracle bruhat_oracle(std::size_t n) {
  detail::require_range(n, 1, 5, "bruhat_oracle");
  BruhatOracle o;
  o.permutations = enumerate_permutations(n);
  std::vector<std::size_t> length;
  for (const auto& w : o.permutations) length.push_back(permutation_stats(w).inv);
  std::vector<Edge> covers;
  for (std::size_t a = 0; a < o.permutations.size(); ++a) {
    std::vector<int> w = o.permutations[a].one_line();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::swap(w[i], w[j]);
        Permutation u(w);
        std::size_t b = o.index_of(u);
        if (length[b] == length[a] + 1) covers.emplace_back(a, b);
        std::swap(w[i], w[j]);
      }
  }
  o.leq = transitive_closure(o.permutations.size(), covers);
  return o;
}

} // namespace cbo
