// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <cbo/cbo.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace cbo;

namespace {

// Runtime budgets, seconds.
constexpr double budget_golden = 1.0;
constexpr double budget_worked_examples = 1.0;
constexpr double budget_incitti = 5.0;
constexpr double budget_graded = 10.0;
constexpr double budget_bruhat = 10.0;
constexpr double budget_fuzz = 30.0;
constexpr double budget_point_count = 600.0;
constexpr double budget_canonicalize = 30.0;
constexpr double budget_regular = 5.0;

// Fuzz sizes.
constexpr std::size_t fuzz_trials_per_prime = 10000;
constexpr std::size_t canonicalize_trials = 10000;
// Fallback ratio test tolerance (multiplicative).
static_assert(ratio_tolerance == 2);

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "; failed: ";
      else note << ", ";
      note << what;
      pass = false;
    }
  }
};

using Check = std::function<void(Outcome&)>;

// ---------------------------------------------------------------------------

struct Golden {
  char label;
  IntMatrix pattern, rank_control;
  std::size_t dim;
};

void crit_golden_poset(Outcome& o) {
  const std::vector<Golden> g = {
      {'A', {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 1, 1}, {1, 2, 2}, {1, 2, 3}}, 6},
      {'B', {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}, {{1, 1, 1}, {1, 2, 2}, {1, 2, 2}}, 5},
      {'C', {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, {{1, 1, 1}, {1, 1, 2}, {1, 2, 3}}, 5},
      {'D', {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{0, 1, 1}, {1, 2, 2}, {1, 2, 3}}, 5},
      {'E', {{1, 0, 0}, {0, 0, 0}, {0, 0, 1}}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 2}}, 4},
      {'F', {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}, {{0, 1, 1}, {1, 2, 2}, {1, 2, 2}}, 4},
      {'G', {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, {{0, 0, 1}, {0, 1, 2}, {1, 2, 3}}, 4},
      {'H', {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, 3},
      {'I', {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}}, 3},
      {'J', {{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}, {{0, 0, 1}, {0, 0, 1}, {1, 1, 2}}, 3},
      {'K', {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 1, 1}, {0, 1, 1}}, 2},
      {'L', {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}, {{0, 0, 0}, {0, 0, 1}, {0, 1, 2}}, 2},
      {'M', {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, 1},
      {'Z', IntMatrix(3, 3), IntMatrix(3, 3), 0},
  };
  const std::vector<std::pair<char, char>> edges = {
      {'B', 'A'}, {'C', 'A'}, {'D', 'A'}, {'E', 'B'}, {'E', 'C'}, {'F', 'D'}, {'F', 'B'}, {'G', 'C'},
      {'G', 'D'}, {'H', 'E'}, {'I', 'G'}, {'I', 'F'}, {'I', 'E'}, {'J', 'F'}, {'J', 'E'}, {'J', 'G'},
      {'K', 'H'}, {'K', 'I'}, {'L', 'J'}, {'L', 'I'}, {'M', 'K'}, {'M', 'L'}, {'Z', 'M'},
  };
  OrbitPoset p = build_poset(3, Variant::symmetric);
  o.require(p.size() == 14, "14 elements");
  std::map<char, std::size_t> id;
  for (const auto& e : g) {
    auto it = std::find(p.elements.begin(), p.elements.end(), e.pattern);
    if (it == p.elements.end()) {
      o.require(false, std::string("element ") + e.label + " present");
      continue;
    }
    std::size_t k = static_cast<std::size_t>(it - p.elements.begin());
    id[e.label] = k;
    o.require(p.rank_controls[k].matrix() == e.rank_control, std::string("R of ") + e.label);
    o.require(p.dim[k] == e.dim, std::string("dim of ") + e.label);
  }
  std::vector<std::size_t> levels(7);
  for (std::size_t d : p.dim) ++levels[6 - d];
  o.require(levels == std::vector<std::size_t>{1, 3, 3, 3, 2, 1, 1}, "level sizes");
  std::set<Edge> expected, got(p.hasse.begin(), p.hasse.end());
  for (auto [lo, hi] : edges) expected.insert({id[lo], id[hi]});
  o.require(got == expected, "Hasse edges");
  o.note << "14 orbits, " << got.size() << " Hasse edges, levels 1,3,3,3,2,1,1";
}

void crit_worked_examples(Outcome& o) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto r = dim_symmetric(PartialInvolution::identity(n));
    o.require(r.stat == 0 && r.dim == n * (n + 1) / 2, "identity n=" + std::to_string(n));
  }
  auto swap12 = PartialInvolution::from_matrix({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  auto r2 = dim_symmetric(swap12);
  o.require(r2.stat == 1 && r2.dim == 5, "swap12");

  IntMatrix m(6, 6);
  m(0, 3) = m(3, 0) = m(1, 4) = m(4, 1) = 1;
  auto cycles = PartialInvolution::from_matrix(m);
  const IntMatrix printed{{0, 0, 0, 1, 1, 1}, {0, 0, 0, 1, 2, 2}, {0, 0, 0, 1, 2, 2},
                          {1, 1, 1, 2, 3, 3}, {1, 2, 2, 3, 4, 4}, {1, 2, 2, 3, 4, 4}};
  o.require(pattern_rank_control(cycles).matrix() == printed, "n=6 R");
  o.require(d_count(cycles) == 8, "n=6 D=8");
  auto d = decompose(cycles);
  o.require(d.core == Permutation::parse("3412") && d.zero_rows == std::vector<std::size_t>{3, 6}, "n=6 decomposition");
  o.require(incitti_d(cycles) == 8, "n=6 closed formula");
  o.note << "identity D=0, swap12 D=" << r2.stat << " dim=" << r2.dim << ", n=6 two-cycle pattern D=" << d_count(cycles);
}

void crit_incitti(Outcome& o) {
  const std::size_t sizes[] = {2, 5, 14, 43, 142, 499};
  std::size_t cases = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    auto all = enumerate_partial_involutions(n);
    o.require(all.size() == sizes[n - 1], "count n=" + std::to_string(n));
    for (const auto& pi : all) {
      ++cases;
      mismatches += d_count(pi) != incitti_d(pi);
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.note << cases << " partial involutions, " << mismatches << " mismatches";
}

void crit_graded(Outcome& o) {
  std::size_t edges = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    OrbitPoset p = build_poset(n, Variant::symmetric);
    edges += p.hasse.size();
    o.require(check_graded(p).graded, "symmetric n=" + std::to_string(n));
    auto mn = minimal_elements(p), mx = maximal_elements(p);
    o.require(mn.size() == 1 && p.dim[mn[0]] == 0 && p.elements[mn[0]] == IntMatrix(n, n), "unique min n=" + std::to_string(n));
    o.require(mx.size() == 1 && p.dim[mx[0]] == n * (n + 1) / 2 && p.elements[mx[0]] == IntMatrix::identity(n),
              "unique max n=" + std::to_string(n));
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    OrbitPoset p = build_poset(n, Variant::antisymmetric);
    edges += p.hasse.size();
    o.require(check_graded(p).graded, "antisymmetric n=" + std::to_string(n));
  }
  o.note << edges << " Hasse edges checked";
}

void crit_bruhat(Outcome& o) {
  std::size_t pairs = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    BruhatOracle oracle = bruhat_oracle(n);
    for (std::size_t a = 0; a < oracle.permutations.size(); ++a)
      for (std::size_t b = 0; b < oracle.permutations.size(); ++b) {
        ++pairs;
        bool via_rank = bruhat_leq(PartialPermutation::from_permutation(oracle.permutations[a]),
                                   PartialPermutation::from_permutation(oracle.permutations[b]));
        mismatches += via_rank != oracle.leq.test(a, b);
      }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.note << pairs << " pairs over S_1..S_5, " << mismatches << " mismatches";
}

void crit_invariance(Outcome& o) {
  const auto sym = enumerate_partial_involutions(4);
  const auto rook = enumerate_partial_permutations(3);
  const std::size_t per_sym = (fuzz_trials_per_prime + sym.size() - 1) / sym.size();
  const std::size_t per_rook = (fuzz_trials_per_prime + rook.size() - 1) / rook.size();
  std::size_t trials = 0, changes = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 1009u}) {
    std::size_t congruence_trials = 0, lu_trials = 0;
    for (std::size_t k = 0; k < sym.size(); ++k) {
      auto r = invariance_fuzz(sym[k], p, per_sym, derive_seed(p, k));
      congruence_trials += r.trials;
      changes += r.failures.size();
      for (const auto& f : r.failures) std::printf("    seed=%llu trial=%zu prime=%u\n", static_cast<unsigned long long>(f.seed), f.trial, f.prime);
    }
    for (std::size_t k = 0; k < rook.size(); ++k) {
      auto r = lu_invariance_fuzz(rook[k], p, per_rook, derive_seed(p + 1, k));
      lu_trials += r.trials;
      changes += r.failures.size();
    }
    o.require(congruence_trials >= fuzz_trials_per_prime && lu_trials >= fuzz_trials_per_prime, "trial budget p=" + std::to_string(p));
    trials += congruence_trials + lu_trials;
  }
  o.require(changes == 0, std::to_string(changes) + " rank-control changes");

  std::size_t negative = 0;
  for (std::size_t k = 0; k < sym.size(); ++k)
    negative += invariance_fuzz(sym[k], 7, 20, derive_seed(99, k), FuzzTransform::general).failures.size();
  o.require(negative >= 1, "negative control produced no change");
  o.note << trials << " Borel/LU trials, " << changes << " changes; negative control: " << negative << " changes";
}

void crit_point_count(Outcome& o) {
  std::size_t patterns = 0, held_out_failures = 0;
  auto run = [&](Variant v, std::size_t n, const std::vector<PatternMatrix>& pats, const std::vector<std::uint32_t>& primes) {
    for (const auto& r : dimension_fit_all(pats, v, primes)) {
      ++patterns;
      const std::string tag = to_string(v) + " n=" + std::to_string(n);
      if (!r.held_out_ok) {
        ++held_out_failures;
        std::ostringstream s;
        s << r.pattern;
        std::printf("    held-out witness failed (%s %s), ratio test %s\n", tag.c_str(), s.str().c_str(), r.ratio_ok ? "passed" : "failed");
        o.require(r.ratio_ok, "ratio fallback " + tag);
      } else {
        o.require(r.fitted_degree && *r.fitted_degree == r.predicted_dim, "degree " + tag);
      }
    }
  };
  std::vector<PatternMatrix> pats;
  for (const auto& pi : enumerate_partial_involutions(3)) pats.push_back(pi.matrix());
  o.require(pats.size() == 14, "14 symmetric patterns");
  run(Variant::symmetric, 3, pats, {2, 3, 5, 7, 11, 13, 17, 19});

  pats.clear();
  for (const auto& pi : enumerate_partial_permutations(2)) pats.push_back(pi.matrix());
  o.require(pats.size() == 7, "7 nonsymmetric patterns");
  run(Variant::nonsymmetric, 2, pats, {2, 3, 5, 7, 11, 13});

  const std::vector<std::vector<std::uint32_t>> odd = {{3, 5}, {3, 5, 7}, {3, 5, 7, 11, 13}};
  for (std::size_t n = 1; n <= 3; ++n) {
    pats.clear();
    for (const auto& s : enumerate_involutions(n)) pats.push_back(antisym_pattern(to_permutation(s)));
    run(Variant::antisymmetric, n, pats, odd[n - 1]);
  }
  o.note << patterns << " patterns fitted, " << held_out_failures << " held-out failures (ratio factor " << ratio_tolerance << ")";
}

void crit_canonicalize(Outcome& o) {
  const FieldSpec q = FieldSpec::rationals();
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& pi : enumerate_partial_involutions(n)) {
      ++checked;
      o.require(symmetric_canonicalize(Matrix::from_ints(pi.matrix(), q)) == pi, "retraction");
    }
  std::size_t mismatches = 0;
  const std::uint32_t primes[] = {5, 7, 1009};
  for (std::size_t t = 0; t < canonicalize_trials; ++t) {
    std::uint32_t p = primes[t % 3];
    FieldSpec f = FieldSpec::prime(p);
    Rng rng(derive_seed(2024, t));
    std::size_t n = 1 + rng.below(5);
    Matrix s = random_symmetric(n, f, rng);
    Matrix b = borel_random(n, f, rng.next());
    mismatches += !(symmetric_canonicalize(congruence_transform(b, s)) == symmetric_canonicalize(s));
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " orbit invariance mismatches");
  o.note << checked << " retractions, " << canonicalize_trials << " fuzzed orbits, " << mismatches << " mismatches";
}

void crit_regular(Outcome& o) {
  std::size_t elements = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    OrbitPoset r = regular_subposet(build_poset(n, Variant::symmetric));
    BruhatOracle oracle = bruhat_oracle(n);
    elements += r.size();
    o.require(check_graded(r).graded, "graded n=" + std::to_string(n));
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < r.size(); ++k) {
      Permutation w = to_permutation(PartialPermutation::from_matrix(r.elements[k]));
      auto st = permutation_stats(w);
      o.require(r.rank[k] == (st.exc + st.inv) / 2, "rank label");
      idx.push_back(oracle.index_of(w));
    }
    for (std::size_t a = 0; a < r.size(); ++a)
      for (std::size_t b = 0; b < r.size(); ++b)
        o.require(r.leq.test(a, b) == oracle.leq.test(idx[a], idx[b]), "order n=" + std::to_string(n));
  }
  o.note << elements << " regular involutions over n=1..5";
}

} // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget;
    Check check;
  };
  const std::vector<Criterion> criteria = {
      {1, "n=3 golden orbit poset", budget_golden, crit_golden_poset},
      {2, "worked dimension examples", budget_worked_examples, crit_worked_examples},
      {3, "D equals the closed formula for n=1..6", budget_incitti, crit_incitti},
      {4, "gradedness by dimension", budget_graded, crit_graded},
      {5, "rank-control Bruhat order vs covering oracle", budget_bruhat, crit_bruhat},
      {6, "rank-control invariance fuzzing", budget_fuzz, crit_invariance},
      {7, "point-count dimension oracle", budget_point_count, crit_point_count},
      {8, "canonicalization retraction and orbit invariance", budget_canonicalize, crit_canonicalize},
      {9, "regular involutions under reversed order", budget_regular, crit_regular},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.check(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) {
      std::ostringstream s;
      s << "runtime " << secs << " s over budget " << c.budget << " s";
      o.require(false, s.str());
    }
    std::printf("%s criterion %d: %s (%.2f s, budget %.0f s) - %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name, secs, c.budget,
                o.note.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
