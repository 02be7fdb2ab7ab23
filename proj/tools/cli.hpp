#pragma once

// Command-line front end. Kept in a header so the test suite can drive
// run() in-process.

#include <cbo/cbo.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cbo::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Matrix read_matrix(const std::string& path, FieldSpec field) {
  try {
    return parse_matrix(read_file(path), field);
  } catch (const ParseError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline PatternMatrix read_pattern(const std::string& path) {
  try {
    return parse_pattern(read_file(path));
  } catch (const ParseError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline std::vector<std::uint32_t> parse_primes(const std::string& list) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(FieldSpec::parse(tok).modulus());
  if (out.empty()) throw DomainError("empty prime list");
  return out;
}

/// The first `count` primes (odd ones only when `odd`).
inline std::vector<std::uint32_t> default_primes(std::size_t count, bool odd) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = odd ? 3 : 2; out.size() < count; ++q)
    if (is_prime(q)) out.push_back(q);
  return out;
}

/// Elements of the orbit poset's index set, as patterns.
inline std::vector<PatternMatrix> patterns_of(Variant v, std::size_t n) {
  std::vector<PatternMatrix> out;
  switch (v) {
  case Variant::symmetric:
    for (const auto& p : enumerate_partial_involutions(n)) out.push_back(p.matrix());
    break;
  case Variant::nonsymmetric:
    for (const auto& p : enumerate_partial_permutations(n)) out.push_back(p.matrix());
    break;
  case Variant::antisymmetric:
    for (const auto& p : enumerate_involutions(n)) out.push_back(antisym_pattern(to_permutation(p)));
    break;
  }
  return out;
}

/// Rank profile of a pattern after validating it against the variant.
inline RankControl profile_of(const PatternMatrix& m, Variant v) {
  switch (v) {
  case Variant::symmetric: return pattern_rank_control(PartialInvolution::from_matrix(m));
  case Variant::nonsymmetric: return pattern_rank_control(PartialPermutation::from_matrix(m));
  case Variant::antisymmetric: return rank_control(antisym_representative(involution_from_antisym_pattern(m)));
  }
  return {};
}

inline DimensionReport dimension_of(const PatternMatrix& m, Variant v) {
  switch (v) {
  case Variant::symmetric: return dim_symmetric(PartialInvolution::from_matrix(m));
  case Variant::nonsymmetric: return dim_nonsymmetric(PartialPermutation::from_matrix(m));
  case Variant::antisymmetric: return dim_antisymmetric(involution_from_antisym_pattern(m));
  }
  return {};
}

inline std::string flat(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

} // namespace detail

struct Options {
  std::size_t n = 0;
  std::string kind = "symmetric";
  std::string field = "rational";
  std::string input;
  std::string pattern;
  std::string format = "json";
  std::string out;
  std::string check;
  std::string primes;
  std::vector<std::string> operands;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  bool leq = false;
  bool quiet = false;
  bool negative_control = false;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence Borel-orbit posets of symmetric matrices", "cbo"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--quiet,-q", o.quiet, "Suppress human-readable summaries on stderr");

  const std::vector<std::string> kinds{"symmetric", "nonsymmetric", "antisymmetric"};
  auto field_check = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          FieldSpec::parse(s);
          return {};
        } catch (const DomainError& e) {
          return e.what();
        }
      },
      "rational|PRIME", "field");

  auto* enumerate = app.add_subcommand("enumerate", "List orbit representatives");
  enumerate->add_option("--n", o.n, "Matrix size")->required()->check(CLI::Range(1, 8));
  enumerate->add_option("--kind", o.kind)->check(CLI::IsMember(kinds));

  auto* rankc = app.add_subcommand("rank-control", "Rank-control matrix of a matrix file");
  rankc->add_option("--input", o.input)->required();
  rankc->add_option("--field", o.field)->check(field_check);

  auto* canon = app.add_subcommand("canonicalize", "Partial involution indexing the orbit of a symmetric matrix");
  canon->add_option("--input", o.input)->required();
  canon->add_option("--field", o.field)->check(field_check);

  auto* compare = app.add_subcommand("compare", "Compare two orbit patterns: <, >, = or incomparable");
  compare->add_option("patterns", o.operands)->required()->expected(2);
  compare->add_option("--kind", o.kind)->check(CLI::IsMember(kinds));

  auto* closure = app.add_subcommand("closure", "Whether a symmetric matrix lies in an orbit closure");
  closure->add_option("--pattern", o.pattern)->required();
  closure->add_option("--input", o.input)->required();
  closure->add_option("--field", o.field)->check(field_check);

  auto* poset = app.add_subcommand("poset", "Build and export an orbit poset");
  poset->add_option("--n", o.n)->required()->check(CLI::Range(1, 6));
  poset->add_option("--kind", o.kind)->check(CLI::IsMember({"symmetric", "nonsymmetric", "antisymmetric", "regular"}));
  poset->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}));
  poset->add_option("--out", o.out, "Write to a file instead of stdout");
  poset->add_flag("--leq", o.leq, "Include the full order relation in JSON output");

  auto* dim = app.add_subcommand("dim", "Dimension report for a pattern");
  dim->add_option("--input", o.input)->required();
  dim->add_option("--kind", o.kind)->check(CLI::IsMember(kinds));

  auto* verify = app.add_subcommand("verify", "Run an oracle check");
  verify->add_option("check", o.check)->required()->check(CLI::IsMember({"invariance", "point-count", "bruhat", "incitti", "graded"}));
  verify->add_option("--n", o.n)->required()->check(CLI::Range(1, 8));
  auto* seed_opt = verify->add_option("--seed", o.seed);
  verify->add_option("--trials", o.trials)->check(CLI::Range(1, 100000000));
  verify->add_option("--primes", o.primes, "Comma-separated primes");
  verify->add_option("--kind", o.kind)->check(CLI::IsMember(kinds));
  verify->add_flag("--negative-control", o.negative_control, "invariance: use general invertible G instead of Borel B");

  std::vector<const char*> argv{"cbo"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (verify->parsed() && o.check == "invariance" && seed_opt->count() == 0)
      throw CLI::RequiredError("--seed is required for randomized checks");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  try {
    const Variant variant = o.kind == "regular" ? Variant::symmetric : parse_variant(o.kind);
    const FieldSpec field = FieldSpec::parse(o.field);

    if (enumerate->parsed()) {
      auto patterns = detail::patterns_of(variant, o.n);
      nlohmann::ordered_json j;
      j["n"] = o.n;
      j["kind"] = o.kind;
      j["count"] = patterns.size();
      auto elements = nlohmann::ordered_json::array();
      for (const auto& p : patterns) elements.push_back(cbo::detail::to_json(p));
      j["elements"] = std::move(elements);
      out << j.dump() << "\n";
      return ok;
    }

    if (rankc->parsed()) {
      out << rank_control(detail::read_matrix(o.input, field)).matrix().to_text();
      return ok;
    }

    if (canon->parsed()) {
      out << symmetric_canonicalize(detail::read_matrix(o.input, field)).matrix().to_text();
      return ok;
    }

    if (compare->parsed()) {
      RankControl a = detail::profile_of(detail::read_pattern(o.operands[0]), variant);
      RankControl b = detail::profile_of(detail::read_pattern(o.operands[1]), variant);
      if (a.rows() != b.rows()) throw DomainError("patterns differ in size");
      out << to_symbol(compare_R(a, b)) << "\n";
      return ok;
    }

    if (closure->parsed()) {
      PartialInvolution pi = PartialInvolution::from_matrix(detail::read_pattern(o.pattern));
      out << (closure_contains(pi, detail::read_matrix(o.input, field)) ? "true" : "false") << "\n";
      return ok;
    }

    if (poset->parsed()) {
      if (variant == Variant::nonsymmetric && o.n > 5) throw DomainError("nonsymmetric posets are limited to n <= 5");
      OrbitPoset p = build_poset(o.n, variant);
      if (o.kind == "regular") p = regular_subposet(p);
      const std::string text = export_poset(p, parse_export_format(o.format), o.leq);
      if (o.out.empty()) {
        out << text;
      } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw DomainError("cannot write '" + o.out + "'");
        f << text;
      }
      if (!o.quiet) {
        GradedReport g = check_graded(p);
        err << "n=" << o.n << " " << o.kind << ": " << p.size() << " elements, " << p.hasse.size() << " Hasse edges, graded: "
            << (g.graded ? "yes" : "no") << "\n";
      }
      return ok;
    }

    if (dim->parsed()) {
      out << detail::dimension_of(detail::read_pattern(o.input), variant).to_json().dump() << "\n";
      return ok;
    }

    if (verify->parsed()) {
      nlohmann::ordered_json j;
      j["check"] = o.check;
      j["n"] = o.n;
      bool passed = true;

      if (o.check == "invariance") {
        if (variant == Variant::antisymmetric) throw DomainError("invariance check supports symmetric and nonsymmetric kinds");
        auto primes = o.primes.empty() ? std::vector<std::uint32_t>{2, 3, 5, 7, 1009} : detail::parse_primes(o.primes);
        std::size_t failures = 0, trials = 0;
        auto patterns = detail::patterns_of(variant, o.n);
        for (std::uint32_t p : primes)
          for (std::size_t id = 0; id < patterns.size(); ++id) {
            const std::uint64_t s = derive_seed(o.seed, id);
            FuzzReport r = variant == Variant::symmetric
                               ? invariance_fuzz(PartialInvolution::from_matrix(patterns[id]), p, o.trials, s,
                                                 o.negative_control ? FuzzTransform::general : FuzzTransform::borel)
                               : lu_invariance_fuzz(PartialPermutation::from_matrix(patterns[id]), p, o.trials, s);
            trials += r.trials;
            for (const auto& f : r.failures)
              out << "seed=" << o.seed << " trial=" << f.trial << " pattern=" << detail::flat(f.pattern) << " prime=" << f.prime << "\n";
            failures += r.failures.size();
          }
        j["kind"] = o.kind;
        j["seed"] = o.seed;
        j["primes"] = primes;
        j["trials"] = trials;
        j["failures"] = failures;
        // the negative control is expected to fail
        passed = o.negative_control ? failures > 0 : failures == 0;
      } else if (o.check == "point-count") {
        const std::size_t amb = ambient_dim(variant, o.n);
        auto primes = o.primes.empty() ? detail::default_primes(amb + 2, variant == Variant::antisymmetric) : detail::parse_primes(o.primes);
        auto reports = dimension_fit_all(detail::patterns_of(variant, o.n), variant, primes);
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
          arr.push_back(r.to_json());
          passed = passed && r.consistent();
          if (!r.held_out_ok && !o.quiet) err << "held-out witness failed for " << detail::flat(r.pattern) << "\n";
        }
        j["kind"] = o.kind;
        j["reports"] = std::move(arr);
      } else if (o.check == "bruhat") {
        if (o.n > 5) throw DomainError("bruhat oracle is limited to n <= 5");
        BruhatOracle oracle = bruhat_oracle(o.n);
        std::size_t mismatches = 0, strict = 0;
        for (std::size_t a = 0; a < oracle.permutations.size(); ++a)
          for (std::size_t b = 0; b < oracle.permutations.size(); ++b) {
            bool via_rank = bruhat_leq(PartialPermutation::from_permutation(oracle.permutations[a]),
                                       PartialPermutation::from_permutation(oracle.permutations[b]));
            if (via_rank != oracle.leq.test(a, b)) ++mismatches;
            if (a != b && oracle.leq.test(a, b)) ++strict;
          }
        j["permutations"] = oracle.permutations.size();
        j["strict_pairs"] = strict;
        j["mismatches"] = mismatches;
        passed = mismatches == 0;
      } else if (o.check == "incitti") {
        std::size_t mismatches = 0;
        auto all = enumerate_partial_involutions(o.n);
        for (const auto& pi : all) mismatches += d_count(pi) != incitti_d(pi);
        j["cases"] = all.size();
        j["mismatches"] = mismatches;
        passed = mismatches == 0;
      } else if (o.check == "graded") {
        OrbitPoset p = build_poset(o.n, variant);
        GradedReport g = check_graded(p);
        auto viol = nlohmann::ordered_json::array();
        for (const auto& v : g.violations) viol.push_back({v.edge.first, v.edge.second, v.lower_rank, v.upper_rank});
        j["kind"] = o.kind;
        j["elements"] = p.size();
        j["hasse_edges"] = p.hasse.size();
        j["minimal"] = minimal_elements(p);
        j["maximal"] = maximal_elements(p);
        j["violations"] = std::move(viol);
        passed = g.graded;
      }
      j["passed"] = passed;
      out << j.dump() << "\n";
      if (!o.quiet) err << o.check << " n=" << o.n << ": " << (passed ? "PASS" : "FAIL") << "\n";
      return passed ? ok : domain_error;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return domain_error;
  }
  return usage_error;
}

} // namespace cbo::cli
