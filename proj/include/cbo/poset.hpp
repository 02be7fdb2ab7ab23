#pragma once

#include <cbo/dimension.hpp>
#include <cbo/error.hpp>
#include <cbo/order.hpp>
#include <cbo/partial_perm.hpp>
#include <cbo/rank_control.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cbo {

/// Square boolean relation stored as one bitset row per element.
class Relation {
public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t a, std::size_t b) const { return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u; }
  void set(std::size_t a, std::size_t b) { bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }
  void reset(std::size_t a, std::size_t b) { bits_[a * words_ + b / 64] &= ~(std::uint64_t{1} << (b % 64)); }

  std::uint64_t* row(std::size_t a) { return &bits_[a * words_]; }
  const std::uint64_t* row(std::size_t a) const { return &bits_[a * words_]; }
  std::size_t words() const noexcept { return words_; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Covering pairs (a, b) of a partial order given reflexively: a < b with
/// nothing strictly between. Covers of a = strict up-set of a minus the
/// union of the strict up-sets of its members.
inline std::vector<Edge> transitive_reduction(const Relation& leq) {
  const std::size_t n = leq.size();
  const std::size_t w = leq.words();
  std::vector<Edge> edges;
  std::vector<std::uint64_t> up(w), covered(w);
  auto bit = [](std::size_t i) { return std::uint64_t{1} << (i % 64); };
  for (std::size_t a = 0; a < n; ++a) {
    std::copy_n(leq.row(a), w, up.begin());
    up[a / 64] &= ~bit(a);
    std::fill(covered.begin(), covered.end(), 0);
    for (std::size_t c = 0; c < n; ++c) {
      if (!(up[c / 64] & bit(c))) continue;
      const std::uint64_t* rc = leq.row(c);
      for (std::size_t k = 0; k < w; ++k) covered[k] |= (k == c / 64) ? (rc[k] & ~bit(c)) : rc[k];
    }
    for (std::size_t c = 0; c < n; ++c)
      if ((up[c / 64] & bit(c)) && !(covered[c / 64] & bit(c))) edges.emplace_back(a, c);
  }
  return edges;
}

/// Reflexive-transitive closure of an edge set on n elements.
inline Relation transitive_closure(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw DomainError("edge endpoint out of range");
    succ[a].push_back(b);
  }
  Relation r(n);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    r.set(s, s);
    stack.assign(1, s);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t t : succ[v])
        if (!r.test(s, t)) {
          r.set(s, t);
          stack.push_back(t);
        }
    }
  }
  return r;
}

/// The poset of orbits for one (n, variant). Element ids are positions in
/// the canonical enumeration. `rank` holds the grading labels: the closure
/// dimension, except in a regular subposet where the order is reversed and
/// rank = (exc+inv)/2.
struct OrbitPoset {
  std::size_t n = 0;
  Variant variant = Variant::symmetric;
  bool order_reversed = false;
  std::vector<PatternMatrix> elements;
  std::vector<RankControl> rank_controls;
  std::vector<std::size_t> stat;
  std::vector<std::size_t> dim;
  std::vector<std::size_t> rank;
  /// Ids in the poset this one was restricted from (empty when built directly).
  std::vector<std::size_t> source_ids;
  Relation leq;
  std::vector<Edge> hasse;

  std::size_t size() const noexcept { return elements.size(); }
  bool less_equal(std::size_t a, std::size_t b) const { return leq.test(a, b); }
};

inline std::vector<Edge> hasse_edges(const OrbitPoset& p) { return transitive_reduction(p.leq); }

namespace detail {

inline void finish_poset(OrbitPoset& p) {
  const std::size_t m = p.size();
  p.leq = Relation(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (leq_R(p.rank_controls[a], p.rank_controls[b])) p.leq.set(a, b);
  p.rank = p.dim;
  p.hasse = hasse_edges(p);
}

} // namespace detail

inline OrbitPoset build_poset(std::size_t n, Variant variant) {
  const std::size_t max_n = variant == Variant::nonsymmetric ? 5 : 6;
  if (n < 1 || n > max_n)
    throw DomainError("build_poset(" + to_string(variant) + "): n must be in [1, " + std::to_string(max_n) + "]");
  OrbitPoset p;
  p.n = n;
  p.variant = variant;
  auto add = [&](PatternMatrix pattern, RankControl rc, std::size_t stat) {
    p.elements.push_back(std::move(pattern));
    p.rank_controls.push_back(std::move(rc));
    p.stat.push_back(stat);
    p.dim.push_back(ambient_dim(variant, n) - stat);
  };
  switch (variant) {
  case Variant::symmetric:
    for (const auto& pi : enumerate_partial_involutions(n)) add(pi.matrix(), pattern_rank_control(pi), d_count(pi));
    break;
  case Variant::nonsymmetric:
    for (const auto& pi : enumerate_partial_permutations(n)) add(pi.matrix(), pattern_rank_control(pi), e_count(pi));
    break;
  case Variant::antisymmetric:
    for (const auto& pi : enumerate_involutions(n)) {
      Permutation sigma = to_permutation(pi);
      add(antisym_pattern(sigma), rank_control(antisym_representative(sigma)), a_count(sigma));
    }
    break;
  }
  detail::finish_poset(p);
  return p;
}

struct GradingViolation {
  Edge edge;
  std::size_t lower_rank = 0;
  std::size_t upper_rank = 0;
};

struct GradedReport {
  bool graded = true;
  std::vector<GradingViolation> violations;
};

/// Every Hasse edge must raise the rank label by exactly 1.
inline GradedReport check_graded(const OrbitPoset& p) {
  GradedReport r;
  for (const Edge& e : p.hasse) {
    std::size_t lo = p.rank[e.first], hi = p.rank[e.second];
    if (hi != lo + 1) {
      r.graded = false;
      r.violations.push_back({e, lo, hi});
    }
  }
  return r;
}

inline std::vector<std::size_t> minimal_elements(const OrbitPoset& p) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < p.size(); ++b) {
    bool minimal = true;
    for (std::size_t a = 0; a < p.size() && minimal; ++a)
      if (a != b && p.leq.test(a, b)) minimal = false;
    if (minimal) out.push_back(b);
  }
  return out;
}

inline std::vector<std::size_t> maximal_elements(const OrbitPoset& p) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < p.size() && maximal; ++b)
      if (a != b && p.leq.test(a, b)) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

/// Invertible orbits of a symmetric poset, with the order reversed so that
/// it reads as the Bruhat order on involutions of S_n; rank labels are
/// (exc+inv)/2.
inline OrbitPoset regular_subposet(const OrbitPoset& p) {
  if (p.variant != Variant::symmetric || p.order_reversed) throw DomainError("regular_subposet needs a symmetric orbit poset");
  OrbitPoset r;
  r.n = p.n;
  r.variant = p.variant;
  r.order_reversed = true;
  for (std::size_t id = 0; id < p.size(); ++id) {
    if (p.rank_controls[id].value(p.n, p.n) != static_cast<int>(p.n)) continue;
    r.source_ids.push_back(id);
    r.elements.push_back(p.elements[id]);
    r.rank_controls.push_back(p.rank_controls[id]);
    r.stat.push_back(p.stat[id]);
    r.dim.push_back(p.dim[id]);
    r.rank.push_back(involution_rank(to_permutation(PartialPermutation::from_matrix(p.elements[id]))));
  }
  r.leq = Relation(r.size());
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b)
      if (p.leq.test(r.source_ids[b], r.source_ids[a])) r.leq.set(a, b);
  r.hasse = hasse_edges(r);
  return r;
}

namespace detail {

inline nlohmann::ordered_json to_json(const IntMatrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix int_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw DomainError("ragged matrix in JSON");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<int>();
  }
  return m;
}

inline std::string label_rows(const IntMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + std::to_string(m(i, j));
    s += "\\n";
  }
  return s;
}

} // namespace detail

enum class ExportFormat { dot, json };

inline ExportFormat parse_export_format(std::string_view s) {
  if (s == "dot") return ExportFormat::dot;
  if (s == "json") return ExportFormat::json;
  throw DomainError("unknown export format '" + std::string(s) + "'");
}

inline nlohmann::ordered_json poset_to_json(const OrbitPoset& p, bool include_leq = false) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["variant"] = to_string(p.variant);
  if (p.order_reversed) j["order_reversed"] = true;
  auto elements = nlohmann::ordered_json::array();
  for (std::size_t id = 0; id < p.size(); ++id) {
    nlohmann::ordered_json e;
    e["id"] = id;
    e["pattern"] = detail::to_json(p.elements[id]);
    e["rank_control"] = detail::to_json(p.rank_controls[id].matrix());
    e["stat"] = p.stat[id];
    e["dim"] = p.dim[id];
    if (p.order_reversed) e["rank"] = p.rank[id];
    if (!p.source_ids.empty()) e["source_id"] = p.source_ids[id];
    elements.push_back(std::move(e));
  }
  j["elements"] = std::move(elements);
  if (include_leq) {
    auto leq = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b)
        if (a != b && p.leq.test(a, b)) leq.push_back({a, b});
    j["leq"] = std::move(leq);
  }
  auto hasse = nlohmann::ordered_json::array();
  for (auto [a, b] : p.hasse) hasse.push_back({a, b});
  j["hasse"] = std::move(hasse);
  return j;
}

/// Graphviz digraph; nodes labeled by pattern rows and dimension, edges
/// are Hasse edges drawn from the lower to the upper element.
inline std::string poset_to_dot(const OrbitPoset& p) {
  std::ostringstream out;
  out << "digraph orbits_n" << p.n << '_' << to_string(p.variant) << (p.order_reversed ? "_regular" : "") << " {\n";
  out << "  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t id = 0; id < p.size(); ++id) {
    out << "  v" << id << " [label=\"" << detail::label_rows(p.elements[id]) << "dim " << p.dim[id];
    if (p.order_reversed) out << ", rank " << p.rank[id];
    out << "\"];\n";
  }
  for (auto [a, b] : p.hasse) out << "  v" << a << " -> v" << b << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string export_poset(const OrbitPoset& p, ExportFormat format, bool include_leq = false) {
  if (format == ExportFormat::dot) return poset_to_dot(p);
  return poset_to_json(p, include_leq).dump(1) + "\n";
}

/// Inverse of poset_to_json. leq is read when present, otherwise rebuilt as
/// the closure of the Hasse edges.
inline OrbitPoset parse_poset_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("bad poset JSON: ") + e.what());
  }
  try {
    OrbitPoset p;
    p.n = j.at("n").get<std::size_t>();
    p.variant = parse_variant(j.at("variant").get<std::string>());
    p.order_reversed = j.value("order_reversed", false);
    for (const auto& e : j.at("elements")) {
      if (e.at("id").get<std::size_t>() != p.size()) throw DomainError("element ids must be 0..N-1 in order");
      p.elements.push_back(detail::int_matrix_from_json(e.at("pattern")));
      p.rank_controls.emplace_back(detail::int_matrix_from_json(e.at("rank_control")));
      p.stat.push_back(e.at("stat").get<std::size_t>());
      p.dim.push_back(e.at("dim").get<std::size_t>());
      p.rank.push_back(p.order_reversed ? e.at("rank").get<std::size_t>() : p.dim.back());
      if (e.contains("source_id")) p.source_ids.push_back(e["source_id"].get<std::size_t>());
    }
    for (const auto& e : j.at("hasse")) p.hasse.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    if (j.contains("leq")) {
      p.leq = Relation(p.size());
      for (std::size_t a = 0; a < p.size(); ++a) p.leq.set(a, a);
      for (const auto& e : j["leq"]) p.leq.set(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    } else {
      p.leq = transitive_closure(p.size(), p.hasse);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad poset JSON: ") + e.what());
  }
}

} // namespace cbo
