#pragma once

#include <cbo/error.hpp>
#include <cbo/int_matrix.hpp>
#include <cbo/rank_control.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace cbo {

/// Total permutation of {0..m-1} in one-line notation (stored 0-based,
/// printed 1-based).
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> one_line) : w_(std::move(one_line)) {
    std::vector<char> seen(w_.size(), 0);
    for (int v : w_) {
      if (v < 0 || v >= static_cast<int>(w_.size()) || seen[static_cast<std::size_t>(v)])
        throw DomainError("not a permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Permutation identity(std::size_t m) {
    std::vector<int> w(m);
    std::iota(w.begin(), w.end(), 0);
    return Permutation(std::move(w));
  }

  /// 1-based one-line notation: "3412" (digits, m <= 9) or "3,4,1,2".
  static Permutation parse(std::string_view text) {
    std::vector<int> w;
    if (text.find(',') == std::string_view::npos) {
      for (char c : text) {
        if (c < '1' || c > '9') throw DomainError("bad permutation '" + std::string(text) + "'");
        w.push_back(c - '1');
      }
    } else {
      std::size_t start = 0;
      while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        auto tok = text.substr(start, end - start);
        if (tok.empty()) throw DomainError("bad permutation '" + std::string(text) + "'");
        int v = 0;
        for (char c : tok) {
          if (c < '0' || c > '9') throw DomainError("bad permutation '" + std::string(text) + "'");
          v = v * 10 + (c - '0');
        }
        w.push_back(v - 1);
        start = end + 1;
      }
    }
    return Permutation(std::move(w));
  }

  std::size_t size() const noexcept { return w_.size(); }
  int operator[](std::size_t i) const { return w_[i]; }
  const std::vector<int>& one_line() const noexcept { return w_; }

  bool is_involution() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[static_cast<std::size_t>(w_[i])] != static_cast<int>(i)) return false;
    return true;
  }

  IntMatrix matrix() const {
    IntMatrix m(w_.size(), w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) m(i, static_cast<std::size_t>(w_[i])) = 1;
    return m;
  }

  std::string to_string() const {
    std::string s;
    bool wide = w_.size() > 9;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (wide && i) s += ',';
      s += std::to_string(w_[i] + 1);
    }
    return s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> w_;
};

/// Injective map on a subset of {0..n-1}; image(i) == -1 when undefined.
/// As a matrix: a 1 at (i, image(i)) for every defined i.
class PartialPermutation {
public:
  static constexpr int undefined = -1;

  PartialPermutation() = default;

  explicit PartialPermutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    std::vector<char> used(image_.size(), 0);
    for (int v : image_) {
      if (v == undefined) continue;
      if (v < 0 || v >= n) throw DomainError("image out of range");
      if (used[static_cast<std::size_t>(v)]) throw DomainError("not injective: column " + std::to_string(v + 1) + " used twice");
      used[static_cast<std::size_t>(v)] = 1;
    }
  }

  static PartialPermutation from_matrix(const IntMatrix& m) {
    if (!m.is_square()) throw DomainError("partial permutation matrix must be square");
    std::vector<int> image(m.rows(), undefined);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        int v = m(i, j);
        if (v == 0) continue;
        if (v != 1) throw DomainError("partial permutation entries must be 0 or 1");
        if (image[i] != undefined) throw DomainError("row " + std::to_string(i + 1) + " has more than one 1");
        image[i] = static_cast<int>(j);
      }
    return PartialPermutation(std::move(image));
  }

  static PartialPermutation zero(std::size_t n) { return PartialPermutation(std::vector<int>(n, undefined)); }
  static PartialPermutation identity(std::size_t n) { return PartialPermutation(Permutation::identity(n).one_line()); }
  static PartialPermutation from_permutation(const Permutation& w) { return PartialPermutation(w.one_line()); }

  std::size_t size() const noexcept { return image_.size(); }
  int image(std::size_t i) const { return image_[i]; }
  const std::vector<int>& images() const noexcept { return image_; }

  std::size_t rank() const {
    return static_cast<std::size_t>(std::count_if(image_.begin(), image_.end(), [](int v) { return v != undefined; }));
  }
  bool is_total() const { return rank() == size(); }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
      int j = image_[i];
      if (j != undefined && image_[static_cast<std::size_t>(j)] != static_cast<int>(i)) return false;
    }
    return true;
  }

  IntMatrix matrix() const {
    IntMatrix m(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      if (image_[i] != undefined) m(i, static_cast<std::size_t>(image_[i])) = 1;
    return m;
  }

  friend bool operator==(const PartialPermutation&, const PartialPermutation&) = default;

  /// Canonical order: row-major lexicographic on the 0-1 matrix.
  friend std::strong_ordering operator<=>(const PartialPermutation& a, const PartialPermutation& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (auto c = a.row_key(i) <=> b.row_key(i); c != 0) return c;
    return std::strong_ordering::equal;
  }

private:
  // zero row sorts first; a 1 further right sorts earlier
  int row_key(std::size_t i) const {
    return image_[i] == undefined ? 0 : static_cast<int>(size()) - image_[i];
  }

  std::vector<int> image_;
};

/// Symmetric partial permutation.
class PartialInvolution : public PartialPermutation {
public:
  PartialInvolution() = default;

  explicit PartialInvolution(PartialPermutation p) : PartialPermutation(std::move(p)) {
    if (!is_symmetric()) throw DomainError("not a partial involution (matrix is not symmetric)");
  }

  explicit PartialInvolution(std::vector<int> image) : PartialInvolution(PartialPermutation(std::move(image))) {}

  static PartialInvolution from_matrix(const IntMatrix& m) { return PartialInvolution(PartialPermutation::from_matrix(m)); }
  static PartialInvolution zero(std::size_t n) { return PartialInvolution(PartialPermutation::zero(n)); }
  static PartialInvolution identity(std::size_t n) { return PartialInvolution(PartialPermutation::identity(n)); }
};

/// A partial involution split into its core involution (zero rows and
/// columns deleted) and the 1-based positions of the zero rows.
struct InvolutionDecomposition {
  Permutation core;
  std::vector<std::size_t> zero_rows;

  friend bool operator==(const InvolutionDecomposition&, const InvolutionDecomposition&) = default;
};

struct PermutationStats {
  std::size_t inv = 0;
  std::size_t exc = 0;
  std::size_t fix = 0;

  friend bool operator==(const PermutationStats&, const PermutationStats&) = default;
};

namespace detail {

inline void require_range(std::size_t n, std::size_t lo, std::size_t hi, const char* what) {
  if (n < lo || n > hi)
    throw DomainError(std::string(what) + ": n must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(n));
}

inline void involutions_rec(std::vector<int>& image, std::size_t i, bool allow_partial, std::vector<PartialInvolution>& out) {
  const std::size_t n = image.size();
  while (i < n && image[i] != -2) ++i;
  if (i == n) {
    out.emplace_back(image);
    return;
  }
  if (allow_partial) {
    image[i] = PartialPermutation::undefined;
    involutions_rec(image, i + 1, allow_partial, out);
  }
  image[i] = static_cast<int>(i);
  involutions_rec(image, i + 1, allow_partial, out);
  for (std::size_t j = i + 1; j < n; ++j) {
    if (image[j] != -2) continue;
    image[i] = static_cast<int>(j);
    image[j] = static_cast<int>(i);
    involutions_rec(image, i + 1, allow_partial, out);
    image[j] = -2;
  }
  image[i] = -2;
}

inline void partial_perms_rec(std::vector<int>& image, std::vector<char>& used, std::size_t i, std::vector<PartialPermutation>& out) {
  if (i == image.size()) {
    out.emplace_back(image);
    return;
  }
  image[i] = PartialPermutation::undefined;
  partial_perms_rec(image, used, i + 1, out);
  for (std::size_t j = 0; j < image.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    image[i] = static_cast<int>(j);
    partial_perms_rec(image, used, i + 1, out);
    used[j] = 0;
  }
  image[i] = PartialPermutation::undefined;
}

} // namespace detail

/// All partial involutions of size n (1 <= n <= 8) in canonical order; the
/// zero pattern is first. Position in this sequence is the poset element id.
inline std::vector<PartialInvolution> enumerate_partial_involutions(std::size_t n) {
  detail::require_range(n, 1, 8, "enumerate_partial_involutions");
  std::vector<int> image(n, -2);
  std::vector<PartialInvolution> out;
  detail::involutions_rec(image, 0, true, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// All involutions of S_n (1 <= n <= 8) as full-support partial involutions,
/// canonical order.
inline std::vector<PartialInvolution> enumerate_involutions(std::size_t n) {
  detail::require_range(n, 1, 8, "enumerate_involutions");
  std::vector<int> image(n, -2);
  std::vector<PartialInvolution> out;
  detail::involutions_rec(image, 0, false, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// The rook monoid R_n (1 <= n <= 6), canonical order.
inline std::vector<PartialPermutation> enumerate_partial_permutations(std::size_t n) {
  detail::require_range(n, 1, 6, "enumerate_partial_permutations");
  std::vector<int> image(n, PartialPermutation::undefined);
  std::vector<char> used(n, 0);
  std::vector<PartialPermutation> out;
  detail::partial_perms_rec(image, used, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// S_n in lexicographic one-line order (1 <= n <= 8).
inline std::vector<Permutation> enumerate_permutations(std::size_t n) {
  detail::require_range(n, 1, 8, "enumerate_permutations");
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

/// r(i,j) = number of 1s of the pattern inside the leading i x j block,
/// i.e. the 2D prefix sum U^t pi U.
inline RankControl pattern_rank_control(const PartialPermutation& pi) {
  const std::size_t n = pi.size();
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int above = i ? r(i - 1, j) : 0;
      int left = j ? r(i, j - 1) : 0;
      int diag = (i && j) ? r(i - 1, j - 1) : 0;
      r(i, j) = above + left - diag + (pi.image(i) == static_cast<int>(j) ? 1 : 0);
    }
  }
  return RankControl(std::move(r));
}

/// Inverts pattern_rank_control by inclusion-exclusion.
inline PartialPermutation pattern_from_rank_control(const RankControl& r) {
  if (r.rows() != r.cols()) throw DomainError("not a partial-permutation rank-control: matrix is not square");
  const std::size_t n = r.rows();
  IntMatrix pi(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      int e = r.value(i, j) - r.value(i - 1, j) - r.value(i, j - 1) + r.value(i - 1, j - 1);
      if (e != 0 && e != 1)
        throw DomainError("not a partial-permutation rank-control: recovered entry " + std::to_string(e) + " at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      pi(i - 1, j - 1) = e;
    }
  try {
    return PartialPermutation::from_matrix(pi);
  } catch (const DomainError& e) {
    throw DomainError(std::string("not a partial-permutation rank-control: ") + e.what());
  }
}

inline InvolutionDecomposition decompose(const PartialInvolution& pi) {
  const std::size_t n = pi.size();
  InvolutionDecomposition d;
  std::vector<int> compressed(n, -1); // original index -> core index
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pi.image(i) == PartialPermutation::undefined)
      d.zero_rows.push_back(i + 1);
    else
      compressed[i] = next++;
  }
  std::vector<int> core;
  core.reserve(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < n; ++i)
    if (compressed[i] >= 0) core.push_back(compressed[static_cast<std::size_t>(pi.image(i))]);
  d.core = Permutation(std::move(core));
  return d;
}

/// Re-inserts zero rows/columns; inverse of decompose.
inline PartialInvolution recompose(const InvolutionDecomposition& d) {
  const std::size_t n = d.core.size() + d.zero_rows.size();
  std::vector<char> is_zero(n, 0);
  for (std::size_t z : d.zero_rows) {
    if (z < 1 || z > n || is_zero[z - 1]) throw DomainError("bad zero-row set");
    is_zero[z - 1] = 1;
  }
  std::vector<int> expand; // core index -> original index
  for (std::size_t i = 0; i < n; ++i)
    if (!is_zero[i]) expand.push_back(static_cast<int>(i));
  std::vector<int> image(n, PartialPermutation::undefined);
  for (std::size_t c = 0; c < d.core.size(); ++c)
    image[static_cast<std::size_t>(expand[c])] = expand[static_cast<std::size_t>(d.core[c])];
  return PartialInvolution(std::move(image));
}

inline PermutationStats permutation_stats(const Permutation& w) {
  PermutationStats s;
  const std::size_t m = w.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (w[i] > static_cast<int>(i)) ++s.exc;
    if (w[i] == static_cast<int>(i)) ++s.fix;
    for (std::size_t j = i + 1; j < m; ++j)
      if (w[i] > w[j]) ++s.inv;
  }
  return s;
}

/// Permutation of a total partial permutation.
inline Permutation to_permutation(const PartialPermutation& p) {
  if (!p.is_total()) throw DomainError("partial permutation has zero rows");
  return Permutation(p.images());
}

} // namespace cbo
