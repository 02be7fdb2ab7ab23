#pragma once

#include <cbo/error.hpp>
#include <cbo/int_matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <string>

namespace cbo {

/// Ranks of all upper-left submatrices: entry (k, l) (1-based) is the rank
/// of the leading k x l block. Construction validates the profile:
///   - r(k,l) <= min(k,l),
///   - r is nondecreasing along rows and columns with unit steps,
/// with the virtual border r(0,.) = r(.,0) = 0.
class RankControl {
public:
  RankControl() = default;

  explicit RankControl(IntMatrix r) : r_(std::move(r)) {
    if (auto why = violation(r_); !why.empty()) throw DomainError("invalid rank-control matrix: " + why);
  }

  static RankControl zero(std::size_t rows, std::size_t cols) { return RankControl(IntMatrix(rows, cols)); }

  /// Returns an empty string when `r` is a valid rank profile, otherwise a
  /// description of the first violation.
  static std::string violation(const IntMatrix& r) {
    auto at = [&](std::size_t i, std::size_t j) { return (i == 0 || j == 0) ? 0 : r(i - 1, j - 1); };
    for (std::size_t i = 1; i <= r.rows(); ++i)
      for (std::size_t j = 1; j <= r.cols(); ++j) {
        int v = at(i, j);
        auto where = " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (v < 0 || v > static_cast<int>(std::min(i, j))) return "entry out of range" + where;
        int down = v - at(i - 1, j);
        int right = v - at(i, j - 1);
        if (down < 0 || down > 1 || right < 0 || right > 1) return "non-unit step" + where;
      }
    return {};
  }

  std::size_t rows() const noexcept { return r_.rows(); }
  std::size_t cols() const noexcept { return r_.cols(); }

  /// 1-based access with zero padding: value(0, j) = value(i, 0) = 0.
  int value(std::size_t i, std::size_t j) const { return (i == 0 || j == 0) ? 0 : r_(i - 1, j - 1); }

  const IntMatrix& matrix() const noexcept { return r_; }

  friend bool operator==(const RankControl&, const RankControl&) = default;

private:
  IntMatrix r_;
};

} // namespace cbo
