#pragma once

#include <cbo/error.hpp>
#include <cbo/field.hpp>
#include <cbo/int_matrix.hpp>

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cbo {

/// Dense matrix over a FieldSpec, row-major. All entries share the field.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, FieldSpec field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar(field)) {}

  static Matrix identity(std::size_t n, FieldSpec field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::from_int(field, 1);
    return m;
  }

  static Matrix from_ints(const IntMatrix& a, FieldSpec field) {
    Matrix m(a.rows(), a.cols(), field);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Scalar::from_int(field, a(i, j));
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldSpec& field() const noexcept { return field_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Scalar>& entries() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  bool is_upper_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < std::min(i, cols_); ++j)
        if (!(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool is_lower_triangular() const { return transpose().is_upper_triangular(); }

  /// Square triangular matrices are invertible iff the diagonal has no zero.
  bool has_nonzero_diagonal() const {
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
      if ((*this)(i, i).is_zero()) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw DomainError("field mismatch in product");
    if (a.cols_ != b.rows_) throw DomainError("dimension mismatch in product");
    Matrix c(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// Integer view; throws when an entry is not an integer in [-2^31, 2^31).
  /// Prime-field residues are returned as stored.
  IntMatrix to_ints() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Scalar& s = (*this)(i, j);
        if (field_.is_prime_field()) {
          out(i, j) = static_cast<int>(s.residue());
          continue;
        }
        const Rational& q = s.rational();
        if (boost::multiprecision::denominator(q) != 1 || abs(q) > Rational(1LL << 30))
          throw DomainError("entry " + s.to_string() + " is not a small integer");
        out(i, j) = boost::multiprecision::numerator(q).convert_to<int>();
      }
    return out;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j).to_string();
      out << '\n';
    }
    return out.str();
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  FieldSpec field_ = FieldSpec::rationals();
  std::vector<Scalar> data_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column; // 1-based
};

inline std::vector<Token> split_ws(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool parse_integer(std::string_view s, Integer& out, bool allow_sign = true) {
  std::size_t i = 0;
  bool neg = false;
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  Integer v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = neg ? Integer(-v) : v;
  return true;
}

inline Scalar parse_scalar(const Token& tok, std::size_t line, FieldSpec field) {
  if (field.is_prime_field()) {
    Integer v;
    if (!parse_integer(tok.text, v, false)) throw ParseError(line, tok.column, "expected a residue, got '" + std::string(tok.text) + "'");
    if (v >= field.modulus()) throw ParseError(line, tok.column, "residue " + v.str() + " is not < " + field.name());
    return Scalar::from_int(field, v.convert_to<long long>());
  }
  auto slash = tok.text.find('/');
  Integer num, den = 1;
  bool ok = parse_integer(tok.text.substr(0, slash), num);
  if (ok && slash != std::string_view::npos) ok = parse_integer(tok.text.substr(slash + 1), den, false);
  if (!ok) throw ParseError(line, tok.column, "expected a rational 'num' or 'num/den', got '" + std::string(tok.text) + "'");
  if (den == 0) throw ParseError(line, tok.column, "zero denominator");
  return Scalar::from_rational(field, Rational(num, den));
}

} // namespace detail

/// Reads the shared matrix text format: a "rows cols" header line, then
/// one line per row. Blank lines and lines starting with '#' are skipped.
inline Matrix parse_matrix(std::istream& in, FieldSpec field) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::vector<detail::Token>& toks) {
    while (std::getline(in, line)) {
      ++lineno;
      toks = detail::split_ws(line);
      if (!toks.empty() && toks[0].text[0] != '#') return true;
    }
    return false;
  };

  std::vector<detail::Token> toks;
  if (!next(toks)) throw ParseError(lineno + 1, 0, "missing 'rows cols' header");
  if (toks.size() != 2) throw ParseError(lineno, 0, "header must be 'rows cols'");
  std::size_t dims[2];
  for (int k = 0; k < 2; ++k) {
    Integer v;
    if (!detail::parse_integer(toks[k].text, v, false) || v > 4096)
      throw ParseError(lineno, toks[k].column, "bad dimension '" + std::string(toks[k].text) + "'");
    dims[k] = v.convert_to<std::size_t>();
  }
  Matrix m(dims[0], dims[1], field);
  for (std::size_t i = 0; i < dims[0]; ++i) {
    if (!next(toks)) throw ParseError(lineno + 1, 0, "expected " + std::to_string(dims[0]) + " rows, got " + std::to_string(i));
    if (toks.size() != dims[1])
      throw ParseError(lineno, toks.size() > dims[1] ? toks[dims[1]].column : 0,
                       "expected " + std::to_string(dims[1]) + " entries, got " + std::to_string(toks.size()));
    for (std::size_t j = 0; j < dims[1]; ++j) m(i, j) = detail::parse_scalar(toks[j], lineno, field);
  }
  if (next(toks)) throw ParseError(lineno, toks[0].column, "trailing data after matrix");
  return m;
}

inline Matrix parse_matrix(std::string_view text, FieldSpec field) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in, field);
}

/// Integer pattern in the same format (entries -1, 0, 1).
inline PatternMatrix parse_pattern(std::istream& in) {
  Matrix m = parse_matrix(in, FieldSpec::rationals());
  IntMatrix p = m.to_ints();
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p(i, j) < -1 || p(i, j) > 1)
        throw DomainError("pattern entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not in {-1,0,1}");
  return p;
}

inline PatternMatrix parse_pattern(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pattern(in);
}

} // namespace cbo
