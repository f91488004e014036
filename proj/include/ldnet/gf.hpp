#pragma once

// Exact arithmetic and dense matrices over a prime field GF(p).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldnet/error.hpp"

namespace ldnet {

using Residue = std::uint32_t;

/// A prime modulus p with 2 <= p <= 2^31 - 1. Primality is checked by trial
/// division when the modulus is constructed.
class FieldModulus {
 public:
  static constexpr std::uint64_t max_value = (std::uint64_t{1} << 31) - 1;

  FieldModulus() = default;
  explicit FieldModulus(std::uint64_t p);

  Residue value() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept;
  Residue add(Residue a, Residue b) const noexcept;
  Residue sub(Residue a, Residue b) const noexcept;
  Residue neg(Residue a) const noexcept;
  Residue mul(Residue a, Residue b) const noexcept;
  /// Inverse by extended Euclid; throws out_of_range for zero.
  Residue inv(Residue a) const;

  friend bool operator==(FieldModulus, FieldModulus) = default;

 private:
  Residue p_ = 2;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix with entries in [0, p).
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(FieldModulus field, std::size_t rows, std::size_t cols);
  /// Entries are taken row-major and must already be residues.
  GfMatrix(FieldModulus field, std::size_t rows, std::size_t cols,
           std::vector<Residue> entries);

  /// Builds from nested rows; integers are reduced mod p, negatives allowed.
  static GfMatrix from_rows(
      FieldModulus field,
      std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static GfMatrix column(FieldModulus field,
                         std::initializer_list<std::int64_t> values);
  static GfMatrix column(FieldModulus field, std::span<const Residue> values);
  static GfMatrix identity(FieldModulus field, std::size_t n);
  static GfMatrix zero(FieldModulus field, std::size_t rows, std::size_t cols);

  FieldModulus field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Residue operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Residue at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::int64_t value);

  std::span<const Residue> entries() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  /// Copy of the block starting at (r0, c0).
  GfMatrix block(std::size_t r0, std::size_t c0, std::size_t rows,
                 std::size_t cols) const;
  /// Overwrites the block starting at (r0, c0) with `src`.
  void set_block(std::size_t r0, std::size_t c0, const GfMatrix& src);
  /// Adds `src` into the block starting at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const GfMatrix& src);

  friend bool operator==(const GfMatrix&, const GfMatrix&) = default;

 private:
  FieldModulus field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

GfMatrix mat_add(const GfMatrix& a, const GfMatrix& b);
GfMatrix mat_sub(const GfMatrix& a, const GfMatrix& b);
GfMatrix mat_mul(const GfMatrix& a, const GfMatrix& b);
GfMatrix mat_scale(Residue s, const GfMatrix& a);
GfMatrix mat_transpose(const GfMatrix& a);

inline GfMatrix operator+(const GfMatrix& a, const GfMatrix& b) {
  return mat_add(a, b);
}
inline GfMatrix operator-(const GfMatrix& a, const GfMatrix& b) {
  return mat_sub(a, b);
}
inline GfMatrix operator*(const GfMatrix& a, const GfMatrix& b) {
  return mat_mul(a, b);
}

/// [top; bottom], column counts must agree.
GfMatrix vstack(const GfMatrix& top, const GfMatrix& bottom);
/// [left, right], row counts must agree.
GfMatrix hstack(const GfMatrix& left, const GfMatrix& right);

std::size_t rank(const GfMatrix& a);

/// S^(q-g): the q x q down-shift by q-g positions. g = q gives the identity,
/// g = 0 the zero matrix.
GfMatrix shift_matrix(FieldModulus field, std::size_t q, std::size_t g);

/// If `m` equals shift_matrix(p, q, g) for some g, returns that g.
std::optional<std::size_t> shift_strength(const GfMatrix& m);

/// q x q anti-diagonal permutation (coordinate reversal).
GfMatrix flip_matrix(FieldModulus field, std::size_t q);

/// Embeds a q x q gain into a q(T+2) square matrix: `g` occupies the
/// bottom-left q x q block, i.e. it reads the top band and writes the bottom
/// band. Band sizes are (q, qT, q).
GfMatrix block_embed(const GfMatrix& g, std::size_t q, std::size_t horizon);

std::string to_string(const GfMatrix& m);

}  // namespace ldnet
