#ifndef ISDLAB_BITS_HPP
#define ISDLAB_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isdlab {

/// Thrown when arguments violate an operation's documented preconditions.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a caller-side contract (not a parameter range) is violated.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Fixed-length binary vector packed into 64-bit words, bit i in word i/64 at
/// position i%64. Padding bits beyond len() are kept at zero.
class BitVector {
public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  static BitVector from_indices(std::size_t len, std::span<const std::size_t> ones);
  /// Builds a vector of length len from the low bits of value (bit i = position i).
  static BitVector from_word(std::size_t len, word_type value);

  std::size_t size() const noexcept { return len_; }
  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (word_type x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
  }
  bool is_zero() const noexcept {
    for (word_type x : words_)
      if (x != 0) return false;
    return true;
  }

  bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const word_type m = word_type(1) << (i % word_bits);
    if (v)
      words_[i / word_bits] |= m;
    else
      words_[i / word_bits] &= ~m;
  }
  void flip(std::size_t i) { words_[i / word_bits] ^= word_type(1) << (i % word_bits); }

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  /// Parity of the bitwise AND with o (GF(2) inner product).
  bool dot(const BitVector& o) const;

  std::vector<std::size_t> support() const;
  /// Low 64 bits as a word; only meaningful for len() <= 64.
  word_type low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::span<const word_type> words() const noexcept { return words_; }
  std::span<word_type> words() noexcept { return words_; }

  /// Hex with big-endian bit order: position 0 is the most significant bit of
  /// the first digit; the final digit is zero-padded on the right.
  std::string to_hex() const;
  static BitVector from_hex(std::string_view hex, std::size_t len);
  /// '0'/'1' string, position 0 first.
  std::string to_string() const;

  static std::size_t word_count(std::size_t len) { return (len + word_bits - 1) / word_bits; }

private:
  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

/// Dense row-major binary matrix; each row is a BitVector of length cols().
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }

  /// Returns M·vᵀ as a vector of length rows().
  BitVector multiply(const BitVector& v) const;
  /// Returns M·vᵀ packed into a word (bit i = row i); requires rows() <= 64.
  std::uint64_t multiply_word(const BitVector& v) const;

  /// Column-selected submatrix, columns taken in the given order.
  BitMatrix select_columns(std::span<const std::size_t> cols) const;

  std::size_t rank() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

}  // namespace isdlab

#endif
