#include <isdlab/bits.hpp>

#include <algorithm>

namespace isdlab {

BitVector BitVector::from_indices(std::size_t len, std::span<const std::size_t> ones) {
  BitVector v(len);
  for (std::size_t i : ones) {
    if (i >= len) throw ParameterError("BitVector::from_indices: index out of range");
    v.set(i);
  }
  return v;
}

BitVector BitVector::from_word(std::size_t len, word_type value) {
  if (len > word_bits) throw ParameterError("BitVector::from_word: len > 64");
  BitVector v(len);
  if (len == 0) return v;
  if (len < word_bits) value &= (word_type(1) << len) - 1;
  v.words_[0] = value;
  return v;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.len_ != len_) throw ParameterError("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool BitVector::dot(const BitVector& o) const {
  if (o.len_ != len_) throw ParameterError("BitVector dot: length mismatch");
  word_type acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    word_type x = words_[w];
    while (x) {
      out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::string BitVector::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve((len_ + 3) / 4);
  for (std::size_t base = 0; base < len_; base += 4) {
    unsigned nib = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nib <<= 1;
      if (base + j < len_ && get(base + j)) nib |= 1;
    }
    out.push_back(digits[nib]);
  }
  return out;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t len) {
  if (hex.size() != (len + 3) / 4) throw ParameterError("BitVector::from_hex: digit count does not match length");
  BitVector v(len);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    unsigned nib;
    if (c >= '0' && c <= '9')
      nib = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      nib = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      nib = static_cast<unsigned>(c - 'A' + 10);
    else
      throw ParameterError("BitVector::from_hex: invalid digit");
    for (std::size_t j = 0; j < 4; ++j) {
      const bool bit = (nib >> (3 - j)) & 1;
      const std::size_t pos = d * 4 + j;
      if (pos < len)
        v.set(pos, bit);
      else if (bit)
        throw ParameterError("BitVector::from_hex: nonzero padding bit");
    }
  }
  return v;
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) throw ParameterError("BitMatrix::multiply: dimension mismatch");
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    if (rows_[r].dot(v)) out.set(r);
  return out;
}

std::uint64_t BitMatrix::multiply_word(const BitVector& v) const {
  if (rows() > 64) throw ParameterError("BitMatrix::multiply_word: more than 64 rows");
  if (v.size() != cols_) throw ParameterError("BitMatrix::multiply_word: dimension mismatch");
  std::uint64_t out = 0;
  for (std::size_t r = 0; r < rows(); ++r)
    if (rows_[r].dot(v)) out |= std::uint64_t(1) << r;
  return out;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> cols) const {
  BitMatrix out(rows(), cols.size());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (rows_[r].get(cols[j])) out.rows_[r].set(j);
  return out;
}

std::size_t BitMatrix::rank() const {
  std::vector<BitVector> m = rows_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && !m[piv].get(c)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r].get(c)) m[r] ^= m[rank];
    ++rank;
  }
  return rank;
}

}  // namespace isdlab
