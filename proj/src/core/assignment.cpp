#include "core/assignment.hpp"

#include <bit>

#include "core/error.hpp"

namespace majcirc {

Assignment Assignment::zeros(std::uint32_t n) {
  Assignment a;
  a.n_ = n;
  a.words_.assign(words_for(n), 0);
  return a;
}

Assignment Assignment::ones(std::uint32_t n) {
  Assignment a = zeros(n);
  for (std::uint32_t i = 0; i < n; ++i) a.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  a.weight_ = n;
  return a;
}

Assignment Assignment::from_bits(std::span<const std::uint8_t> bits) {
  Assignment a = zeros(static_cast<std::uint32_t>(bits.size()));
  for (std::uint32_t i = 0; i < a.n_; ++i) {
    if (bits[i] > 1) throw Error(ErrorKind::invalid_argument, "assignment bits must be 0 or 1");
    if (bits[i]) {
      a.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
      ++a.weight_;
    }
  }
  return a;
}

Assignment Assignment::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorKind::invalid_argument, "assignment string must contain only 0 and 1");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return from_bits(bits);
}

Assignment Assignment::from_words(std::uint32_t n, std::vector<std::uint64_t> words) {
  if (words.size() != words_for(n)) throw Error(ErrorKind::invalid_argument, "word count does not match n");
  if (n % 64 != 0 && !words.empty() && (words.back() >> (n % 64)) != 0)
    throw Error(ErrorKind::invalid_argument, "bits beyond n are set");
  Assignment a;
  a.n_ = n;
  a.words_ = std::move(words);
  for (auto w : a.words_) a.weight_ += static_cast<std::uint32_t>(std::popcount(w));
  return a;
}

bool Assignment::at(VariableId v) const {
  if (v.index < 1 || v.index > n_) throw Error(ErrorKind::invalid_argument, "variable index out of range");
  return (*this)[v.index - 1];
}

std::uint32_t Assignment::weight_on(std::span<const std::uint32_t> positions) const {
  std::uint32_t w = 0;
  for (auto p : positions) w += (*this)[p] ? 1 : 0;
  return w;
}

std::vector<std::uint8_t> Assignment::to_bits() const {
  std::vector<std::uint8_t> bits(n_);
  for (std::uint32_t i = 0; i < n_; ++i) bits[i] = (*this)[i] ? 1 : 0;
  return bits;
}

std::string Assignment::to_string() const {
  std::string s(n_, '0');
  for (std::uint32_t i = 0; i < n_; ++i)
    if ((*this)[i]) s[i] = '1';
  return s;
}

Assignment flip(const Assignment& a, VariableId i) {
  if (i.index < 1 || i.index > a.n_) throw Error(ErrorKind::invalid_argument, "flip: variable index out of range");
  Assignment b = a;
  const std::uint32_t pos = i.index - 1;
  b.words_[pos >> 6] ^= std::uint64_t{1} << (pos & 63);
  b.weight_ = a[pos] ? a.weight_ - 1 : a.weight_ + 1;
  return b;
}

}  // namespace majcirc
