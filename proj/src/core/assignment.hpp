#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace majcirc {

/// 1-based index of an input bit x_i.
struct VariableId {
  std::uint32_t index = 0;

  friend bool operator==(VariableId, VariableId) = default;
  friend auto operator<=>(VariableId, VariableId) = default;
};

/// A length-n input vector, stored packed (bit i-1 of the word array is x_i)
/// with its weight cached.
class Assignment {
 public:
  Assignment() = default;

  static Assignment zeros(std::uint32_t n);
  static Assignment ones(std::uint32_t n);
  static Assignment from_bits(std::span<const std::uint8_t> bits);
  /// Parses a string of '0'/'1' characters, x_1 first.
  static Assignment from_string(std::string_view text);
  /// Takes ownership of packed words; bits at positions >= n must be zero.
  static Assignment from_words(std::uint32_t n, std::vector<std::uint64_t> words);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t weight() const noexcept { return weight_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// 0-based access.
  bool operator[](std::uint32_t pos) const noexcept { return (words_[pos >> 6] >> (pos & 63)) & 1U; }
  bool at(VariableId v) const;

  /// Weight restricted to the given 0-based positions.
  std::uint32_t weight_on(std::span<const std::uint32_t> positions) const;

  std::vector<std::uint8_t> to_bits() const;
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  friend Assignment flip(const Assignment& a, VariableId i);

  std::uint32_t n_ = 0;
  std::uint32_t weight_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A with bit i flipped.
Assignment flip(const Assignment& a, VariableId i);

inline constexpr std::size_t words_for(std::uint32_t bits) noexcept { return (bits + 63) / 64; }

/// MAJ_n: 1 iff weight >= ceil(n/2).
inline constexpr bool majority(std::uint32_t weight, std::uint32_t n) noexcept { return weight >= (n + 1) / 2; }

/// Weight of minterms of MAJ_n; maxterms sit one layer below.
inline constexpr std::uint32_t minterm_weight(std::uint32_t n) noexcept { return (n + 1) / 2; }

}  // namespace majcirc
