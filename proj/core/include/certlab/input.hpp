#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace certlab {

// A point of the input space: a length-n sequence of alphabet symbols.
// Positions are 0-based in code; the text format lists position 1 first,
// and for Boolean inputs position i lives at bit i-1 of the packed index.
class Input {
 public:
  Input() = default;
  explicit Input(std::vector<std::uint32_t> symbols) : vals_(std::move(symbols)) {}

  static Input zeros(int n) { return Input(std::vector<std::uint32_t>(n, 0)); }
  // Boolean unpack: bit p of index -> position p.
  static Input from_index(std::uint64_t index, int n);
  // Mixed-radix unpack for general alphabets (position 0 = least significant digit).
  static Input from_packed(std::uint64_t packed, int n, int alphabet);
  // Parses "0101..." (Boolean); character j is position j.
  static Input from_bits(std::string_view bits);

  int size() const { return static_cast<int>(vals_.size()); }
  std::uint32_t operator[](int pos) const { return vals_[pos]; }
  std::uint32_t& operator[](int pos) { return vals_[pos]; }
  bool bit(int pos) const { return vals_[pos] != 0; }

  std::uint64_t index() const;                 // Boolean pack; requires n <= 63
  std::uint64_t packed(int alphabet) const;    // mixed-radix pack

  int weight() const;                          // Hamming weight (nonzero symbols)
  std::string bits() const;                    // Boolean, position 1 first

  const std::vector<std::uint32_t>& values() const { return vals_; }

  bool operator==(const Input& o) const { return vals_ == o.vals_; }
  bool operator!=(const Input& o) const { return vals_ != o.vals_; }
  bool operator<(const Input& o) const { return vals_ < o.vals_; }

 private:
  std::vector<std::uint32_t> vals_;
};

// X^(B): flips the Boolean positions in block_mask (bit p = position p).
Input flip_block(const Input& x, std::uint64_t block_mask);

// Renders a 0-based index set as {1,..} in 1-based position order.
std::string mask_str(std::uint64_t mask);

}  // namespace certlab
