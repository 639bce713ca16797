#include "certlab/input.hpp"

#include <bit>
#include <stdexcept>

namespace certlab {

Input Input::from_index(std::uint64_t index, int n) {
  std::vector<std::uint32_t> v(n);
  for (int i = 0; i < n; ++i) v[i] = (index >> i) & 1u;
  return Input(std::move(v));
}

Input Input::from_packed(std::uint64_t packed, int n, int alphabet) {
  std::vector<std::uint32_t> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = static_cast<std::uint32_t>(packed % alphabet);
    packed /= alphabet;
  }
  return Input(std::move(v));
}

Input Input::from_bits(std::string_view bits) {
  std::vector<std::uint32_t> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c == '0') v.push_back(0);
    else if (c == '1') v.push_back(1);
    else throw std::invalid_argument("input bitstring must be over 0/1");
  }
  return Input(std::move(v));
}

std::uint64_t Input::index() const {
  if (vals_.size() > 64) throw std::invalid_argument("index(): n too large to pack");
  std::uint64_t idx = 0;
  for (int i = 0; i < size(); ++i) {
    if (vals_[i] > 1) throw std::invalid_argument("index(): non-Boolean symbol");
    idx |= static_cast<std::uint64_t>(vals_[i]) << i;
  }
  return idx;
}

std::uint64_t Input::packed(int alphabet) const {
  std::uint64_t idx = 0;
  for (int i = size() - 1; i >= 0; --i) {
    if (vals_[i] >= static_cast<std::uint32_t>(alphabet))
      throw std::invalid_argument("packed(): symbol out of range");
    idx = idx * alphabet + vals_[i];
  }
  return idx;
}

int Input::weight() const {
  int w = 0;
  for (auto v : vals_) w += (v != 0);
  return w;
}

std::string Input::bits() const {
  std::string s;
  s.reserve(vals_.size());
  for (auto v : vals_) s.push_back(v ? '1' : '0');
  return s;
}

Input flip_block(const Input& x, std::uint64_t block_mask) {
  Input y = x;
  int n = x.size();
  for (int i = 0; i < n; ++i) {
    if (block_mask & (1ull << i)) {
      if (y[i] > 1) throw std::invalid_argument("flip_block: non-Boolean symbol");
      y[i] ^= 1u;
    }
  }
  if (n < 64 && (block_mask >> n)) throw std::invalid_argument("flip_block: index out of range");
  return y;
}

std::string mask_str(std::uint64_t mask) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 64; ++i) {
    if (mask & (1ull << i)) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

}  // namespace certlab
