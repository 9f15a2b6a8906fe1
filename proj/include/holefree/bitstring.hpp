// Binary words and multi-coordinate keys. These carry the prefix structure
// that the good-set layer reasons about: a ⊑ b (prefix), ∂a (drop last bit),
// and dictionary order.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace holefree {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
      if (b > 1) throw std::invalid_argument("BitString: bits must be 0 or 1");
  }

  static BitString from_string(const std::string& s) {
    std::vector<std::uint8_t> v;
    v.reserve(s.size());
    for (char ch : s) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("BitString: bad character in '" + s + "'");
      v.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return BitString(std::move(v));
  }

  // most significant bit first
  static BitString from_value(std::uint64_t value, std::size_t len) {
    if (len < 64 && len > 0 && (value >> len) != 0)
      throw std::invalid_argument("BitString: value does not fit in length");
    if (len == 0 && value != 0)
      throw std::invalid_argument("BitString: value does not fit in length");
    std::vector<std::uint8_t> v(len);
    for (std::size_t i = 0; i < len; ++i)
      v[i] = static_cast<std::uint8_t>((value >> (len - 1 - i)) & 1u);
    return BitString(std::move(v));
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_.at(i); }

  // a ⊑ b : a is an initial segment of b (the empty word prefixes everything)
  bool is_prefix_of(const BitString& b) const {
    if (size() > b.size()) return false;
    return std::equal(bits_.begin(), bits_.end(), b.bits_.begin());
  }

  // ∂a : drop the final bit
  BitString parent() const {
    if (empty()) throw std::logic_error("BitString::parent on empty word");
    return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.end() - 1));
  }

  BitString append(int b) const {
    if (b != 0 && b != 1) throw std::invalid_argument("BitString::append: bit must be 0 or 1");
    std::vector<std::uint8_t> v = bits_;
    v.push_back(static_cast<std::uint8_t>(b));
    return BitString(std::move(v));
  }

  BitString concat(const BitString& b) const {
    std::vector<std::uint8_t> v = bits_;
    v.insert(v.end(), b.bits_.begin(), b.bits_.end());
    return BitString(std::move(v));
  }

  BitString prefix(std::size_t len) const {
    if (len > size()) throw std::invalid_argument("BitString::prefix: length exceeds word");
    return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + len));
  }

  std::uint64_t value() const {
    if (size() > 63) throw std::overflow_error("BitString::value: word too long");
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  std::string str() const {
    std::string s;
    s.reserve(size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  // dictionary order; on equal-length words this is the numeric order of the
  // binary values, which is the order the embedding preserves
  auto operator<=>(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// one point key: d binary words of a common length m
struct PointKey {
  std::vector<BitString> comp;

  std::size_t dims() const { return comp.size(); }
  auto operator<=>(const PointKey&) const = default;
};

inline BitString longest_common_prefix(const std::vector<BitString>& words) {
  if (words.empty()) throw std::invalid_argument("longest_common_prefix: empty set");
  std::size_t limit = words[0].size();
  for (const auto& w : words) limit = std::min(limit, w.size());
  std::size_t len = 0;
  while (len < limit) {
    int b = words[0].bit(len);
    bool all = true;
    for (const auto& w : words)
      if (w.bit(len) != b) {
        all = false;
        break;
      }
    if (!all) break;
    ++len;
  }
  return words[0].prefix(len);
}

}  // namespace holefree
