// Digital point sets in base 2 and their verifiers.
//
// A NetPoint stores explicit binary digit expansions, most significant digit
// first; the stored digits are the authoritative representation and all
// truncation is digit slicing, never numeric rounding. verify_net decides the
// (t,m,s)-net property exhaustively: for every composition k_1+...+k_s = m-t
// it walks all 2^(m-t) dyadic boxes and compares each box count against 2^t.
// verify_almost_net does the same for volume-2^(-n) boxes with rational
// tolerance bounds [(1-eps)T, (1+eps)T].
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holefree/bitstring.hpp"
#include "holefree/numeric.hpp"
#include "holefree/sobol_directions.hpp"

namespace holefree::netgen {

class NetPoint {
 public:
  NetPoint() = default;
  explicit NetPoint(std::vector<std::vector<std::uint8_t>> digits)
      : digits_(std::move(digits)) {
    for (const auto& coord : digits_)
      for (auto d : coord)
        if (d > 1) throw std::invalid_argument("NetPoint: digits must be 0 or 1");
  }

  std::size_t dim() const { return digits_.size(); }
  std::size_t digit_count(std::size_t axis) const { return digits_.at(axis).size(); }
  int digit(std::size_t axis, std::size_t j) const { return digits_.at(axis).at(j); }
  const std::vector<std::uint8_t>& axis_digits(std::size_t axis) const { return digits_.at(axis); }

  // integer b with x_axis in [b/2^k, (b+1)/2^k); needs k stored digits
  std::uint64_t prefix_value(std::size_t axis, std::size_t k) const {
    const auto& d = digits_.at(axis);
    if (k > d.size())
      throw std::invalid_argument("NetPoint: coordinate has fewer digits than requested");
    if (k > 63) throw std::overflow_error("NetPoint: prefix too long");
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < k; ++j) v = (v << 1) | d[j];
    return v;
  }

  // exact value of one coordinate
  Rat value(std::size_t axis) const {
    const auto& d = digits_.at(axis);
    Int num = 0;
    for (auto b : d) num = (num << 1) + b;
    return Rat(num, pow2(static_cast<unsigned>(d.size())));
  }

  // keep the first m digits of every coordinate
  NetPoint truncated(std::size_t m) const {
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(digits_.size());
    for (const auto& coord : digits_) {
      if (coord.size() < m)
        throw std::invalid_argument("NetPoint::truncated: fewer than m digits stored");
      out.emplace_back(coord.begin(), coord.begin() + m);
    }
    return NetPoint(std::move(out));
  }

  // extend every coordinate to m digits by appending zeros (value preserving)
  NetPoint padded(std::size_t m) const {
    std::vector<std::vector<std::uint8_t>> out = digits_;
    for (auto& coord : out) {
      if (coord.size() > m)
        throw std::invalid_argument("NetPoint::padded: already longer than m digits");
      coord.resize(m, 0);
    }
    return NetPoint(std::move(out));
  }

  BitString axis_word(std::size_t axis) const {
    return BitString(digits_.at(axis));
  }

  bool operator==(const NetPoint& o) const { return digits_ == o.digits_; }

 private:
  std::vector<std::vector<std::uint8_t>> digits_;
};

struct NetParams {
  unsigned t = 0, m = 0, s = 1;
};

struct AlmostNetParams {
  std::uint64_t T = 1;
  Rat eps = 0;       // in [0,1)
  unsigned n = 0;    // box volume exponent: boxes of volume 2^-n
};

// axis-aligned dyadic box: x_i in [b_i/2^{k_i}, (b_i+1)/2^{k_i})
struct DyadicBox {
  std::vector<unsigned> k;
  std::vector<std::uint64_t> b;

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) s += " x ";
      s += "[" + std::to_string(b[i]) + "/2^" + std::to_string(k[i]) + ", " +
           std::to_string(b[i] + 1) + "/2^" + std::to_string(k[i]) + ")";
    }
    return s + "}";
  }
};

struct VerifyStats {
  std::uint64_t compositions = 0;
  std::uint64_t box_checks = 0;
};

struct BoxViolation {
  DyadicBox box;
  std::uint64_t count = 0;
};

struct NetCheckResult {
  bool pass = true;
  std::optional<BoxViolation> violation;
  VerifyStats stats;
};

// --------------------------------------------------------------------------
// generators

// bit-reversed i/2^m for 0 <= i < 2^m, each point with exactly m digits
inline std::vector<NetPoint> vdc_points(unsigned m) {
  if (m > 62) throw std::invalid_argument("vdc_points: m too large");
  std::vector<NetPoint> out;
  const std::uint64_t count = std::uint64_t{1} << m;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<std::uint8_t> digits(m);
    for (unsigned j = 0; j < m; ++j) digits[j] = static_cast<std::uint8_t>((i >> j) & 1u);
    out.emplace_back(std::vector<std::vector<std::uint8_t>>{std::move(digits)});
  }
  return out;
}

namespace detail {

// direction integers at m-bit precision for one Sobol' dimension (1-based)
inline std::vector<std::uint64_t> sobol_direction_integers(unsigned dim, unsigned m) {
  std::vector<std::uint64_t> v(m + 1, 0);  // v[1..m]
  if (m == 0) return v;
  if (dim == 1) {
    for (unsigned j = 1; j <= m; ++j) v[j] = std::uint64_t{1} << (m - j);
    return v;
  }
  const SobolDim& sd = kSobolDims.at(dim - 2);
  const unsigned g = sd.degree;
  for (unsigned j = 1; j <= std::min(g, m); ++j) v[j] = sd.m[j - 1] << (m - j);
  for (unsigned j = g + 1; j <= m; ++j) {
    std::uint64_t w = v[j - g] ^ (v[j - g] >> g);
    for (unsigned idx = 1; idx < g; ++idx)
      if ((sd.poly >> (g - 1 - idx)) & 1u) w ^= v[j - idx];
    v[j] = w;
  }
  return v;
}

}  // namespace detail

// first 2^m points of the s-dimensional Sobol' sequence, m digits per axis
inline std::vector<NetPoint> sobol_points(unsigned s, unsigned m) {
  if (s < 1 || s > kSobolMaxDim)
    throw std::invalid_argument("sobol_points: dimension outside shipped table (1..10)");
  if (m > 62) throw std::invalid_argument("sobol_points: m too large");

  std::vector<std::vector<std::uint64_t>> dirs(s);
  for (unsigned c = 0; c < s; ++c) dirs[c] = detail::sobol_direction_integers(c + 1, m);

  std::vector<NetPoint> out;
  const std::uint64_t count = std::uint64_t{1} << m;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::vector<std::uint8_t>> digits(s);
    for (unsigned c = 0; c < s; ++c) {
      std::uint64_t x = 0;
      for (unsigned j = 1; j <= m; ++j)
        if ((idx >> (j - 1)) & 1u) x ^= dirs[c][j];
      auto& coord = digits[c];
      coord.resize(m);
      for (unsigned kdig = 0; kdig < m; ++kdig)
        coord[kdig] = static_cast<std::uint8_t>((x >> (m - 1 - kdig)) & 1u);
    }
    out.emplace_back(std::move(digits));
  }
  return out;
}

// ([x_n]_m, n/2^m) for the first 2^m sequence points; lifts an s-dimensional
// sequence prefix to an (s+1)-dimensional net candidate
inline std::vector<NetPoint> sequence_to_net(const std::vector<NetPoint>& seq,
                                             unsigned t, unsigned m) {
  if (t >= m) throw std::invalid_argument("sequence_to_net: requires t < m");
  if (m > 62) throw std::invalid_argument("sequence_to_net: m too large");
  const std::uint64_t count = std::uint64_t{1} << m;
  if (seq.size() < count)
    throw std::invalid_argument("sequence_to_net: sequence shorter than 2^m points");
  std::vector<NetPoint> out;
  out.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) {
    const NetPoint trunc = seq[n].truncated(m);
    std::vector<std::vector<std::uint8_t>> digits;
    digits.reserve(trunc.dim() + 1);
    for (std::size_t axis = 0; axis < trunc.dim(); ++axis)
      digits.push_back(trunc.axis_digits(axis));
    std::vector<std::uint8_t> last(m);
    for (unsigned j = 0; j < m; ++j)
      last[j] = static_cast<std::uint8_t>((n >> (m - 1 - j)) & 1u);  // n/2^m, MSB first
    digits.push_back(std::move(last));
    out.emplace_back(std::move(digits));
  }
  return out;
}

inline std::vector<NetPoint> truncate(const std::vector<NetPoint>& pts, unsigned m) {
  std::vector<NetPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.truncated(m));
  return out;
}

inline std::vector<NetPoint> pad_digits(const std::vector<NetPoint>& pts, unsigned m) {
  std::vector<NetPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.padded(m));
  return out;
}

// --------------------------------------------------------------------------
// verifiers

namespace detail {

// all k = (k_1..k_s) with k_i >= 0 and sum K, in lexicographic order
inline std::vector<std::vector<unsigned>> compositions(unsigned K, unsigned s) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(s, 0);
  auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
    if (pos + 1 == s) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (s == 0) throw std::invalid_argument("compositions: s must be positive");
  rec(rec, 0, K);
  return out;
}

// Counts points per dyadic box for one composition and reports every box to
// `visit` in lexicographic order, including empty ones. visit returns false
// to stop early.
template <class Visit>
void walk_boxes(const std::vector<NetPoint>& pts, const std::vector<unsigned>& k,
                Visit&& visit) {
  const std::size_t s = k.size();
  std::vector<std::vector<std::uint64_t>> keys;
  keys.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.dim() != s) throw std::invalid_argument("verify: point dimension mismatch");
    std::vector<std::uint64_t> key(s);
    for (std::size_t i = 0; i < s; ++i) key[i] = p.prefix_value(i, k[i]);
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());

  std::vector<std::uint64_t> box(s, 0);
  std::size_t ptr = 0;
  while (true) {
    std::uint64_t count = 0;
    while (ptr < keys.size() && keys[ptr] == box) ++ptr, ++count;
    if (!visit(box, count)) return;
    // odometer step over mixed radix 2^{k_i}
    std::size_t axis = s;
    while (axis > 0) {
      --axis;
      if (++box[axis] < (std::uint64_t{1} << k[axis])) break;
      box[axis] = 0;
      if (axis == 0) return;
    }
    if (s == 0) return;
  }
}

}  // namespace detail

// Exhaustive (t,m,s)-net check: every dyadic box of volume 2^{t-m} must hold
// exactly 2^t points.
inline NetCheckResult verify_net(const std::vector<NetPoint>& pts, unsigned t,
                                 unsigned m, unsigned s) {
  if (t > m) throw std::invalid_argument("verify_net: requires t <= m");
  if (m > 62) throw std::invalid_argument("verify_net: m too large");
  NetCheckResult res;
  const std::uint64_t expected_size = std::uint64_t{1} << m;
  if (pts.size() != expected_size)
    throw std::invalid_argument("verify_net: point count is not 2^m");
  const std::uint64_t per_box = std::uint64_t{1} << t;

  for (const auto& k : detail::compositions(m - t, s)) {
    ++res.stats.compositions;
    bool ok = true;
    detail::walk_boxes(pts, k, [&](const std::vector<std::uint64_t>& box, std::uint64_t count) {
      ++res.stats.box_checks;
      if (count != per_box) {
        res.pass = false;
        res.violation = BoxViolation{DyadicBox{k, box}, count};
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) return res;
  }
  return res;
}

// smallest t for which the net property holds, if any
inline std::optional<unsigned> minimal_t(const std::vector<NetPoint>& pts, unsigned m,
                                         unsigned s, VerifyStats* stats = nullptr) {
  for (unsigned t = 0; t <= m; ++t) {
    NetCheckResult r = verify_net(pts, t, m, s);
    if (stats) {
      stats->compositions += r.stats.compositions;
      stats->box_checks += r.stats.box_checks;
    }
    if (r.pass) return t;
  }
  return std::nullopt;
}

// Every dyadic box of volume 2^{-n} must hold between (1-eps)T and (1+eps)T
// points, bounds compared exactly as rationals.
inline NetCheckResult verify_almost_net(const std::vector<NetPoint>& pts,
                                        const AlmostNetParams& p, unsigned s) {
  if (p.T == 0) throw std::invalid_argument("verify_almost_net: T must be positive");
  if (p.eps < 0 || p.eps >= 1)
    throw std::invalid_argument("verify_almost_net: eps must lie in [0,1)");
  if (p.n > 62) throw std::invalid_argument("verify_almost_net: n too large");
  NetCheckResult res;
  const Int expected_size = pow2(p.n) * p.T;
  if (Int(pts.size()) != expected_size)
    throw std::invalid_argument("verify_almost_net: point count is not 2^n * T");

  const Rat lo = (Rat(1) - p.eps) * p.T;
  const Rat hi = (Rat(1) + p.eps) * p.T;

  for (const auto& k : detail::compositions(p.n, s)) {
    ++res.stats.compositions;
    bool ok = true;
    detail::walk_boxes(pts, k, [&](const std::vector<std::uint64_t>& box, std::uint64_t count) {
      ++res.stats.box_checks;
      Rat c{count};
      if (c < lo || c > hi) {
        res.pass = false;
        res.violation = BoxViolation{DyadicBox{k, box}, count};
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) return res;
  }
  return res;
}

}  // namespace holefree::netgen
