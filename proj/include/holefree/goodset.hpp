// Binary almost nets and q-goodness.
//
// A binary almost net is a finite set of keys in ({0,1}^m)^d, pairwise
// distinct in every coordinate, obtained from a dyadic point set by taking
// the first m digits per axis and repairing collisions in the reserved tail
// bits. q-goodness is the combinatorial betweenness property the geometric
// embedding relies on: whenever q+1 keys agree with prescribed prefixes
// (condition (C) below), some key of the set sits strictly between them in
// the first coordinate while extending the prescription by one bit.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holefree/bitstring.hpp"
#include "holefree/netgen.hpp"
#include "holefree/numeric.hpp"

namespace holefree::goodset {

struct BinaryAlmostNet {
  std::vector<PointKey> keys;  // sorted, deterministic order
  unsigned d = 0;
  unsigned m = 0;              // key length: n + ceil(log2 T) + 1
  unsigned n = 0;
  std::uint64_t T = 1;
  Rat eps = 0;
};

inline unsigned tail_bits(std::uint64_t T) { return ceil_log2(T) + 1; }

// ----------------------------------------------------------------------------
// construction

// Keys are the m-digit prefixes of each axis; within an n-prefix class whose
// members collide on the full m digits, tails are reassigned 0,1,2,... in a
// canonical order (full digit arrays, then input index), which keeps the
// first n digits intact and uses only the reserved tail bits.
inline BinaryAlmostNet to_binary_almost_net(const std::vector<netgen::NetPoint>& X,
                                            const netgen::AlmostNetParams& p,
                                            unsigned d) {
  if (d < 1) throw std::invalid_argument("to_binary_almost_net: d must be positive");
  const unsigned tl = tail_bits(p.T);
  const unsigned m = p.n + tl;
  if (m > 62) throw std::invalid_argument("to_binary_almost_net: key length too large");

  for (const auto& x : X) {
    if (x.dim() != d)
      throw std::invalid_argument("to_binary_almost_net: point dimension != d");
    for (unsigned i = 0; i < d; ++i)
      if (x.digit_count(i) < m)
        throw std::invalid_argument(
            "to_binary_almost_net: points need at least n + ceil(log2 T) + 1 digits; pad first");
  }

  const std::size_t N = X.size();
  // words[i][idx] = m-bit image of coordinate i of point idx
  std::vector<std::vector<std::uint64_t>> words(d, std::vector<std::uint64_t>(N));
  for (std::size_t idx = 0; idx < N; ++idx)
    for (unsigned i = 0; i < d; ++i) words[i][idx] = X[idx].prefix_value(i, m);

  // canonical order on full input digit arrays, input index as final tiebreak
  auto canonical_less = [&](std::size_t a, std::size_t b) {
    for (unsigned i = 0; i < d; ++i) {
      const auto& da = X[a].axis_digits(i);
      const auto& db = X[b].axis_digits(i);
      if (da != db) return da < db;
    }
    return a < b;
  };

  for (unsigned i = 0; i < d; ++i) {
    std::map<std::uint64_t, std::vector<std::size_t>> classes;  // by n-prefix
    for (std::size_t idx = 0; idx < N; ++idx)
      classes[X[idx].prefix_value(i, p.n)].push_back(idx);

    for (auto& [prefix, members] : classes) {
      if (members.size() > (std::uint64_t{1} << tl))
        throw std::runtime_error(
            "to_binary_almost_net: input corruption, more than 2^(ceil(log2 T)+1) "
            "points share an n-bit prefix in coordinate " + std::to_string(i + 1));
      bool collision = false;
      for (std::size_t a = 0; a + 1 < members.size() && !collision; ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
          if (words[i][members[a]] == words[i][members[b]]) {
            collision = true;
            break;
          }
      if (!collision) continue;
      std::sort(members.begin(), members.end(), canonical_less);
      for (std::size_t rank = 0; rank < members.size(); ++rank)
        words[i][members[rank]] = (prefix << tl) | rank;
    }
  }

  BinaryAlmostNet out;
  out.d = d;
  out.m = m;
  out.n = p.n;
  out.T = p.T;
  out.eps = p.eps;
  out.keys.reserve(N);
  for (std::size_t idx = 0; idx < N; ++idx) {
    PointKey key;
    key.comp.reserve(d);
    for (unsigned i = 0; i < d; ++i)
      key.comp.push_back(BitString::from_value(words[i][idx], m));
    out.keys.push_back(std::move(key));
  }
  std::sort(out.keys.begin(), out.keys.end());

  // the tail fix must have produced injective coordinate maps
  for (unsigned i = 0; i < d; ++i) {
    std::vector<std::uint64_t> w = words[i];
    std::sort(w.begin(), w.end());
    if (std::adjacent_find(w.begin(), w.end()) != w.end())
      throw std::logic_error("to_binary_almost_net: tail fix failed to separate a class");
  }
  return out;
}

// ----------------------------------------------------------------------------
// prefix queries

// I(a^1,...,a^d): keys with a^i ⊑ y^i for every coordinate
inline std::vector<PointKey> prefix_set(const std::vector<PointKey>& keys,
                                        const std::vector<BitString>& prefixes) {
  std::vector<PointKey> out;
  for (const auto& y : keys) {
    if (y.dims() != prefixes.size())
      throw std::invalid_argument("prefix_set: prefix tuple dimension mismatch");
    bool ok = true;
    for (std::size_t i = 0; i < prefixes.size() && ok; ++i)
      ok = prefixes[i].is_prefix_of(y.comp[i]);
    if (ok) out.push_back(y);
  }
  return out;
}

// ----------------------------------------------------------------------------
// structural invariants of a BinaryAlmostNet

struct StructureReport {
  bool ok = true;
  std::string detail;
};

// Checks key shape, per-coordinate distinctness, and the inherited counting
// property: for every prefix tuple with total length k <= n the class size
// lies in [2^{n-k}(1-eps)T, 2^{n-k}(1+eps)T].
inline StructureReport check_structure(const BinaryAlmostNet& Y) {
  StructureReport rep;
  const unsigned expected_m = Y.n + tail_bits(Y.T);
  if (Y.m != expected_m) {
    rep.ok = false;
    rep.detail = "key length m != n + ceil(log2 T) + 1";
    return rep;
  }
  for (const auto& y : Y.keys) {
    if (y.dims() != Y.d) {
      rep.ok = false;
      rep.detail = "key with wrong number of coordinates";
      return rep;
    }
    for (const auto& w : y.comp)
      if (w.size() != Y.m) {
        rep.ok = false;
        rep.detail = "key word with wrong length";
        return rep;
      }
  }
  for (unsigned i = 0; i < Y.d; ++i) {
    std::vector<BitString> words;
    words.reserve(Y.keys.size());
    for (const auto& y : Y.keys) words.push_back(y.comp[i]);
    std::sort(words.begin(), words.end());
    if (std::adjacent_find(words.begin(), words.end()) != words.end()) {
      rep.ok = false;
      rep.detail = "coordinate " + std::to_string(i + 1) + " is not injective";
      return rep;
    }
  }

  // class-size window for every prefix tuple with total length <= n
  std::vector<BitString> tuple(Y.d);
  auto rec = [&](auto&& self, unsigned axis, unsigned used) -> bool {
    if (axis == Y.d) {
      std::size_t cnt = prefix_set(Y.keys, tuple).size();
      Rat lo = Rat(pow2(Y.n - used)) * (Rat(1) - Y.eps) * Y.T;
      Rat hi = Rat(pow2(Y.n - used)) * (Rat(1) + Y.eps) * Y.T;
      if (Rat(cnt) < lo || Rat(cnt) > hi) {
        rep.ok = false;
        std::string t = "(";
        for (unsigned i = 0; i < Y.d; ++i) {
          if (i) t += ",";
          t += tuple[i].empty() ? std::string("e") : tuple[i].str();
        }
        t += ")";
        rep.detail = "prefix class " + t + " holds " + std::to_string(cnt) +
                     " keys, outside [" + rat_str(lo) + ", " + rat_str(hi) + "]";
        return false;
      }
      return true;
    }
    for (unsigned len = 0; len <= Y.n - used; ++len) {
      const std::uint64_t lim = std::uint64_t{1} << len;
      for (std::uint64_t bits = 0; bits < lim; ++bits) {
        tuple[axis] = BitString::from_value(bits, len);
        if (!self(self, axis + 1, used + len)) return false;
      }
    }
    return true;
  };
  rec(rec, 0, 0);
  return rep;
}

// floor(2^d (1+eps) T - 2 (1-eps) T + 2): the goodness parameter guaranteed
// by the counting property
inline Int goodness_bound(std::uint64_t T, const Rat& eps, unsigned d) {
  Rat v = Rat(pow2(d)) * (Rat(1) + eps) * T - Rat(2) * (Rat(1) - eps) * T + 2;
  return floor_rat(v);
}

// ----------------------------------------------------------------------------
// goodness verification

struct GoodLimits {
  unsigned max_dm = 24;                              // cap on d*m
  std::uint64_t max_subsets_per_class = 10'000'000;  // cap on C(|class|, q+1)
};

enum class GoodStatus { pass, violation, cap_exceeded };

struct GoodResult {
  GoodStatus status = GoodStatus::pass;
  std::vector<BitString> tuple;  // a^2..a^d for a violation
  std::vector<PointKey> zset;    // violating Z
  std::string cap;               // which cap tripped
  std::uint64_t tuples_enumerated = 0;
  std::uint64_t subsets_enumerated = 0;
};

namespace detail {

inline std::optional<std::uint64_t> binom_capped(std::uint64_t n, std::uint64_t k,
                                                 std::uint64_t cap) {
  if (k > n) return 0;
  Int r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= Int(n - i);
    r /= Int(i + 1);
    if (r > Int(cap) * Int(k)) return std::nullopt;  // early out, value already huge
  }
  if (r > Int(cap)) return std::nullopt;
  return r.convert_to<std::uint64_t>();
}

}  // namespace detail

// Decides q-goodness by exhaustive enumeration. Tuples (a^2..a^d) of nonempty
// words of length <= m are walked in ascending total length; for each tuple,
// every (q+1)-subset Z of the condition-(C) class {y : ∂a^i ⊑ y^i} is checked
// for a witness y with a^i ⊑ y^i strictly lex-between min and max of Z in the
// first coordinate.
inline GoodResult verify_good(const BinaryAlmostNet& Y, std::uint64_t q,
                              const GoodLimits& limits = {}) {
  GoodResult res;
  const unsigned d = Y.d, m = Y.m;
  if (d < 2) throw std::invalid_argument("verify_good: requires d >= 2");

  // distinctness is a precondition, checked first
  {
    for (unsigned i = 0; i < d; ++i) {
      std::vector<BitString> words;
      for (const auto& y : Y.keys) words.push_back(y.comp[i]);
      std::sort(words.begin(), words.end());
      if (std::adjacent_find(words.begin(), words.end()) != words.end())
        throw std::invalid_argument(
            "verify_good: keys are not pairwise distinct in coordinate " +
            std::to_string(i + 1));
    }
  }

  if (static_cast<std::uint64_t>(d) * m > limits.max_dm) {
    res.status = GoodStatus::cap_exceeded;
    res.cap = "d*m exceeds limit " + std::to_string(limits.max_dm);
    return res;
  }

  // tuple enumeration: total length ascending, then per-axis lengths
  // lexicographic, then bit patterns lexicographic
  const unsigned axes = d - 1;
  std::vector<unsigned> lens(axes);
  std::vector<BitString> tuple(axes);

  // keys sorted by first coordinate once; every class/witness scan preserves it
  std::vector<PointKey> byfirst = Y.keys;
  std::sort(byfirst.begin(), byfirst.end(),
            [](const PointKey& a, const PointKey& b) { return a.comp[0] < b.comp[0]; });

  auto check_tuple = [&](const std::vector<BitString>& a) -> bool {
    ++res.tuples_enumerated;
    // condition-(C) class and witness pool
    std::vector<const PointKey*> cls;
    std::vector<const BitString*> wit;  // first coordinates of the witness pool
    for (const auto& y : byfirst) {
      bool in_cls = true, in_wit = true;
      for (unsigned i = 0; i < axes; ++i) {
        const BitString& yi = y.comp[i + 1];
        if (!a[i].parent().is_prefix_of(yi)) {
          in_cls = false;
          in_wit = false;
          break;
        }
        if (in_wit && !a[i].is_prefix_of(yi)) in_wit = false;
      }
      if (in_cls) cls.push_back(&y);
      if (in_wit) wit.push_back(&y.comp[0]);
    }
    const std::uint64_t q1 = q + 1;
    if (cls.size() < q1) return true;

    auto total = detail::binom_capped(cls.size(), q1, limits.max_subsets_per_class);
    if (!total) {
      res.status = GoodStatus::cap_exceeded;
      res.cap = "C(|class|, q+1) exceeds limit " +
                std::to_string(limits.max_subsets_per_class);
      return false;
    }

    // cls is ordered by first coordinate, so a combination's betweenness
    // verdict depends only on its first and last member; memoize per pair
    std::map<std::pair<std::size_t, std::size_t>, bool> pair_ok;
    auto witness_between = [&](std::size_t lo, std::size_t hi) {
      auto it = pair_ok.find({lo, hi});
      if (it != pair_ok.end()) return it->second;
      const BitString& zmin = cls[lo]->comp[0];
      const BitString& zmax = cls[hi]->comp[0];
      bool found = false;
      for (const BitString* w : wit)
        if (zmin < *w && *w < zmax) {
          found = true;
          break;
        }
      pair_ok[{lo, hi}] = found;
      return found;
    };

    std::vector<std::size_t> comb(q1);
    for (std::size_t i = 0; i < q1; ++i) comb[i] = i;
    while (true) {
      ++res.subsets_enumerated;
      if (!witness_between(comb.front(), comb.back())) {
        res.status = GoodStatus::violation;
        res.tuple = a;
        for (auto idx : comb) res.zset.push_back(*cls[idx]);
        return false;
      }
      // next combination in lexicographic order
      std::size_t i = q1;
      while (i > 0) {
        --i;
        if (comb[i] != i + cls.size() - q1) break;
        if (i == 0) return true;
      }
      ++comb[i];
      for (std::size_t j = i + 1; j < q1; ++j) comb[j] = comb[j - 1] + 1;
    }
  };

  for (unsigned total_len = axes; total_len <= axes * m; ++total_len) {
    // lengths composition: each in [1, m], summing to total_len
    auto rec_len = [&](auto&& self, unsigned axis, unsigned left) -> bool {
      if (axis == axes) {
        if (left != 0) return true;
        // bit patterns, odometer per axis
        auto rec_bits = [&](auto&& self2, unsigned ax) -> bool {
          if (ax == axes) return check_tuple(tuple);
          const std::uint64_t lim = std::uint64_t{1} << lens[ax];
          for (std::uint64_t bits = 0; bits < lim; ++bits) {
            tuple[ax] = BitString::from_value(bits, lens[ax]);
            if (!self2(self2, ax + 1)) return false;
          }
          return true;
        };
        return rec_bits(rec_bits, 0);
      }
      for (unsigned len = 1; len <= std::min<unsigned>(m, left); ++len) {
        lens[axis] = len;
        if (!self(self, axis + 1, left - len)) return false;
      }
      return true;
    };
    if (!rec_len(rec_len, 0, total_len)) return res;
  }
  return res;
}

// smallest q >= 1 passing verify_good, if one exists below the given ceiling
inline std::optional<std::uint64_t> minimal_good_q(const BinaryAlmostNet& Y,
                                                   std::uint64_t q_ceiling,
                                                   const GoodLimits& limits = {},
                                                   GoodResult* last = nullptr) {
  for (std::uint64_t q = 1; q <= q_ceiling; ++q) {
    GoodResult r = verify_good(Y, q, limits);
    if (last) *last = r;
    if (r.status == GoodStatus::pass) return q;
    if (r.status == GoodStatus::cap_exceeded) return std::nullopt;
  }
  return std::nullopt;
}

// ----------------------------------------------------------------------------
// witness descent

enum class TieBreak { prefer_zero, prefer_one };

struct DescentLevel {
  unsigned axis = 0;     // coordinate i, 2-based as in the descent
  BitString b;           // longest common prefix of U_i in coordinate i
  int alpha = 0;         // majority continuation bit
  BitString c;           // further common prefix after b,alpha
  int beta = 1;          // 1 - alpha
  BitString a;           // b alpha c beta
  std::vector<PointKey> survivors;  // U_{i-1}
};

struct WitnessResult {
  bool found = false;
  PointKey witness;
  PointKey x_small, x_big;  // extremes of U_1 in the first coordinate
  std::vector<BitString> tuple;
  std::vector<DescentLevel> trace;
};

// Majority-prefix descent: starting from U_d = U, coordinate by coordinate
// from d down to 2, keep the majority branch below the longest common prefix
// and record a^i = b alpha c beta. The surviving set U_1 has more than q
// elements whenever |U| > 2^{d-1} q, and a q-good key set must then contain a
// witness y with a^i ⊑ y^i strictly between the first-coordinate extremes of
// U_1.
inline WitnessResult find_interior_witness(const BinaryAlmostNet& Y, std::uint64_t q,
                                           const std::vector<PointKey>& U,
                                           TieBreak tie = TieBreak::prefer_zero) {
  const unsigned d = Y.d;
  if (d < 2) throw std::invalid_argument("find_interior_witness: requires d >= 2");
  if (q < 1) throw std::invalid_argument("find_interior_witness: requires q >= 1");
  {
    Int need = pow2(d - 1) * Int(q);
    if (Int(U.size()) <= need)
      throw std::invalid_argument("find_interior_witness: requires |U| > 2^(d-1) q");
  }
  for (const auto& u : U)
    if (std::find(Y.keys.begin(), Y.keys.end(), u) == Y.keys.end())
      throw std::invalid_argument("find_interior_witness: U is not a subset of the key set");

  WitnessResult res;
  std::vector<PointKey> cur = U;
  std::vector<BitString> tuple(d - 1);  // a^2..a^d

  for (unsigned i = d; i >= 2; --i) {
    if (cur.size() < 2)
      throw std::logic_error("find_interior_witness: descent set collapsed");
    std::vector<BitString> words;
    words.reserve(cur.size());
    for (const auto& x : cur) words.push_back(x.comp[i - 1]);
    BitString b = longest_common_prefix(words);
    if (b.size() >= Y.m)
      throw std::logic_error("find_interior_witness: distinct words share all digits");

    std::size_t ones = 0;
    for (const auto& w : words)
      if (w.bit(b.size()) == 1) ++ones;
    const std::size_t zeros = words.size() - ones;
    int alpha;
    if (ones > zeros) alpha = 1;
    else if (zeros > ones) alpha = 0;
    else alpha = (tie == TieBreak::prefer_zero) ? 0 : 1;

    BitString ba = b.append(alpha);
    std::vector<PointKey> next;
    for (const auto& x : cur)
      if (ba.is_prefix_of(x.comp[i - 1])) next.push_back(x);

    std::vector<BitString> nwords;
    nwords.reserve(next.size());
    for (const auto& x : next) nwords.push_back(x.comp[i - 1]);
    BitString bac = longest_common_prefix(nwords);  // extends ba
    BitString c;
    for (std::size_t j = ba.size(); j < bac.size(); ++j) c = c.append(bac.bit(j));
    const int beta = 1 - alpha;
    BitString a = bac.append(beta);
    if (a.size() > Y.m)
      throw std::logic_error("find_interior_witness: prescription exceeds key length");

    DescentLevel lvl;
    lvl.axis = i;
    lvl.b = b;
    lvl.alpha = alpha;
    lvl.c = c;
    lvl.beta = beta;
    lvl.a = a;
    lvl.survivors = next;
    res.trace.push_back(std::move(lvl));
    tuple[i - 2] = a;
    cur = std::move(next);
  }

  if (Int(cur.size()) <= Int(q))
    throw std::logic_error("find_interior_witness: descent kept too few keys");

  auto by_first = [](const PointKey& a, const PointKey& b) { return a.comp[0] < b.comp[0]; };
  res.x_small = *std::min_element(cur.begin(), cur.end(), by_first);
  res.x_big = *std::max_element(cur.begin(), cur.end(), by_first);
  res.tuple = tuple;

  const BitString& lo = res.x_small.comp[0];
  const BitString& hi = res.x_big.comp[0];
  const PointKey* best = nullptr;
  for (const auto& y : Y.keys) {
    bool ok = true;
    for (unsigned i = 0; i < d - 1 && ok; ++i) ok = tuple[i].is_prefix_of(y.comp[i + 1]);
    if (!ok) continue;
    if (!(lo < y.comp[0] && y.comp[0] < hi)) continue;
    if (!best || y.comp[0] < best->comp[0]) best = &y;
  }
  if (best) {
    res.found = true;
    res.witness = *best;
  }
  return res;
}

}  // namespace holefree::goodset
