// Scale-schedule embedding of key sets into exact integer coordinates, with
// empirical certification. Digit j of coordinate i carries weight B^{r(i,j)},
// r(i,j) = (i-1)m + (m-j+1), so weights double (at least) along the rank
// chain, lex order on each coordinate's key word matches integer order of the
// embedded coordinate, and distinct axes live at disjoint scale bands.
// Certification runs the hole-freeness oracle at l = 2^{d-1} q + 1 and squares
// the base until the oracle passes or a cap is hit.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "holefree/bitstring.hpp"
#include "holefree/geom.hpp"
#include "holefree/goodset.hpp"
#include "holefree/holes.hpp"
#include "holefree/numeric.hpp"
#include "holefree/rng.hpp"

namespace holefree::embed {

struct ScaleSchedule {
  unsigned d = 0;
  unsigned m = 0;
  Int base = 0;
  std::vector<Int> pows;  // pows[r] = base^r, r = 0..d*m

  // digit index is 0-based MSB-first; rank counts from the least significant
  // digit of axis 1 up to the most significant digit of axis d
  unsigned rank(unsigned axis, unsigned digit) const {
    if (axis >= d || digit >= m) throw std::out_of_range("rank: index out of range");
    return axis * m + (m - digit);
  }
  const Int& weight(unsigned axis, unsigned digit) const { return pows[rank(axis, digit)]; }
};

inline ScaleSchedule build_schedule(unsigned d, unsigned m, const Int& base) {
  if (d < 1 || m < 1) throw std::invalid_argument("build_schedule: d and m must be positive");
  if (base < 2) throw std::invalid_argument("build_schedule: base must be at least 2");
  ScaleSchedule s;
  s.d = d;
  s.m = m;
  s.base = base;
  s.pows.resize(static_cast<std::size_t>(d) * m + 1);
  s.pows[0] = 1;
  for (std::size_t r = 1; r < s.pows.size(); ++r) s.pows[r] = s.pows[r - 1] * base;
  return s;
}

inline Int default_base(unsigned m) { return pow2(2 * m); }

struct EmbeddedSet {
  geom::PointSet<Int> points;
  std::vector<PointKey> keys;  // audit trail, aligned with points
  ScaleSchedule sched;
};

inline EmbeddedSet embed_keys(const std::vector<PointKey>& keys, const ScaleSchedule& sched) {
  EmbeddedSet out;
  out.sched = sched;
  out.keys = keys;
  out.points.reserve(keys.size());
  for (const auto& key : keys) {
    if (key.dims() != sched.d)
      throw std::invalid_argument("embed_keys: key dimension does not match schedule");
    geom::Point<Int> p(sched.d);
    for (unsigned i = 0; i < sched.d; ++i) {
      if (key.comp[i].size() != sched.m)
        throw std::invalid_argument("embed_keys: key word length does not match schedule");
      Int c = 0;
      for (unsigned j = 0; j < sched.m; ++j)
        if (key.comp[i].bit(j)) c += sched.weight(i, j);
      p[i] = std::move(c);
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

// ----------------------------------------------------------------------------
// certification

struct CertifyOptions {
  unsigned max_rounds = 12;
  holes::Caps oracle_caps{};
  // with two-dimensional input in verified general position, the largest-hole
  // dynamic program decides hole-freeness equivalently and much faster; off by
  // default, the subset-exhaustive oracle is the contract
  bool fast_planar_oracle = false;
};

enum class CertifyStatus { certified, cap_exceeded };

struct CertifyRound {
  Int base;
  bool hole_free = false;
  bool used_fast_oracle = false;
  holes::HoleFreeResult oracle;
};

struct CertifyResult {
  CertifyStatus status = CertifyStatus::cap_exceeded;
  Int l = 0;  // threshold 2^{d-1} q + 1
  std::vector<CertifyRound> rounds;
  EmbeddedSet embedding;  // at the last base tried; the certified one on success
  std::string cap;        // which cap stopped an uncertified run
};

inline CertifyResult certify_embedding(const goodset::BinaryAlmostNet& Y, std::uint64_t q,
                                       ScaleSchedule sched, const CertifyOptions& opt = {}) {
  if (sched.d != Y.d || sched.m != Y.m)
    throw std::invalid_argument("certify_embedding: schedule does not match key set");
  CertifyResult res;
  res.l = pow2(Y.d - 1) * Int(q) + 1;

  for (unsigned round = 0; round < opt.max_rounds; ++round) {
    CertifyRound r;
    r.base = sched.base;
    EmbeddedSet emb = embed_keys(Y.keys, sched);

    if (res.l > Int(emb.points.size())) {
      r.hole_free = true;  // fewer points than the threshold, nothing to check
      r.oracle.hole_free = true;
    } else {
      const std::size_t l = res.l.convert_to<std::size_t>();
      bool fast = opt.fast_planar_oracle && Y.d == 2 &&
                  geom::general_position(emb.points).ok;
      if (fast) {
        auto mh = holes::max_hole(emb.points, holes::HoleAlgo::dp2d, l, opt.oracle_caps);
        r.used_fast_oracle = true;
        r.oracle.status = mh.status;
        r.oracle.counters = mh.counters;
        r.oracle.hole_free = (mh.status == holes::SearchStatus::ok) && mh.size < l;
        r.oracle.witness = mh.size >= l ? mh.witness : std::vector<std::size_t>{};
      } else {
        r.oracle = holes::is_hole_free(emb.points, l, opt.oracle_caps);
      }
      if (r.oracle.status == holes::SearchStatus::cap_exceeded) {
        r.hole_free = false;
        res.rounds.push_back(std::move(r));
        res.embedding = std::move(emb);
        res.status = CertifyStatus::cap_exceeded;
        res.cap = "oracle predicate budget exhausted";
        return res;
      }
      r.hole_free = r.oracle.hole_free;
    }

    const bool ok = r.hole_free;
    res.rounds.push_back(std::move(r));
    if (ok) {
      res.embedding = std::move(emb);
      res.status = CertifyStatus::certified;
      return res;
    }
    sched = build_schedule(sched.d, sched.m, sched.base * sched.base);
    if (round + 1 == opt.max_rounds) res.embedding = std::move(emb);
  }
  res.status = CertifyStatus::cap_exceeded;
  res.cap = "escalation rounds exhausted after " + std::to_string(opt.max_rounds) +
            " bases";
  return res;
}

// ----------------------------------------------------------------------------
// perturbation to general position

struct PerturbOptions {
  unsigned retry_cap = 16;
  holes::Caps oracle_caps{};
};

struct PerturbResult {
  bool ok = false;
  geom::PointSet<Rat> points;
  geom::PointSet<Rat> offsets;  // same shape as points
  Int gap = 0;                  // smallest nonzero coordinate gap across axes
  Rat bound = 0;                // strict offset magnitude bound g/(4 n^2)
  std::uint64_t seed = 0;
  unsigned attempts = 0;        // draws consumed, successful one included
};

// deterministic rational offsets below the smallest coordinate gap, redrawn
// with a fresh sub-seed until the perturbed set is in general position
inline PerturbResult perturb_to_general_position(const geom::PointSet<Int>& pts,
                                                 std::uint64_t seed,
                                                 const PerturbOptions& opt = {}) {
  PerturbResult res;
  res.seed = seed;
  if (pts.empty()) throw std::invalid_argument("perturb: empty point set");
  geom::detail::require_uniform(pts);
  {
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("perturb: points must be distinct");
  }
  const std::size_t n = pts.size();
  const std::size_t d = pts[0].size();

  Int g = 0;
  for (std::size_t axis = 0; axis < d; ++axis) {
    std::vector<Int> vals;
    vals.reserve(n);
    for (const auto& p : pts) vals.push_back(p[axis]);
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 1; i < n; ++i) {
      Int diff = vals[i] - vals[i - 1];
      if (diff > 0 && (g == 0 || diff < g)) g = diff;
    }
  }
  if (g == 0)
    throw std::invalid_argument("perturb: no axis has two distinct coordinates");
  res.gap = g;

  const Int nn = Int(n) * Int(n);
  res.bound = Rat(g) / Rat(4 * nn);
  const std::uint64_t M = std::uint64_t{1} << 31;
  const Int denom = Int(M) * (4 * nn + 1);

  for (unsigned attempt = 0; attempt < opt.retry_cap; ++attempt) {
    res.attempts = attempt + 1;
    geom::PointSet<Rat> cand(n, geom::Point<Rat>(d));
    geom::PointSet<Rat> offs(n, geom::Point<Rat>(d));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t axis = 0; axis < d; ++axis) {
        std::uint64_t raw = keyed_rand(seed, k, axis, attempt) % (2 * M - 1);
        std::int64_t r = static_cast<std::int64_t>(raw) - static_cast<std::int64_t>(M - 1);
        Rat delta = Rat(Int(r) * g, denom);
        offs[k][axis] = delta;
        cand[k][axis] = Rat(pts[k][axis]) + delta;
      }
    if (geom::general_position(cand).ok) {
      res.ok = true;
      res.points = std::move(cand);
      res.offsets = std::move(offs);
      return res;
    }
  }
  res.ok = false;
  return res;
}

}  // namespace holefree::embed
