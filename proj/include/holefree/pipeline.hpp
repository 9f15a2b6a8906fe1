// End-to-end construction: generate or load a net, verify the almost-net
// counting property, build the sorted binary key set, verify q-goodness at
// the derived bound, embed with an escalating scale schedule until the exact
// hole oracle certifies, perturb into general position, and re-certify on the
// perturbed rationals. Every stage stores its artifact so a bundle can be
// re-verified from files alone.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "holefree/bounds.hpp"
#include "holefree/embed.hpp"
#include "holefree/geom.hpp"
#include "holefree/goodset.hpp"
#include "holefree/holes.hpp"
#include "holefree/io.hpp"
#include "holefree/netgen.hpp"
#include "holefree/numeric.hpp"

namespace holefree::pipeline {

struct PipelineCaps {
  goodset::GoodLimits good{};
  holes::Caps oracle{};
  unsigned max_rounds = 12;
  unsigned retry_cap = 16;
  bool fast_planar_oracle = false;
};

// Caps can be raised or lowered process-wide through environment variables,
// handy for CI time boxes.
inline void apply_env_caps(PipelineCaps& caps) {
  auto u64 = [](const char* name, std::uint64_t& slot) {
    if (const char* v = std::getenv(name)) slot = std::strtoull(v, nullptr, 10);
  };
  auto u32 = [](const char* name, unsigned& slot) {
    if (const char* v = std::getenv(name))
      slot = static_cast<unsigned>(std::strtoul(v, nullptr, 10));
  };
  u64("HOLEFREE_MAX_PREDICATE_CALLS", caps.oracle.max_predicate_calls);
  u64("HOLEFREE_MAX_SUBSETS_PER_CLASS", caps.good.max_subsets_per_class);
  u32("HOLEFREE_MAX_DM", caps.good.max_dm);
  u32("HOLEFREE_MAX_ROUNDS", caps.max_rounds);
  u32("HOLEFREE_RETRY_CAP", caps.retry_cap);
}

struct PipelineConfig {
  unsigned d = 2;
  unsigned n = 4;
  std::uint64_t T = 1;  // must be a power of two for built-in generation
  Rat eps = 0;          // must be 0 for built-in generation
  Int base = 0;         // 0 means 2^{2m}
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string net_in;  // pregenerated net file, enables general T and eps
  PipelineCaps caps{};
};

// key = value lines, '#' comments; keys mirror PipelineConfig
inline PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw io::ParseError("config line " + std::to_string(lineno) +
                           ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "d") cfg.d = static_cast<unsigned>(std::stoul(val));
      else if (key == "n") cfg.n = static_cast<unsigned>(std::stoul(val));
      else if (key == "T") cfg.T = std::stoull(val);
      else if (key == "eps") cfg.eps = parse_rat(val);
      else if (key == "base") cfg.base = (val == "auto") ? Int(0) : parse_int(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "out_dir") cfg.out_dir = val;
      else if (key == "net_in") cfg.net_in = val;
      else if (key == "max_dm") cfg.caps.good.max_dm = static_cast<unsigned>(std::stoul(val));
      else if (key == "max_subsets_per_class") cfg.caps.good.max_subsets_per_class = std::stoull(val);
      else if (key == "max_predicate_calls") cfg.caps.oracle.max_predicate_calls = std::stoull(val);
      else if (key == "max_rounds") cfg.caps.max_rounds = static_cast<unsigned>(std::stoul(val));
      else if (key == "retry_cap") cfg.caps.retry_cap = static_cast<unsigned>(std::stoul(val));
      else if (key == "fast_planar_oracle") {
        if (val == "1" || val == "true") cfg.caps.fast_planar_oracle = true;
        else if (val == "0" || val == "false") cfg.caps.fast_planar_oracle = false;
        else throw io::ParseError("config line " + std::to_string(lineno) +
                                  ": fast_planar_oracle must be 0/1/true/false");
      } else
        throw io::ParseError("config line " + std::to_string(lineno) +
                             ": unknown key '" + key + "'");
    } catch (const io::ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw io::ParseError("config line " + std::to_string(lineno) + ": key '" + key +
                           "': " + e.what());
    }
  }
  return cfg;
}

enum class StageStatus { ok, violation, cap_exceeded };

struct PipelineResult {
  StageStatus status = StageStatus::ok;
  std::string fail_stage;  // empty on success
  std::string message;

  // stage artifacts, filled as far as the run got
  std::string net_source;
  std::vector<netgen::NetPoint> net;  // as generated or loaded
  unsigned m_net = 0;
  std::optional<unsigned> t;  // built-in generation only
  std::uint64_t T = 1;
  Rat eps = 0;
  unsigned d = 0, n = 0;
  netgen::NetCheckResult almost_check;
  goodset::BinaryAlmostNet Y;
  goodset::StructureReport structure;
  std::uint64_t q = 0;
  goodset::GoodResult good;
  embed::CertifyResult cert;
  embed::PerturbResult pert;
  geom::GeneralPositionResult gp;
  holes::HoleFreeResult final_check;
  Int ell = 0;
  std::string guarantee;
  std::uint64_t seed = 0;
};

namespace detail {

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline unsigned log2_exact(std::uint64_t v) {
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < v) ++k;
  return k;
}

struct NetGenOutcome {
  std::vector<netgen::NetPoint> pts;
  unsigned t = 0, m = 0;
  std::string source;
};

// built-in sources are one-dimensional van der Corput for d = 2, otherwise a
// (d-1)-dimensional Sobol' prefix, both lifted by appending n/2^m; the quality
// parameter is found by verifying, not assumed
inline std::optional<NetGenOutcome> generate_net(unsigned d, unsigned n, unsigned t_start,
                                                 unsigned t_max = 12) {
  for (unsigned t = t_start; t <= t_max; ++t) {
    const unsigned m = n + t;
    if (m > 24) break;  // 2^m points; keep built-in generation bounded
    std::vector<netgen::NetPoint> seq =
        (d == 2) ? netgen::vdc_points(m) : netgen::sobol_points(d - 1, m);
    NetGenOutcome out;
    out.pts = netgen::sequence_to_net(seq, t, m);
    out.t = t;
    out.m = m;
    out.source = (d == 2) ? "vdc-lift" : "sobol-lift";
    if (netgen::verify_net(out.pts, t, m, d).pass) return out;
  }
  return std::nullopt;
}

}  // namespace detail

inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult res;
  res.d = cfg.d;
  res.n = cfg.n;
  res.seed = cfg.seed;
  auto fail = [&](StageStatus st, const std::string& stage, const std::string& msg) {
    res.status = st;
    res.fail_stage = stage;
    res.message = msg;
    return res;
  };

  if (cfg.d < 2) return fail(StageStatus::violation, "config", "d must be at least 2");
  if (cfg.n == 0) return fail(StageStatus::violation, "config", "n must be positive");

  // stage: net
  if (cfg.net_in.empty()) {
    if (cfg.eps != 0)
      return fail(StageStatus::violation, "net generation",
                  "built-in generation requires eps = 0; supply net_in for eps > 0");
    if (!detail::is_power_of_two(cfg.T))
      return fail(StageStatus::violation, "net generation",
                  "built-in generation requires T a power of two");
    if (cfg.d > netgen::kSobolMaxDim + 1)
      return fail(StageStatus::violation, "net generation",
                  "built-in generation supports d <= " +
                      std::to_string(netgen::kSobolMaxDim + 1) + "; supply net_in");
    auto gen = detail::generate_net(cfg.d, cfg.n, detail::log2_exact(cfg.T));
    if (!gen)
      return fail(StageStatus::violation, "net generation",
                  "no verified net found with t <= 12");
    res.net = std::move(gen->pts);
    res.m_net = gen->m;
    res.t = gen->t;
    res.T = std::uint64_t{1} << gen->t;
    res.eps = 0;
    res.net_source = gen->source;
  } else {
    io::NetFile f = io::net_from_json(io::load_json_file(cfg.net_in));
    if (f.s != cfg.d)
      return fail(StageStatus::violation, "net input",
                  "net file dimension differs from configured d");
    res.net = std::move(f.points);
    res.m_net = f.digits;
    res.T = cfg.T;
    res.eps = cfg.eps;
    res.net_source = "file";
  }

  // stage: almost-net counting property
  netgen::AlmostNetParams ap{res.T, res.eps, cfg.n};
  try {
    res.almost_check = netgen::verify_almost_net(res.net, ap, cfg.d);
  } catch (const std::exception& e) {
    return fail(StageStatus::violation, "almost-net verification", e.what());
  }
  if (!res.almost_check.pass)
    return fail(StageStatus::violation, "almost-net verification",
                "box " + res.almost_check.violation->box.str() + " holds " +
                    std::to_string(res.almost_check.violation->count) + " points");

  // stage: binary key set
  const unsigned m_key = cfg.n + goodset::tail_bits(res.T);
  auto padded = res.m_net < m_key ? netgen::pad_digits(res.net, m_key) : res.net;
  try {
    res.Y = goodset::to_binary_almost_net(padded, ap, cfg.d);
  } catch (const std::exception& e) {
    return fail(StageStatus::violation, "binary almost-net", e.what());
  }
  res.structure = goodset::check_structure(res.Y);
  if (!res.structure.ok)
    return fail(StageStatus::violation, "binary almost-net", res.structure.detail);

  // stage: goodness at the derived bound
  Int qb = goodset::goodness_bound(res.T, res.eps, cfg.d);
  if (qb < 1)
    return fail(StageStatus::violation, "goodness verification",
                "derived bound " + int_str(qb) + " is not positive");
  res.q = qb.convert_to<std::uint64_t>();
  res.good = goodset::verify_good(res.Y, res.q, cfg.caps.good);
  if (res.good.status == goodset::GoodStatus::cap_exceeded)
    return fail(StageStatus::cap_exceeded, "goodness verification", res.good.cap);
  if (res.good.status == goodset::GoodStatus::violation)
    return fail(StageStatus::violation, "goodness verification",
                "a prefix class violates the betweenness condition at q = " +
                    std::to_string(res.q));

  // stage: embedding certification
  Int base = cfg.base == 0 ? embed::default_base(res.Y.m) : cfg.base;
  embed::ScaleSchedule sched = embed::build_schedule(cfg.d, res.Y.m, base);
  embed::CertifyOptions copt;
  copt.max_rounds = cfg.caps.max_rounds;
  copt.oracle_caps = cfg.caps.oracle;
  copt.fast_planar_oracle = cfg.caps.fast_planar_oracle;
  res.cert = embed::certify_embedding(res.Y, res.q, sched, copt);
  res.ell = res.cert.l;
  if (res.cert.status != embed::CertifyStatus::certified)
    return fail(StageStatus::cap_exceeded, "embedding certification", res.cert.cap);

  // stage: perturbation into general position
  embed::PerturbOptions popt;
  popt.retry_cap = cfg.caps.retry_cap;
  popt.oracle_caps = cfg.caps.oracle;
  try {
    res.pert = embed::perturb_to_general_position(res.cert.embedding.points, cfg.seed, popt);
  } catch (const std::exception& e) {
    return fail(StageStatus::violation, "perturbation", e.what());
  }
  if (!res.pert.ok)
    return fail(StageStatus::cap_exceeded, "perturbation",
                "retry cap " + std::to_string(popt.retry_cap) +
                    " reached without general position");
  res.gp = geom::general_position(res.pert.points);
  if (!res.gp.ok)
    return fail(StageStatus::violation, "perturbation",
                "perturbed set failed the general-position recheck");

  // stage: final hole check on the perturbed points
  if (res.ell > Int(res.pert.points.size())) {
    res.final_check.status = holes::SearchStatus::ok;
    res.final_check.hole_free = true;  // fewer points than the threshold
  } else {
    res.final_check = holes::is_hole_free(res.pert.points,
                                          res.ell.convert_to<std::size_t>(),
                                          cfg.caps.oracle);
  }
  if (res.final_check.status == holes::SearchStatus::cap_exceeded)
    return fail(StageStatus::cap_exceeded, "final hole check",
                "oracle predicate budget exhausted");
  if (!res.final_check.hole_free)
    return fail(StageStatus::violation, "final hole check",
                "perturbed set contains an empty convex polytope at the threshold");

  res.guarantee = "no holes of size greater than " + int_str(res.ell - 1) + " (" +
                  int_str(res.ell) + "-hole-free)";
  return res;
}

// ----------------------------------------------------------------------------
// bundle writing

inline io::ojson report_to_json(const PipelineResult& r) {
  io::ojson j;
  j["d"] = r.d;
  j["n"] = r.n;
  j["T"] = r.T;
  j["eps"] = rat_str(r.eps);
  j["net_source"] = r.net_source;
  if (r.t) j["t"] = *r.t;
  j["m_net"] = r.m_net;
  j["m_key"] = r.Y.m;
  j["q"] = r.q;
  j["ell"] = int_str(r.ell);
  j["base"] = int_str(r.cert.embedding.sched.base);
  j["rounds"] = r.cert.rounds.size();
  j["certified"] = r.cert.status == embed::CertifyStatus::certified;
  j["seed"] = r.seed;
  j["attempts"] = r.pert.attempts;
  j["general_position"] = r.gp.ok;
  j["hole_free"] = r.final_check.hole_free;
  io::ojson calls;
  std::uint64_t certify_calls = 0;
  for (const auto& round : r.cert.rounds) certify_calls += round.oracle.counters.predicate_calls;
  calls["certify"] = certify_calls;
  calls["final"] = r.final_check.counters.predicate_calls;
  j["predicate_calls"] = std::move(calls);
  j["guarantee"] = r.guarantee;
  return j;
}

inline void write_bundle(const PipelineResult& r, const std::string& dir) {
  if (r.status != StageStatus::ok)
    throw std::logic_error("write_bundle: pipeline did not succeed");
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  io::write_json_file(path("net.json"), io::net_to_json(r.net, r.d, r.m_net));
  io::write_json_file(path("good.json"), io::good_to_json(r.Y));
  io::write_json_file(path("points.json"),
                      io::points_to_json(r.cert.embedding.points, r.cert.embedding.sched.base,
                                         r.cert.embedding.sched.m, r.cert.embedding.keys));
  io::write_json_file(path("perturbed.json"),
                      io::rational_points_to_json(r.pert.points, r.pert.offsets, r.pert.seed,
                                                  r.pert.gap, r.pert.bound, r.pert.attempts));
  io::write_json_file(path("report.json"), report_to_json(r));
}

// ----------------------------------------------------------------------------
// bundle re-verification: every stored claim is re-checked from the files,
// nothing is regenerated

struct BundleCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct BundleReport {
  StageStatus status = StageStatus::ok;
  std::vector<BundleCheck> checks;
  bool ok() const { return status == StageStatus::ok; }
};

inline BundleReport verify_bundle(const std::string& dir, const PipelineCaps& caps = {}) {
  namespace fs = std::filesystem;
  BundleReport rep;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back({name, ok, detail});
    if (!ok && rep.status == StageStatus::ok) rep.status = StageStatus::violation;
  };
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };

  io::ojson jreport = io::load_json_file(path("report.json"));
  io::NetFile net = io::net_from_json(io::load_json_file(path("net.json")));
  goodset::BinaryAlmostNet Y = io::good_from_json(io::load_json_file(path("good.json")));
  io::PointsFile pf = io::points_from_json(io::load_json_file(path("points.json")));
  io::RationalPointsFile rf =
      io::rational_points_from_json(io::load_json_file(path("perturbed.json")));

  const unsigned d = static_cast<unsigned>(io::detail::get_uint(jreport, "d", "report"));
  const unsigned n = static_cast<unsigned>(io::detail::get_uint(jreport, "n", "report"));
  const std::uint64_t T = io::detail::get_uint(jreport, "T", "report");
  const Rat eps = parse_rat(io::detail::get_str(jreport, "eps", "report"));
  const std::uint64_t q = io::detail::get_uint(jreport, "q", "report");
  const Int ell = parse_int(io::detail::get_str(jreport, "ell", "report"));

  // almost-net counting property on the stored net
  {
    bool ok = false;
    std::string detail;
    try {
      auto r = netgen::verify_almost_net(net.points, {T, eps, n}, d);
      ok = r.pass;
      if (!ok && r.violation) detail = "violating box " + r.violation->box.str();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add("almost-net", ok, detail);
  }

  // stored key set matches the stored net and its own structure contract
  {
    bool ok = false;
    std::string detail;
    try {
      auto padded = net.digits < Y.m ? netgen::pad_digits(net.points, Y.m) : net.points;
      auto rebuilt = goodset::to_binary_almost_net(padded, {T, eps, n}, d);
      ok = rebuilt.keys == Y.keys && rebuilt.m == Y.m && rebuilt.n == Y.n &&
           rebuilt.T == Y.T && rebuilt.eps == Y.eps;
      if (!ok) detail = "stored keys differ from keys derived from net.json";
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add("key derivation", ok, detail);
    auto st = goodset::check_structure(Y);
    add("key structure", st.ok, st.detail);
  }

  // goodness at the stored q
  {
    auto g = goodset::verify_good(Y, q, caps.good);
    if (g.status == goodset::GoodStatus::cap_exceeded) {
      rep.status = StageStatus::cap_exceeded;
      add("goodness", false, g.cap);
    } else {
      add("goodness", g.status == goodset::GoodStatus::pass);
    }
  }

  // stored integer coordinates equal the schedule image of the stored keys
  {
    bool ok = false;
    std::string detail;
    try {
      if (pf.source_keys.empty()) {
        detail = "points file lacks source_keys";
      } else if (pf.source_keys != Y.keys) {
        detail = "points file source_keys differ from good.json keys";
      } else {
        auto sched = embed::build_schedule(d, pf.m, pf.base);
        ok = embed::embed_keys(pf.source_keys, sched).points == pf.coords;
        if (!ok) detail = "coords are not the schedule image of source_keys";
      }
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add("embedding", ok, detail);
  }

  // hole-freeness of the stored integer points at the stored threshold
  {
    if (ell > Int(pf.coords.size())) {
      add("integer hole check", true, "vacuous, fewer points than threshold");
    } else {
      auto h = holes::is_hole_free(pf.coords, ell.convert_to<std::size_t>(), caps.oracle);
      if (h.status == holes::SearchStatus::cap_exceeded) {
        rep.status = StageStatus::cap_exceeded;
        add("integer hole check", false, "oracle predicate budget exhausted");
      } else {
        add("integer hole check", h.hole_free);
      }
    }
  }

  // perturbed points: offsets consistent, below the bound, general position,
  // and still hole-free
  {
    bool consistent = rf.coords.size() == pf.coords.size() &&
                      rf.offsets.size() == pf.coords.size();
    const Rat bound = rf.bound;
    if (consistent) {
      for (std::size_t i = 0; i < rf.coords.size() && consistent; ++i) {
        if (rf.coords[i].size() != d || rf.offsets[i].size() != d) { consistent = false; break; }
        for (unsigned j = 0; j < d; ++j) {
          Rat off = rf.offsets[i][j];
          if (rf.coords[i][j] != Rat(pf.coords[i][j]) + off) { consistent = false; break; }
          if (off > bound || off < -bound) { consistent = false; break; }
        }
      }
    }
    add("perturbation offsets", consistent,
        consistent ? "" : "offsets inconsistent with integer points or beyond the bound");
    auto gp = geom::general_position(rf.coords);
    add("general position", gp.ok);
    if (ell > Int(rf.coords.size())) {
      add("perturbed hole check", true, "vacuous, fewer points than threshold");
    } else {
      auto h = holes::is_hole_free(rf.coords, ell.convert_to<std::size_t>(), caps.oracle);
      if (h.status == holes::SearchStatus::cap_exceeded) {
        rep.status = StageStatus::cap_exceeded;
        add("perturbed hole check", false, "oracle predicate budget exhausted");
      } else {
        add("perturbed hole check", h.hole_free);
      }
    }
  }

  return rep;
}

}  // namespace holefree::pipeline
