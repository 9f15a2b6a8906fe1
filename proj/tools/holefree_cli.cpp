// Command-line front end. Exit codes: 0 pass, 1 mathematical violation,
// 2 usage or parse error, 3 cap exceeded.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holefree/holefree.hpp"

namespace {

using namespace holefree;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

holes::Caps env_holes_caps() {
  pipeline::PipelineCaps caps;
  pipeline::apply_env_caps(caps);
  return caps.oracle;
}

int stage_exit(pipeline::StageStatus st) {
  switch (st) {
    case pipeline::StageStatus::ok: return kExitPass;
    case pipeline::StageStatus::violation: return kExitViolation;
    case pipeline::StageStatus::cap_exceeded: return kExitCap;
  }
  return kExitUsage;
}

void emit(const io::ojson& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::write_json_file(out_path, j);
}

std::vector<netgen::NetPoint> load_net_points(const std::string& path, unsigned* s_out,
                                              unsigned* m_out, unsigned* digits_out) {
  io::NetFile f = io::net_from_json(io::load_json_file(path));
  if (s_out) *s_out = f.s;
  if (m_out) *m_out = f.m;
  if (digits_out) *digits_out = f.digits;
  return std::move(f.points);
}

geom::PointSet<Int> load_int_points(const std::string& path, unsigned* d_out) {
  io::PointsFile f = io::points_from_json(io::load_json_file(path));
  if (d_out) *d_out = f.d;
  return std::move(f.coords);
}

// ---------------------------------------------------------------------------
// net

struct NetGenArgs {
  std::string kind = "sobol";
  unsigned s = 2;
  unsigned m = 4;
  unsigned t = 0;  // lift quality parameter for --kind sobol-lift / vdc-lift
  std::string out;
};

int run_net_gen(const NetGenArgs& a) {
  std::vector<netgen::NetPoint> pts;
  unsigned s = a.s, m = a.m;
  if (a.kind == "sobol") {
    pts = netgen::sobol_points(a.s, a.m);
  } else if (a.kind == "vdc") {
    pts = netgen::vdc_points(a.m);
    s = 1;
  } else if (a.kind == "vdc-lift") {
    pts = netgen::sequence_to_net(netgen::vdc_points(a.m), a.t, a.m);
    s = 2;
  } else if (a.kind == "sobol-lift") {
    pts = netgen::sequence_to_net(netgen::sobol_points(a.s, a.m), a.t, a.m);
    s = a.s + 1;
  } else {
    std::cerr << "unknown --kind '" << a.kind << "'\n";
    return kExitUsage;
  }
  emit(io::net_to_json(pts, s, m), a.out);
  return kExitPass;
}

int run_net_verify(const std::string& in, unsigned t, const std::string& out) {
  unsigned s = 0, m = 0;
  auto pts = load_net_points(in, &s, &m, nullptr);
  auto r = netgen::verify_net(pts, t, m, s);
  io::ojson j;
  j["pass"] = r.pass;
  j["t"] = t;
  j["m"] = m;
  j["s"] = s;
  j["compositions"] = r.stats.compositions;
  j["box_checks"] = r.stats.box_checks;
  if (r.violation) {
    j["violating_box"] = r.violation->box.str();
    j["count"] = r.violation->count;
  }
  emit(j, out);
  return r.pass ? kExitPass : kExitViolation;
}

int run_net_verify_almost(const std::string& in, std::uint64_t T, const std::string& eps,
                          unsigned n, const std::string& out) {
  unsigned s = 0;
  auto pts = load_net_points(in, &s, nullptr, nullptr);
  auto r = netgen::verify_almost_net(pts, {T, parse_rat(eps), n}, s);
  io::ojson j;
  j["pass"] = r.pass;
  j["T"] = T;
  j["eps"] = eps;
  j["n"] = n;
  if (r.violation) {
    j["violating_box"] = r.violation->box.str();
    j["count"] = r.violation->count;
  }
  emit(j, out);
  return r.pass ? kExitPass : kExitViolation;
}

int run_net_minimal_t(const std::string& in, const std::string& out) {
  unsigned s = 0, m = 0;
  auto pts = load_net_points(in, &s, &m, nullptr);
  netgen::VerifyStats stats;
  auto t = netgen::minimal_t(pts, m, s, &stats);
  io::ojson j;
  j["found"] = t.has_value();
  if (t) j["t"] = *t;
  j["box_checks"] = stats.box_checks;
  if (!out.empty()) io::write_json_file(out, j);
  if (t) std::cout << *t << '\n';
  return t ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// good

int run_good_build(const std::string& in, std::uint64_t T, const std::string& eps_s,
                   unsigned n, unsigned d, const std::string& out) {
  auto pts = load_net_points(in, nullptr, nullptr, nullptr);
  netgen::AlmostNetParams ap{T, parse_rat(eps_s), n};
  const unsigned m_key = n + goodset::tail_bits(T);
  if (!pts.empty() && pts[0].digit_count(0) < m_key) pts = netgen::pad_digits(pts, m_key);
  auto Y = goodset::to_binary_almost_net(pts, ap, d);
  emit(io::good_to_json(Y), out);
  return kExitPass;
}

int run_good_verify(const std::string& in, std::int64_t q_flag, bool minimal,
                    const std::string& out) {
  auto Y = io::good_from_json(io::load_json_file(in));
  auto st = goodset::check_structure(Y);
  if (!st.ok) {
    std::cerr << "structure check failed: " << st.detail << '\n';
    return kExitViolation;
  }
  Int qb = goodset::goodness_bound(Y.T, Y.eps, Y.d);
  std::uint64_t q = q_flag >= 0 ? static_cast<std::uint64_t>(q_flag)
                                : qb.convert_to<std::uint64_t>();
  auto g = goodset::verify_good(Y, q);
  io::ojson j;
  j["q"] = q;
  j["good_bound"] = int_str(qb);
  j["status"] = g.status == goodset::GoodStatus::pass        ? "pass"
                : g.status == goodset::GoodStatus::violation ? "violation"
                                                             : "cap_exceeded";
  j["tuples_enumerated"] = g.tuples_enumerated;
  j["subsets_enumerated"] = g.subsets_enumerated;
  if (g.status == goodset::GoodStatus::violation) {
    io::ojson tup = io::ojson::array();
    for (const auto& w : g.tuple) tup.push_back(w.str());
    j["violating_tuple"] = std::move(tup);
  }
  if (!g.cap.empty()) j["cap"] = g.cap;
  if (minimal && g.status != goodset::GoodStatus::cap_exceeded) {
    auto mq = goodset::minimal_good_q(Y, q);
    j["minimal_q"] = mq ? io::ojson(*mq) : io::ojson(nullptr);
  }
  emit(j, out);
  if (g.status == goodset::GoodStatus::pass) return kExitPass;
  return g.status == goodset::GoodStatus::violation ? kExitViolation : kExitCap;
}

// ---------------------------------------------------------------------------
// embed

int run_embed_build(const std::string& in, const std::string& base_s, const std::string& out) {
  auto Y = io::good_from_json(io::load_json_file(in));
  Int base = base_s == "auto" ? embed::default_base(Y.m) : parse_int(base_s);
  auto sched = embed::build_schedule(Y.d, Y.m, base);
  auto e = embed::embed_keys(Y.keys, sched);
  emit(io::points_to_json(e.points, sched.base, sched.m, e.keys), out);
  return kExitPass;
}

int run_embed_certify(const std::string& in, std::int64_t q_flag, const std::string& base_s,
                      unsigned max_rounds, bool fast, const std::string& out) {
  auto Y = io::good_from_json(io::load_json_file(in));
  Int qb = goodset::goodness_bound(Y.T, Y.eps, Y.d);
  std::uint64_t q = q_flag >= 0 ? static_cast<std::uint64_t>(q_flag)
                                : qb.convert_to<std::uint64_t>();
  Int base = base_s == "auto" ? embed::default_base(Y.m) : parse_int(base_s);
  embed::CertifyOptions opt;
  opt.max_rounds = max_rounds;
  opt.oracle_caps = env_holes_caps();
  opt.fast_planar_oracle = fast;
  auto c = embed::certify_embedding(Y, q, embed::build_schedule(Y.d, Y.m, base), opt);
  io::ojson j;
  j["certified"] = c.status == embed::CertifyStatus::certified;
  j["q"] = q;
  j["ell"] = int_str(c.l);
  j["rounds"] = c.rounds.size();
  j["final_base"] = int_str(c.embedding.sched.base);
  if (!c.cap.empty()) j["cap"] = c.cap;
  emit(j, out);
  if (c.status == embed::CertifyStatus::certified) {
    return kExitPass;
  }
  return kExitCap;
}

int run_embed_perturb(const std::string& in, std::uint64_t seed, unsigned retry_cap,
                      const std::string& out) {
  auto pts = load_int_points(in, nullptr);
  embed::PerturbOptions opt;
  opt.retry_cap = retry_cap;
  opt.oracle_caps = env_holes_caps();
  auto p = embed::perturb_to_general_position(pts, seed, opt);
  emit(io::rational_points_to_json(p.points, p.offsets, p.seed, p.gap, p.bound, p.attempts),
       out);
  return p.ok ? kExitPass : kExitCap;
}

int run_embed_csv(const std::string& in, bool rational, const std::string& out) {
  std::string csv;
  if (rational) {
    auto f = io::rational_points_from_json(io::load_json_file(in));
    csv = io::points_csv(f.coords);
  } else {
    auto f = io::points_from_json(io::load_json_file(in));
    csv = io::points_csv(f.coords);
  }
  if (out.empty())
    std::cout << csv;
  else
    io::write_text_file(out, csv);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// holes

geom::PointSet<Rat> load_any_points_rat(const std::string& path, bool rational) {
  if (rational) return io::rational_points_from_json(io::load_json_file(path)).coords;
  geom::PointSet<Rat> out;
  for (const auto& p : io::points_from_json(io::load_json_file(path)).coords) {
    geom::Point<Rat> q(p.begin(), p.end());
    out.push_back(std::move(q));
  }
  return out;
}

int run_holes_max(const std::string& in, bool rational, const std::string& algo_s,
                  std::size_t cap_size, const std::string& out) {
  auto A = load_any_points_rat(in, rational);
  holes::HoleAlgo algo = algo_s == "brute"  ? holes::HoleAlgo::brute
                         : algo_s == "dp2d" ? holes::HoleAlgo::dp2d
                                            : holes::HoleAlgo::automatic;
  auto r = holes::max_hole(A, algo, cap_size, env_holes_caps());
  io::ojson j = io::hole_report_to_json(
      "max", r.size, r.status == holes::SearchStatus::ok ? "ok" : "cap_exceeded", r.witness,
      r.status == holes::SearchStatus::cap_exceeded, r.counters.predicate_calls);
  j["witness_verified"] = r.witness_verified;
  emit(j, out);
  return r.status == holes::SearchStatus::ok ? kExitPass : kExitCap;
}

int run_holes_free(const std::string& in, bool rational, std::size_t ell,
                   const std::string& out) {
  auto A = load_any_points_rat(in, rational);
  auto r = holes::is_hole_free(A, ell, env_holes_caps());
  std::string result = r.status == holes::SearchStatus::cap_exceeded ? "cap_exceeded"
                       : r.hole_free                                 ? "hole-free"
                                                                     : "hole found";
  emit(io::hole_report_to_json("free", ell, result, r.witness,
                               r.status == holes::SearchStatus::cap_exceeded,
                               r.counters.predicate_calls),
       out);
  if (r.status == holes::SearchStatus::cap_exceeded) return kExitCap;
  return r.hole_free ? kExitPass : kExitViolation;
}

int run_holes_count(const std::string& in, bool rational, std::size_t ell,
                    const std::string& out) {
  auto A = load_any_points_rat(in, rational);
  auto r = holes::count_holes(A, ell, env_holes_caps());
  io::ojson j;
  j["mode"] = "count";
  j["ell"] = ell;
  j["count"] = int_str(r.count);
  j["caps_hit"] = r.status == holes::SearchStatus::cap_exceeded;
  j["predicate_calls"] = r.counters.predicate_calls;
  if (!out.empty()) io::write_json_file(out, j);
  std::cout << int_str(r.count) << '\n';
  return r.status == holes::SearchStatus::ok ? kExitPass : kExitCap;
}

// ---------------------------------------------------------------------------
// bounds

std::pair<unsigned, unsigned> parse_dim_range(const std::string& spec) {
  auto dots = spec.find("..");
  if (dots == std::string::npos) {
    unsigned d = static_cast<unsigned>(std::stoul(spec));
    return {d, d};
  }
  return {static_cast<unsigned>(std::stoul(spec.substr(0, dots))),
          static_cast<unsigned>(std::stoul(spec.substr(dots + 2)))};
}

int run_bounds_table(const std::string& range, const std::string& out) {
  auto [lo, hi] = parse_dim_range(range);
  auto rows = bounds::bound_table(lo, hi);
  io::ojson j = io::ojson::array();
  for (const auto& r : rows) {
    io::ojson row;
    row["d"] = r.d;
    row["t"] = int_str(r.t);
    row["t_source"] = r.source;
    row["h_upper"] = int_str(r.h_upper);
    row["valtr"] = int_str(r.valtr);
    row["two_pow_7d"] = int_str(r.two_pow_7d);
    row["below_2_pow_7d"] = r.pass;
    if (!r.note.empty()) row["note"] = r.note;
    j.push_back(std::move(row));
  }
  emit(j, out);
  return kExitPass;
}

int run_bounds_check(unsigned d_max, const std::string& out) {
  auto rows = bounds::exponent_sweep(d_max);
  bool all = true;
  io::ojson j = io::ojson::array();
  for (const auto& r : rows) {
    all = all && r.direct_ok && r.refined_ok;
    io::ojson row;
    row["d"] = r.d;
    row["t"] = int_str(r.t);
    row["h_upper_bits"] = r.bits;
    row["direct_ok"] = r.direct_ok;
    row["refined_ok"] = r.refined_ok;
    j.push_back(std::move(row));
  }
  emit(j, out);
  return all ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// pipeline

int run_pipeline_cmd(pipeline::PipelineConfig cfg) {
  auto res = pipeline::run_pipeline(cfg);
  if (res.status != pipeline::StageStatus::ok) {
    std::cerr << "pipeline failed at stage '" << res.fail_stage << "': " << res.message
              << '\n';
    return stage_exit(res.status);
  }
  if (!cfg.out_dir.empty()) pipeline::write_bundle(res, cfg.out_dir);
  std::cout << pipeline::report_to_json(res).dump(2) << '\n';
  return kExitPass;
}

int run_verify_bundle(const std::string& dir) {
  auto rep = pipeline::verify_bundle(dir, [] {
    pipeline::PipelineCaps caps;
    pipeline::apply_env_caps(caps);
    return caps;
  }());
  io::ojson j = io::ojson::array();
  for (const auto& c : rep.checks) {
    io::ojson row;
    row["check"] = c.name;
    row["ok"] = c.ok;
    if (!c.detail.empty()) row["detail"] = c.detail;
    j.push_back(std::move(row));
  }
  std::cout << j.dump(2) << '\n';
  return stage_exit(rep.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hole-free point set construction and certification"};
  app.require_subcommand(1);

  int rc = kExitPass;
  auto set = [&rc](auto fn) {
    return [&rc, fn]() { rc = fn(); };
  };

  // net
  auto* net = app.add_subcommand("net", "digital net generation and verification");
  net->require_subcommand(1);
  NetGenArgs ng;
  auto* net_gen = net->add_subcommand("gen", "generate net points");
  net_gen->add_option("--kind", ng.kind, "sobol | vdc | vdc-lift | sobol-lift");
  net_gen->add_option("--s", ng.s, "dimension (sequence dimension for lifts)");
  net_gen->add_option("--m", ng.m, "2^m points, m digits");
  net_gen->add_option("--t", ng.t, "lift quality parameter");
  net_gen->add_option("--out", ng.out, "output file");
  net_gen->callback(set([&] { return run_net_gen(ng); }));

  std::string nv_in, nv_out;
  unsigned nv_t = 0;
  auto* net_verify = net->add_subcommand("verify", "verify the net property at t");
  net_verify->add_option("--in", nv_in, "net file")->required();
  net_verify->add_option("--t", nv_t, "quality parameter");
  net_verify->add_option("--out", nv_out, "report file");
  net_verify->callback(set([&] { return run_net_verify(nv_in, nv_t, nv_out); }));

  std::string na_in, na_eps = "0", na_out;
  std::uint64_t na_T = 1;
  unsigned na_n = 0;
  auto* net_almost = net->add_subcommand("verify-almost", "verify the almost-net property");
  net_almost->add_option("--in", na_in, "net file")->required();
  net_almost->add_option("--T", na_T, "target count per box");
  net_almost->add_option("--eps", na_eps, "tolerance, exact rational 'p/q'");
  net_almost->add_option("--n", na_n, "box volume exponent")->required();
  net_almost->add_option("--out", na_out, "report file");
  net_almost->callback(
      set([&] { return run_net_verify_almost(na_in, na_T, na_eps, na_n, na_out); }));

  std::string nm_in, nm_out;
  auto* net_min = net->add_subcommand("minimal-t", "smallest t the net verifies at");
  net_min->add_option("--in", nm_in, "net file")->required();
  net_min->add_option("--out", nm_out, "report file");
  net_min->callback(set([&] { return run_net_minimal_t(nm_in, nm_out); }));

  // good
  auto* good = app.add_subcommand("good", "binary key sets and q-goodness");
  good->require_subcommand(1);
  std::string gb_in, gb_eps = "0", gb_out;
  std::uint64_t gb_T = 1;
  unsigned gb_n = 0, gb_d = 2;
  auto* good_build = good->add_subcommand("build", "binary key set from a net file");
  good_build->add_option("--in", gb_in, "net file")->required();
  good_build->add_option("--T", gb_T, "target count per box");
  good_build->add_option("--eps", gb_eps, "tolerance 'p/q'");
  good_build->add_option("--n", gb_n, "box volume exponent")->required();
  good_build->add_option("--d", gb_d, "dimension")->required();
  good_build->add_option("--out", gb_out, "output file");
  good_build->callback(
      set([&] { return run_good_build(gb_in, gb_T, gb_eps, gb_n, gb_d, gb_out); }));

  std::string gv_in, gv_out;
  std::int64_t gv_q = -1;
  bool gv_min = false;
  auto* good_verify = good->add_subcommand("verify", "verify q-goodness");
  good_verify->add_option("--in", gv_in, "key-set file")->required();
  good_verify->add_option("--q", gv_q, "q to test (default: derived bound)");
  good_verify->add_flag("--minimal", gv_min, "also sweep for the minimal passing q");
  good_verify->add_option("--out", gv_out, "report file");
  good_verify->callback(set([&] { return run_good_verify(gv_in, gv_q, gv_min, gv_out); }));

  // embed
  auto* emb = app.add_subcommand("embed", "integer embedding and perturbation");
  emb->require_subcommand(1);
  std::string eb_in, eb_base = "auto", eb_out;
  auto* embed_build = emb->add_subcommand("build", "embed keys at a fixed base");
  embed_build->add_option("--in", eb_in, "key-set file")->required();
  embed_build->add_option("--base", eb_base, "scale base B or 'auto'");
  embed_build->add_option("--out", eb_out, "output file");
  embed_build->callback(set([&] { return run_embed_build(eb_in, eb_base, eb_out); }));

  std::string ec_in, ec_base = "auto", ec_out;
  std::int64_t ec_q = -1;
  unsigned ec_rounds = 12;
  bool ec_fast = false;
  auto* embed_cert = emb->add_subcommand("certify", "escalate base until hole-free");
  embed_cert->add_option("--in", ec_in, "key-set file")->required();
  embed_cert->add_option("--q", ec_q, "q (default: derived bound)");
  embed_cert->add_option("--base", ec_base, "starting base B or 'auto'");
  embed_cert->add_option("--max-rounds", ec_rounds, "escalation rounds");
  embed_cert->add_flag("--fast-planar-oracle", ec_fast,
                       "use the planar largest-hole dynamic program when valid");
  embed_cert->callback(set(
      [&] { return run_embed_certify(ec_in, ec_q, ec_base, ec_rounds, ec_fast, ec_out); }));
  embed_cert->add_option("--out", ec_out, "report file");

  std::string ep_in, ep_out;
  std::uint64_t ep_seed = 1;
  unsigned ep_retry = 16;
  auto* embed_pert = emb->add_subcommand("perturb", "rational perturbation into general position");
  embed_pert->add_option("--in", ep_in, "integer point file")->required();
  embed_pert->add_option("--seed", ep_seed, "perturbation seed");
  embed_pert->add_option("--retry-cap", ep_retry, "redraw attempts");
  embed_pert->add_option("--out", ep_out, "output file");
  embed_pert->callback(set([&] { return run_embed_perturb(ep_in, ep_seed, ep_retry, ep_out); }));

  std::string ex_in, ex_out;
  bool ex_rat = false;
  auto* embed_csv = emb->add_subcommand("csv", "export coordinates as CSV");
  embed_csv->add_option("--in", ex_in, "point file")->required();
  embed_csv->add_flag("--rational", ex_rat, "input is a perturbed rational file");
  embed_csv->add_option("--out", ex_out, "output file");
  embed_csv->callback(set([&] { return run_embed_csv(ex_in, ex_rat, ex_out); }));

  // holes
  auto* hol = app.add_subcommand("holes", "exact hole search and certification");
  hol->require_subcommand(1);
  std::string hm_in, hm_algo = "auto", hm_out;
  bool hm_rat = false;
  std::size_t hm_cap = 0;
  auto* holes_max = hol->add_subcommand("max", "largest hole");
  holes_max->add_option("--in", hm_in, "point file")->required();
  holes_max->add_flag("--rational", hm_rat, "input is a perturbed rational file");
  holes_max->add_option("--algo", hm_algo, "auto | brute | dp2d");
  holes_max->add_option("--cap-size", hm_cap, "stop growing candidates beyond this size");
  holes_max->add_option("--out", hm_out, "report file");
  holes_max->callback(
      set([&] { return run_holes_max(hm_in, hm_rat, hm_algo, hm_cap, hm_out); }));

  std::string hf_in, hf_out;
  bool hf_rat = false;
  std::size_t hf_ell = 0;
  auto* holes_free = hol->add_subcommand("free", "certify that no ell-point hole exists");
  holes_free->add_option("--in", hf_in, "point file")->required();
  holes_free->add_flag("--rational", hf_rat, "input is a perturbed rational file");
  holes_free->add_option("--ell", hf_ell, "hole size threshold")->required();
  holes_free->add_option("--out", hf_out, "report file");
  holes_free->callback(set([&] { return run_holes_free(hf_in, hf_rat, hf_ell, hf_out); }));

  std::string hc_in, hc_out;
  bool hc_rat = false;
  std::size_t hc_ell = 0;
  auto* holes_count = hol->add_subcommand("count", "count holes of an exact size");
  holes_count->add_option("--in", hc_in, "point file")->required();
  holes_count->add_flag("--rational", hc_rat, "input is a perturbed rational file");
  holes_count->add_option("--ell", hc_ell, "hole size")->required();
  holes_count->add_option("--out", hc_out, "report file");
  holes_count->callback(set([&] { return run_holes_count(hc_in, hc_rat, hc_ell, hc_out); }));

  // bounds
  auto* bnd = app.add_subcommand("bounds", "closed-form bound tables and checks");
  bnd->require_subcommand(1);
  std::string bt_range = "3..10", bt_out;
  auto* bounds_table = bnd->add_subcommand("table", "upper-bound table for a dimension range");
  bounds_table->add_option("--d", bt_range, "dimension or range lo..hi");
  bounds_table->add_option("--out", bt_out, "report file");
  bounds_table->callback(set([&] { return run_bounds_table(bt_range, bt_out); }));

  unsigned bc_dmax = 64;
  std::string bc_out;
  auto* bounds_check = bnd->add_subcommand("check", "exponent sweep of the bound formulas");
  bounds_check->add_option("--d-max", bc_dmax, "largest dimension to sweep");
  bounds_check->add_option("--out", bc_out, "report file");
  bounds_check->callback(set([&] { return run_bounds_check(bc_dmax, bc_out); }));

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "end-to-end construction and bundles");
  pipe->require_subcommand(1);
  pipeline::PipelineConfig cfg;
  pipeline::apply_env_caps(cfg.caps);
  std::string pr_base = "auto", pr_eps = "0", pr_config;
  auto* pipe_run = pipe->add_subcommand("run", "run every stage and write a bundle");
  pipe_run->add_option("--config", pr_config, "key=value config file");
  pipe_run->add_option("--d", cfg.d, "dimension");
  pipe_run->add_option("--n", cfg.n, "box volume exponent");
  pipe_run->add_option("--T", cfg.T, "target count per box");
  pipe_run->add_option("--eps", pr_eps, "tolerance 'p/q'");
  pipe_run->add_option("--base", pr_base, "scale base B or 'auto'");
  pipe_run->add_option("--seed", cfg.seed, "perturbation seed");
  pipe_run->add_option("--out-dir", cfg.out_dir, "bundle directory");
  pipe_run->add_option("--net-in", cfg.net_in, "pregenerated net file");
  bool pr_fast = false;
  pipe_run->add_flag("--fast-planar-oracle", pr_fast,
                     "use the planar largest-hole dynamic program when valid");
  pipe_run->callback(set([&] {
    if (!pr_config.empty()) {
      std::ifstream in(pr_config);
      if (!in) throw io::ParseError("cannot open config file '" + pr_config + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      auto file_cfg = pipeline::parse_config(ss.str());
      pipeline::apply_env_caps(file_cfg.caps);
      // explicit flags override file values
      if (pipe_run->count("--d")) file_cfg.d = cfg.d;
      if (pipe_run->count("--n")) file_cfg.n = cfg.n;
      if (pipe_run->count("--T")) file_cfg.T = cfg.T;
      if (pipe_run->count("--eps")) file_cfg.eps = parse_rat(pr_eps);
      if (pipe_run->count("--base")) file_cfg.base = pr_base == "auto" ? Int(0) : parse_int(pr_base);
      if (pipe_run->count("--seed")) file_cfg.seed = cfg.seed;
      if (pipe_run->count("--out-dir")) file_cfg.out_dir = cfg.out_dir;
      if (pipe_run->count("--net-in")) file_cfg.net_in = cfg.net_in;
      if (pipe_run->count("--fast-planar-oracle")) file_cfg.caps.fast_planar_oracle = pr_fast;
      return run_pipeline_cmd(file_cfg);
    }
    cfg.eps = parse_rat(pr_eps);
    cfg.base = pr_base == "auto" ? Int(0) : parse_int(pr_base);
    cfg.caps.fast_planar_oracle = pr_fast;
    return run_pipeline_cmd(cfg);
  }));

  std::string vb_dir;
  auto* pipe_verify = pipe->add_subcommand("verify-bundle", "re-verify a stored bundle");
  pipe_verify->add_option("--dir", vb_dir, "bundle directory")->required();
  pipe_verify->callback(set([&] { return run_verify_bundle(vb_dir); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_rc = app.exit(e);
    return cli_rc == 0 ? kExitPass : kExitUsage;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return rc;
}
