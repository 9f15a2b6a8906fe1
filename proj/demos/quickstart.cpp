// Walks the whole construction once at a friendly size and prints what each
// stage produced. Start here to see how the library pieces fit together.
#include <iostream>

#include "holefree/holefree.hpp"

using namespace holefree;

int main() {
  // a 16-point two-dimensional net: van der Corput digits in the first
  // coordinate, the index in the second
  const unsigned n = 4;
  auto net = netgen::sequence_to_net(netgen::vdc_points(n), 0, n);
  auto check = netgen::verify_net(net, 0, n, 2);
  std::cout << "net of " << net.size() << " points, net property at t=0: "
            << (check.pass ? "pass" : "fail") << " (" << check.stats.box_checks
            << " boxes)\n";

  // binary key set and the goodness parameter the counting property grants
  netgen::AlmostNetParams ap{1, 0, n};
  auto Y = goodset::to_binary_almost_net(netgen::pad_digits(net, n + 1), ap, 2);
  Int q = goodset::goodness_bound(1, 0, 2);
  auto good = goodset::verify_good(Y, q.convert_to<std::uint64_t>());
  std::cout << "key set is " << int_str(q) << "-good: "
            << (good.status == goodset::GoodStatus::pass ? "pass" : "FAIL") << '\n';

  // exact integer embedding, certified hole-free by exhaustive subsets
  auto sched = embed::build_schedule(2, Y.m, embed::default_base(Y.m));
  auto cert = embed::certify_embedding(Y, q.convert_to<std::uint64_t>(), sched);
  std::cout << "embedding certified " << int_str(cert.l) << "-hole-free: "
            << (cert.status == embed::CertifyStatus::certified ? "yes" : "no") << " after "
            << cert.rounds.size() << " round(s) at base " << int_str(sched.base) << '\n';

  // nudge into general position without losing the certificate
  auto pert = embed::perturb_to_general_position(cert.embedding.points, 7);
  auto gp = geom::general_position(pert.points);
  auto still = holes::is_hole_free(pert.points, cert.l.convert_to<std::size_t>());
  std::cout << "perturbed copy: general position " << (gp.ok ? "pass" : "FAIL")
            << ", still hole-free " << (still.hole_free ? "pass" : "FAIL") << '\n';

  // the largest hole the perturbed set actually has
  auto mh = holes::max_hole(pert.points);
  std::cout << "largest hole found: " << mh.size << " points\n";

  // closed-form guarantees for small dimensions
  for (const auto& row : bounds::bound_table(3, 6))
    std::cout << "d=" << row.d << "  h <= " << int_str(row.h_upper)
              << (row.note.empty() ? "" : "  [" + row.note + "]") << '\n';
  return 0;
}
