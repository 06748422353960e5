// Builds an oblivious reliable spanner for a random tree, attacks it and
// checks the residual stretch outside the damaged set.

#include <iostream>

#include "rspan.hpp"

int main() {
  using namespace rspan;
  const Instance tree = random_tree(64, 7);

  ReliableParams p;
  p.eps = 0.5;
  p.theta = 0.25;
  p.seed = 11;
  const ReliableSpanner rs = build_reliable(tree, Family::Tree, Model::Oblivious, p);
  std::cout << "spanner: " << rs.graph.m() << " edges on " << rs.n() << " points, " << rs.clusters.size()
            << " clusters, stretch bound " << rs.improved_bound << "\n";

  AttackSpec spec;
  spec.kind = AttackKind::Random;
  spec.size = 6;
  spec.seed = 3;
  const PointSet B = make_attack(spec, attack_target(rs));
  const DamageResult dmg = constructive_damage(rs, B);
  const VerificationReport v = verify_residual(rs, B, dmg.B_hat);
  std::cout << "attack |B|=" << B.size() << " damaged |B_hat|=" << dmg.B_hat.size() << " loss=" << dmg.loss
            << " worst stretch=" << v.worst_stretch << " violations=" << v.violation_count << "\n";
  return v.ok() ? 0 : 1;
}
