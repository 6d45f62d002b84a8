// Prints the rotation-induced force change for two BST spheres spinning about
// the line joining them, around the resonance at a relative spin of 2 w0.

#include <cstdio>

#include "spinvdw.hpp"

int main() {
  using namespace spinvdw;
  const PairContext ctx = reference_pair(300.0);
  const Interaction pair(ctx);
  const auto rr = Arrangement::canonical(ArrangementKind::RR);
  const double w0 = resonance_frequency(ctx.a.material);

  std::printf("E0 = %.4e J, F0 = %.4f fN\n", pair.static_energy(), 6.0 * pair.static_energy() / ctx.separation / 1e-15);
  std::printf("%10s %12s\n", "W_AB/w0", "dF [fN]");
  for (double x : linspace(1.9, 2.1, 21)) {
    std::printf("%10.3f %12.5f\n", x, pair.delta_force(rr, x * w0, 0.0) / constants::femto);
  }
}
