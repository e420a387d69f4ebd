// Type function exp(-|z|^2/4) z1 conj(z2) on C^2: twisted means vanish on
// {z1 z2 = 0} and not at generic centres.

#include <cstdio>

#include "tsmlab/tsmlab.hpp"

using namespace tsmlab;

int main() {
  const auto P = solid_harmonic_basis(1, 1, 2)[1];
  ScanConfig sc;
  sc.radii = geometric_radii(0.3, 4.0, 8);
  sc.centers = hecke_bochner_centers(P, 4, 4);
  const auto [field, rep] = hecke_bochner_counterexample({P, 0.25}, sc);
  std::printf("P = %s, max|f| = %.3g\n", P.to_string().c_str(), rep.field_max);
  for (const auto& p : rep.points)
    std::printf("%-10s max_r |mean| / max|f| = %.3e\n", p.on_variety ? "variety" : "generic", p.max_mean);
  std::printf("contract holds: %s\n", rep.variety_contract_holds ? "yes" : "no");
}
