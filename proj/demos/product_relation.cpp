// phi_k x mu_r(z) against B(n,k) phi_k(r) phi_k(|z|) on C.

#include <cstdio>

#include "tsmlab/tsmlab.hpp"

using namespace tsmlab;

int main() {
  const auto grid = shared_plane_rule(1);
  const auto unit = sphere_rule(1, 1.0);
  const Point z{cplx(0.8, -0.5)};
  std::printf("z = (0.8, -0.5)\n%3s %6s %16s %16s %10s\n", "k", "r", "mean", "B phi phi", "error");
  for (int k = 0; k <= 4; ++k) {
    const auto f = laguerre_field(k, grid);
    for (double r : {0.5, 2.0, 4.0}) {
      const cplx m = twisted_spherical_mean(f, z, r, unit);
      const double ref = product_relation_constant(1, k) * laguerre_function({k, 0}, r) * laguerre_function({k, 0}, z.norm());
      std::printf("%3d %6.2f %16.9f %16.9f %10.2e\n", k, r, m.real(), ref, std::abs(m - ref));
    }
  }
}
