// Odd function g(|x|) Im(x^N) on the Coxeter system Sigma_N: its Euclidean
// circular means vanish on the lines, its twisted means do not.

#include <cstdio>

#include "tsmlab/tsmlab.hpp"

using namespace tsmlab;

int main(int argc, char** argv) {
  const int N = argc > 1 ? std::atoi(argv[1]) : 2;
  const RadialProfile g{"gaussian", 1.0};
  const auto euclid = coxeter_odd_counterexample(N, g);
  auto twisted = SampledField::sample(shared_plane_rule(1), [&](const Point& z) {
    return cplx(g(z.norm()) * std::pow(z[0], N).imag());
  });
  const auto unit = sphere_rule(1, 1.0);
  const auto dirs = coxeter_directions(N);

  std::printf("N = %d, max|f| = %.3g\n", N, euclid.max_abs());
  std::printf("%8s %8s %6s %14s %14s\n", "re z", "im z", "r", "|euclidean|", "|twisted|");
  for (std::size_t l = 0; l < dirs.size(); ++l)
    for (double t : {0.7, 1.6})
      for (double r : {0.5, 1.5, 3.0}) {
        const cplx z = t * dirs[l];
        const double e = std::abs(circular_mean(euclid, z, r));
        const double w = std::abs(twisted_spherical_mean(twisted, Point{z}, r, unit));
        std::printf("%8.3f %8.3f %6.2f %14.3e %14.3e\n", z.real(), z.imag(), r, e, w);
      }
}
