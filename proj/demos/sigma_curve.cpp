// Smallest singular value of the sampling operator on Sigma_N against the
// truncation degree, for both transforms. The Euclidean column restricted to
// the odd sector of Sigma_N sits at rounding level.

#include <cstdio>

#include "tsmlab/tsmlab.hpp"

using namespace tsmlab;

int main(int argc, char** argv) {
  SetParams p;
  p.dim = 1;
  p.lines = argc > 1 ? std::atoi(argv[1]) : 2;
  const auto set = make_set(SetKind::coxeter_lines, p);
  std::printf("%s, %zu rows\n", set.describe().c_str(), set.rows());
  std::printf("%4s %14s %14s %14s\n", "K", "twisted", "euclidean", "euclid odd");
  for (int K = 2; K <= 12; K += 2) {
    const auto tw = assemble_operator(set, K, Engine::twisted);
    const auto eu = assemble_operator(set, K, Engine::euclidean);
    const int N = p.lines;
    const double odd = restricted_sigma_min(eu, [N](const BasisColumn& c) { return EuclideanBasis::in_odd_sector(c.euclid, N); });
    std::printf("%4d %14.4e %14.4e %14.4e\n", K, tw.sigma_min(), eu.sigma_min(), odd);
  }
}
