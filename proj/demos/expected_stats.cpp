// Prints every estimator next to the enumeration oracle for one random dataset.
#include <cstdio>
#include <cstdlib>

#include "sch/sch.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 10;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const auto ds = sch::random_dataset(n, 2, seed);

  std::printf("n=%zu d=2 seed=%llu\n", n, static_cast<unsigned long long>(seed));
  std::printf("diameter   oracle %.6f  witness %.6f  two-approx %.6f\n",
              sch::oracle_expectation(ds, sch::Statistic::diameter), sch::expected_diameter_witness(ds),
              sch::expected_diameter_two_approx(ds));

  sch::FprasConfig cfg;
  cfg.epsilon = 0.1;
  cfg.gamma_override = 2.0;
  cfg.seed = seed;
  std::printf("width      oracle %.6f  witness %.6f  fpras %.6f\n", sch::oracle_expectation(ds, sch::Statistic::width),
              sch::expected_width_witness(ds), sch::expected_width_fpras(ds, cfg));

  const auto lt = sch::lambda_terms(ds);
  std::printf("complexity oracle %.6f  exact %.6f  (edges %.6f, vertices %.6f)\n",
              sch::oracle_expectation(ds, sch::Statistic::complexity), *lt.total, lt.lambda1, lt.lambda2);
}
