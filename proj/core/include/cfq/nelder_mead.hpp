#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cfq::tune {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double f_target = 1e-26;      // stop once the best value is below this
  double x_tolerance = 1e-15;   // stop once the simplex has collapsed
  std::size_t max_evaluations = 4000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  std::vector<double> best_per_iteration;
};

/// Derivative-free minimization with the standard reflection, expansion,
/// contraction and shrink coefficients (1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& options = {});

} // namespace cfq::tune
