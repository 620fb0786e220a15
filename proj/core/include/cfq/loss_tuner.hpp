#pragma once

#include <cfq/nelder_mead.hpp>

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace cfq::tune {

enum class Objective { EqualLoss, EqualLossAndZeroCrosstalk };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view s);

inline constexpr double kAngleLower = 0.0;
inline constexpr double kAngleUpper = std::numbers::pi / 2;
inline constexpr double kConvergenceThreshold = 1e-9;
inline constexpr std::size_t kMaxSeeds = 625;

/// Splitter angles of the loss-balanced chained interferometer. `angles` is
/// the full vector (see protocols::vaidman_arity); only indices listed in
/// `free` are tuned, the rest stay fixed.
struct TuneProblem {
  int inner_count = 2;
  std::vector<double> angles;
  std::vector<std::size_t> free;
  Objective objective = Objective::EqualLossAndZeroCrosstalk;
};

/// Inner splitters fixed at pi/4; the outer input splitter, the tap and the
/// final recombiner are free.
TuneProblem default_problem(int inner_count = 2);

struct Evaluation {
  double p_loss_block = 0.0;
  double p_loss_open = 0.0;
  double p_d1_open = 0.0;   // wrong-bit probability with Bob open
  double p_d0_block = 0.0;  // wrong-bit probability with Bob blocking
  double residual = 0.0;    // |p_loss_block - p_loss_open|
  double crosstalk = 0.0;   // max(p_d1_open, p_d0_block)
  /// min(P(D0|open), P(D1|block)): how well each bit gets through.
  double decodability = 0.0;
};

/// Angles must lie in [0, pi/2]; DomainError otherwise.
Evaluation evaluate(int inner_count, const std::vector<double>& angles);

struct TuneResult {
  std::vector<double> angles;  // full angle vector at the optimum
  Evaluation evaluation;
  double residual = 0.0;
  double crosstalk = 0.0;
  std::size_t iterations = 0;   // summed over all seeds
  std::size_t evaluations = 0;  // summed over all seeds
  std::size_t seeds = 0;
  std::size_t best_seed = 0;
  bool converged = false;
};

/// Seed grid: `per_dim` values pi/2 * k / (per_dim + 1) in every free
/// dimension. ResourceError if the grid would exceed kMaxSeeds points.
std::vector<std::vector<double>> seed_grid(std::size_t free_dims, std::size_t per_dim = 5);

/// Runs Nelder-Mead from each seed (free coordinates only). Among seeds that
/// converge the most decodable solution wins, which rules out the trivial
/// optimum where every photon is lost for both bits; if none converge the
/// lowest objective wins. Ties go to the earliest seed. StructuralError for malformed
/// problems, DomainError for seeds outside bounds.
TuneResult solve_equal_loss(const TuneProblem& problem,
                            std::optional<std::vector<std::vector<double>>> seeds = std::nullopt);

} // namespace cfq::tune
