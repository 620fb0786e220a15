#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>
#include <cfq/loss_tuner.hpp>
#include <cfq/protocols.hpp>

#include <algorithm>
#include <cmath>

namespace cfq::tune {

namespace {

bool in_bounds(double x) { return x >= kAngleLower && x <= kAngleUpper; }

double wrong_bit(const OutcomeDistribution& d, const protocols::BitMapping& m,
                 protocols::BitValue bit) {
  const auto t = m.terminal_for(bit);
  return t ? d.at(*t) : 0.0;
}

double score(const Evaluation& e, Objective o) {
  double s = e.residual * e.residual;
  if (o == Objective::EqualLossAndZeroCrosstalk) s += e.crosstalk * e.crosstalk;
  return s;
}

void check_problem(const TuneProblem& p) {
  if (p.inner_count < 2) throw StructuralError("inner_count must be at least 2");
  if (p.angles.size() != protocols::vaidman_arity(p.inner_count))
    throw StructuralError("expected " + std::to_string(protocols::vaidman_arity(p.inner_count)) +
                          " angles, got " + std::to_string(p.angles.size()));
  if (p.free.empty()) throw StructuralError("no free angles to tune");
  for (std::size_t i = 0; i < p.free.size(); ++i) {
    if (p.free[i] >= p.angles.size()) throw StructuralError("free index out of range");
    if (i > 0 && p.free[i] <= p.free[i - 1])
      throw StructuralError("free indices must be strictly increasing");
  }
  for (std::size_t i = 0; i < p.angles.size(); ++i)
    if (!in_bounds(p.angles[i])) throw DomainError("angle outside [0, pi/2]");
}

} // namespace

std::string_view to_string(Objective o) {
  return o == Objective::EqualLoss ? "equal-loss" : "equal-loss-zero-crosstalk";
}

Objective objective_from_string(std::string_view s) {
  if (s == "equal-loss") return Objective::EqualLoss;
  if (s == "equal-loss-zero-crosstalk") return Objective::EqualLossAndZeroCrosstalk;
  throw StructuralError("unknown objective '" + std::string(s) + "'");
}

TuneProblem default_problem(int inner_count) {
  if (inner_count < 2) throw StructuralError("inner_count must be at least 2");
  TuneProblem p;
  p.inner_count = inner_count;
  p.angles.assign(protocols::vaidman_arity(inner_count), std::numbers::pi / 4);
  const std::size_t n = p.angles.size();
  p.free = {0, n - 2, n - 1};
  return p;
}

Evaluation evaluate(int inner_count, const std::vector<double>& angles) {
  for (double a : angles)
    if (!in_bounds(a)) throw DomainError("angle outside [0, pi/2]");
  const auto blocked = protocols::build_vaidman(inner_count, angles, protocols::BobAction::Block);
  const auto open = protocols::build_vaidman(inner_count, angles, protocols::BobAction::Open);
  const auto db = run_fock(blocked.circuit, initial_state(blocked.circuit));
  const auto dopen = run_fock(open.circuit, initial_state(open.circuit));

  Evaluation e;
  e.p_loss_block = cf::abort_probability(db, blocked.mapping);
  e.p_loss_open = cf::abort_probability(dopen, open.mapping);
  e.p_d1_open = wrong_bit(dopen, open.mapping, protocols::BitValue::Bit1);
  e.p_d0_block = wrong_bit(db, blocked.mapping, protocols::BitValue::Bit0);
  e.residual = std::abs(e.p_loss_block - e.p_loss_open);
  e.crosstalk = std::max(e.p_d1_open, e.p_d0_block);
  e.decodability = std::min(wrong_bit(dopen, open.mapping, protocols::BitValue::Bit0),
                            wrong_bit(db, blocked.mapping, protocols::BitValue::Bit1));
  return e;
}

std::vector<std::vector<double>> seed_grid(std::size_t free_dims, std::size_t per_dim) {
  if (per_dim == 0) throw DomainError("seeds per dimension must be positive");
  double total = 1.0;
  for (std::size_t i = 0; i < free_dims; ++i) total *= static_cast<double>(per_dim);
  if (total > static_cast<double>(kMaxSeeds))
    throw ResourceError("seed grid of " + std::to_string(static_cast<long long>(total)) +
                        " points exceeds " + std::to_string(kMaxSeeds));
  std::vector<double> axis(per_dim);
  for (std::size_t k = 0; k < per_dim; ++k)
    axis[k] = kAngleUpper * static_cast<double>(k + 1) / static_cast<double>(per_dim + 1);

  std::vector<std::vector<double>> grid{{}};
  for (std::size_t d = 0; d < free_dims; ++d) {
    std::vector<std::vector<double>> next;
    for (const auto& g : grid)
      for (double a : axis) {
        auto x = g;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    grid.swap(next);
  }
  return grid;
}

TuneResult solve_equal_loss(const TuneProblem& problem,
                            std::optional<std::vector<std::vector<double>>> seeds) {
  check_problem(problem);
  const std::size_t dims = problem.free.size();
  if (!seeds) seeds = seed_grid(dims);
  if (seeds->empty()) throw StructuralError("no seeds");
  if (seeds->size() > kMaxSeeds) throw ResourceError("too many seeds");
  for (const auto& s : *seeds) {
    if (s.size() != dims) throw StructuralError("seed dimension does not match free angles");
    for (double x : s)
      if (!in_bounds(x)) throw DomainError("seed outside [0, pi/2]");
  }

  auto full = [&](const std::vector<double>& x) {
    auto a = problem.angles;
    for (std::size_t i = 0; i < dims; ++i) a[problem.free[i]] = x[i];
    return a;
  };
  auto objective = [&](const std::vector<double>& x) {
    double excess = 0.0;
    for (double v : x) {
      if (v < kAngleLower) excess += (kAngleLower - v) * (kAngleLower - v);
      if (v > kAngleUpper) excess += (v - kAngleUpper) * (v - kAngleUpper);
    }
    if (excess > 0.0) return 10.0 + excess;
    return score(evaluate(problem.inner_count, full(x)), problem.objective);
  };

  auto converged = [&](const Evaluation& e) {
    return e.residual < kConvergenceThreshold &&
           (problem.objective == Objective::EqualLoss || e.crosstalk < kConvergenceThreshold);
  };

  TuneResult best;
  double best_score = 0.0;
  bool best_converged = false;
  double best_decodability = 0.0;
  NelderMeadOptions polish;
  polish.initial_step = 1e-3;
  for (std::size_t i = 0; i < seeds->size(); ++i) {
    auto r = nelder_mead(objective, (*seeds)[i]);
    auto r2 = nelder_mead(objective, r.x, polish);
    best.iterations += r.iterations + r2.iterations;
    best.evaluations += r.evaluations + r2.evaluations;
    if (r2.f < r.f) r = r2;
    const auto e = evaluate(problem.inner_count, full(r.x));
    const bool ok = converged(e);
    bool take = i == 0;
    if (!take && ok != best_converged) take = ok;
    else if (!take && ok) take = e.decodability > best_decodability;
    else if (!take) take = r.f < best_score;
    if (take) {
      best_score = r.f;
      best_converged = ok;
      best_decodability = e.decodability;
      best.best_seed = i;
      best.angles = full(r.x);
    }
  }
  best.seeds = seeds->size();
  best.evaluation = evaluate(problem.inner_count, best.angles);
  best.residual = best.evaluation.residual;
  best.crosstalk = best.evaluation.crosstalk;
  best.converged = converged(best.evaluation);
  return best;
}

} // namespace cfq::tune
