#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>

#include <algorithm>
#include <cmath>

namespace cfq::cf {

namespace {

// Kullback-Leibler divergence between Bernoulli(p) and Bernoulli(q), in bits.
// Written with log1p so that p close to q does not cancel catastrophically.
double bernoulli_kl_bits(double p, double q) {
  auto term = [](double x, double y) {
    if (x <= 0.0) return 0.0;
    return x * std::log1p((x - y) / y);
  };
  const double nats = term(p, q) + term(1.0 - p, 1.0 - q);
  return std::max(0.0, nats / std::log(2.0));
}

} // namespace

double abort_probability(const OutcomeDistribution& d, const protocols::BitMapping& mapping) {
  double p = 0.0;
  for (const auto& [label, value] : d.values)
    if (mapping.of(label) == protocols::BitValue::Abort) p += value;
  return p;
}

double abort_leakage_bits(double p_block, double p_open) {
  for (double p : {p_block, p_open})
    if (!(p >= -kNormDriftLimit && p <= 1.0 + kNormDriftLimit))
      throw DomainError("abort probability outside [0, 1]");
  p_block = std::clamp(p_block, 0.0, 1.0);
  p_open = std::clamp(p_open, 0.0, 1.0);
  const double mean = 0.5 * (p_block + p_open);
  if (mean <= 0.0 || mean >= 1.0) return 0.0;
  return 0.5 * bernoulli_kl_bits(p_block, mean) + 0.5 * bernoulli_kl_bits(p_open, mean);
}

LossStatistics loss_statistics(const protocols::Protocol& blocked, const protocols::Protocol& open) {
  if (blocked.mapping.decode != open.mapping.decode)
    throw StructuralError("blocked and open protocols decode outcomes differently");
  LossStatistics out;
  out.p_loss_block =
      abort_probability(run_fock(blocked.circuit, initial_state(blocked.circuit)), blocked.mapping);
  out.p_loss_open =
      abort_probability(run_fock(open.circuit, initial_state(open.circuit)), open.mapping);
  out.leakage_bits = abort_leakage_bits(out.p_loss_block, out.p_loss_open);
  return out;
}

} // namespace cfq::cf
