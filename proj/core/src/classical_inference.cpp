#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>

namespace cfq::cf {

ClassicalSignal classical_absence_channel(const ClassicalChannelModel& model, bool a_occurred) {
  if (!model.biconditional)
    throw DomainError("absence of '" + model.consequent + "' says nothing about '" +
                      model.antecedent + "' without the converse conditional");
  // Only the presence of the sign needs anything to travel.
  return ClassicalSignal{a_occurred, a_occurred};
}

} // namespace cfq::cf
