#include <cfq/circuit.hpp>

#include <cfq/errors.hpp>

#include <set>

namespace cfq {

Circuit& Circuit::add_path(const std::string& path, Region region, std::string cell) {
  if (path.empty()) throw StructuralError("path name must be non-empty");
  if (terminals_.count(path)) throw StructuralError("path '" + path + "' clashes with a terminal");
  regions_[path] = region;
  if (!cell.empty()) cells_[path] = std::move(cell);
  return *this;
}

Circuit& Circuit::add_terminal(TerminalKind kind, const std::string& label, Region region) {
  if (label.empty()) throw StructuralError("terminal label must be non-empty");
  if (terminals_.count(label)) throw StructuralError("duplicate terminal label '" + label + "'");
  if (regions_.count(label)) throw StructuralError("terminal '" + label + "' clashes with a path");
  terminals_.emplace(label, TerminalEvent{kind, label, region});
  return *this;
}

std::size_t Circuit::add_stage(Stage stage) {
  stages_.push_back(std::move(stage));
  return stages_.size() - 1;
}

void Circuit::mark(const std::string& name, std::size_t boundary) {
  marks_[name].push_back(boundary);
}

Region Circuit::region_of(const std::string& path) const {
  auto it = regions_.find(path);
  if (it == regions_.end()) throw StructuralError("unknown path '" + path + "'");
  return it->second;
}

std::string Circuit::cell_of(const std::string& path) const {
  if (auto it = cells_.find(path); it != cells_.end()) return it->second;
  return std::string(to_string(region_of(path)));
}

const TerminalEvent& Circuit::terminal(const std::string& label) const {
  auto it = terminals_.find(label);
  if (it == terminals_.end()) throw StructuralError("unknown terminal '" + label + "'");
  return it->second;
}

std::vector<std::size_t> Circuit::marks(const std::string& name) const {
  auto it = marks_.find(name);
  return it == marks_.end() ? std::vector<std::size_t>{} : it->second;
}

Source Circuit::source() const {
  for (const auto& st : stages_)
    for (const auto& e : st)
      if (const auto* s = std::get_if<Source>(&e)) return *s;
  throw StructuralError("circuit '" + name_ + "' has no source");
}

bool Circuit::polarized() const {
  for (const auto& st : stages_)
    for (const auto& e : st)
      if (std::holds_alternative<PolarizingBeamSplitter>(e) ||
          std::holds_alternative<HalfWavePlate>(e))
        return true;
  return false;
}

void Circuit::validate() const {
  std::size_t sources = 0;
  std::set<std::string> absorbed_terminals;
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    std::set<std::string> seen;
    for (const auto& e : stages_[i]) {
      for (const auto& p : touched_paths(e)) {
        if (!regions_.count(p))
          throw StructuralError("stage " + std::to_string(i) + ": " + describe(e) +
                                " references undeclared path '" + p + "'");
        if (!seen.insert(p).second)
          throw StructuralError("stage " + std::to_string(i) + ": path '" + p +
                                "' touched by more than one element");
      }
      if (const auto* a = std::get_if<Absorber>(&e)) {
        if (!terminals_.count(a->terminal))
          throw StructuralError("absorber on '" + a->path + "' feeds undeclared terminal '" +
                                a->terminal + "'");
        if (!absorbed_terminals.insert(a->terminal).second)
          throw StructuralError("terminal '" + a->terminal + "' is fed by more than one absorber");
      }
      if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
        if (bs->in_a.empty() || bs->in_a == bs->in_b)
          throw StructuralError("beamsplitter needs a distinct primary input");
        if (bs->out_a.empty() && bs->out_b.empty())
          throw StructuralError("beamsplitter has no output ports");
        if (bs->out_a == bs->out_b)
          throw StructuralError("beamsplitter output ports must differ");
      }
      if (const auto* pbs = std::get_if<PolarizingBeamSplitter>(&e)) {
        if (pbs->in_a.empty() || pbs->in_a == pbs->in_b)
          throw StructuralError("PBS needs a distinct primary input");
        if (pbs->out_transmit == pbs->out_reflect)
          throw StructuralError("PBS output ports must differ");
      }
      if (const auto* m = std::get_if<Mirror>(&e)) {
        if (m->from.empty() || m->to.empty() || m->from == m->to)
          throw StructuralError("mirror needs distinct from/to paths");
      }
      if (const auto* s = std::get_if<Source>(&e)) {
        ++sources;
        if (i != 0) throw StructuralError("source must sit in stage 0");
        if (polarized() == (s->pol == Polarization::None))
          throw StructuralError("source polarization must match circuit polarization mode");
      }
    }
  }
  if (sources != 1)
    throw StructuralError("circuit '" + name_ + "' needs exactly one source, found " +
                          std::to_string(sources));
}

} // namespace cfq
