#pragma once

#include <cfq/optics.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cfq {

using Stage = std::vector<OpticalElement>;

/// A (stage boundary, mode) pair. Boundary k is the state before stage k;
/// boundary stage_count() is the final state.
struct Segment {
  std::size_t boundary = 0;
  Mode mode;

  friend auto operator<=>(const Segment&, const Segment&) = default;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Ordered stages of optical elements on named paths, with region tags,
/// terminal events and an optional default coarse-graining into cells.
///
/// Elements within a stage must touch disjoint paths; every path an element
/// mentions must be declared with a region. Terminal labels are unique.
class Circuit {
public:
  Circuit() = default;
  explicit Circuit(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  /// Declares a path. `cell` is the default coarse-graining label for
  /// history families; when empty the region name is used.
  Circuit& add_path(const std::string& path, Region region, std::string cell = {});
  Circuit& add_terminal(TerminalKind kind, const std::string& label, Region region);

  /// Appends a stage and returns its index.
  std::size_t add_stage(Stage stage);

  /// Records a named boundary index (e.g. default history cuts).
  void mark(const std::string& name, std::size_t boundary);

  /// Throws StructuralError on any invariant violation.
  void validate() const;

  std::size_t stage_count() const { return stages_.size(); }
  const std::vector<Stage>& stages() const { return stages_; }
  const Stage& stage(std::size_t i) const { return stages_.at(i); }

  bool has_path(const std::string& path) const { return regions_.count(path) != 0; }
  Region region_of(const std::string& path) const;
  const std::map<std::string, Region>& regions() const { return regions_; }
  std::string cell_of(const std::string& path) const;

  bool has_terminal(const std::string& label) const { return terminals_.count(label) != 0; }
  const TerminalEvent& terminal(const std::string& label) const;
  const std::map<std::string, TerminalEvent>& terminals() const { return terminals_; }

  /// Boundaries recorded under `name`, in insertion order (empty if none).
  std::vector<std::size_t> marks(const std::string& name) const;

  /// The circuit's source element; StructuralError if there is none.
  Source source() const;

  /// True if any path carries a definite (H/V) polarization element.
  bool polarized() const;

private:
  std::string name_;
  std::vector<Stage> stages_;
  std::map<std::string, Region> regions_;
  std::map<std::string, std::string> cells_;
  std::map<std::string, TerminalEvent> terminals_;
  std::map<std::string, std::vector<std::size_t>> marks_;
};

} // namespace cfq
