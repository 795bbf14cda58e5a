#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pbnn/fraction.hpp"
#include "pbnn/state.hpp"

namespace pbnn {

using StepFn = std::function<BinaryState(const BinaryState&)>;

/// The map tabulated over all 2^N states.
///
/// Entries are packed state codes (0..2^N-1); the canonical index of code c
/// is c + 1.
class FunctionalGraph {
 public:
  /// Validates dimension, table length and entry range.
  FunctionalGraph(int dim, std::vector<std::uint32_t> successor);

  int dim() const noexcept { return dim_; }
  std::uint64_t size() const noexcept { return successor_.size(); }
  std::uint32_t next(std::uint32_t code) const { return successor_[code]; }
  std::span<const std::uint32_t> successors() const noexcept { return successor_; }

  friend bool operator==(const FunctionalGraph&, const FunctionalGraph&) = default;

 private:
  int dim_;
  std::vector<std::uint32_t> successor_;
};

FunctionalGraph build_graph(const StepFn& step, int n);

/// The graph of `second o first`, by table lookup.
FunctionalGraph compose_graphs(const FunctionalGraph& second, const FunctionalGraph& first);

struct Cycle {
  std::uint32_t id = 0;
  /// State codes in orbit order, starting from the smallest.
  std::vector<std::uint32_t> states;
  /// States (own points included) that eventually land on this cycle.
  std::uint64_t basin_size = 0;

  std::uint64_t period() const noexcept { return states.size(); }
};

/// Per-state tag. transient == 0 marks a periodic point on `cycle`;
/// otherwise the state is eventually periodic and reaches `cycle` after
/// exactly `transient` steps.
struct NodeClass {
  std::uint32_t cycle = 0;
  std::uint32_t transient = 0;

  bool periodic() const noexcept { return transient == 0; }
  friend bool operator==(const NodeClass&, const NodeClass&) = default;
};

struct OrbitAnalysis {
  int dim = 0;
  /// Sorted by smallest member state; ids equal positions.
  std::vector<Cycle> cycles;
  std::vector<NodeClass> classes;

  std::uint64_t state_count() const noexcept { return classes.size(); }
};

OrbitAnalysis analyze(const FunctionalGraph& graph);

struct FeaturePoint {
  Fraction alpha;
  Fraction beta;
  std::uint32_t mbpo_cycle_id = 0;
  std::uint64_t period = 0;
  std::uint64_t basin = 0;
};

/// Picks the cycle of maximum period, then maximum basin, then the one
/// holding the smallest state.
FeaturePoint feature_point(const OrbitAnalysis& analysis);

struct CycleEntry {
  std::uint64_t transient = 0;
  std::uint64_t period = 0;
  friend bool operator==(const CycleEntry&, const CycleEntry&) = default;
};

struct Trajectory {
  /// states[t] for t = 0..t_max.
  std::vector<BinaryState> states;
  /// First repeat within the horizon, if any.
  std::optional<CycleEntry> cycle;
};

Trajectory trajectory(const BinaryState& start, const StepFn& step, std::uint64_t t_max);

}  // namespace pbnn
