#include "pbnn/orbit.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "pbnn/errors.hpp"

namespace pbnn {

FunctionalGraph::FunctionalGraph(int dim, std::vector<std::uint32_t> successor)
    : dim_(dim), successor_(std::move(successor)) {
  const std::uint64_t count = state_count(dim);
  if (successor_.size() != count) {
    throw std::invalid_argument("successor table has " + std::to_string(successor_.size()) +
                                " entries, expected " + std::to_string(count));
  }
  for (std::uint32_t s : successor_) {
    if (s >= count) throw std::invalid_argument("successor entry out of range");
  }
}

FunctionalGraph build_graph(const StepFn& step, int n) {
  const std::uint64_t count = state_count(n);
  std::vector<std::uint32_t> table(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    const BinaryState next = step(BinaryState(code, n));
    if (next.dim() != n) throw DimensionError("step changed the state dimension");
    table[code] = static_cast<std::uint32_t>(next.bits());
  }
  return FunctionalGraph(n, std::move(table));
}

FunctionalGraph compose_graphs(const FunctionalGraph& second, const FunctionalGraph& first) {
  if (second.dim() != first.dim()) throw DimensionError("graph dimensions differ");
  std::vector<std::uint32_t> table(first.size());
  for (std::uint64_t code = 0; code < first.size(); ++code) {
    table[code] = second.next(first.next(static_cast<std::uint32_t>(code)));
  }
  return FunctionalGraph(first.dim(), std::move(table));
}

OrbitAnalysis analyze(const FunctionalGraph& graph) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  enum : std::uint8_t { kFresh, kOnPath, kDone };

  const std::uint64_t count = graph.size();
  std::vector<std::uint8_t> mark(count, kFresh);
  std::vector<NodeClass> classes(count, NodeClass{kUnset, 0});
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> path;

  for (std::uint64_t origin = 0; origin < count; ++origin) {
    if (mark[origin] != kFresh) continue;

    path.clear();
    auto u = static_cast<std::uint32_t>(origin);
    while (mark[u] == kFresh) {
      mark[u] = kOnPath;
      path.push_back(u);
      u = graph.next(u);
    }

    if (mark[u] == kOnPath) {
      // The walk closed on itself: the tail of `path` from u is a new cycle.
      std::vector<std::uint32_t> members;
      std::uint32_t v = u;
      do {
        members.push_back(v);
        v = graph.next(v);
      } while (v != u);
      const auto id = static_cast<std::uint32_t>(found.size());
      for (std::uint32_t m : members) {
        classes[m] = NodeClass{id, 0};
        mark[m] = kDone;
      }
      path.resize(path.size() - members.size());
      found.push_back(std::move(members));
    }

    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const NodeClass& after = classes[graph.next(*it)];
      classes[*it] = NodeClass{after.cycle, after.transient + 1};
      mark[*it] = kDone;
    }
  }

  // Canonical order: rotate each cycle to start at its smallest state, then
  // sort cycles by that state.
  for (auto& members : found) {
    std::rotate(members.begin(), std::min_element(members.begin(), members.end()),
                members.end());
  }
  std::vector<std::uint32_t> order(found.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return found[a].front() < found[b].front(); });
  std::vector<std::uint32_t> relabel(found.size());
  for (std::uint32_t pos = 0; pos < order.size(); ++pos) relabel[order[pos]] = pos;

  OrbitAnalysis result;
  result.dim = graph.dim();
  result.cycles.resize(found.size());
  for (std::uint32_t old = 0; old < found.size(); ++old) {
    Cycle& c = result.cycles[relabel[old]];
    c.id = relabel[old];
    c.states = std::move(found[old]);
  }
  for (NodeClass& nc : classes) {
    nc.cycle = relabel[nc.cycle];
    ++result.cycles[nc.cycle].basin_size;
  }
  result.classes = std::move(classes);
  return result;
}

FeaturePoint feature_point(const OrbitAnalysis& analysis) {
  if (analysis.cycles.empty()) throw std::invalid_argument("analysis has no cycles");
  const Cycle* best = &analysis.cycles.front();
  for (const Cycle& c : analysis.cycles) {
    // cycles are already ordered by smallest state, so strict comparison
    // keeps the earliest among full ties
    if (c.period() > best->period() ||
        (c.period() == best->period() && c.basin_size > best->basin_size)) {
      best = &c;
    }
  }
  const std::uint64_t total = analysis.state_count();
  return FeaturePoint{Fraction{best->period(), total}, Fraction{best->basin_size, total}, best->id,
                      best->period(), best->basin_size};
}

Trajectory trajectory(const BinaryState& start, const StepFn& step, std::uint64_t t_max) {
  if (t_max < 1) throw std::invalid_argument("trajectory horizon must be at least 1");
  Trajectory out;
  out.states.reserve(t_max + 1);
  std::unordered_map<std::uint64_t, std::uint64_t> first_seen;

  BinaryState s = start;
  for (std::uint64_t t = 0;; ++t) {
    out.states.push_back(s);
    if (!out.cycle) {
      auto [it, inserted] = first_seen.emplace(s.bits(), t);
      if (!inserted) {
        out.cycle = CycleEntry{it->second, t - it->second};
        first_seen.clear();
      }
    }
    if (t == t_max) break;
    s = step(s);
  }
  return out;
}

}  // namespace pbnn
