#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pbnn/model.hpp"
#include "pbnn/permutation.hpp"
#include "pbnn/state.hpp"

namespace pbnn::hdl {

// Netlist the SystemVerilog text is printed from. The evaluator walks the
// same structure, so checking it checks what was printed.

struct Literal {
  int cell = 0;  // 1-based
  bool negated = false;
};

/// rule_j[gate] = RN[gate] & (l0 & l1 & l2) over (left, center, right).
struct Minterm {
  int gate = 0;
  bool enabled = false;
  std::array<Literal, 3> literals;
};

struct CellLogic {
  int cell = 0;
  int left = 0;
  int right = 0;
  std::array<Minterm, 8> minterms;
};

struct SbnnNetlist {
  RuleNumber rn;
  int n = 0;
  std::vector<CellLogic> cells;
};

struct HdlMetadata {
  RuleNumber rn;
  std::optional<std::string> perm_id;
  int n = 0;
  std::string clock_note;
};

struct HdlArtifact {
  SbnnNetlist sbnn;
  /// Wiring table y[k] = sigma(k); absent for a bare SBNN/ECA.
  std::optional<Permutation> wiring;
  std::string sbnn_source;
  std::string pbnn_source;  // empty when there is no wiring
  HdlMetadata metadata;
};

inline constexpr const char* kClockNote =
    "clk is expected from a divider (100 MHz board clock divided to 10 MHz); "
    "the divider and pin constraints are not generated";

SbnnNetlist build_sbnn_netlist(RuleNumber rn, int n);

std::string emit_sbnn(RuleNumber rn, int n);
std::string emit_pbnn(RuleNumber rn, const Permutation& sigma, int n);

HdlArtifact make_artifact(RuleNumber rn, int n, std::optional<Permutation> sigma = std::nullopt);

/// Combinational next state of the emitted design (SBNN then wiring).
BinaryState eval_emitted_logic(const HdlArtifact& artifact, const BinaryState& state);

/// JSON sidecar describing the emitted pair.
std::string sidecar_json(const HdlArtifact& artifact);

/// Cycle-level model of the emitted PBNN wrapper: load has priority over
/// rst, and otherwise each clock edge applies the wired SBNN output.
class RegisterModel {
 public:
  explicit RegisterModel(const HdlArtifact& artifact);

  void clock(bool load, bool rst, const BinaryState& input);
  const BinaryState& state() const noexcept { return x_; }

 private:
  const HdlArtifact* artifact_;
  BinaryState x_;
};

}  // namespace pbnn::hdl
