#include "pbnn/hdl.hpp"

#include <bitset>
#include "json.hpp"
#include <sstream>

#include "pbnn/errors.hpp"

namespace pbnn::hdl {

namespace {

std::string literal_text(const Literal& l) {
  return (l.negated ? "~x[" : "x[") + std::to_string(l.cell) + "]";
}

std::string print_sbnn(const SbnnNetlist& net) {
  const int rn = net.rn.value();
  std::ostringstream os;
  os << "// SBNN next-state logic: elementary rule " << rn << " on a ring of " << net.n
     << " cells.\n"
     << "// Polarity: 1 is +1, 0 is -1. rule_j[k] is the minterm for\n"
     << "// k = {x[left], x[j], x[right]} gated by RN[k]. Ring neighbours are wired\n"
     << "// explicitly, and each cell owns its rule_j wires instead of sharing\n"
     << "// rule0..rule7 across a generate loop.\n"
     << "module SBNN (\n"
     << "  input  wire [1:" << net.n << "] x,\n"
     << "  output wire [1:" << net.n << "] x_next\n"
     << ");\n"
     << "  localparam int N = " << net.n << ";\n"
     << "  localparam logic [7:0] RN = 8'd" << rn << ";  // Rule Number (8'b"
     << std::bitset<8>(static_cast<unsigned long>(rn)).to_string() << ")\n";

  for (const CellLogic& cell : net.cells) {
    os << "\n  // cell " << cell.cell << ": left x[" << cell.left << "], right x[" << cell.right
       << "]\n"
       << "  wire [7:0] rule_" << cell.cell << ";\n";
    for (const Minterm& m : cell.minterms) {
      os << "  assign rule_" << cell.cell << "[" << m.gate << "] = RN[" << m.gate << "] & ("
         << literal_text(m.literals[0]) << " & " << literal_text(m.literals[1]) << " & "
         << literal_text(m.literals[2]) << ");\n";
    }
    os << "  assign x_next[" << cell.cell << "] = |rule_" << cell.cell << ";\n";
  }
  os << "endmodule\n";
  return os.str();
}

std::string print_pbnn(const SbnnNetlist& net, const Permutation& wiring) {
  const int n = net.n;
  std::ostringstream os;
  os << "// PBNN wrapper: registers x and routes SBNN output y[k] to x[k] each clock.\n"
     << "// Permutation identifier " << format_perm_id(wiring) << ", rule " << net.rn.value()
     << ".\n"
     << "// load captures the initial condition, rst clears to all -1 (0).\n"
     << "// Clock: " << kClockNote << ".\n"
     << "module PBNN (\n"
     << "  input  wire       clk,\n"
     << "  input  wire       load,\n"
     << "  input  wire       rst,\n"
     << "  input  wire [1:" << n << "] i,\n"
     << "  output reg  [1:" << n << "] x\n"
     << ");\n"
     << "  localparam int N = " << n << ";\n"
     << "  localparam int Y [1:N] = '{";
  for (int k = 1; k <= n; ++k) os << (k > 1 ? ", " : "") << wiring(k);
  os << "};  // Permutation identifier " << format_perm_id(wiring) << "\n"
     << "  wire [1:N] x_next;\n"
     << "\n"
     << "  always_ff @(posedge clk) begin\n"
     << "    if (load) begin\n"
     << "      for (int k = 1; k <= N; k++) x[k] <= i[k];  // Initial condition\n"
     << "    end else if (rst) begin\n"
     << "      for (int k = 1; k <= N; k++) x[k] <= 1'b0;\n"
     << "    end else begin\n"
     << "      for (int k = 1; k <= N; k++) x[k] <= x_next[Y[k]];  // Permutation\n"
     << "    end\n"
     << "  end\n"
     << "\n"
     << "  SBNN u_sbnn (.x(x), .x_next(x_next));\n"
     << "endmodule\n";
  return os.str();
}

bool eval_cell(const CellLogic& cell, std::uint64_t bits) {
  for (const Minterm& m : cell.minterms) {
    if (!m.enabled) continue;
    bool term = true;
    for (const Literal& l : m.literals) {
      const bool v = (bits >> (l.cell - 1)) & 1U;
      term = term && (l.negated ? !v : v);
    }
    if (term) return true;
  }
  return false;
}

}  // namespace

SbnnNetlist build_sbnn_netlist(RuleNumber rn, int n) {
  require_trajectory_dim(n);
  SbnnNetlist net{rn, n, {}};
  net.cells.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    CellLogic cell;
    cell.cell = j;
    cell.left = j == 1 ? n : j - 1;
    cell.right = j == n ? 1 : j + 1;
    for (int k = 0; k < 8; ++k) {
      cell.minterms[k] = Minterm{k,
                                 rn.output(k),
                                 {Literal{cell.left, (k & 4) == 0}, Literal{j, (k & 2) == 0},
                                  Literal{cell.right, (k & 1) == 0}}};
    }
    net.cells.push_back(cell);
  }
  return net;
}

std::string emit_sbnn(RuleNumber rn, int n) { return print_sbnn(build_sbnn_netlist(rn, n)); }

std::string emit_pbnn(RuleNumber rn, const Permutation& sigma, int n) {
  if (sigma.size() != n) throw DimensionError("permutation size does not match n");
  return print_pbnn(build_sbnn_netlist(rn, n), sigma);
}

HdlArtifact make_artifact(RuleNumber rn, int n, std::optional<Permutation> sigma) {
  if (sigma && sigma->size() != n) throw DimensionError("permutation size does not match n");
  HdlArtifact a;
  a.sbnn = build_sbnn_netlist(rn, n);
  a.sbnn_source = print_sbnn(a.sbnn);
  if (sigma) a.pbnn_source = print_pbnn(a.sbnn, *sigma);
  a.metadata = HdlMetadata{rn, sigma ? std::optional(format_perm_id(*sigma)) : std::nullopt, n,
                           kClockNote};
  a.wiring = std::move(sigma);
  return a;
}

BinaryState eval_emitted_logic(const HdlArtifact& artifact, const BinaryState& state) {
  const SbnnNetlist& net = artifact.sbnn;
  if (state.dim() != net.n) throw DimensionError("state dimension does not match artifact");
  std::uint64_t hidden = 0;
  for (const CellLogic& cell : net.cells) {
    if (eval_cell(cell, state.bits())) hidden |= std::uint64_t{1} << (cell.cell - 1);
  }
  if (!artifact.wiring) return BinaryState(hidden, net.n);

  std::uint64_t out = 0;
  for (int k = 1; k <= net.n; ++k) {
    out |= ((hidden >> ((*artifact.wiring)(k) - 1)) & 1U) << (k - 1);
  }
  return BinaryState(out, net.n);
}

std::string sidecar_json(const HdlArtifact& artifact) {
  nlohmann::ordered_json j;
  j["rn"] = artifact.metadata.rn.value();
  j["rn_binary"] =
      std::bitset<8>(static_cast<unsigned long>(artifact.metadata.rn.value())).to_string();
  j["perm"] = artifact.metadata.perm_id ? nlohmann::ordered_json(*artifact.metadata.perm_id)
                                        : nlohmann::ordered_json(nullptr);
  j["n"] = artifact.metadata.n;
  j["modules"] = artifact.wiring ? nlohmann::ordered_json::array({"SBNN", "PBNN"})
                                 : nlohmann::ordered_json::array({"SBNN"});
  j["polarity"] = "1=+1,0=-1";
  j["clock_note"] = artifact.metadata.clock_note;
  return j.dump(2) + "\n";
}

RegisterModel::RegisterModel(const HdlArtifact& artifact)
    : artifact_(&artifact), x_(BinaryState::all_minus(artifact.sbnn.n)) {}

void RegisterModel::clock(bool load, bool rst, const BinaryState& input) {
  if (load) {
    if (input.dim() != x_.dim()) throw DimensionError("load input has the wrong width");
    x_ = input;
  } else if (rst) {
    x_ = BinaryState::all_minus(x_.dim());
  } else {
    x_ = eval_emitted_logic(*artifact_, x_);
  }
}

}  // namespace pbnn::hdl
