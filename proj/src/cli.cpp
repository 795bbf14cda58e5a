#include "pbnn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pbnn/errors.hpp"
#include "pbnn/export.hpp"
#include "pbnn/hdl.hpp"
#include "pbnn/model.hpp"
#include "pbnn/orbit.hpp"
#include "pbnn/sweep.hpp"

namespace pbnn::cli {

namespace {

using Kind = ConfigError::Kind;

/// Largest n for which `emit` checks every state; above it a fixed sample.
constexpr int kExhaustiveEmitCheckDim = 20;
constexpr std::size_t kSampledEmitChecks = 1U << 16;

struct Resolved {
  int n = 0;
  Model model = Model::Sbnn;
  std::optional<ConnectionNumber> cn;
  std::optional<RuleNumber> rn;
  std::optional<Permutation> sigma;
  BinaryState init;
  std::vector<io::Format> formats;
};

std::string_view model_name(Model m) {
  switch (m) {
    case Model::Sbnn: return "sbnn";
    case Model::Pbnn: return "pbnn";
    case Model::Eca: return "eca";
  }
  return "sbnn";
}

Model parse_model(std::string_view text) {
  if (text == "sbnn") return Model::Sbnn;
  if (text == "pbnn") return Model::Pbnn;
  if (text == "eca") return Model::Eca;
  throw ConfigError(Kind::BadConfigFile, "unknown model '" + std::string(text) + "'");
}

void require_n(int n, int lo, int hi, std::string_view what) {
  if (n < lo || n > hi) {
    throw ConfigError(Kind::Dimension, std::string(what) + " needs " + std::to_string(lo) +
                                           " <= n <= " + std::to_string(hi) + ", got " +
                                           std::to_string(n));
  }
}

Resolved resolve(const RunConfig& c, Command command) {
  Resolved r;
  r.n = c.n;
  r.model = c.model;

  switch (command) {
    case Command::Simulate: require_n(c.n, kMinDim, kMaxTrajectoryDim, "simulate"); break;
    case Command::Analyze: require_n(c.n, kMinDim, kMaxExhaustiveDim, "analyze"); break;
    case Command::Emit: require_n(c.n, kMinDim, kMaxTrajectoryDim, "emit"); break;
    case Command::Sweep:
      if (c.model == Model::Pbnn && (c.n < kMinDim || c.n > kMaxSweepDim)) {
        const std::uint64_t rows = c.n < kMinDim ? 0 : pbnn_sweep_rows(c.n, c.cn.has_value());
        throw ConfigError(Kind::InfeasibleSweep,
                          "sweep at n=" + std::to_string(c.n) + " needs " + std::to_string(rows) +
                              " rows; supported n is " + std::to_string(kMinDim) + ".." +
                              std::to_string(kMaxSweepDim));
      }
      require_n(c.n, kMinDim, kMaxExhaustiveDim, "sweep");
      break;
  }

  if (c.cn && (*c.cn < 0 || *c.cn > 7)) {
    throw ConfigError(Kind::ConnectionOutOfRange, "--cn must be in 0..7");
  }
  if (c.rn && (*c.rn < 0 || *c.rn > 255)) {
    throw ConfigError(Kind::RuleOutOfRange, "--rn must be in 0..255");
  }

  const bool needs_params = command != Command::Sweep;
  if (c.model == Model::Eca) {
    if (command == Command::Sweep) {
      throw ConfigError(Kind::ConflictingRule, "sweep covers sbnn/pbnn connection numbers, not eca");
    }
    if (c.cn) throw ConfigError(Kind::ConflictingRule, "--cn is not used with --model eca");
    if (!c.rn) throw ConfigError(Kind::MissingRule, "--model eca requires --rn");
    r.rn = RuleNumber(*c.rn);
  } else {
    if (c.rn) {
      throw ConfigError(Kind::ConflictingRule,
                        "--rn is only for --model eca; use --cn for sbnn/pbnn");
    }
    if (needs_params && !c.cn) {
      throw ConfigError(Kind::MissingConnection,
                        "--model " + std::string(model_name(c.model)) + " requires --cn");
    }
    if (c.cn) {
      r.cn = ConnectionNumber(*c.cn);
      r.rn = cn_to_rule_number(*r.cn);
    }
  }

  if (c.perm) {
    if (c.model != Model::Pbnn) {
      throw ConfigError(Kind::PermutationWithoutPbnn, "--perm is only valid with --model pbnn");
    }
    if (command == Command::Sweep) {
      throw ConfigError(Kind::BadPermutation, "sweep enumerates every permutation; drop --perm");
    }
    try {
      r.sigma = parse_perm_id(*c.perm, c.n);
    } catch (const PermutationParseError& e) {
      throw ConfigError(Kind::BadPermutation, e.what());
    }
  } else if (c.model == Model::Pbnn && needs_params) {
    throw ConfigError(Kind::MissingPermutation, "--model pbnn requires --perm");
  }

  if (c.init && c.init_index) {
    throw ConfigError(Kind::ConflictingInitialState, "give only one of --init and --init-index");
  }
  try {
    if (c.init) {
      r.init = BinaryState::parse(*c.init);
      if (r.init.dim() != c.n) {
        throw ConfigError(Kind::BadInitialState, "--init has " + std::to_string(r.init.dim()) +
                                                     " cells, expected " + std::to_string(c.n));
      }
    } else if (c.init_index) {
      r.init = BinaryState::from_index(*c.init_index, c.n);
    } else {
      r.init = BinaryState(1, c.n);  // x_1 = +1, rest -1
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(Kind::BadInitialState, e.what());
  }

  if (c.format == "all") {
    r.formats = {io::Format::Csv, io::Format::Json, io::Format::Svg};
  } else {
    try {
      r.formats = {io::parse_format(c.format)};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(Kind::BadFormat, e.what());
    }
  }

  if (c.jobs < 1) throw ConfigError(Kind::BadJobs, "--jobs must be at least 1");
  if (c.name.empty() || !std::all_of(c.name.begin(), c.name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
      })) {
    throw ConfigError(Kind::BadName, "--name must be non-empty [A-Za-z0-9_-]");
  }
  return r;
}

StepFn make_step(const Resolved& r) {
  switch (r.model) {
    case Model::Eca: return [rn = *r.rn](const BinaryState& s) { return eca_step(s, rn); };
    case Model::Sbnn: return [cn = *r.cn](const BinaryState& s) { return sbnn_step(s, cn); };
    case Model::Pbnn:
      return [p = PbnnParams{*r.cn, *r.sigma}](const BinaryState& s) { return pbnn_step(s, p); };
  }
  return {};
}

std::string describe(const Resolved& r) {
  std::ostringstream os;
  os << "model=" << model_name(r.model) << " n=" << r.n;
  if (r.cn) os << " cn=" << r.cn->value();
  if (r.rn) os << " rn=" << r.rn->value();
  if (r.sigma) os << " perm=" << format_perm_id(*r.sigma);
  return os.str();
}

void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ExportError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::filesystem::path out_file(const RunConfig& c, const std::string& stem, io::Format f) {
  return c.out / (stem + "." + std::string(io::format_extension(f)));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ExportError("cannot open '" + path.string() + "' for writing");
  os << text;
  os.flush();
  if (!os) throw ExportError("failed while writing '" + path.string() + "'");
}

}  // namespace

void validate(const RunConfig& config, Command command) { resolve(config, command); }

void load_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream is(path);
  if (!is) throw ConfigError(Kind::BadConfigFile, "cannot read config file '" + path.string() + "'");

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(Kind::BadConfigFile,
                        path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    try {
      if (key == "n") config.n = std::stoi(value);
      else if (key == "model") config.model = parse_model(value);
      else if (key == "cn") config.cn = std::stoi(value);
      else if (key == "rn") config.rn = std::stoi(value);
      else if (key == "perm") config.perm = value;
      else if (key == "init") config.init = value;
      else if (key == "init-index") config.init_index = std::stoull(value);
      else if (key == "steps") config.steps = std::stoull(value);
      else if (key == "out") config.out = value;
      else if (key == "format") config.format = value;
      else if (key == "jobs") config.jobs = static_cast<unsigned>(std::stoul(value));
      else if (key == "name") config.name = value;
      else throw ConfigError(Kind::BadConfigFile, "unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(Kind::BadConfigFile, path.string() + ":" + std::to_string(lineno) +
                                                 ": bad value for '" + key + "'");
    }
  }
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const Resolved r = resolve(config, Command::Simulate);
  const StepFn step = make_step(r);

  Trajectory traj;
  if (config.steps == 0) {
    traj.states.push_back(r.init);
  } else {
    traj = trajectory(r.init, step, config.steps);
  }

  ensure_out_dir(config.out);
  for (io::Format f : r.formats) io::export_spacetime(traj, f, out_file(config, "spacetime", f));

  out << describe(r) << " init=" << r.init.to_pm_string() << " steps=" << config.steps << '\n';
  if (traj.cycle) {
    out << "transient=" << traj.cycle->transient << " period=" << traj.cycle->period << '\n';
  } else {
    out << "no repeat within " << config.steps << " steps\n";
  }
  return 0;
}

int cmd_analyze(const RunConfig& config, std::ostream& out) {
  const Resolved r = resolve(config, Command::Analyze);
  const FunctionalGraph graph = build_graph(make_step(r), r.n);
  const OrbitAnalysis analysis = analyze(graph);
  const FeaturePoint fp = feature_point(analysis);

  ensure_out_dir(config.out);
  for (io::Format f : r.formats) io::export_cmap(analysis, graph, f, out_file(config, "cmap", f));

  std::uint64_t periodic = 0;
  for (const Cycle& c : analysis.cycles) periodic += c.period();
  out << describe(r) << '\n'
      << "alpha=" << fp.alpha.to_string() << " beta=" << fp.beta.to_string()
      << " period=" << fp.period << " basin=" << fp.basin << " mbpo=" << fp.mbpo_cycle_id << '\n'
      << "cycles=" << analysis.cycles.size() << " bpp=" << periodic
      << " epp=" << analysis.state_count() - periodic << '\n';
  for (const Cycle& c : analysis.cycles) {
    out << "cycle " << c.id << " period=" << c.period() << " basin=" << c.basin_size
        << " first=" << std::uint64_t{c.states.front()} + 1 << '\n';
  }
  return 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const Resolved r = resolve(config, Command::Sweep);
  ensure_out_dir(config.out);

  SweepResult result;
  const auto csv_path = config.out / "sweep.csv";
  {
    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw ExportError("cannot open '" + csv_path.string() + "' for writing");
    io::write_sweep_csv_header(csv);
    if (r.model == Model::Pbnn) {
      SweepOptions options;
      options.cn = r.cn;
      options.jobs = config.jobs;
      options.keep_rows = false;
      options.on_row = [&csv](const SweepRow& row) { io::write_sweep_csv_row(csv, row); };
      result = sweep_pbnn(r.n, options);
    } else {
      result = sweep_sbnn(r.n);
      if (r.cn) {
        std::erase_if(result.rows, [&](const SweepRow& row) { return row.cn != *r.cn; });
        std::erase_if(result.summaries, [&](const CnSummary& s) { return s.cn != *r.cn; });
      }
      for (const SweepRow& row : result.rows) io::write_sweep_csv_row(csv, row);
    }
    csv.flush();
    if (!csv) throw ExportError("failed while writing '" + csv_path.string() + "'");
  }
  write_text(config.out / "summary.json", io::sweep_summary_json(result));

  for (const CnSummary& s : result.summaries) {
    const std::string stem = "feature_plane_cn" + std::to_string(s.cn.value());
    for (io::Format f : r.formats) io::export_feature_plane(result, s.cn, f, out_file(config, stem, f));
  }

  const std::uint64_t den = std::uint64_t{1} << r.n;
  out << "sweep model=" << model_name(r.model) << " n=" << r.n << '\n';
  for (const CnSummary& s : result.summaries) {
    out << "CN" << s.cn.value() << " rows=" << s.row_count << " distinct=" << s.points.size()
        << " sbnn=" << s.sbnn.alpha.to_string() << ',' << s.sbnn.beta.to_string();
    if (!s.best_rows.empty()) {
      const SweepRow& b = s.best_rows.front();
      out << " best=" << Fraction{b.period, den}.to_string() << ','
          << Fraction{b.basin, den}.to_string() << " perms=";
      for (std::size_t i = 0; i < s.best_rows.size(); ++i) {
        out << (i ? "," : "") << format_perm_id(s.best_rows[i].sigma);
      }
    }
    out << '\n';
  }
  return 0;
}

int cmd_emit(const RunConfig& config, std::ostream& out) {
  const Resolved r = resolve(config, Command::Emit);
  const hdl::HdlArtifact artifact = hdl::make_artifact(*r.rn, r.n, r.sigma);
  const StepFn reference = make_step(r);

  auto check = [&](const BinaryState& s) {
    if (hdl::eval_emitted_logic(artifact, s) != reference(s)) {
      throw std::logic_error("emitted logic disagrees with the model at state " +
                             s.to_pm_string() + "; refusing to write HDL");
    }
  };
  std::uint64_t checked = 0;
  if (r.n <= kExhaustiveEmitCheckDim) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << r.n); ++code, ++checked) {
      check(BinaryState(code, r.n));
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    for (; checked < kSampledEmitChecks; ++checked) check(BinaryState(rng() & state_mask(r.n), r.n));
  }

  ensure_out_dir(config.out);
  write_text(config.out / (config.name + "_sbnn.sv"), artifact.sbnn_source);
  if (artifact.wiring) write_text(config.out / (config.name + "_pbnn.sv"), artifact.pbnn_source);
  write_text(config.out / (config.name + ".json"), hdl::sidecar_json(artifact));

  out << describe(r) << '\n'
      << "equivalence check passed (" << checked << " states)\n";
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string model = "sbnn";

  // The config file seeds the defaults; flags parsed afterwards override it.
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::optional<std::string> path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path) {
      try {
        load_config_file(*path, config);
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
      }
      model = std::string(model_name(config.model));
    }
  }

  CLI::App app{"Permutation binary neural network and elementary CA analysis"};
  app.name("pbnn");
  app.require_subcommand(1);
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Key-value config file (flags override it)");
    sub->add_option("-n,--n", config.n, "Number of cells N");
    sub->add_option("--model", model, "sbnn | pbnn | eca")
        ->check(CLI::IsMember({"sbnn", "pbnn", "eca"}));
    sub->add_option("--cn", config.cn, "Connection number 0..7 (sbnn/pbnn)");
    sub->add_option("--rn", config.rn, "Rule number 0..255 (eca)");
    sub->add_option("--out", config.out, "Output directory");
    sub->add_option("--format", config.format, "csv | json | svg | all");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Iterate one trajectory and export a raster");
  add_common(simulate);
  simulate->add_option("--perm", config.perm, "Permutation identifier, e.g. P231465");
  simulate->add_option("--init", config.init, "Initial state as +/- or 0/1 string, x_1 first");
  simulate->add_option("--init-index", config.init_index, "Initial state as canonical index");
  simulate->add_option("--steps", config.steps, "Number of steps");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Exhaustive orbit analysis and Cmap export");
  add_common(analyze_cmd);
  analyze_cmd->add_option("--perm", config.perm, "Permutation identifier");

  CLI::App* sweep = app.add_subcommand("sweep", "Feature points over the whole parameter space");
  add_common(sweep);
  sweep->add_option("-j,--jobs", config.jobs, "Worker threads");

  CLI::App* emit = app.add_subcommand("emit", "Emit SystemVerilog for the network");
  add_common(emit);
  emit->add_option("--perm", config.perm, "Permutation identifier");
  emit->add_option("--name", config.name, "Output file stem");

  std::vector<const char*> argv{"pbnn"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    config.model = parse_model(model);
    if (simulate->parsed()) return cmd_simulate(config, out);
    if (analyze_cmd->parsed()) return cmd_analyze(config, out);
    if (sweep->parsed()) return cmd_sweep(config, out);
    if (emit->parsed()) return cmd_emit(config, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace pbnn::cli
