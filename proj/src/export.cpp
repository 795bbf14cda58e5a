#include "pbnn/export.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pbnn/errors.hpp"

namespace pbnn::io {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw FormatError("malformed number '" + std::string(text) + "'");
  }
  return v;
}

bool read_line(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void expect_header(std::istream& is, std::string_view expected) {
  std::string line;
  if (!read_line(is, line) || line != expected) {
    throw FormatError("expected header '" + std::string(expected) + "'");
  }
}

int dim_from_count(std::uint64_t count) {
  if (count < 8 || !std::has_single_bit(count)) {
    throw FormatError("point count " + std::to_string(count) + " is not 2^N with N >= 3");
  }
  return std::countr_zero(count);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ExportError("cannot open '" + path.string() + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw ExportError("failed while writing '" + path.string() + "'");
}

// SVG helpers

constexpr double kCanvas = 480.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void svg_open(std::ostream& os, double width, double height) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
     << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "svg") return Format::Svg;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::string_view format_extension(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
  }
  return "csv";
}

std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::Mbpo: return "mbpo";
    case PointClass::Bpo: return "bpo";
    case PointClass::Epp: return "epp";
  }
  return "epp";
}

PointClass parse_point_class(std::string_view text) {
  if (text == "mbpo") return PointClass::Mbpo;
  if (text == "bpo") return PointClass::Bpo;
  if (text == "epp") return PointClass::Epp;
  throw FormatError("unknown point class '" + std::string(text) + "'");
}

// ---------------------------------------------------------------- Cmap

CmapScatter make_cmap(const FunctionalGraph& graph, const OrbitAnalysis& analysis) {
  if (analysis.dim != graph.dim() || analysis.state_count() != graph.size()) {
    throw std::invalid_argument("analysis does not match graph");
  }
  const FeaturePoint fp = feature_point(analysis);
  CmapScatter out;
  out.n = graph.dim();
  out.mbpo_cycle_id = fp.mbpo_cycle_id;
  out.points.reserve(graph.size());
  for (std::uint64_t code = 0; code < graph.size(); ++code) {
    const NodeClass& nc = analysis.classes[code];
    PointClass cls = PointClass::Epp;
    if (nc.periodic()) cls = nc.cycle == fp.mbpo_cycle_id ? PointClass::Mbpo : PointClass::Bpo;
    out.points.push_back(CmapPoint{code + 1,
                                   std::uint64_t{graph.next(static_cast<std::uint32_t>(code))} + 1,
                                   cls, nc.cycle, nc.transient});
  }
  return out;
}

void write_cmap_csv(std::ostream& os, const CmapScatter& cmap) {
  os << "input_index,output_index,class,cycle_id,transient\n";
  for (const CmapPoint& p : cmap.points) {
    os << p.input_index << ',' << p.output_index << ',' << to_string(p.cls) << ',' << p.cycle_id
       << ',' << p.transient << '\n';
  }
}

CmapScatter read_cmap_csv(std::istream& is) {
  expect_header(is, "input_index,output_index,class,cycle_id,transient");
  CmapScatter out;
  std::string line;
  bool have_mbpo = false;
  while (read_line(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 5) throw FormatError("cmap row needs 5 fields: " + line);
    CmapPoint p{parse_number<std::uint64_t>(f[0]), parse_number<std::uint64_t>(f[1]),
                parse_point_class(f[2]), parse_number<std::uint32_t>(f[3]),
                parse_number<std::uint32_t>(f[4])};
    if (p.cls == PointClass::Mbpo && !have_mbpo) {
      out.mbpo_cycle_id = p.cycle_id;
      have_mbpo = true;
    }
    out.points.push_back(p);
  }
  out.n = dim_from_count(out.points.size());
  if (!have_mbpo) throw FormatError("cmap has no mbpo point");
  return out;
}

std::string cmap_json(const CmapScatter& cmap) {
  json j;
  j["n"] = cmap.n;
  j["mbpo_cycle_id"] = cmap.mbpo_cycle_id;
  json points = json::array();
  for (const CmapPoint& p : cmap.points) {
    points.push_back(json{{"input_index", p.input_index},
                          {"output_index", p.output_index},
                          {"class", to_string(p.cls)},
                          {"cycle_id", p.cycle_id},
                          {"transient", p.transient}});
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

CmapScatter parse_cmap_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    CmapScatter out;
    out.n = j.at("n").get<int>();
    out.mbpo_cycle_id = j.at("mbpo_cycle_id").get<std::uint32_t>();
    for (const auto& p : j.at("points")) {
      out.points.push_back(CmapPoint{
          p.at("input_index").get<std::uint64_t>(), p.at("output_index").get<std::uint64_t>(),
          parse_point_class(p.at("class").get<std::string>()), p.at("cycle_id").get<std::uint32_t>(),
          p.at("transient").get<std::uint32_t>()});
    }
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("cmap json: ") + e.what());
  }
}

void write_cmap_svg(std::ostream& os, const CmapScatter& cmap) {
  const double size = kCanvas + 2 * kMargin;
  const double count = static_cast<double>(cmap.points.size());
  auto px = [&](std::uint64_t idx) {
    return kMargin + (static_cast<double>(idx) - 0.5) / count * kCanvas;
  };
  auto py = [&](std::uint64_t idx) {
    return kMargin + kCanvas - (static_cast<double>(idx) - 0.5) / count * kCanvas;
  };
  svg_open(os, size, size);
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kCanvas
     << "\" height=\"" << kCanvas << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin + kCanvas << "\" x2=\""
     << kMargin + kCanvas << "\" y2=\"" << kMargin
     << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n"
     << "<text x=\"" << kMargin << "\" y=\"" << size - 10 << "\" font-size=\"12\">x^t (1.."
     << cmap.points.size() << ")</text>\n"
     << "<text x=\"8\" y=\"" << kMargin - 10 << "\" font-size=\"12\">x^(t+1)</text>\n";
  const double r = std::max(1.5, std::min(4.0, kCanvas / count / 2.0));
  for (const CmapPoint& p : cmap.points) {
    const char* color = p.cls == PointClass::Mbpo  ? "red"
                        : p.cls == PointClass::Bpo ? "blue"
                        : p.cycle_id == cmap.mbpo_cycle_id ? "green"
                                                           : "#999999";
    os << "<circle cx=\"" << fmt(px(p.input_index)) << "\" cy=\"" << fmt(py(p.output_index))
       << "\" r=\"" << fmt(r) << "\" fill=\"" << color << "\" class=\"" << to_string(p.cls)
       << "\"/>\n";
  }
  os << "</svg>\n";
}

void export_cmap(const OrbitAnalysis& analysis, const FunctionalGraph& graph, Format format,
                 const std::filesystem::path& path) {
  const CmapScatter cmap = make_cmap(graph, analysis);
  std::ofstream os = open_output(path);
  switch (format) {
    case Format::Csv: write_cmap_csv(os, cmap); break;
    case Format::Json: os << cmap_json(cmap); break;
    case Format::Svg: write_cmap_svg(os, cmap); break;
  }
  finish(os, path);
}

// ------------------------------------------------------- space-time raster

SpaceTimeRaster make_raster(const Trajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
  return SpaceTimeRaster{traj.states.front().dim(), traj.states};
}

void write_spacetime_csv(std::ostream& os, const SpaceTimeRaster& raster) {
  os << 't';
  for (int i = 1; i <= raster.n; ++i) os << ",x" << i;
  os << '\n';
  for (std::size_t t = 0; t < raster.rows.size(); ++t) {
    os << t;
    for (int s : raster.rows[t].spins()) os << ',' << s;
    os << '\n';
  }
}

SpaceTimeRaster read_spacetime_csv(std::istream& is) {
  std::string line;
  if (!read_line(is, line)) throw FormatError("empty space-time csv");
  const auto header = split(line);
  const int n = static_cast<int>(header.size()) - 1;
  if (header.front() != "t" || n < kMinDim) throw FormatError("bad space-time header");
  SpaceTimeRaster out{n, {}};
  while (read_line(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (static_cast<int>(f.size()) != n + 1) throw FormatError("ragged space-time row");
    if (parse_number<std::uint64_t>(f[0]) != out.rows.size()) {
      throw FormatError("space-time rows out of order");
    }
    std::vector<int> spins;
    for (std::size_t i = 1; i < f.size(); ++i) spins.push_back(parse_number<int>(f[i]));
    out.rows.push_back(BinaryState::from_spins(spins));
  }
  if (out.rows.empty()) throw FormatError("space-time csv has no rows");
  return out;
}

std::string spacetime_json(const SpaceTimeRaster& raster) {
  json j;
  j["n"] = raster.n;
  json rows = json::array();
  for (const BinaryState& s : raster.rows) rows.push_back(s.spins());
  j["rows"] = std::move(rows);
  return j.dump() + "\n";
}

SpaceTimeRaster parse_spacetime_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SpaceTimeRaster out{j.at("n").get<int>(), {}};
    for (const auto& row : j.at("rows")) {
      out.rows.push_back(BinaryState::from_spins(row.get<std::vector<int>>()));
      if (out.rows.back().dim() != out.n) throw FormatError("row width does not match n");
    }
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("space-time json: ") + e.what());
  }
}

void write_spacetime_svg(std::ostream& os, const SpaceTimeRaster& raster) {
  const double cell = 12.0;
  const double width = cell * raster.n;
  const double height = cell * static_cast<double>(raster.rows.size());
  svg_open(os, width + 2, height + 2);
  for (std::size_t t = 0; t < raster.rows.size(); ++t) {
    for (int i = 1; i <= raster.n; ++i) {
      const bool plus = raster.rows[t].spin(i) > 0;
      os << "<rect x=\"" << fmt(1 + cell * (i - 1)) << "\" y=\""
         << fmt(1 + cell * static_cast<double>(t)) << "\" width=\"" << cell << "\" height=\""
         << cell << "\" fill=\"" << (plus ? "black" : "white") << "\" stroke=\"#888888\"/>\n";
    }
  }
  os << "</svg>\n";
}

void export_spacetime(const Trajectory& traj, Format format, const std::filesystem::path& path) {
  const SpaceTimeRaster raster = make_raster(traj);
  std::ofstream os = open_output(path);
  switch (format) {
    case Format::Csv: write_spacetime_csv(os, raster); break;
    case Format::Json: os << spacetime_json(raster); break;
    case Format::Svg: write_spacetime_svg(os, raster); break;
  }
  finish(os, path);
}

// ----------------------------------------------------------- feature plane

FeaturePlane make_feature_plane(const SweepResult& result, ConnectionNumber cn) {
  const CnSummary* s = result.summary(cn);
  if (!s) throw std::invalid_argument("sweep does not cover CN" + std::to_string(cn.value()));
  const std::uint64_t den = std::uint64_t{1} << result.n;

  FeaturePlane plane;
  plane.n = result.n;
  plane.cn = cn;
  plane.sbnn_alpha = s->sbnn.alpha;
  plane.sbnn_beta = s->sbnn.beta;
  std::optional<FeatureKey> best;
  if (!s->best_rows.empty()) {
    const SweepRow& b = s->best_rows.front();
    plane.best_alpha = b.alpha;
    plane.best_beta = b.beta;
    best = FeatureKey{b.period, b.basin};
  }
  const FeatureKey sbnn_key{s->sbnn.period, s->sbnn.basin};
  for (const auto& [key, count] : s->points) {
    plane.records.push_back(FeatureRecord{Fraction{key.first, den}, Fraction{key.second, den},
                                          count, key == sbnn_key, best && key == *best});
  }
  return plane;
}

void write_feature_plane_csv(std::ostream& os, const FeaturePlane& plane) {
  os << "alpha,beta,multiplicity,sbnn,best\n";
  for (const FeatureRecord& r : plane.records) {
    os << r.alpha.to_string() << ',' << r.beta.to_string() << ',' << r.multiplicity << ','
       << (r.sbnn ? 1 : 0) << ',' << (r.best ? 1 : 0) << '\n';
  }
}

std::vector<FeatureRecord> read_feature_plane_csv(std::istream& is) {
  expect_header(is, "alpha,beta,multiplicity,sbnn,best");
  std::vector<FeatureRecord> out;
  std::string line;
  while (read_line(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 5) throw FormatError("feature row needs 5 fields: " + line);
    out.push_back(FeatureRecord{Fraction::parse(f[0]), Fraction::parse(f[1]),
                                parse_number<std::uint64_t>(f[2]), parse_number<int>(f[3]) != 0,
                                parse_number<int>(f[4]) != 0});
  }
  return out;
}

std::string feature_plane_json(const FeaturePlane& plane) {
  json j;
  j["n"] = plane.n;
  j["cn"] = plane.cn.value();
  j["sbnn"] = json{{"alpha", plane.sbnn_alpha.to_string()}, {"beta", plane.sbnn_beta.to_string()}};
  if (plane.best_alpha) {
    j["best"] = json{{"alpha", plane.best_alpha->to_string()},
                     {"beta", plane.best_beta->to_string()}};
  }
  json records = json::array();
  for (const FeatureRecord& r : plane.records) {
    records.push_back(json{{"alpha", r.alpha.to_string()},
                           {"beta", r.beta.to_string()},
                           {"multiplicity", r.multiplicity},
                           {"sbnn", r.sbnn},
                           {"best", r.best}});
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

void write_feature_plane_svg(std::ostream& os, const FeaturePlane& plane) {
  const double size = kCanvas + 2 * kMargin;
  auto px = [](const Fraction& a) { return kMargin + a.to_double() * kCanvas; };
  auto py = [](const Fraction& b) { return kMargin + kCanvas - b.to_double() * kCanvas; };
  const Fraction lo{1, std::uint64_t{1} << plane.n};
  const Fraction one{1, 1};

  svg_open(os, size, size);
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kCanvas
     << "\" height=\"" << kCanvas << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  auto segment = [&](const char* name, const Fraction& a0, const Fraction& b0,
                     const Fraction& a1, const Fraction& b1) {
    os << "<line class=\"" << name << "\" x1=\"" << fmt(px(a0)) << "\" y1=\"" << fmt(py(b0))
       << "\" x2=\"" << fmt(px(a1)) << "\" y2=\"" << fmt(py(b1))
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  };
  segment("S_d", lo, lo, one, one);
  segment("S_t", lo, one, one, one);
  segment("S_l", lo, lo, lo, one);
  os << "<text x=\"" << kMargin << "\" y=\"" << size - 10 << "\" font-size=\"12\">alpha</text>\n"
     << "<text x=\"8\" y=\"" << kMargin - 10 << "\" font-size=\"12\">beta</text>\n"
     << "<text x=\"" << size - 120 << "\" y=\"" << kMargin - 10 << "\" font-size=\"12\">CN"
     << plane.cn.value() << " (" << plane.records.size() << " points)</text>\n";

  for (const FeatureRecord& r : plane.records) {
    os << "<circle cx=\"" << fmt(px(r.alpha)) << "\" cy=\"" << fmt(py(r.beta))
       << "\" r=\"2.5\" fill=\"black\"/>\n";
  }
  const double sx = px(plane.sbnn_alpha);
  const double sy = py(plane.sbnn_beta);
  os << "<path class=\"sbnn\" d=\"M" << fmt(sx - 6) << ' ' << fmt(sy - 6) << " L" << fmt(sx + 6)
     << ' ' << fmt(sy + 6) << " M" << fmt(sx - 6) << ' ' << fmt(sy + 6) << " L" << fmt(sx + 6)
     << ' ' << fmt(sy - 6) << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
  if (plane.best_alpha) {
    os << "<circle class=\"best\" cx=\"" << fmt(px(*plane.best_alpha)) << "\" cy=\""
       << fmt(py(*plane.best_beta)) << "\" r=\"7\" fill=\"none\" stroke=\"red\" "
       << "stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
}

void export_feature_plane(const SweepResult& result, ConnectionNumber cn, Format format,
                          const std::filesystem::path& path) {
  const FeaturePlane plane = make_feature_plane(result, cn);
  std::ofstream os = open_output(path);
  switch (format) {
    case Format::Csv: write_feature_plane_csv(os, plane); break;
    case Format::Json: os << feature_plane_json(plane); break;
    case Format::Svg: write_feature_plane_svg(os, plane); break;
  }
  finish(os, path);
}

// ----------------------------------------------------------- sweep tables

void write_sweep_csv_header(std::ostream& os) { os << "cn,perm,alpha,beta,period,basin\n"; }

void write_sweep_csv_row(std::ostream& os, const SweepRow& row) {
  os << row.cn.value() << ',' << format_perm_id(row.sigma) << ',' << row.alpha.to_string() << ','
     << row.beta.to_string() << ',' << row.period << ',' << row.basin << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  write_sweep_csv_header(os);
  for (const SweepRow& row : rows) write_sweep_csv_row(os, row);
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  expect_header(is, "cn,perm,alpha,beta,period,basin");
  std::vector<SweepRow> out;
  std::string line;
  while (read_line(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 6) throw FormatError("sweep row needs 6 fields: " + line);
    const Fraction alpha = Fraction::parse(f[2]);
    if (!std::has_single_bit(alpha.den)) throw FormatError("alpha denominator is not 2^N");
    const int n = std::countr_zero(alpha.den);
    out.push_back(SweepRow{ConnectionNumber(parse_number<int>(f[0])), parse_perm_id(f[1], n),
                           alpha, Fraction::parse(f[3]), parse_number<std::uint64_t>(f[4]),
                           parse_number<std::uint64_t>(f[5])});
  }
  return out;
}

std::string sweep_summary_json(const SweepResult& result) {
  json j;
  const std::uint64_t den = std::uint64_t{1} << result.n;
  j["n"] = result.n;
  std::uint64_t total = 0;
  json per_cn = json::array();
  for (const CnSummary& s : result.summaries) {
    total += s.row_count;
    json best_perms = json::array();
    for (const SweepRow& row : s.best_rows) best_perms.push_back(format_perm_id(row.sigma));
    json entry{{"cn", s.cn.value()},
               {"rn", cn_to_rule_number(s.cn).value()},
               {"rows", s.row_count},
               {"distinct_points", s.points.size()},
               {"sbnn", {{"alpha", s.sbnn.alpha.to_string()}, {"beta", s.sbnn.beta.to_string()}}}};
    if (!s.best_rows.empty()) {
      const SweepRow& b = s.best_rows.front();
      entry["best"] = {{"alpha", Fraction{b.period, den}.to_string()},
                       {"beta", Fraction{b.basin, den}.to_string()},
                       {"perms", std::move(best_perms)}};
    }
    per_cn.push_back(std::move(entry));
  }
  j["rows"] = total;
  j["cns"] = std::move(per_cn);
  return j.dump(2) + "\n";
}

}  // namespace pbnn::io
