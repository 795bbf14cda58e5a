#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbnn/orbit.hpp"
#include "pbnn/sweep.hpp"

namespace pbnn::io {

enum class Format { Csv, Json, Svg };

Format parse_format(std::string_view text);
std::string_view format_extension(Format f);

// ---------------------------------------------------------------- Cmap

enum class PointClass { Mbpo, Bpo, Epp };

std::string_view to_string(PointClass c);
PointClass parse_point_class(std::string_view text);

struct CmapPoint {
  std::uint64_t input_index = 0;   // 1..2^N
  std::uint64_t output_index = 0;  // 1..2^N
  PointClass cls = PointClass::Epp;
  std::uint32_t cycle_id = 0;
  std::uint32_t transient = 0;

  friend bool operator==(const CmapPoint&, const CmapPoint&) = default;
};

struct CmapScatter {
  int n = 0;
  std::uint32_t mbpo_cycle_id = 0;
  std::vector<CmapPoint> points;

  friend bool operator==(const CmapScatter&, const CmapScatter&) = default;
};

/// Throws std::invalid_argument if the analysis does not belong to the graph.
CmapScatter make_cmap(const FunctionalGraph& graph, const OrbitAnalysis& analysis);

void write_cmap_csv(std::ostream& os, const CmapScatter& cmap);
CmapScatter read_cmap_csv(std::istream& is);
std::string cmap_json(const CmapScatter& cmap);
CmapScatter parse_cmap_json(std::string_view text);
void write_cmap_svg(std::ostream& os, const CmapScatter& cmap);

void export_cmap(const OrbitAnalysis& analysis, const FunctionalGraph& graph, Format format,
                 const std::filesystem::path& path);

// ------------------------------------------------------- space-time raster

struct SpaceTimeRaster {
  int n = 0;
  std::vector<BinaryState> rows;  // t = 0..T

  friend bool operator==(const SpaceTimeRaster&, const SpaceTimeRaster&) = default;
};

SpaceTimeRaster make_raster(const Trajectory& traj);

void write_spacetime_csv(std::ostream& os, const SpaceTimeRaster& raster);
SpaceTimeRaster read_spacetime_csv(std::istream& is);
std::string spacetime_json(const SpaceTimeRaster& raster);
SpaceTimeRaster parse_spacetime_json(std::string_view text);
/// +1 cells black, -1 cells white, time running downwards.
void write_spacetime_svg(std::ostream& os, const SpaceTimeRaster& raster);

void export_spacetime(const Trajectory& traj, Format format, const std::filesystem::path& path);

// ----------------------------------------------------------- feature plane

struct FeatureRecord {
  Fraction alpha;
  Fraction beta;
  std::uint64_t multiplicity = 0;
  bool sbnn = false;  // the permutation-free network sits here
  bool best = false;  // the best PBNN (largest alpha, then beta) sits here

  friend bool operator==(const FeatureRecord& a, const FeatureRecord& b) {
    return a.alpha.num == b.alpha.num && a.alpha.den == b.alpha.den &&
           a.beta.num == b.beta.num && a.beta.den == b.beta.den &&
           a.multiplicity == b.multiplicity && a.sbnn == b.sbnn && a.best == b.best;
  }
};

struct FeaturePlane {
  int n = 0;
  ConnectionNumber cn;
  Fraction sbnn_alpha;
  Fraction sbnn_beta;
  std::optional<Fraction> best_alpha;
  std::optional<Fraction> best_beta;
  /// Ordered by alpha, then beta.
  std::vector<FeatureRecord> records;
};

/// Throws std::invalid_argument if the sweep does not cover `cn`.
FeaturePlane make_feature_plane(const SweepResult& result, ConnectionNumber cn);

void write_feature_plane_csv(std::ostream& os, const FeaturePlane& plane);
std::vector<FeatureRecord> read_feature_plane_csv(std::istream& is);
std::string feature_plane_json(const FeaturePlane& plane);
/// Triangle S_d / S_t / S_l, every point, a cross for the SBNN and a circle
/// for the best PBNN.
void write_feature_plane_svg(std::ostream& os, const FeaturePlane& plane);

void export_feature_plane(const SweepResult& result, ConnectionNumber cn, Format format,
                          const std::filesystem::path& path);

// ----------------------------------------------------------- sweep tables

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
/// Streaming form: header once, then one line per row.
void write_sweep_csv_header(std::ostream& os);
void write_sweep_csv_row(std::ostream& os, const SweepRow& row);
std::vector<SweepRow> read_sweep_csv(std::istream& is);
std::string sweep_summary_json(const SweepResult& result);

}  // namespace pbnn::io
