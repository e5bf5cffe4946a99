#pragma once

#include "lcskit/curves.hpp"
#include "lcskit/deformation.hpp"
#include "lcskit/extrema.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lcskit {

/// Gridded multi-channel f64 block, the binary interchange format.
///
/// On disk (little-endian): magic "LCSK", u32 version, u32 nx, u32 ny,
/// f64 x0, x1, y0, y1, u32 channel count, then each channel as nx*ny
/// row-major f64 values. Writing and reading back is bit-exact.
struct FieldBlock {
  std::uint32_t version = 1;
  Grid2 grid;
  std::vector<std::string> channel_names;  // metadata only, not serialized
  std::vector<std::vector<double>> channels;
};

void write_field_block(const std::filesystem::path& path, const FieldBlock& b);
FieldBlock read_field_block(const std::filesystem::path& path);

/// Flow-map CSV: x,y,fx,fy,j11,j12,j21,j22,valid. Gradient columns are
/// zero when the flow map carries none.
void write_flowmap_csv(const std::filesystem::path& path, const FlowMapGrid& fm);

/// Deformation CSV: the flow-map columns extended with
/// s1,s2,xi1x,xi1y,xi2x,xi2y,th1x,th1y,th2x,th2y,ftle_f,ftle_b,degenerate.
void write_deformation_csv(const std::filesystem::path& path,
                           const DeformationField& f);

/// Curve CSV: curve_id,vertex_id,x,y,s1,s2,L1,L2,class. Diagnostic columns
/// are empty-as-nan for curves that were never classified.
void write_curves_csv(const std::filesystem::path& path,
                      const std::vector<MaterialCurve>& curves);

/// Extrema CSV: x,y,L1,L2.
void write_extrema_csv(const std::filesystem::path& path,
                       const std::vector<ExtremumPoint>& points);

/// The binary-block channel set exported for a deformation field, in order:
/// fx,fy,j11,j12,j21,j22,s1,s2,ftle_f,ftle_b,valid,degenerate.
FieldBlock deformation_block(const DeformationField& f);

}  // namespace lcskit
