#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "slag/curves.hpp"
#include "slag/surfaces.hpp"

namespace slag::io {

inline constexpr int kReportSchemaVersion = 1;

enum class Projection {
  Re1Im1Re2,   // (Re z1, Im z1, Re z2)
  Re1Re2Im2,   // (Re z1, Re z2, Im z2)
  ModuliPhase  // (|z1|, |z2|, wrapped arg z1 + arg z2)
};

// Parse the catalog names "re1-im1-re2", "re1-re2-im2", "moduli-phase".
Projection parse_projection(const std::string& name);

// CSV with header t,re1,im1,re2,im2,residual_conserved,residual_line and one
// row per sample, 17 significant digits (round-trippable). Atomic write.
void export_csv(const curves::CurveSample& sample, const std::filesystem::path& path);

// Inverse of export_csv for the numeric payload (params/tol are not encoded).
curves::CurveSample parse_csv(const std::filesystem::path& path);

// Wavefront-style mesh: vertices in row-major (t, s) order, quad faces with
// consistent orientation. Requires at least a 2x2 grid.
void export_obj(const surfaces::SurfaceGrid& surface, Projection projection,
                const std::filesystem::path& path);

// Serialize a JSON document (pretty, newline-terminated). Atomic write.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

// Write text to a temp file in the target directory, then rename into place.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace slag::io
