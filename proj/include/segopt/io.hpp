#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "segopt/field.hpp"

namespace segopt {

inline constexpr const char* kMarginalFormat = "segopt-marginal";
inline constexpr const char* kMaskFormat = "segopt-mask";
inline constexpr const char* kRawFormat = "segopt-raw";
inline constexpr int kFormatVersion = 1;

// A field read from disk plus its optional "group" label (used by reports).
struct FieldFile {
  MarginalField field;
  std::string group;
};

// Reads a marginal (.smf.json), mask (.smk.json) or raw sidecar file,
// dispatching on the "format" member. Mask files load as binary fields.
// Throws ParseError on malformed input.
FieldFile read_field_file(const std::filesystem::path& path);

// Reads a mask file, or any field file whose values are all 0 or 1.
Segmentation read_mask(const std::filesystem::path& path);

// `parameter` records the generator parameter a synthetic field realizes.
std::string marginal_json(const MarginalField& field, const std::string& group = {},
                          std::optional<double> parameter = std::nullopt);
std::string mask_json(const Segmentation& mask, const std::string& group = {});

void write_text(const std::filesystem::path& path, const std::string& text);
void write_marginal(const std::filesystem::path& path, const MarginalField& field, const std::string& group = {});
void write_mask(const std::filesystem::path& path, const Segmentation& mask, const std::string& group = {});

// Writes the little-endian float64 payload to `data` and a sidecar pointing
// at it. The sidecar stores `data` relative to its own directory when both
// live in the same directory.
void write_raw(const std::filesystem::path& sidecar, const std::filesystem::path& data, const MarginalField& field);

}  // namespace segopt
