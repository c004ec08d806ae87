#pragma once

// Serialization of DMT curves and crash-safe file output.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdrc/types.hpp"

namespace hdrc::io {

enum class Format { json, csv };

std::optional<Format> parse_format(std::string_view name) noexcept;

// [{"config":{"m","k","n"},"variant","points":[{"r","d"}]}]
std::string curves_to_json(std::span<const DmtCurve> curves);
// Header "r,d,variant,m,k,n", one row per point.
std::string curves_to_csv(std::span<const DmtCurve> curves);
std::string render(std::span<const DmtCurve> curves, Format format);

// Throws InputError on schema violations.
std::vector<DmtCurve> curves_from_json(std::string_view text);

// Writes to a sibling temp file and renames it over `path`; `path` is either
// the old content or the complete new content, never partial.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace hdrc::io
