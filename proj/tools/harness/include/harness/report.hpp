#pragma once

#include <filesystem>
#include <string>

#include "harness/manifest.hpp"

namespace harness {

// Writes <dir>/<experiment>_<config hash>/ with manifest.json, one CSV per
// table and summary.txt. Throws combfrac::Error(io) before writing anything
// when the directory cannot be created or written.
std::filesystem::path emit_report(const RunManifest& manifest, const std::filesystem::path& dir);

std::string manifest_json(const RunManifest& manifest);
std::string summary_text(const RunManifest& manifest);
std::string table_csv(const Table& table);

}  // namespace harness
