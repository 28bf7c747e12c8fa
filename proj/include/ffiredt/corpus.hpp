#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "ffiredt/store.hpp"

namespace ffiredt {

/// One corpus row: an image file and its ground-truth label. Image ids are
/// assigned from the row position at ingestion time.
struct ManifestEntry {
    std::filesystem::path path;
    Label label = Label::Unlabeled;
};

/// Reads a plain CSV manifest of `path,label` rows. '#' starts a comment,
/// blank lines are skipped, paths must be unique. Relative paths are resolved
/// against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries);

}  // namespace ffiredt
