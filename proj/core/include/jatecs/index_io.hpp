#pragma once

#include <filesystem>

#include "jatecs/index.hpp"

namespace jatecs {

inline constexpr int kIndexFormatVersion = 1;

// Writes an index as a directory of UTF-8, LF-terminated TSV files:
//
//   meta.tsv            format_version, D, F, C (one "key<TAB>value" per line)
//   categories.tsv      cID, label
//   features.tsv        fID, featureText
//   documents.tsv       dID, docName
//   content.tsv         dID, fID, count   (sorted by dID, fID)
//   classification.tsv  dID, cID          (sorted)
//   weights.tsv         dID, fID, weight  (shortest round-trip decimal)
//   domain.tsv          fID, cID          (local domain only)
//
// Text fields escape backslash, TAB, LF and CR as \\, \t, \n, \r. The
// directory is created if needed; a stale domain.tsv is removed.
void save_index(const Index& index, const std::filesystem::path& directory);

// Reads a directory written by save_index. Malformed files raise
// ParseError with the offending line.
Index load_index(const std::filesystem::path& directory);

}  // namespace jatecs
