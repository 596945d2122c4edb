#pragma once

#include <string>

#include "peanut/frame.hpp"
#include "peanut/impute.hpp"

namespace peanut {

/// Canonical frame document: {"kind":"frame","dates":[ISO...],
/// "columns":{name:[...]} with null for missing, "roles":{name:role}}.
/// Column order is preserved.
std::string frame_to_json(const ObservationFrame& frame);
ObservationFrame frame_from_json(const std::string& text);

/// Canonical frame plus a "provenance" section: the imputed column, the
/// strategy, and one real/synthetic/missing tag per row.
std::string hybrid_to_json(const HybridFrame& hybrid);
HybridFrame hybrid_from_json(const std::string& text);

/// Reads either document form; provenance is empty for a plain frame.
HybridFrame document_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

ObservationFrame read_frame_file(const std::string& path);
void write_frame_file(const std::string& path, const ObservationFrame& frame);

}  // namespace peanut
