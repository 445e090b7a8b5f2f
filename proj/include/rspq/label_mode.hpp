#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rspq {

/// Which graph elements carry labels, and therefore how a path spells a word.
enum class LabelMode { edge, vertex, vertex_edge };

inline std::string to_string(LabelMode mode) {
    switch (mode) {
    case LabelMode::edge: return "edge-labeled";
    case LabelMode::vertex: return "vertex-labeled";
    case LabelMode::vertex_edge: return "vertex-edge-labeled";
    }
    return "edge-labeled";
}

inline std::optional<LabelMode> parse_label_mode(std::string_view text) {
    if (text == "edge-labeled" || text == "edge") return LabelMode::edge;
    if (text == "vertex-labeled" || text == "vertex") return LabelMode::vertex;
    if (text == "vertex-edge-labeled" || text == "vertex-edge") return LabelMode::vertex_edge;
    return std::nullopt;
}

inline bool has_vertex_labels(LabelMode mode) { return mode != LabelMode::edge; }
inline bool has_edge_labels(LabelMode mode) { return mode != LabelMode::vertex; }

} // namespace rspq
