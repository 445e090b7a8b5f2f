#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rspq/bitset.hpp"
#include "rspq/label_mode.hpp"

namespace rspq::graph {

struct Edge {
    int from = 0;
    int to = 0;
    std::optional<char> label;

    bool operator==(const Edge&) const = default;
};

/// Directed multigraph. Parallel edges must differ in label.
class LabeledGraph {
public:
    LabeledGraph() = default;
    LabeledGraph(LabelMode mode, std::size_t n, std::vector<std::optional<char>> vertex_labels, std::vector<Edge> edges);

    LabelMode mode() const noexcept { return mode_; }
    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    std::optional<char> vertex_label(int v) const { return vertex_labels_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::optional<char>>& vertex_labels() const noexcept { return vertex_labels_; }

    /// Edge indices leaving / entering v, ordered by (other endpoint, label, index).
    const std::vector<std::size_t>& out_edges(int v) const { return out_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::size_t>& in_edges(int v) const { return in_.at(static_cast<std::size_t>(v)); }

    bool operator==(const LabeledGraph& other) const {
        return mode_ == other.mode_ && n_ == other.n_ && vertex_labels_ == other.vertex_labels_ && edges_ == other.edges_;
    }

private:
    LabelMode mode_ = LabelMode::edge;
    std::size_t n_ = 0;
    std::vector<std::optional<char>> vertex_labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_, in_;
};

/// A simple path: vertices v_0..v_l, the edge index taken at each step, and its word.
struct PathWitness {
    std::vector<int> vertices;
    std::vector<std::size_t> edges;
    std::string word;

    std::size_t length() const noexcept { return edges.size(); }
    bool operator==(const PathWitness&) const = default;
};

LabeledGraph parse_graph(std::string_view text);
std::string serialize_graph(const LabeledGraph& g);

/// Throws InvalidArgument unless `edges` is a walk through `vertices`.
std::string word_of_path(const LabeledGraph& g, const std::vector<int>& vertices, const std::vector<std::size_t>& edges);
PathWitness make_witness(const LabeledGraph& g, std::vector<int> vertices, std::vector<std::size_t> edges);

/// Why `w` is not a simple x-to-y path of g with a correct word, or nullopt.
std::optional<std::string> witness_defect(const LabeledGraph& g, const PathWitness& w, int x, int y);

/// Uniform sample of m distinct edges, no self-loops. Vertex labels uniform over the alphabet.
LabeledGraph gen_random(std::size_t n, std::size_t m, std::string_view alphabet, LabelMode mode, std::uint64_t seed);

enum class GridLabels { constant, alternating, random };
std::optional<GridLabels> parse_grid_labels(std::string_view text);

/// w×h grid with right and down edges; vertex (r,c) is r*w + c. Alternating
/// labels follow the parity of r+c of the element's source vertex.
LabeledGraph gen_grid(std::size_t w, std::size_t h, GridLabels scheme, std::string_view alphabet = "ab",
                      LabelMode mode = LabelMode::edge, std::uint64_t seed = 0);

/// An edge-labeled graph whose x-to-y paths spell the original words minus
/// the leading vertex label. Vertex-labeled: each edge takes its head's
/// label. Vertex-edge-labeled: each edge u-c->v becomes u-c->m-λ(v)->v.
struct EdgeForm {
    LabeledGraph graph;
    std::vector<int> original_vertex;        // -1 for inserted midpoints
    std::vector<std::size_t> original_edge;  // per edge of `graph`
};
EdgeForm to_edge_form(const LabeledGraph& g);

/// Map a path of the edge form back to the original graph.
PathWitness from_edge_form(const LabeledGraph& g, const EdgeForm& form, const PathWitness& path);

} // namespace rspq::graph
