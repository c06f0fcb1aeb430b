#pragma once

#include "lpk/int_matrix.hpp"
#include "lpk/vertex_set.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpk {

struct Edge {
    std::string id;
    std::size_t source;
    std::size_t range;
};

/// Finite directed multigraph. Vertices are kept in declaration order, which fixes
/// the row/column order of every matrix built from the graph.
class Graph {
public:
    Graph() = default;
    /// Validates unique vertex and edge ids and in-range endpoints.
    Graph(std::vector<std::string> vertices, std::vector<Edge> edges);

    /// Convenience builder from (edge-id, source-name, range-name) triples.
    static Graph from_names(std::vector<std::string> vertices,
                            const std::vector<std::array<std::string, 3>>& edges);

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::string& vertex(std::size_t v) const { return vertices_[v]; }
    std::optional<std::size_t> find_vertex(std::string_view name) const;
    std::size_t vertex_index(std::string_view name) const;

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
    bool is_sink(std::size_t v) const { return out_[v].empty(); }
    VertexSet sinks() const;
    VertexSet regulars() const { return sinks().complement(); }
    VertexSet all() const { return VertexSet::full(num_vertices()); }

    /// Graph file text that parses back to this graph.
    std::string to_text() const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Reads the graph file format: '#' comments, one "vertices: ..." line, then "edge id src dst" lines.
Graph parse_graph(std::string_view text);

struct AdjacencyDecomposition {
    IntMatrix A;                     // A(v,w) = number of edges v -> w
    VertexSet sinks, regulars;
    std::vector<std::size_t> R, S;   // regular and sink vertices, ascending
    IntMatrix B;                     // A restricted to R × R
    IntMatrix C;                     // A restricted to R × S
};

AdjacencyDecomposition adjacency(const Graph& g);

/// Window [m, n] of the covering graph: vertices (v,k) for m <= k <= n, edges (e,k) for m < k <= n
/// running from (s(e),k) to (r(e),k-1). Vertices are listed by descending level.
Graph covering_window(const Graph& g, long m, long n);

bool is_hereditary(const Graph& g, const VertexSet& H);
bool is_saturated(const Graph& g, const VertexSet& H);
inline bool is_hsat(const Graph& g, const VertexSet& H) { return is_hereditary(g, H) && is_saturated(g, H); }

/// Vertices H, edges with source in H. With enforce_hereditary, an edge leaving H is an error.
Graph restriction(const Graph& g, const VertexSet& H, bool enforce_hereditary = false);
/// Vertices outside H, edges with range outside H. H must be hereditary and saturated.
Graph quotient(const Graph& g, const VertexSet& H);
/// Vertices H2 \ H1, edges with source in H2 and range outside H1.
Graph subquotient(const Graph& g, const VertexSet& H1, const VertexSet& H2);

/// The vertices of `s` (a subset of `from`) that also exist in `to`, matched by name.
VertexSet transfer(const Graph& from, const VertexSet& s, const Graph& to);

/// reach[v] = vertices reachable from v by a path of length >= 0.
std::vector<VertexSet> reachability(const Graph& g);

bool is_downward_directed(const Graph& g, const VertexSet& V);
/// Every ordered pair (v,w), including v = w, is joined by a path of length >= 1. False for the empty graph.
bool is_irreducible(const Graph& g);

struct Reordered {
    Graph graph;
    std::vector<std::size_t> perm;  // perm[new index] = old index
};

/// Same graph with the vertices of `first` moved to the front, relative order otherwise kept.
Reordered reorder_first(const Graph& g, const VertexSet& first);
/// Vertices listed as g.vertex(perm[0]), g.vertex(perm[1]), ...
Graph permute_vertices(const Graph& g, const std::vector<std::size_t>& perm);
/// Renames vertices (names[v] for vertex v); edges keep their ids.
Graph rename_vertices(const Graph& g, const std::vector<std::string>& names);
/// Vertices renamed v0, v1, ... and edges e0, e1, ... in order.
Graph normalized(const Graph& g);
/// Disjoint union; the vertices and edges of each side are prefixed to keep ids unique.
Graph disjoint_union(const Graph& a, const Graph& b, const std::string& prefix_a = "a.",
                     const std::string& prefix_b = "b.");

}  // namespace lpk
