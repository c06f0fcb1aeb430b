#include "lpk/graph.hpp"

#include "lpk/errors.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace lpk {

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), out_(vertices_.size()) {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!index_.emplace(vertices_[v], v).second) throw PreconditionError("duplicate vertex id '" + vertices_[v] + "'");
    std::unordered_set<std::string> ids;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (!ids.insert(ed.id).second) throw PreconditionError("duplicate edge id '" + ed.id + "'");
        if (ed.source >= vertices_.size() || ed.range >= vertices_.size())
            throw PreconditionError("edge '" + ed.id + "' has an endpoint outside the vertex set");
        out_[ed.source].push_back(e);
    }
}

Graph Graph::from_names(std::vector<std::string> vertices, const std::vector<std::array<std::string, 3>>& edges) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t v = 0; v < vertices.size(); ++v) idx.emplace(vertices[v], v);
    std::vector<Edge> es;
    for (const auto& [id, s, r] : edges) {
        auto is = idx.find(s), ir = idx.find(r);
        if (is == idx.end()) throw PreconditionError("undeclared vertex '" + s + "'");
        if (ir == idx.end()) throw PreconditionError("undeclared vertex '" + r + "'");
        es.push_back({id, is->second, ir->second});
    }
    return Graph(std::move(vertices), std::move(es));
}

std::optional<std::size_t> Graph::find_vertex(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Graph::vertex_index(std::string_view name) const {
    auto v = find_vertex(name);
    if (!v) throw PreconditionError("unknown vertex '" + std::string(name) + "'");
    return *v;
}

VertexSet Graph::sinks() const {
    VertexSet s(num_vertices());
    for (std::size_t v = 0; v < num_vertices(); ++v)
        if (is_sink(v)) s.insert(v);
    return s;
}

std::string Graph::to_text() const {
    std::ostringstream os;
    os << "vertices:";
    for (const auto& v : vertices_) os << ' ' << v;
    os << '\n';
    for (const auto& e : edges_) os << "edge " << e.id << ' ' << vertices_[e.source] << ' ' << vertices_[e.range] << '\n';
    return os.str();
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t e = 0; e < a.edges_.size(); ++e) {
        const Edge &x = a.edges_[e], &y = b.edges_[e];
        if (x.id != y.id || x.source != y.source || x.range != y.range) return false;
    }
    return true;
}

Graph parse_graph(std::string_view text) {
    std::vector<std::string> vertices;
    std::unordered_map<std::string, std::size_t> idx;
    std::unordered_set<std::string> edge_ids;
    std::vector<Edge> edges;
    bool have_vertices = false;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "vertices:") {
            if (have_vertices) throw ParseError(lineno, "second 'vertices:' line");
            have_vertices = true;
            std::string id;
            while (ls >> id) {
                if (!idx.emplace(id, vertices.size()).second) throw ParseError(lineno, "duplicate vertex id '" + id + "'");
                vertices.push_back(id);
            }
        } else if (head == "edge") {
            if (!have_vertices) throw ParseError(lineno, "edge before the 'vertices:' line");
            std::string id, s, r, extra;
            if (!(ls >> id >> s >> r) || (ls >> extra)) throw ParseError(lineno, "expected 'edge <id> <source> <range>'");
            if (!edge_ids.insert(id).second) throw ParseError(lineno, "duplicate edge id '" + id + "'");
            auto is = idx.find(s), ir = idx.find(r);
            if (is == idx.end()) throw ParseError(lineno, "undeclared vertex '" + s + "'");
            if (ir == idx.end()) throw ParseError(lineno, "undeclared vertex '" + r + "'");
            edges.push_back({id, is->second, ir->second});
        } else {
            throw ParseError(lineno, "unrecognized line starting with '" + head + "'");
        }
    }
    if (!have_vertices) throw ParseError(0, "missing 'vertices:' line");
    return Graph(std::move(vertices), std::move(edges));
}

AdjacencyDecomposition adjacency(const Graph& g) {
    const std::size_t n = g.num_vertices();
    AdjacencyDecomposition d;
    d.A = IntMatrix(n, n);
    for (const auto& e : g.edges()) d.A(e.source, e.range) += 1;
    d.sinks = g.sinks();
    d.regulars = d.sinks.complement();
    d.R = d.regulars.members();
    d.S = d.sinks.members();
    d.B = d.A.submatrix(d.R, d.R);
    d.C = d.A.submatrix(d.R, d.S);
    return d;
}

Graph covering_window(const Graph& g, long m, long n) {
    if (m > n) throw PreconditionError("covering_window: lower level exceeds upper level");
    auto vname = [&](std::size_t v, long k) { return "(" + g.vertex(v) + "," + std::to_string(k) + ")"; };
    const std::size_t nv = g.num_vertices();
    std::vector<std::string> vs;
    for (long k = n; k >= m; --k)
        for (std::size_t v = 0; v < nv; ++v) vs.push_back(vname(v, k));
    auto at = [&](std::size_t v, long k) { return static_cast<std::size_t>(n - k) * nv + v; };
    std::vector<Edge> es;
    for (long k = n; k > m; --k)
        for (const auto& e : g.edges())
            es.push_back({"(" + e.id + "," + std::to_string(k) + ")", at(e.source, k), at(e.range, k - 1)});
    return Graph(std::move(vs), std::move(es));
}

bool is_hereditary(const Graph& g, const VertexSet& H) {
    for (const auto& e : g.edges())
        if (H.contains(e.source) && !H.contains(e.range)) return false;
    return true;
}

bool is_saturated(const Graph& g, const VertexSet& H) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (H.contains(v) || g.is_sink(v)) continue;
        bool inside = true;
        for (auto e : g.out_edges(v))
            if (!H.contains(g.edges()[e].range)) inside = false;
        if (inside) return false;
    }
    return true;
}

namespace {

// Induced graph on `keep`, with the edges accepted by `take`. Ids and relative order are preserved.
template <class Pred>
Graph induced(const Graph& g, const VertexSet& keep, Pred take) {
    std::vector<std::string> vs;
    std::vector<std::size_t> newidx(g.num_vertices(), SIZE_MAX);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (keep.contains(v)) {
            newidx[v] = vs.size();
            vs.push_back(g.vertex(v));
        }
    std::vector<Edge> es;
    for (const auto& e : g.edges())
        if (take(e)) es.push_back({e.id, newidx[e.source], newidx[e.range]});
    return Graph(std::move(vs), std::move(es));
}

void require_subset(const Graph& g, const VertexSet& H, const char* who) {
    if (H.universe() != g.num_vertices())
        throw PreconditionError(std::string(who) + ": vertex subset does not belong to this graph");
}

}  // namespace

Graph restriction(const Graph& g, const VertexSet& H, bool enforce_hereditary) {
    require_subset(g, H, "restriction");
    if (enforce_hereditary && !is_hereditary(g, H)) throw PreconditionError("restriction: subset is not hereditary");
    // Without hereditariness an edge may leave H; it is dropped together with its range.
    return induced(g, H, [&](const Edge& e) { return H.contains(e.source) && H.contains(e.range); });
}

Graph quotient(const Graph& g, const VertexSet& H) {
    require_subset(g, H, "quotient");
    if (!is_hsat(g, H)) throw PreconditionError("quotient: subset is not hereditary and saturated");
    return induced(g, H.complement(), [&](const Edge& e) { return !H.contains(e.range); });
}

Graph subquotient(const Graph& g, const VertexSet& H1, const VertexSet& H2) {
    require_subset(g, H1, "subquotient");
    require_subset(g, H2, "subquotient");
    if (!H1.subset_of(H2)) throw PreconditionError("subquotient: H1 is not contained in H2");
    if (!is_hsat(g, H1) || !is_hsat(g, H2)) throw PreconditionError("subquotient: subsets must be hereditary and saturated");
    return induced(g, H2 - H1, [&](const Edge& e) { return H2.contains(e.source) && !H1.contains(e.range); });
}

VertexSet transfer(const Graph& from, const VertexSet& s, const Graph& to) {
    VertexSet out(to.num_vertices());
    for (auto v : s.members())
        if (auto w = to.find_vertex(from.vertex(v))) out.insert(*w);
    return out;
}

std::vector<VertexSet> reachability(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<VertexSet> reach;
    reach.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        VertexSet seen(n);
        std::vector<std::size_t> stack{v};
        seen.insert(v);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (auto e : g.out_edges(u)) {
                std::size_t w = g.edges()[e].range;
                if (!seen.contains(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
            }
        }
        reach.push_back(std::move(seen));
    }
    return reach;
}

bool is_downward_directed(const Graph& g, const VertexSet& V) {
    auto reach = reachability(g);
    auto mem = V.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
        for (std::size_t j = i + 1; j < mem.size(); ++j)
            if ((reach[mem[i]] & reach[mem[j]] & V).empty()) return false;
    return true;
}

bool is_irreducible(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return false;
    auto reach = reachability(g);
    for (std::size_t v = 0; v < n; ++v) {
        // Vertices reachable by a path of length >= 1.
        VertexSet strict(n);
        for (auto e : g.out_edges(v)) strict = strict | reach[g.edges()[e].range];
        if (!strict.is_full()) return false;
    }
    return true;
}

Reordered reorder_first(const Graph& g, const VertexSet& first) {
    Reordered r;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (first.contains(v)) r.perm.push_back(v);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (!first.contains(v)) r.perm.push_back(v);
    r.graph = permute_vertices(g, r.perm);
    return r;
}

Graph permute_vertices(const Graph& g, const std::vector<std::size_t>& perm) {
    if (perm.size() != g.num_vertices()) throw PreconditionError("permute_vertices: wrong permutation length");
    std::vector<std::size_t> inv(perm.size(), SIZE_MAX);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] >= perm.size() || inv[perm[i]] != SIZE_MAX) throw PreconditionError("permute_vertices: not a permutation");
        inv[perm[i]] = i;
    }
    std::vector<std::string> vs;
    for (auto p : perm) vs.push_back(g.vertex(p));
    std::vector<Edge> es;
    for (const auto& e : g.edges()) es.push_back({e.id, inv[e.source], inv[e.range]});
    return Graph(std::move(vs), std::move(es));
}

Graph rename_vertices(const Graph& g, const std::vector<std::string>& names) {
    if (names.size() != g.num_vertices()) throw PreconditionError("rename_vertices: wrong name count");
    return Graph(names, g.edges());
}

Graph normalized(const Graph& g) {
    std::vector<std::string> vs;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) vs.push_back("v" + std::to_string(v));
    std::vector<Edge> es;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        es.push_back({"e" + std::to_string(e), g.edges()[e].source, g.edges()[e].range});
    return Graph(std::move(vs), std::move(es));
}

Graph disjoint_union(const Graph& a, const Graph& b, const std::string& prefix_a, const std::string& prefix_b) {
    std::vector<std::string> vs;
    for (const auto& v : a.vertices()) vs.push_back(prefix_a + v);
    for (const auto& v : b.vertices()) vs.push_back(prefix_b + v);
    std::vector<Edge> es;
    for (const auto& e : a.edges()) es.push_back({prefix_a + e.id, e.source, e.range});
    const std::size_t off = a.num_vertices();
    for (const auto& e : b.edges()) es.push_back({prefix_b + e.id, off + e.source, off + e.range});
    return Graph(std::move(vs), std::move(es));
}

}  // namespace lpk
