#include "lpk/families.hpp"

#include "lpk/errors.hpp"

#include <random>

namespace lpk::families {

Graph rose(std::size_t petals) {
    std::vector<Edge> es;
    for (std::size_t i = 1; i <= petals; ++i) es.push_back({"e" + std::to_string(i), 0, 0});
    return Graph({"v"}, std::move(es));
}

Graph two_vertex_example() {
    return Graph::from_names({"u", "v"}, {{"e", "u", "u"}, {"f", "u", "v"}, {"g", "v", "u"}});
}

Graph line() { return Graph::from_names({"v", "w"}, {{"e", "v", "w"}}); }

Graph fan() { return Graph::from_names({"v", "w1", "w2"}, {{"e1", "v", "w1"}, {"e2", "v", "w2"}}); }

Graph loop_pair() { return Graph::from_names({"u", "w"}, {{"a", "u", "u"}, {"b", "u", "w"}, {"c", "w", "w"}}); }

Graph sinks(std::size_t n) {
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back("w" + std::to_string(i + 1));
    return Graph(std::move(vs), {});
}

Graph from_matrix(const IntMatrix& A) {
    if (!A.is_square()) throw PreconditionError("from_matrix: matrix must be square");
    if (!A.is_nonnegative()) throw PreconditionError("from_matrix: matrix must be nonnegative");
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < A.rows(); ++i) vs.push_back("v" + std::to_string(i));
    std::vector<Edge> es;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            const unsigned long k = A(i, j).get_ui();
            for (unsigned long t = 0; t < k; ++t)
                es.push_back({"e" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(t), i, j});
        }
    return Graph(std::move(vs), std::move(es));
}

bool is_weakly_connected(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return true;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges()) {
        adj[e.source].push_back(e.range);
        adj[e.range].push_back(e.source);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (auto w : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

std::vector<Graph> random_connected(std::uint64_t seed, std::size_t count, std::size_t min_vertices,
                                    std::size_t max_vertices, unsigned max_mult) {
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    while (out.size() < count) {
        std::size_t n = min_vertices + rng() % (max_vertices - min_vertices + 1);
        IntMatrix A(n, n);
        // Sparse-ish: each ordered pair gets an edge with probability about 0.4.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng() % 5 < 2) A(i, j) = static_cast<long>(1 + rng() % max_mult);
        Graph g = from_matrix(A);
        if (is_weakly_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace lpk::families
