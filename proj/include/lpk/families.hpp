#pragma once

#include "lpk/graph.hpp"
#include "lpk/int_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lpk::families {

/// One vertex v with n loops e1..en.
Graph rose(std::size_t petals);
/// One vertex with one loop.
inline Graph loop() { return rose(1); }
/// u with a loop e and an edge f to v; g from v back to u.
Graph two_vertex_example();
/// v -> w, w a sink.
Graph line();
/// v -> w1, v -> w2.
Graph fan();
/// u with a loop, u -> w, w with a loop.
Graph loop_pair();
/// n isolated sinks.
Graph sinks(std::size_t n);
/// Vertices v0..v(n-1) with A(i,j) parallel edges i -> j. A must be square and nonnegative.
Graph from_matrix(const IntMatrix& A);

/// Weakly connected graphs with `n` vertices and at most `max_mult` parallel edges per ordered pair.
/// Deterministic for a given seed.
std::vector<Graph> random_connected(std::uint64_t seed, std::size_t count, std::size_t min_vertices,
                                    std::size_t max_vertices, unsigned max_mult);

bool is_weakly_connected(const Graph& g);

}  // namespace lpk::families
