#include "lpk/ideal_lattice.hpp"

#include "lpk/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace lpk {

VertexSet hsat_closure(const Graph& g, const VertexSet& seed) {
    if (seed.universe() != g.num_vertices()) throw PreconditionError("hsat_closure: subset does not belong to this graph");
    VertexSet H = seed;
    std::vector<std::size_t> stack = H.members();
    for (;;) {
        // hereditary closure
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (auto e : g.out_edges(v)) {
                std::size_t w = g.edges()[e].range;
                if (!H.contains(w)) {
                    H.insert(w);
                    stack.push_back(w);
                }
            }
        }
        // one saturation pass; new members are pushed for another hereditary pass
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            if (H.contains(v) || g.is_sink(v)) continue;
            bool inside = true;
            for (auto e : g.out_edges(v))
                if (!H.contains(g.edges()[e].range)) {
                    inside = false;
                    break;
                }
            if (inside) {
                H.insert(v);
                stack.push_back(v);
            }
        }
        if (stack.empty()) return H;
    }
}

std::optional<std::size_t> IdealLattice::index_of(const VertexSet& s) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    if (it == elements.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
}

IdealLattice make_lattice(const Graph& g, std::vector<VertexSet> sets) {
    IdealLattice L;
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    L.elements = std::move(sets);
    const std::size_t n = L.size();
    L.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) L.leq[i][j] = L.elements[i].subset_of(L.elements[j]);
    L.meet_table.assign(n, std::vector<std::size_t>(n, 0));
    L.join_table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto m = L.index_of(L.elements[i] & L.elements[j]);
            auto k = L.index_of(hsat_closure(g, L.elements[i] | L.elements[j]));
            if (!m || !k) throw PreconditionError("make_lattice: family is not closed under meet and join");
            L.meet_table[i][j] = L.meet_table[j][i] = *m;
            L.join_table[i][j] = L.join_table[j][i] = *k;
        }
    return L;
}

IdealLattice enumerate_hsat(const Graph& g, std::size_t cap) {
    const std::size_t n = g.num_vertices();
    std::unordered_set<VertexSet, VertexSetHash> seen;
    std::vector<VertexSet> order;
    VertexSet empty = hsat_closure(g, VertexSet(n));
    seen.insert(empty);
    order.push_back(empty);
    // Every closed set is a join of single-vertex closures, so adding one vertex at a time reaches all of them.
    for (std::size_t k = 0; k < order.size(); ++k) {
        VertexSet cur = order[k];
        for (std::size_t v = 0; v < n; ++v) {
            if (cur.contains(v)) continue;
            VertexSet s = cur;
            s.insert(v);
            VertexSet c = hsat_closure(g, s);
            if (seen.insert(c).second) {
                if (seen.size() > cap)
                    throw CapExceeded("lattice has more than " + std::to_string(cap) + " hereditary saturated sets");
                order.push_back(c);
            }
        }
    }
    return make_lattice(g, std::move(order));
}

IdealLattice enumerate_hsat_bruteforce(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n > 24) throw CapExceeded("brute-force enumeration limited to 24 vertices");
    std::vector<VertexSet> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        VertexSet s(n);
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> v & 1u) s.insert(v);
        if (is_hsat(g, s)) found.push_back(s);
    }
    return make_lattice(g, std::move(found));
}

std::optional<std::size_t> SpectrumTopology::element_of_open(const VertexSet& U) const {
    for (std::size_t h = 0; h < opens.size(); ++h)
        if (opens[h] == U) return h;
    return std::nullopt;
}

SpectrumTopology graded_primes(const Graph& g, const IdealLattice& lattice) {
    SpectrumTopology ts;
    ts.lattice = lattice;
    ts.num_vertices = g.num_vertices();
    for (std::size_t h = 0; h < lattice.size(); ++h) {
        const VertexSet& H = lattice.elements[h];
        if (H.is_full()) continue;
        if (is_downward_directed(g, H.complement())) ts.primes.push_back(h);
    }
    for (std::size_t h = 0; h < lattice.size(); ++h) {
        VertexSet W(ts.primes.size());
        for (std::size_t p = 0; p < ts.primes.size(); ++p)
            if (!lattice.leq[h][ts.primes[p]]) W.insert(p);
        ts.opens.push_back(W);
    }
    return ts;
}

std::vector<std::size_t> lattice_prime_elements(const IdealLattice& L) {
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < L.size(); ++h) {
        if (h == L.top()) continue;
        bool prime = true;
        for (std::size_t a = 0; a < L.size() && prime; ++a)
            for (std::size_t b = 0; b < L.size(); ++b)
                if (L.leq[L.meet(a, b)][h] && !L.leq[a][h] && !L.leq[b][h]) {
                    prime = false;
                    break;
                }
        if (prime) out.push_back(h);
    }
    return out;
}

VertexSet kernel_of(const SpectrumTopology& ts, const VertexSet& T) {
    VertexSet K = VertexSet::full(ts.num_vertices);
    for (auto p : T.members()) K = K & ts.lattice.elements[ts.primes[p]];
    return K;
}

std::vector<LocallyClosed> locally_closed_all(const SpectrumTopology& ts) {
    const IdealLattice& L = ts.lattice;
    std::map<std::vector<std::size_t>, LocallyClosed> best;
    auto better = [&](std::size_t u, const LocallyClosed& cur) {
        std::size_t a = ts.opens[u].size(), b = ts.opens[cur.outer].size();
        return a < b || (a == b && u < cur.outer);
    };
    for (std::size_t u = 0; u < L.size(); ++u)
        for (std::size_t v = 0; v < L.size(); ++v) {
            if (!L.leq[v][u]) continue;
            VertexSet D = ts.opens[u] - ts.opens[v];
            auto key = D.members();
            auto it = best.find(key);
            if (it == best.end())
                best.emplace(key, LocallyClosed{u, v, D});
            else if (better(u, it->second))
                it->second = LocallyClosed{u, v, D};
        }
    std::vector<LocallyClosed> out;
    for (auto& [key, y] : best) {
        // The inner open is forced to be outer \ Y; pick its lattice element.
        auto inner = ts.element_of_open(ts.opens[y.outer] - y.primes);
        if (!inner) throw PreconditionError("locally_closed_all: inner set is not open");
        y.inner = *inner;
        out.push_back(y);
    }
    std::stable_sort(out.begin(), out.end(), [](const LocallyClosed& a, const LocallyClosed& b) {
        if (a.primes.size() != b.primes.size()) return a.primes.size() < b.primes.size();
        return a.primes.members() < b.primes.members();
    });
    return out;
}

Graph locally_closed_graph(const Graph& g, const SpectrumTopology& ts, const LocallyClosed& y) {
    return subquotient(g, ts.lattice.elements[y.inner], ts.lattice.elements[y.outer]);
}

std::vector<std::vector<std::size_t>> lattice_isomorphisms(const IdealLattice& L1, const IdealLattice& L2,
                                                           std::size_t cap) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t n = L1.size();
    if (n != L2.size()) return out;
    auto signature = [](const IdealLattice& L, std::size_t i) {
        std::size_t below = 0, above = 0;
        for (std::size_t j = 0; j < L.size(); ++j) {
            below += L.leq[j][i];
            above += L.leq[i][j];
        }
        return std::pair{below, above};
    };
    std::vector<std::pair<std::size_t, std::size_t>> s1(n), s2(n);
    for (std::size_t i = 0; i < n; ++i) {
        s1[i] = signature(L1, i);
        s2[i] = signature(L2, i);
    }
    std::vector<std::size_t> f(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            if (out.size() >= cap) throw CapExceeded("too many lattice isomorphisms");
            out.push_back(f);
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || s1[i] != s2[j]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k)
                ok = L1.leq[k][i] == L2.leq[f[k]][j] && L1.leq[i][k] == L2.leq[j][f[k]];
            if (!ok) continue;
            f[i] = j;
            used[j] = true;
            self(self, i + 1);
            used[j] = false;
        }
        f[i] = SIZE_MAX;
    };
    rec(rec, 0);
    return out;
}

}  // namespace lpk
