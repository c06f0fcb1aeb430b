#include "lpk/filtered_k.hpp"

#include "lpk/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace lpk {

// ---------------------------------------------------------------- table

bool FilteredKTable::exact() const {
    return std::all_of(rows.begin(), rows.end(), [](const FkRow& r) { return r.row.exact(); });
}

const FkEntry* FilteredKTable::entry_for(const VertexSet& primes) const {
    for (const auto& e : entries)
        if (e.y.primes == primes) return &e;
    return nullptr;
}

const FkRow* FilteredKTable::row_for(std::size_t I, std::size_t J, std::size_t P) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), std::make_tuple(I, J, P),
                               [](const FkRow& r, const auto& key) { return std::make_tuple(r.I, r.J, r.P) < key; });
    if (it == rows.end() || std::make_tuple(it->I, it->J, it->P) != std::make_tuple(I, J, P)) return nullptr;
    return &*it;
}

FilteredKTable fkbar(const Graph& g, const CoeffGroup& coeff, const FkOptions& opts) {
    FilteredKTable t;
    t.graph = g;
    t.coeff = coeff;
    t.topology = graded_primes(g, enumerate_hsat(g, opts.lattice_cap));
    const IdealLattice& L = t.topology.lattice;

    for (const auto& y : locally_closed_all(t.topology)) {
        Graph q = locally_closed_graph(g, t.topology, y);
        FgAbGroup k0g = k0(q).group.normal_form();
        KOne k1g = k1_with(q, coeff);
        t.entries.push_back(FkEntry{y, std::move(q), std::move(k0g), std::move(k1g)});
    }

    std::size_t triples = 0;
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < L.size(); ++j)
            if (L.leq[i][j])
                for (std::size_t p = 0; p < L.size(); ++p) triples += L.leq[j][p];
    if (triples > opts.row_cap)
        throw CapExceeded("fkbar: " + std::to_string(triples) + " lattice triples exceed the cap of " +
                          std::to_string(opts.row_cap));
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < L.size(); ++j) {
            if (!L.leq[i][j]) continue;
            for (std::size_t p = 0; p < L.size(); ++p)
                if (L.leq[j][p])
                    t.rows.push_back(FkRow{i, j, p,
                                           six_term_row(g, L.elements[i], L.elements[j], L.elements[p], coeff,
                                                        opts.enumeration_cap)});
        }
    return t;
}

// ---------------------------------------------------------------- certificates and relabeling

std::vector<std::size_t> lattice_iso_from_certificate(const Graph& g1, const IdealLattice& L1, const Graph& g2,
                                                      const IdealLattice& L2, const ShiftEqCertificate& c) {
    if (!g1.sinks().empty() || !g2.sinks().empty())
        throw PreconditionError("certificate transport needs graphs without sinks");
    if (!verify_certificate(dynamics_matrix(g1), dynamics_matrix(g2), c))
        throw PreconditionError("certificate does not verify");
    std::vector<std::size_t> f(L1.size());
    for (std::size_t h = 0; h < L1.size(); ++h) {
        VertexSet T(g2.num_vertices());
        for (auto v : L1.elements[h].members())
            for (std::size_t w = 0; w < g2.num_vertices(); ++w)
                if (c.S(w, v) != 0) T.insert(w);
        auto idx = L2.index_of(hsat_closure(g2, T));
        if (!idx) throw PreconditionError("certificate transport left the lattice");
        f[h] = *idx;
    }
    bool iso = L1.size() == L2.size();
    for (std::size_t i = 0; i < L1.size() && iso; ++i)
        for (std::size_t j = 0; j < L1.size() && iso; ++j)
            if (L1.leq[i][j] != L2.leq[f[i]][f[j]]) iso = false;
    if (!iso) throw PreconditionError("certificate does not induce a lattice isomorphism");
    return f;
}

Graph relabel(const Graph& g, std::uint64_t seed) {
    std::vector<std::size_t> perm(g.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph p = permute_vertices(g, perm);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.num_vertices(); ++i) names.push_back("x" + std::to_string(i));
    return rename_vertices(p, names);
}

// ---------------------------------------------------------------- comparison

namespace {

std::string set_names(const Graph& g, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    for (auto v : s.members()) {
        out += (first ? "" : ",") + g.vertex(v);
        first = false;
    }
    return out + "}";
}

std::string pair_name(const FilteredKTable& t, std::size_t inner, std::size_t outer) {
    const auto& L = t.topology.lattice;
    return set_names(t.graph, L.elements[outer]) + "/" + set_names(t.graph, L.elements[inner]);
}

std::string k1_string(const KOne& k) { return k.to_string(); }

bool same_k1(const KOne& a, const KOne& b) {
    if (a.kernel_rank() != b.kernel_rank()) return false;
    if (a.coker_part.group && b.coker_part.group) return *a.coker_part.group == *b.coker_part.group;
    return a.coker_part.expression == b.coker_part.expression;
}

std::string invariants_string(const MapInvariants& m) {
    return "ker " + m.kernel.to_string() + ", im " + m.image.to_string() + ", coker " + m.cokernel.to_string();
}

// K0 of the pair (inner ⊆ outer) as a presented group on the subquotient graph.
struct PairK0 {
    Graph graph;
    PresentedGroup group;
};

class PairCache {
public:
    explicit PairCache(const FilteredKTable& t) : t_(t) {}
    const PairK0& get(std::size_t inner, std::size_t outer) {
        auto key = std::make_pair(inner, outer);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const auto& L = t_.topology.lattice;
        Graph q = subquotient(t_.graph, L.elements[inner], L.elements[outer]);
        PresentedGroup grp = k0(q).group;
        return cache_.emplace(key, PairK0{std::move(q), std::move(grp)}).first->second;
    }

private:
    const FilteredKTable& t_;
    std::map<std::pair<std::size_t, std::size_t>, PairK0> cache_;
};

std::vector<std::size_t> iota_n(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Matrix of a vertex-name map between pair groups, in normal-form coordinates (finite groups only).
IntMatrix coordinate_map(const PairK0& from, const PairK0& to) {
    IntMatrix M = name_map(from.graph, iota_n(from.graph.num_vertices()), to.graph, iota_n(to.graph.num_vertices()));
    const std::size_t k = from.group.normal_form().torsion.size(), k2 = to.group.normal_form().torsion.size();
    IntMatrix C(k2, k);
    for (std::size_t t = 0; t < k; ++t) {
        IntVector u(k, Int(0));
        u[t] = 1;
        IntVector y = to.group.coordinates(M * from.group.from_coordinates(u));
        for (std::size_t r = 0; r < k2; ++r) C(r, t) = y[r];
    }
    return C;
}

IntVector reduce(IntVector x, const std::vector<Int>& orders) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] %= orders[i];
        if (x[i] < 0) x[i] += orders[i];
    }
    return x;
}

// All isomorphisms between two finite groups with the same invariant factors, as coordinate matrices.
std::optional<std::vector<IntMatrix>> all_isomorphisms(const std::vector<Int>& d, std::size_t cap) {
    const std::size_t k = d.size();
    if (k == 0) return std::vector<IntMatrix>{IntMatrix(0, 0)};
    Int order = 1;
    for (const auto& x : d) order *= x;
    if (order > 1000000) return std::nullopt;
    // every element of ⊕ Z/d as a coordinate vector
    std::vector<IntVector> elems;
    IntVector cur(k, Int(0));
    for (;;) {
        elems.push_back(cur);
        std::size_t i = 0;
        while (i < k && cur[i] + 1 == d[i]) cur[i++] = 0;
        if (i == k) break;
        cur[i] += 1;
    }
    std::vector<std::vector<const IntVector*>> cand(k);
    Int combos = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& y : elems) {
            bool ok = true;
            for (std::size_t t = 0; t < k && ok; ++t) ok = (d[i] * y[t]) % d[t] == 0;
            if (ok) cand[i].push_back(&y);
        }
        combos *= static_cast<unsigned long>(cand[i].size());
    }
    if (combos > Int(static_cast<unsigned long>(cap) * 100)) return std::nullopt;
    IntMatrix diag = IntMatrix::diagonal(d);
    std::vector<IntMatrix> out;
    std::vector<std::size_t> pick(k, 0);
    for (;;) {
        IntMatrix M(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t t = 0; t < k; ++t) M(t, i) = (*cand[i][pick[i]])[t];
        if (PresentedGroup::cokernel(M.hconcat(diag)).normal_form().is_trivial()) {
            out.push_back(M);
            if (out.size() > cap) return std::nullopt;
        }
        std::size_t i = 0;
        while (i < k && pick[i] + 1 == cand[i].size()) pick[i++] = 0;
        if (i == k) break;
        ++pick[i];
    }
    return out;
}

SquareSearch square_search(const FilteredKTable& a, const std::vector<std::size_t>& f,
                           PairCache& ca, PairCache& cb, const CompareOptions& opts) {
    SquareSearch s;
    const auto& L = a.topology.lattice;
    // variables: pairs with finite K0 on both sides
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> var_of;
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    std::vector<std::vector<Int>> orders;
    std::vector<std::vector<IntMatrix>> domains;
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < L.size(); ++j) {
            if (!L.leq[i][j]) continue;
            const FgAbGroup& g1 = ca.get(i, j).group.normal_form();
            const FgAbGroup& g2 = cb.get(f[i], f[j]).group.normal_form();
            if (!g1.is_finite() || g1 != g2 || g1.is_trivial()) continue;
            if (g1.order() > static_cast<unsigned long>(opts.square_group_cap)) {
                s.note = "group " + g1.to_string() + " exceeds the square search cap";
                return s;
            }
            auto isos = all_isomorphisms(g1.torsion, opts.square_iso_cap);
            if (!isos) {
                s.note = "too many automorphisms of " + g1.to_string();
                return s;
            }
            var_of[{i, j}] = vars.size();
            vars.emplace_back(i, j);
            orders.push_back(g1.torsion);
            domains.push_back(std::move(*isos));
        }
    s.attempted = true;
    s.variables = vars.size();

    // constraints: α_B T1 = T2 α_A for the two K0 maps of each row
    struct Constraint {
        std::size_t A, B;
        IntMatrix T1, T2;
    };
    std::vector<Constraint> cons;
    auto add = [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        auto A = var_of.find({i1, j1}), B = var_of.find({i2, j2});
        if (A == var_of.end() || B == var_of.end()) return;
        cons.push_back({A->second, B->second, coordinate_map(ca.get(i1, j1), ca.get(i2, j2)),
                        coordinate_map(cb.get(f[i1], f[j1]), cb.get(f[i2], f[j2]))});
    };
    for (const auto& r : a.rows) {
        add(r.I, r.J, r.I, r.P);
        add(r.I, r.P, r.J, r.P);
    }

    auto satisfied = [&](const Constraint& c, const IntMatrix& aA, const IntMatrix& aB) {
        const std::size_t k = orders[c.A].size();
        for (std::size_t t = 0; t < k; ++t) {
            IntVector u(k, Int(0));
            u[t] = 1;
            IntVector lhs = reduce(aB * reduce(c.T1 * u, orders[c.B]), orders[c.B]);
            IntVector rhs = reduce(c.T2 * reduce(aA * u, orders[c.A]), orders[c.B]);
            if (lhs != rhs) return false;
        }
        return true;
    };

    std::vector<std::size_t> choice(vars.size(), 0);
    std::function<bool(std::size_t)> assign = [&](std::size_t v) -> bool {
        if (v == vars.size()) return true;
        for (std::size_t c = 0; c < domains[v].size(); ++c) {
            if (++s.nodes > opts.square_node_cap) {
                s.exhausted_budget = true;
                return false;
            }
            choice[v] = c;
            bool ok = true;
            for (const auto& con : cons) {
                const std::size_t hi = std::max(con.A, con.B);
                if (hi != v) continue;
                if (!satisfied(con, domains[con.A][choice[con.A]], domains[con.B][choice[con.B]])) {
                    ok = false;
                    break;
                }
            }
            if (ok && assign(v + 1)) return true;
            if (s.exhausted_budget) return false;
        }
        return false;
    };
    s.found = assign(0);
    if (s.found) s.note = "commuting isomorphisms found";
    else if (s.exhausted_budget) s.note = "node budget exhausted";
    else s.note = "no commuting choice of isomorphisms";
    return s;
}

struct Attempt {
    std::vector<FkCheck> checks;
    SquareSearch squares;
    std::size_t score = 0;  // checks passed before the first failure
    bool consistent = false;
};

Attempt try_iso(const FilteredKTable& a, const FilteredKTable& b, const std::vector<std::size_t>& f, PairCache& ca,
                PairCache& cb, const CompareOptions& opts) {
    Attempt at;
    auto push = [&](FkCheck c) {
        at.checks.push_back(std::move(c));
        return at.checks.back().match;
    };
    // groups per locally closed set
    for (const auto& e : a.entries) {
        const std::size_t bi = f[e.y.inner], bo = f[e.y.outer];
        const PairK0& q = cb.get(bi, bo);
        std::string where = pair_name(a, e.y.inner, e.y.outer) + " ~ " + pair_name(b, bi, bo);
        const FgAbGroup& k0b = q.group.normal_form();
        if (!push({"K0", where, e.k0.to_string(), k0b.to_string(), e.k0 == k0b})) return at;
        ++at.score;
        KOne k1b = k1_with(q.graph, b.coeff);
        if (!push({"K1bar", where, k1_string(e.k1bar), k1_string(k1b), same_k1(e.k1bar, k1b)})) return at;
        ++at.score;
    }
    // structural invariants of the row maps
    static const char* names[] = {"tau", "tau'", "delta", "taubar", "taubar'"};
    for (const auto& r : a.rows) {
        const FkRow* rb = b.row_for(f[r.I], f[r.J], f[r.P]);
        if (!rb) throw Error("compare_fkbar: matched row missing");
        std::string where = pair_name(a, r.I, r.J) + " < " + pair_name(a, r.I, r.P);
        for (std::size_t m = 0; m < r.row.integer_maps.size(); ++m) {
            MapInvariants x = map_invariants(r.row.integer_maps[m]), y = map_invariants(rb->row.integer_maps[m]);
            if (!push({"map", std::string(names[m]) + " at " + where, invariants_string(x), invariants_string(y), x == y}))
                return at;
            ++at.score;
        }
        if (r.row.full_maps.size() == rb->row.full_maps.size())
            for (std::size_t m = 0; m < r.row.full_maps.size(); ++m) {
                MapInvariants x = map_invariants(r.row.full_maps[m]), y = map_invariants(rb->row.full_maps[m]);
                if (!push({"map", "full " + std::string(names[m]) + " at " + where, invariants_string(x),
                           invariants_string(y), x == y}))
                    return at;
                ++at.score;
            }
    }
    const bool ea = a.exact(), eb = b.exact();
    if (!push({"exactness", "all rows", ea ? "exact" : "not exact", eb ? "exact" : "not exact", ea && eb})) return at;
    ++at.score;
    at.squares = square_search(a, f, ca, cb, opts);
    if (at.squares.attempted && !at.squares.found && !at.squares.exhausted_budget) {
        push({"squares", "K0 maps", "", at.squares.note, false});
        return at;
    }
    at.consistent = true;
    return at;
}

}  // namespace

ComparisonReport compare_fkbar(const FilteredKTable& a, const FilteredKTable& b, const CompareOptions& opts) {
    ComparisonReport rep;
    rep.exact_left = a.exact();
    rep.exact_right = b.exact();
    const auto& L1 = a.topology.lattice;
    const auto& L2 = b.topology.lattice;

    std::vector<std::vector<std::size_t>> isos;
    if (opts.certificate) {
        isos.push_back(lattice_iso_from_certificate(a.graph, L1, b.graph, L2, *opts.certificate));
        rep.from_certificate = true;
    } else {
        isos = lattice_isomorphisms(L1, L2);
    }
    if (isos.empty()) {
        rep.obstruction_kind = "lattice";
        rep.obstruction = "ideal lattices are not isomorphic (" + std::to_string(L1.size()) + " vs " +
                          std::to_string(L2.size()) + " elements, " + std::to_string(a.topology.num_primes()) +
                          " vs " + std::to_string(b.topology.num_primes()) + " primes)";
        return rep;
    }
    rep.lattices_isomorphic = true;

    PairCache ca(a), cb(b);
    std::optional<Attempt> best;
    for (const auto& f : isos) {
        if (rep.isomorphisms_tried >= opts.iso_cap) break;
        ++rep.isomorphisms_tried;
        Attempt at = try_iso(a, b, f, ca, cb, opts);
        const bool better = !best || at.score > best->score;
        if (at.consistent || better) {
            rep.lattice_iso = f;
            best = std::move(at);
        }
        if (best->consistent) break;
    }
    rep.checks = best->checks;
    rep.squares = best->squares;
    rep.consistent = best->consistent;
    if (!rep.consistent) {
        const FkCheck& bad = rep.checks.back();
        rep.obstruction_kind = bad.kind;
        rep.obstruction = bad.kind + " differs at " + bad.where + ": " + bad.left + " vs " + bad.right;
        if (rep.isomorphisms_tried < isos.size()) {
            rep.truncated = true;
            rep.obstruction += " (only " + std::to_string(rep.isomorphisms_tried) + " lattice isomorphisms tried)";
        }
    }
    return rep;
}

ComparisonReport compare_fkbar(const Graph& g1, const Graph& g2, const CoeffGroup& coeff, const CompareOptions& opts) {
    return compare_fkbar(fkbar(g1, coeff, opts.fk), fkbar(g2, coeff, opts.fk), opts);
}

}  // namespace lpk
