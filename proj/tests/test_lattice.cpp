#include "doctest.h"

#include "lpk/errors.hpp"
#include "lpk/families.hpp"
#include "lpk/ideal_lattice.hpp"

#include <set>

using namespace lpk;
namespace fam = lpk::families;

namespace {

std::set<std::vector<std::string>> named(const Graph& g, const IdealLattice& L) {
    std::set<std::vector<std::string>> out;
    for (const auto& H : L.elements) {
        std::vector<std::string> names;
        for (auto v : H.members()) names.push_back(g.vertex(v));
        out.insert(names);
    }
    return out;
}

}  // namespace

TEST_CASE("hsat_closure examples") {
    CHECK(hsat_closure(fam::line(), VertexSet(2, {1})) == VertexSet::full(2));
    CHECK(hsat_closure(fam::line(), VertexSet(2)).empty());
    CHECK(hsat_closure(fam::fan(), VertexSet(3, {1})) == VertexSet(3, {1}));
    CHECK(hsat_closure(fam::fan(), VertexSet(3, {1, 2})) == VertexSet::full(3));
}

TEST_CASE("enumerate_hsat examples") {
    using S = std::set<std::vector<std::string>>;
    Graph l = fam::line();
    CHECK(named(l, enumerate_hsat(l)) == S{{}, {"v", "w"}});
    Graph E = fam::two_vertex_example();
    CHECK(named(E, enumerate_hsat(E)) == S{{}, {"u", "v"}});
    Graph f = fam::fan();
    CHECK(named(f, enumerate_hsat(f)) == S{{}, {"w1"}, {"w2"}, {"v", "w1", "w2"}});
    CHECK_THROWS_AS(enumerate_hsat(fam::sinks(13), 4096), CapExceeded);
    CHECK(enumerate_hsat(fam::sinks(12), 4096).size() == 4096);
}

TEST_CASE("closure and lattice properties over random graphs") {
    for (const auto& g : fam::random_connected(19, 80, 1, 7, 2)) {
        IdealLattice L = enumerate_hsat(g);
        IdealLattice B = enumerate_hsat_bruteforce(g);
        REQUIRE(L.elements == B.elements);
        CHECK(L.elements.front().empty());
        CHECK(L.elements.back().is_full());
        for (std::size_t i = 0; i < L.size(); ++i)
            for (std::size_t j = 0; j < L.size(); ++j) {
                CHECK(is_hsat(g, L.elements[i] & L.elements[j]));
                CHECK(L.elements[L.meet(i, j)] == (L.elements[i] & L.elements[j]));
            }
        // closure: extensive, idempotent, monotone, least
        const std::size_t n = g.num_vertices();
        for (std::uint64_t mask = 0; mask < (1u << n); mask += 1 + mask / 3) {
            VertexSet s(n);
            for (std::size_t v = 0; v < n; ++v)
                if (mask >> v & 1u) s.insert(v);
            VertexSet c = hsat_closure(g, s);
            CHECK(s.subset_of(c));
            CHECK(hsat_closure(g, c) == c);
            for (const auto& H : L.elements)
                if (s.subset_of(H)) CHECK(c.subset_of(H));
            for (std::size_t v = 0; v < n; ++v) {
                VertexSet t = s;
                t.insert(v);
                CHECK(c.subset_of(hsat_closure(g, t)));
            }
        }
    }
}

TEST_CASE("graded primes and open sets") {
    Graph f = fam::fan();
    auto ts = graded_primes(f);
    REQUIRE(ts.num_primes() == 2);
    CHECK(ts.lattice.elements[ts.primes[0]].size() == 1);
    CHECK(ts.lattice.elements[ts.primes[1]].size() == 1);
    CHECK(ts.opens[ts.lattice.top()].size() == 2);
    CHECK(ts.opens[ts.lattice.bottom()].empty());

    auto tl = graded_primes(fam::line());
    REQUIRE(tl.num_primes() == 1);
    CHECK(tl.lattice.elements[tl.primes[0]].empty());
    auto tr = graded_primes(fam::rose(2));
    REQUIRE(tr.num_primes() == 1);
    CHECK(tr.lattice.elements[tr.primes[0]].empty());
}

TEST_CASE("kernel_of") {
    Graph f = fam::fan();
    auto ts = graded_primes(f);
    CHECK(kernel_of(ts, VertexSet::full(2)).empty());
    CHECK(kernel_of(ts, VertexSet(2, {0})) == ts.lattice.elements[ts.primes[0]]);
    CHECK(kernel_of(ts, VertexSet(2)).is_full());
}

TEST_CASE("spectrum properties over random graphs") {
    for (const auto& g : fam::random_connected(29, 80, 1, 6, 2)) {
        auto ts = graded_primes(g);
        const auto& L = ts.lattice;
        CHECK(lattice_prime_elements(L) == ts.primes);
        std::set<std::vector<std::size_t>> opens;
        for (const auto& U : ts.opens) opens.insert(U.members());
        CHECK(opens.size() == L.size());
        CHECK(opens.count({}) == 1);
        CHECK(opens.count(VertexSet::full(ts.num_primes()).members()) == 1);
        for (std::size_t a = 0; a < L.size(); ++a) {
            CHECK(kernel_of(ts, ts.opens[a].complement()) == L.elements[a]);
            for (std::size_t b = 0; b < L.size(); ++b) {
                CHECK(opens.count((ts.opens[a] | ts.opens[b]).members()) == 1);
                CHECK(opens.count((ts.opens[a] & ts.opens[b]).members()) == 1);
                CHECK(ts.opens[L.meet(a, b)] == (ts.opens[a] & ts.opens[b]));
                CHECK(ts.opens[L.join(a, b)] == (ts.opens[a] | ts.opens[b]));
            }
        }
        // every lattice element is the intersection of the primes containing it
        for (std::size_t h = 0; h < L.size(); ++h) {
            VertexSet acc = g.all();
            for (auto p : ts.primes)
                if (L.leq[h][p]) acc = acc & L.elements[p];
            CHECK(acc == L.elements[h]);
        }
        // canonical locally closed pairs
        auto lcs = locally_closed_all(ts);
        std::set<std::vector<std::size_t>> diffs;
        for (const auto& y : lcs) {
            CHECK(L.leq[y.inner][y.outer]);
            CHECK((ts.opens[y.outer] - ts.opens[y.inner]) == y.primes);
            CHECK(diffs.insert(y.primes.members()).second);
            for (std::size_t u = 0; u < L.size(); ++u)
                for (std::size_t v = 0; v < L.size(); ++v)
                    if (L.leq[v][u] && (ts.opens[u] - ts.opens[v]) == y.primes)
                        CHECK(ts.opens[y.outer].subset_of(ts.opens[u]));
        }
        CHECK(lcs.front().primes.empty());
    }
}

TEST_CASE("locally closed examples") {
    auto tr = graded_primes(fam::rose(2));
    auto lr = locally_closed_all(tr);
    CHECK(lr.size() == 2);
    auto tf = graded_primes(fam::fan());
    auto lf = locally_closed_all(tf);
    CHECK(lf.size() == 4);
    CHECK(locally_closed_graph(fam::fan(), tf, lf.back()) == fam::fan());
    auto tl = graded_primes(fam::line());
    CHECK(locally_closed_all(tl).size() == 2);
}

TEST_CASE("lattice isomorphisms") {
    auto chain2 = enumerate_hsat(fam::rose(2));
    CHECK(lattice_isomorphisms(chain2, chain2).size() == 1);
    auto fl = enumerate_hsat(fam::fan());
    CHECK(lattice_isomorphisms(fl, fl).size() == 2);
    Graph chain3 = Graph::from_names({"a", "b"}, {{"x", "a", "a"}, {"y", "a", "b"}, {"z", "b", "b"}});
    CHECK(enumerate_hsat(chain3).size() == 3);
    CHECK(lattice_isomorphisms(chain2, enumerate_hsat(chain3)).empty());
}
