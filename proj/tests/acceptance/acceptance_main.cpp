// One PASS/FAIL line per acceptance criterion; exit status 1 if any line fails.

#include "../oracles.hpp"

#include "lpk/dynamics.hpp"
#include "lpk/families.hpp"
#include "lpk/filtered_k.hpp"
#include "lpk/graph_monoid.hpp"
#include "lpk/ideal_lattice.hpp"
#include "lpk/k_invariants.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace lpk;
namespace fam = lpk::families;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(int n, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.ok && secs > limit_seconds) {
        std::ostringstream ss;
        ss << "took " << secs << " s, limit " << limit_seconds << " s";
        out.fail(ss.str());
    }
    if (!out.ok) ++failures;
    std::printf("%s %2d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", n, title, secs, out.detail.empty() ? "" : ": ",
                out.detail.c_str());
    std::fflush(stdout);
}

// Every connected graph with at most 3 vertices and at most 2 parallel edges per ordered pair, then a
// seeded random sample with up to 4 vertices, then the named families.
std::vector<Graph> corpus() {
    std::vector<Graph> c;
    for (std::size_t n = 1; n <= 3; ++n) {
        std::size_t total = 1;
        for (std::size_t k = 0; k < n * n; ++k) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            IntMatrix A(n, n);
            std::size_t x = code;
            for (std::size_t k = 0; k < n * n; ++k, x /= 3) A(k / n, k % n) = static_cast<long>(x % 3);
            Graph g = fam::from_matrix(A);
            if (fam::is_weakly_connected(g)) c.push_back(std::move(g));
        }
    }
    for (auto& g : fam::random_connected(2024, 220, 1, 4, 2)) c.push_back(std::move(g));
    for (Graph g : {fam::rose(2), fam::rose(3), fam::rose(5), fam::loop(), fam::fan(), fam::line(), fam::loop_pair(),
                    fam::two_vertex_example(), fam::sinks(3)})
        c.push_back(g);
    return c;
}

std::vector<std::string> sets_text(const Graph& g, const IdealLattice& L) {
    std::vector<std::string> out;
    for (const auto& H : L.elements) {
        std::string s;
        for (auto v : H.members()) s += g.vertex(v) + ",";
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string describe(const Graph& g) { return "[" + g.to_text() + "]"; }

}  // namespace

int main() {
    const auto graphs = corpus();
    std::printf("corpus: %zu graphs\n", graphs.size());

    criterion(1, "K1 and reduced K1 of the single loop over F5", 1.0, [](Outcome& o) {
        const auto f5 = FieldModel::finite(5);
        auto a = k1(fam::loop(), f5), b = k1bar(fam::loop(), f5);
        if (a.to_string() != "Z ⊕ Z/4") o.fail("k1 = " + a.to_string());
        if (b.to_string() != "Z ⊕ Z/2") o.fail("k1bar = " + b.to_string());
        if (!a.group() || *a.group() != FgAbGroup::from_cyclic(1, {4})) o.fail("k1 group");
        if (!b.group() || *b.group() != FgAbGroup::from_cyclic(1, {2})) o.fail("k1bar group");
    });

    criterion(2, "K0 of roses with 2, 3, 5 petals against the reduction oracle", 1.0, [](Outcome& o) {
        const std::vector<std::pair<std::size_t, FgAbGroup>> want = {
            {2, FgAbGroup::from_cyclic(0, {})}, {3, FgAbGroup::from_cyclic(0, {2})}, {5, FgAbGroup::from_cyclic(0, {4})}};
        for (const auto& [n, expected] : want) {
            Graph g = fam::rose(n);
            FgAbGroup got = k0(g).group.normal_form();
            IntMatrix K = k_matrix(g);
            auto d = oracle::invariant_factors_by_reduction(K);
            FgAbGroup ref = FgAbGroup::from_cyclic(K.rows() - d.size(), d);
            if (got != expected) o.fail("rose " + std::to_string(n) + ": " + got.to_string());
            if (ref != got) o.fail("oracle disagrees on rose " + std::to_string(n) + ": " + ref.to_string());
        }
    });

    criterion(3, "shift equivalence of [2] and [[1,1],[1,1]]", 10.0, [](Outcome& o) {
        IntMatrix A{{2}}, B{{1, 1}, {1, 1}};
        auto r = shift_equivalent_bounded(A, B, 2, 1);
        if (r.kind != ShiftEqResult::Kind::Certificate || !r.certificate) {
            o.fail("no certificate: " + r.reason);
            return;
        }
        const auto& c = *r.certificate;
        if (c.lag != 1) o.fail("lag " + std::to_string(c.lag));
        for (const auto* M : {&c.R, &c.S})
            for (std::size_t i = 0; i < M->rows(); ++i)
                for (std::size_t j = 0; j < M->cols(); ++j)
                    if ((*M)(i, j) < 0 || (*M)(i, j) > 1) o.fail("entry out of range");
        if (!verify_certificate(A, B, c)) o.fail("certificate rejected");
        if (!bowen_franks(A).is_trivial() || !bowen_franks(B).is_trivial()) o.fail("Bowen-Franks not trivial");
        if (det_invariant(A) != -1 || det_invariant(B) != -1) o.fail("det(I - A) not -1");
    });

    criterion(4, "six-term rows exact over the corpus (Z level and F3 coefficients)", 600.0, [&](Outcome& o) {
        const auto f3 = FieldModel::finite(3);
        const std::vector<CoeffGroup> coeffs = {f3.units(), f3.reduced_units()};
        std::size_t rows = 0, enumerated = 0;
        for (const auto& g : graphs) {
            auto L = enumerate_hsat(g);
            for (std::size_t i = 0; i < L.size(); ++i)
                for (std::size_t j = 0; j < L.size(); ++j) {
                    if (!L.leq[i][j]) continue;
                    for (std::size_t p = 0; p < L.size(); ++p) {
                        if (!L.leq[j][p]) continue;
                        for (const auto& c : coeffs) {
                            auto row = six_term_row(g, L.elements[i], L.elements[j], L.elements[p], c, 10000);
                            ++rows;
                            if (row.integer_exactness.size() != 4) o.fail("expected four interior nodes");
                            if (!row.exact()) o.fail("row not exact on " + describe(g));
                            if (row.coefficient_enumerated) ++enumerated;
                        }
                    }
                }
        }
        std::printf("     %zu rows, %zu with the coefficient row listed element by element\n", rows, enumerated);
    });

    criterion(5, "quotient roundtrip for every nested pair", 300.0, [&](Outcome& o) {
        std::size_t pairs = 0;
        for (const auto& g : graphs) {
            auto L = enumerate_hsat(g);
            for (std::size_t i = 0; i < L.size(); ++i)
                for (std::size_t j = 0; j < L.size(); ++j) {
                    if (!L.leq[i][j]) continue;
                    auto r = quotient_roundtrip(g, L.elements[i], L.elements[j], 100, 17 + pairs);
                    ++pairs;
                    if (!r.passed) o.fail(describe(g) + ": " + r.counterexample);
                    if (r.checked < 100) o.fail("fewer than 100 samples checked");
                }
        }
        std::printf("     %zu nested pairs\n", pairs);
    });

    criterion(6, "psi diagram on 100 random vectors per graph", 120.0, [&](Outcome& o) {
        std::uint64_t seed = 1;
        for (const auto& g : graphs) {
            auto r = psi_diagram_check(g, 100, seed++);
            if (!r.passed) o.fail(describe(g) + ": " + r.counterexample);
        }
    });

    criterion(7, "snake consistency on 50 kernel elements per (graph, H)", 300.0, [&](Outcome& o) {
        std::uint64_t seed = 1;
        std::size_t pairs = 0;
        for (const auto& g : graphs)
            for (const auto& H : enumerate_hsat(g).elements) {
                auto r = snake_check(g, H, 50, seed++);
                ++pairs;
                if (!r.passed) o.fail(describe(g) + ": " + r.counterexample);
            }
        std::printf("     %zu (graph, H) pairs\n", pairs);
    });

    criterion(8, "lattice and spectrum oracles", 120.0, [&](Outcome& o) {
        for (const auto& g : graphs) {
            if (g.num_vertices() > 10) continue;
            auto L = enumerate_hsat(g);
            if (sets_text(g, L) != sets_text(g, enumerate_hsat_bruteforce(g))) o.fail("lattice differs on " + describe(g));
            auto ts = graded_primes(g, L);
            for (std::size_t h = 0; h < L.size(); ++h) {
                VertexSet rest(ts.num_primes());
                for (std::size_t p = 0; p < ts.num_primes(); ++p)
                    if (!ts.opens[h].contains(p)) rest.insert(p);
                if (kernel_of(ts, rest) != L.elements[h]) o.fail("kernel of the closed complement on " + describe(g));
            }
        }
        // a larger graph, still within the brute-force range
        auto big = fam::random_connected(99, 3, 8, 10, 1);
        for (const auto& g : big)
            if (sets_text(g, enumerate_hsat(g)) != sets_text(g, enumerate_hsat_bruteforce(g)))
                o.fail("lattice differs on " + describe(g));
        if (graded_primes(fam::fan()).num_primes() != 2) o.fail("fan does not have two graded primes");
    });

    criterion(9, "filtered K comparisons", 60.0, [&](Outcome& o) {
        const auto coeff = FieldModel::finite(5).reduced_units();
        std::mt19937_64 rng(9);
        for (int t = 0; t < 50; ++t) {
            const Graph& g = graphs[rng() % graphs.size()];
            auto c = compare_fkbar(g, relabel(g, 1000 + t), coeff);
            if (!c.consistent) o.fail("relabeling of " + describe(g) + ": " + c.obstruction);
        }
        for (const auto& cg : {coeff, FieldModel::symbolic().reduced_units()}) {
            auto r23 = compare_fkbar(fam::rose(2), fam::rose(3), cg);
            if (r23.consistent || r23.obstruction_kind != "K0") o.fail("rose 2 vs rose 3: " + r23.obstruction_kind);
            auto rm = compare_fkbar(fam::rose(2), fam::from_matrix(IntMatrix{{1, 1}, {1, 1}}), cg);
            if (!rm.consistent) o.fail("rose 2 vs [[1,1],[1,1]]: " + rm.obstruction);
        }
    });

    criterion(10, "graded monoid decisions and budget monotonicity", 120.0, [&](Outcome& o) {
        Graph r2 = fam::rose(2);
        auto v0 = parse_graded_element(r2, "v(0)");
        if (graded_equal(r2, v0, parse_graded_element(r2, "2*v(-1)")).kind != EqVerdict::Kind::Equal)
            o.fail("v(0) != 2v(-1)");
        if (graded_equal(r2, v0, parse_graded_element(r2, "v(-1)")).kind != EqVerdict::Kind::NotEqual)
            o.fail("v(0) == v(-1)");
        std::mt19937_64 rng(10);
        std::size_t decided = 0;
        for (int t = 0; t < 500; ++t) {
            const Graph& g = graphs[rng() % graphs.size()];
            MonoidElement a(g.num_vertices()), b(g.num_vertices());
            for (auto* x : {&a, &b})
                for (auto& c : *x) c = static_cast<long>(rng() % 3);
            auto prev = EqVerdict::Kind::Unknown;
            for (auto budget : {MonoidBudget{10, 4}, MonoidBudget{100, 8}, MonoidBudget{2000, 12}, MonoidBudget{20000, 16}}) {
                auto v = ungraded_equal(g, a, b, budget);
                if (prev != EqVerdict::Kind::Unknown && v.kind != prev) o.fail("verdict flipped on " + describe(g));
                if (v.kind == EqVerdict::Kind::Equal && !verify_trace(g, v, a, b)) o.fail("bad trace");
                if (v.kind != EqVerdict::Kind::Unknown) prev = v.kind;
            }
            if (prev != EqVerdict::Kind::Unknown) ++decided;
        }
        std::printf("     %zu of 500 pairs decided\n", decided);
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
