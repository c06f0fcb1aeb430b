#include "doctest.h"

#include "lpk/dynamics.hpp"
#include "lpk/errors.hpp"
#include "lpk/families.hpp"
#include "lpk/graph_monoid.hpp"
#include "oracles.hpp"

#include <random>

using namespace lpk;
namespace fam = lpk::families;
using SK = ShiftEqResult::Kind;

namespace {

IntMatrix random_nonneg(std::mt19937_64& rng, std::size_t n, unsigned max) {
    IntMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = static_cast<long>(rng() % (max + 1));
    return A;
}

}  // namespace

TEST_CASE("bowen_franks and det_invariant examples") {
    CHECK(bowen_franks(IntMatrix{{2}}).is_trivial());
    CHECK(bowen_franks(IntMatrix{{1, 1}, {1, 0}}).is_trivial());
    CHECK(bowen_franks(IntMatrix{{3}}) == FgAbGroup::from_cyclic(0, {Int(2)}));
    CHECK(bowen_franks(IntMatrix{{1}}) == FgAbGroup{1, {}});
    CHECK(det_invariant(IntMatrix{{2}}) == -1);
    CHECK(det_invariant(IntMatrix{{1, 1}, {1, 1}}) == -1);
    CHECK(det_invariant(IntMatrix::zero(3, 3)) == 1);
    CHECK_THROWS_AS(bowen_franks(IntMatrix(2, 3)), PreconditionError);
    CHECK_THROWS_AS(det_invariant(IntMatrix(1, 2)), PreconditionError);
}

TEST_CASE("bowen_franks matches the minors oracle") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        IntMatrix A = random_nonneg(rng, 1 + t % 4, 3);
        IntMatrix M = IntMatrix::identity(A.rows()) - A;
        auto d = oracle::invariant_factors_by_minors(M);
        std::vector<Int> tors;
        for (const auto& x : d)
            if (x != 1) tors.push_back(x);
        CHECK(bowen_franks(A) == FgAbGroup{A.rows() - d.size(), tors});
        CHECK(det_invariant(A) == oracle::det_cofactor(M));
    }
}

TEST_CASE("verify_certificate examples") {
    IntMatrix A{{2}}, B{{1, 1}, {1, 1}};
    ShiftEqCertificate c{IntMatrix{{1, 1}}, IntMatrix{{1}, {1}}, 1};
    CHECK(verify_certificate(A, B, c));
    c.lag = 2;
    CHECK_FALSE(verify_certificate(A, B, c));
    CHECK_THROWS_AS(verify_certificate(A, B, ShiftEqCertificate{IntMatrix{{1}}, IntMatrix{{1}}, 1}), PreconditionError);
    IntMatrix I2 = IntMatrix::identity(2);
    CHECK(verify_certificate(I2, I2, {I2, I2, 1}));
    CHECK_FALSE(verify_certificate(B, B, {I2, I2, 1}));
}

TEST_CASE("every matrix is shift equivalent to itself") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        IntMatrix A = random_nonneg(rng, 1 + t % 4, 2);
        CHECK(verify_certificate(A, A, {A, IntMatrix::identity(A.rows()), 1}));
    }
}

TEST_CASE("shift_equivalent_bounded examples") {
    auto r = shift_equivalent_bounded(IntMatrix{{2}}, IntMatrix{{1, 1}, {1, 1}}, 2, 1);
    REQUIRE(r.kind == SK::Certificate);
    CHECK(r.certificate->lag == 1);
    CHECK(r.certificate->R == IntMatrix{{1, 1}});
    CHECK(verify_certificate(IntMatrix{{2}}, IntMatrix{{1, 1}, {1, 1}}, *r.certificate));
    auto o = shift_equivalent_bounded(IntMatrix{{2}}, IntMatrix{{3}}, 2, 2);
    CHECK(o.kind == SK::Obstruction);
    CHECK(o.reason.find("Bowen-Franks") != std::string::npos);
    CHECK(shift_equivalent_bounded(IntMatrix{{2}}, IntMatrix{{4}}, 2, 2).kind == SK::Obstruction);
    // golden mean and its transpose-like relabeling
    auto g = shift_equivalent_bounded(IntMatrix{{1, 1}, {1, 0}}, IntMatrix{{0, 1}, {1, 1}}, 1, 1);
    CHECK(g.kind == SK::Certificate);
    // [1] and [[1,1],[0,1]] share BF = Z and det 0, but are not shift equivalent (different growth)
    auto u = shift_equivalent_bounded(IntMatrix{{1}}, IntMatrix{{1, 1}, {0, 1}}, 2, 2);
    CHECK(u.kind == SK::Unknown);
    CHECK_FALSE(u.truncated);
    auto tr = shift_equivalent_bounded(IntMatrix{{1}}, IntMatrix{{1, 1}, {0, 1}}, 3, 3, 5);
    CHECK(tr.kind == SK::Unknown);
    CHECK(tr.truncated);
    CHECK_THROWS_AS(shift_equivalent_bounded(IntMatrix{{-1}}, IntMatrix{{1}}, 1, 1), PreconditionError);
}

TEST_CASE("certificates found by search are sound and respect invariants") {
    std::mt19937_64 rng(13);
    std::size_t found = 0;
    for (int t = 0; t < 60; ++t) {
        IntMatrix A = random_nonneg(rng, 1 + t % 2, 2), B = random_nonneg(rng, 1 + (t / 2) % 2, 2);
        auto r = shift_equivalent_bounded(A, B, 2, 2, 200000);
        if (r.kind == SK::Certificate) {
            ++found;
            CHECK(verify_certificate(A, B, *r.certificate));
            CHECK(bowen_franks(A) == bowen_franks(B));
            CHECK(det_invariant(A) == det_invariant(B));
        }
        // a permuted copy is always found at lag 1
        IntMatrix P = IntMatrix::identity(A.rows());
        if (A.rows() == 2) P = IntMatrix{{0, 1}, {1, 0}};
        auto s = shift_equivalent_bounded(A, P * A * P, 1, 2, 200000);
        CHECK(s.kind == SK::Certificate);
    }
    CHECK(found > 0);
}

TEST_CASE("dimension triple examples") {
    DimensionTriple t(IntMatrix{{2}});
    CHECK(dimension_triple_equal(t, {0, {Int(1)}}, {1, {Int(2)}}));
    CHECK_FALSE(dimension_triple_equal(t, {0, {Int(1)}}, {0, {Int(2)}}));
    DimensionTriple nil(IntMatrix{{0, 0}, {1, 0}});
    CHECK(dimension_triple_equal(nil, {0, {Int(1), Int(0)}}, {0, {Int(0), Int(0)}}));
    CHECK_THROWS_AS(DimensionTriple(IntMatrix{{-1}}), PreconditionError);
    CHECK(dimension_positive(t, {3, {Int(1)}}, 0));
    CHECK_FALSE(dimension_positive(t, {0, {Int(-1)}}, 5));
    DimensionTriple s(IntMatrix{{1, 1}, {1, 1}});
    CHECK(dimension_positive(s, {0, {Int(2), Int(-1)}}, 1));
}

TEST_CASE("dimension triple equality is a congruence") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        DimensionTriple T(random_nonneg(rng, 1 + t % 3, 2));
        const std::size_t n = T.size();
        auto rnd = [&] {
            DimElement e{static_cast<long>(rng() % 4) - 2, IntVector(n)};
            for (auto& x : e.x) x = static_cast<long>(rng() % 7) - 3;
            return e;
        };
        DimElement a = rnd(), c = rnd();
        DimElement b{a.level + 1, T.A * a.x};  // same class as a
        CHECK(dimension_triple_equal(T, a, b));
        CHECK(dimension_triple_equal(T, b, a));
        CHECK(dimension_triple_equal(T, dimension_add(T, a, c), dimension_add(T, b, c)));
        CHECK(dimension_triple_equal(T, dimension_shift(T, a), dimension_shift(T, b)));
        CHECK(dimension_triple_equal(T, a, c) == dimension_triple_equal(T, dimension_shift(T, a), dimension_shift(T, c)));
    }
}

TEST_CASE("graded equality agrees with the dimension group on sink-free graphs") {
    std::mt19937_64 rng(19);
    std::size_t graphs = 0;
    for (const auto& g : fam::random_connected(23, 120, 1, 4, 2)) {
        if (!g.sinks().empty()) continue;
        ++graphs;
        DimensionTriple T(dynamics_matrix(g));
        for (int t = 0; t < 6; ++t) {
            GradedElement a, b;
            for (int k = 0; k < 3; ++k) {
                a.add(rng() % g.num_vertices(), static_cast<long>(rng() % 4) - 2, static_cast<long>(rng() % 5) - 2);
                b.add(rng() % g.num_vertices(), static_cast<long>(rng() % 4) - 2, static_cast<long>(rng() % 5) - 2);
            }
            if (t % 2 == 0 && !a.is_zero()) b = graded_expand_to_level(g, a, a.min_level() - 1);
            bool graded = graded_equal(g, a, b).kind == EqVerdict::Kind::Equal;
            CHECK(graded == dimension_triple_equal(T, to_dimension(g, a), to_dimension(g, b)));
        }
    }
    CHECK(graphs > 10);
}
