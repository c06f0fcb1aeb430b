#include "doctest.h"
#include "oracles.hpp"

#include "lpk/abelian_group.hpp"
#include "lpk/errors.hpp"
#include "lpk/smith.hpp"

#include <random>

using namespace lpk;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) M(i, j) = d(rng);
    return M;
}

bool is_smith_form(const SmithData& s, const IntMatrix& M) {
    if (!(s.U * M * s.V == s.D)) return false;
    if (abs(s.U.determinant()) != 1 || abs(s.V.determinant()) != 1) return false;
    if (!(s.U * s.Uinv == IntMatrix::identity(M.rows()))) return false;
    if (!(s.V * s.Vinv == IntMatrix::identity(M.cols()))) return false;
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j) {
            if (i == j && i < s.rank()) {
                if (s.D(i, j) != s.diag[i] || s.diag[i] <= 0) return false;
            } else if (s.D(i, j) != 0) {
                return false;
            }
        }
    for (std::size_t i = 0; i + 1 < s.rank(); ++i)
        if (s.diag[i + 1] % s.diag[i] != 0) return false;
    return true;
}

std::size_t finite_profile(const FgAbGroup& g, long k) {
    std::size_t n = 1;
    for (const auto& d : g.torsion) {
        Int t;
        mpz_gcd_ui(t.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(k));
        n *= t.get_ui();
    }
    return n;
}

GroupMap scalar_map(long k, long dom_mod, long cod_mod) {
    auto grp = [](long m) { return m == 0 ? PresentedGroup::free(1) : PresentedGroup(1, IntMatrix{{m}}); };
    return GroupMap(grp(dom_mod), grp(cod_mod), IntMatrix{{k}});
}

}  // namespace

TEST_CASE("snf worked examples") {
    CHECK(snf(IntMatrix::identity(2)).diag == std::vector<Int>{1, 1});
    CHECK(snf(IntMatrix{{2, 4}, {6, 8}}).diag == std::vector<Int>{2, 4});
    CHECK(snf(IntMatrix{{0, 1}, {1, -1}}).diag == std::vector<Int>{1, 1});
    CHECK(snf(IntMatrix(3, 0)).rank() == 0);
    CHECK(snf(IntMatrix(0, 2)).rank() == 0);
}

TEST_CASE("snf factorization and divisibility on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = rng() % 9, c = rng() % 9;
        IntMatrix M = random_matrix(rng, r, c, -9, 9);
        SmithData s = snf(M);
        REQUIRE(is_smith_form(s, M));
        CHECK(snf(M).U == s.U);  // deterministic
    }
}

TEST_CASE("snf invariant factors agree with determinantal divisors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix M = random_matrix(rng, r, c, -6, 6);
        CHECK(snf(M).diag == oracle::invariant_factors_by_minors(M));
        CHECK(snf(M).diag == oracle::invariant_factors_by_reduction(M));
    }
}

TEST_CASE("determinant matches cofactor expansion") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = rng() % 6;
        IntMatrix M = random_matrix(rng, n, n, -5, 5);
        CHECK(M.determinant() == oracle::det_cofactor(M));
    }
}

TEST_CASE("cokernel examples") {
    CHECK(PresentedGroup::cokernel(IntMatrix{{1}}).normal_form().is_trivial());
    CHECK(PresentedGroup::cokernel(IntMatrix{{2}}).normal_form().to_string() == "Z/2");
    CHECK(PresentedGroup::cokernel(IntMatrix(1, 0)).normal_form().to_string() == "Z");
}

TEST_CASE("cokernel is invariant under row and column permutations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntMatrix M = random_matrix(rng, r, c, -7, 7);
        std::vector<std::size_t> pr(r), pc(c);
        for (std::size_t i = 0; i < r; ++i) pr[i] = i;
        for (std::size_t i = 0; i < c; ++i) pc[i] = i;
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        CHECK(PresentedGroup::cokernel(M).normal_form() ==
              PresentedGroup::cokernel(M.submatrix(pr, pc)).normal_form());
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(IntMatrix{{0}}) == IntMatrix{{1}});
    CHECK(kernel_basis(IntMatrix{{0, 1}, {1, -1}}).cols() == 0);
    IntMatrix k = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(((k(0, 0) == 1 && k(1, 0) == -1) || (k(0, 0) == -1 && k(1, 0) == 1)));

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = rng() % 6, c = rng() % 7;
        IntMatrix M = random_matrix(rng, r, c, -4, 4);
        SmithData s = snf(M);
        IntMatrix K = kernel_basis(s);
        CHECK((M * K).is_zero());
        CHECK(K.cols() + s.rank() == c);
        for (std::size_t j = 0; j < K.cols(); ++j) {
            IntVector e(K.cols(), Int(0));
            e[j] = 1;
            CHECK(kernel_coordinates(s, K.col(j)) == e);
        }
    }
}

TEST_CASE("coefficient cokernels") {
    auto c = coker_with_coefficients(IntMatrix{{2}}, CoeffGroup::cyclic(4));
    REQUIRE(c.group);
    CHECK(c.group->to_string() == "Z/2");
    CHECK(coker_with_coefficients(IntMatrix{{1}}, CoeffGroup::cyclic(6)).group->is_trivial());
    CHECK(coker_with_coefficients(IntMatrix{{1}}, CoeffGroup::symbolic()).expression == "0");
    CHECK(coker_with_coefficients(IntMatrix{{0}}, CoeffGroup::symbolic()).expression == "G");
    CHECK(coker_with_coefficients(IntMatrix{{2, 0}, {0, 0}, {0, 0}, {0, 0}}, CoeffGroup::symbolic()).expression ==
          "G/2G ⊕ G^3");
    CHECK(coker_with_coefficients(IntMatrix{{2}}, CoeffGroup::divisible()).expression == "0");
    CHECK(coker_with_coefficients(IntMatrix{{3}, {0}}, CoeffGroup::abelian(FgAbGroup{1, {Int(6)}}))
              .group->to_string() == "Z ⊕ Z/3 ⊕ Z/3 ⊕ Z/6");
}

TEST_CASE("coefficient cokernels agree with enumeration over Z/m") {
    std::mt19937_64 rng(17);
    for (long m = 1; m <= 6; ++m)
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t r = 1 + rng() % 4, c = rng() % 5;
            if (m >= 5 && r == 4) r = 3;
            IntMatrix M = random_matrix(rng, r, c, -5, 5);
            auto res = coker_with_coefficients(M, CoeffGroup::cyclic(m));
            REQUIRE(res.group);
            PresentedGroup tp = tensor_presentation(M, FgAbGroup::from_cyclic(0, {Int(m)}));
            auto profile = oracle::torsion_profile_mod(M, m, 6);
            for (long k = 1; k <= 6; ++k) {
                CHECK(finite_profile(*res.group, k) == profile[static_cast<std::size_t>(k - 1)]);
                CHECK(finite_profile(tp.normal_form(), k) == profile[static_cast<std::size_t>(k - 1)]);
            }
        }
}

TEST_CASE("group isomorphism") {
    CHECK(group_iso(FgAbGroup::from_cyclic(0, {2, 3}), FgAbGroup::from_cyclic(0, {6})));
    CHECK_FALSE(group_iso(FgAbGroup::from_cyclic(1, {}), FgAbGroup::from_cyclic(0, {2})));
    CHECK(group_iso(FgAbGroup{}, FgAbGroup::from_cyclic(0, {1, 1})));
    CHECK(FgAbGroup::from_cyclic(0, {4, 6}).to_string() == "Z/2 ⊕ Z/12");
}

TEST_CASE("well-definedness of maps") {
    CHECK(scalar_map(1, 2, 2).well_defined());
    CHECK_FALSE(scalar_map(1, 2, 0).well_defined());
    CHECK(scalar_map(2, 2, 4).well_defined());
}

TEST_CASE("exactness checks") {
    SUBCASE("0 -> Z -> Z -> Z/2 -> 0") {
        std::vector<GroupMap> seq{GroupMap(PresentedGroup::free(0), PresentedGroup::free(1), IntMatrix(1, 0)),
                                  scalar_map(2, 0, 0), scalar_map(1, 0, 2),
                                  GroupMap(PresentedGroup(1, IntMatrix{{2}}), PresentedGroup::free(0), IntMatrix(0, 1))};
        auto v = check_exact(seq);
        REQUIRE(v.size() == 3);
        for (const auto& n : v) CHECK(n.exact);
    }
    SUBCASE("Z/4 node fails") {
        std::vector<GroupMap> seq{scalar_map(2, 0, 0), scalar_map(1, 0, 4),
                                  GroupMap(PresentedGroup(1, IntMatrix{{4}}), PresentedGroup::free(0), IntMatrix(0, 1))};
        auto v = check_exact(seq);
        CHECK_FALSE(v[0].exact);
        CHECK_FALSE(v[0].image_in_kernel);  // 2 is not in 4Z
        CHECK(v[0].kernel_in_image);
        CHECK(v[1].exact);
    }
    SUBCASE("length one is vacuous") { CHECK(check_exact({scalar_map(3, 0, 0)}).empty()); }
    SUBCASE("not composable") {
        CHECK_THROWS_AS(check_exact({scalar_map(1, 0, 2), scalar_map(1, 3, 3)}), PreconditionError);
    }
}

TEST_CASE("map invariants") {
    auto inv = map_invariants(scalar_map(2, 0, 0));
    CHECK(inv.kernel.is_trivial());
    CHECK(inv.image.to_string() == "Z");
    CHECK(inv.cokernel.to_string() == "Z/2");
    auto inv2 = map_invariants(scalar_map(2, 4, 4));
    CHECK(inv2.kernel.to_string() == "Z/2");
    CHECK(inv2.image.to_string() == "Z/2");
    CHECK(inv2.cokernel.to_string() == "Z/2");
}

TEST_CASE("enumeration-based exactness agrees with lattice exactness") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        auto rel = [&](std::size_t n) {
            IntMatrix R = random_matrix(rng, n, n, -3, 3);
            for (std::size_t i = 0; i < n; ++i) R(i, i) = 2 + static_cast<long>(rng() % 3);
            return PresentedGroup(n, R);
        };
        PresentedGroup A = rel(1 + rng() % 2), B = rel(1 + rng() % 2), C = rel(1 + rng() % 2);
        if (!A.normal_form().is_finite() || !B.normal_form().is_finite()) continue;
        GroupMap f(A, B, random_matrix(rng, B.generators(), A.generators(), -2, 2));
        GroupMap g(B, C, random_matrix(rng, C.generators(), B.generators(), -2, 2));
        if (!f.well_defined() || !g.well_defined()) continue;
        auto lat = check_exact({f, g});
        auto en = check_exact_by_enumeration({f, g}, 10000);
        REQUIRE(en);
        CHECK(lat[0].image_in_kernel == (*en)[0].image_in_kernel);
        CHECK(lat[0].kernel_in_image == (*en)[0].kernel_in_image);
    }
}
