#include "lpk/k_invariants.hpp"

#include "lpk/errors.hpp"

#include <random>

namespace lpk {

bool is_prime_power(const Int& q) {
    if (q < 2) return false;
    const std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
    for (unsigned long k = 1; k <= bits; ++k) {
        Int r;
        if (mpz_root(r.get_mpz_t(), q.get_mpz_t(), k) != 0 && mpz_probab_prime_p(r.get_mpz_t(), 40) > 0) return true;
    }
    return false;
}

FieldModel FieldModel::finite(const Int& q) {
    if (!is_prime_power(q)) throw PreconditionError("field order " + q.get_str() + " is not a prime power");
    return {Kind::Finite, q};
}

CoeffGroup FieldModel::units() const {
    switch (kind) {
        case Kind::Finite: return CoeffGroup::cyclic(q - 1);
        case Kind::Divisible: return CoeffGroup::divisible("k×");
        default: return CoeffGroup::symbolic("k×");
    }
}

CoeffGroup FieldModel::reduced_units() const {
    switch (kind) {
        case Kind::Finite: {
            Int m = q - 1;
            if (m % 2 == 0) m /= 2;
            return CoeffGroup::cyclic(m);
        }
        case Kind::Divisible: return CoeffGroup::divisible("Ḡ");
        default: return CoeffGroup::symbolic("Ḡ");
    }
}

std::string FieldModel::to_string() const {
    switch (kind) {
        case Kind::Finite: return "F_" + q.get_str();
        case Kind::Divisible: return "divisible";
        default: return "symbolic";
    }
}

IntMatrix k_matrix(const Graph& g) {
    AdjacencyDecomposition adj = adjacency(g);
    const std::size_t n = g.num_vertices();
    IntMatrix K(n, adj.R.size());
    for (std::size_t j = 0; j < adj.R.size(); ++j) {
        const std::size_t v = adj.R[j];
        for (std::size_t w = 0; w < n; ++w) K(w, j) = adj.A(v, w) - (v == w ? 1 : 0);
    }
    return K;
}

KZero k0(const Graph& g) { return KZero{adjacency(g), PresentedGroup::cokernel(k_matrix(g))}; }

std::optional<FgAbGroup> KOne::group() const {
    if (!coker_part.group) return std::nullopt;
    return FgAbGroup{kernel_rank(), {}} + *coker_part.group;
}

std::string KOne::to_string() const {
    if (auto g = group()) return g->to_string();
    std::string out;
    if (kernel_rank() == 1) out = "Z";
    if (kernel_rank() > 1) out = "Z^" + std::to_string(kernel_rank());
    if (coker_part.expression != "0") out += (out.empty() ? "" : " ⊕ ") + coker_part.expression;
    return out.empty() ? "0" : out;
}

KOne k1_with(const Graph& g, const CoeffGroup& coeff) {
    IntMatrix K = k_matrix(g);
    return KOne{coker_with_coefficients(K, coeff), kernel_basis(K)};
}

KOne k1(const Graph& g, const FieldModel& field) { return k1_with(g, field.units()); }
KOne k1bar(const Graph& g, const FieldModel& field) { return k1_with(g, field.reduced_units()); }

GradedElement phi(const GradedElement& x) {
    GradedElement r;
    for (const auto& [key, c] : x.terms()) {
        r.add(key.first, key.second + 1, c);
        r.add(key.first, key.second, -c);
    }
    return r;
}

IntVector embed_regular(const Graph& g, const IntVector& y) {
    const auto R = g.regulars().members();
    if (y.size() != R.size()) throw PreconditionError("embed_regular: length mismatch");
    IntVector out(g.num_vertices(), Int(0));
    for (std::size_t j = 0; j < R.size(); ++j) out[R[j]] = y[j];
    return out;
}

namespace {

IntVector random_vector(std::mt19937_64& rng, std::size_t n, long bound) {
    IntVector v(n);
    for (auto& x : v) x = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return v;
}

GradedElement random_graded(std::mt19937_64& rng, std::size_t n, long bound) {
    GradedElement a;
    if (n == 0) return a;
    const std::size_t terms = 1 + rng() % 4;
    for (std::size_t t = 0; t < terms; ++t)
        a.add(rng() % n, static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % (2 * bound + 1)) - bound);
    return a;
}

bool graded_is_zero(const Graph& g, const GradedElement& x) {
    return graded_equal(g, x, GradedElement{}).kind == EqVerdict::Kind::Equal;
}

}  // namespace

CheckReport psi_diagram_check(const Graph& g, std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    IntMatrix K = k_matrix(g);
    CheckReport rep;
    for (std::size_t t = 0; t < trials; ++t) {
        IntVector y = t == 0 ? IntVector(K.cols(), Int(0)) : random_vector(rng, K.cols(), 5);
        GradedElement lhs = phi(psi(embed_regular(g, y)));
        GradedElement rhs = psi(K * y);
        ++rep.checked;
        if (graded_equal(g, lhs, rhs).kind != EqVerdict::Kind::Equal) {
            rep.passed = false;
            rep.counterexample = "phi(psi(y)) = " + to_string(g, lhs) + " but psi(K y) = " + to_string(g, rhs);
            break;
        }
    }
    return rep;
}

VdbReport vdb_sequence(const Graph& g, const FieldModel& field, std::size_t samples, std::uint64_t seed) {
    VdbReport r;
    const std::size_t n = g.num_vertices();
    r.k_matrix = k_matrix(g);
    SmithData s = snf(r.k_matrix);
    r.kernel_basis = kernel_basis(s);
    r.kernel = FgAbGroup{r.kernel_basis.cols(), {}};
    PresentedGroup K0 = PresentedGroup::cokernel(r.k_matrix);
    r.cokernel = K0.normal_form();
    r.k0 = k0(g).group.normal_form();
    r.k1 = k1(g, field);

    r.forget_surjective = true;
    for (std::size_t v = 0; v < n; ++v) {
        IntVector e(n, Int(0));
        e[v] = 1;
        if (!K0.equal(GradedElement::generator(v, 0).forget_levels(n), e)) r.forget_surjective = false;
    }

    std::mt19937_64 rng(seed);
    r.forget_kills_phi = true;
    r.telescoping = true;
    for (std::size_t t = 0; t < samples && n > 0; ++t) {
        GradedElement x = random_graded(rng, n, 4);
        if (!K0.is_zero(phi(x).forget_levels(n))) r.forget_kills_phi = false;
        // U is constant on graded classes
        if (!x.is_zero() && !K0.equal(graded_expand_to_level(g, x, x.min_level() - 2).forget_levels(n), x.forget_levels(n)))
            r.forget_kills_phi = false;
        const std::size_t u = rng() % n;
        const long j = static_cast<long>(rng() % 5) - 2, i = j + static_cast<long>(rng() % 4);
        GradedElement sum;
        for (long k = j; k < i; ++k) sum = sum + phi(GradedElement::generator(u, k));
        if (!(sum == GradedElement::generator(u, i) - GradedElement::generator(u, j))) r.telescoping = false;
    }

    r.kernel_in_ker_phi = true;
    r.kernel_psi_injective = true;
    for (std::size_t c = 0; c < r.kernel_basis.cols(); ++c) {
        GradedElement y = psi(embed_regular(g, r.kernel_basis.col(c)));
        if (!graded_is_zero(g, phi(y))) r.kernel_in_ker_phi = false;
        if (graded_is_zero(g, y)) r.kernel_psi_injective = false;
    }
    for (std::size_t t = 0; t < samples && r.kernel_basis.cols() > 0; ++t) {
        IntVector c = random_vector(rng, r.kernel_basis.cols(), 3);
        if (is_zero_vector(c)) continue;
        GradedElement y = psi(embed_regular(g, r.kernel_basis * c));
        if (graded_is_zero(g, y)) r.kernel_psi_injective = false;
        if (!graded_is_zero(g, phi(y))) r.kernel_in_ker_phi = false;
    }
    r.psi_diagram = psi_diagram_check(g, samples, seed + 1).passed;
    return r;
}

IntMatrix name_map(const Graph& from, const std::vector<std::size_t>& from_idx, const Graph& to,
                   const std::vector<std::size_t>& to_idx) {
    IntMatrix M(to_idx.size(), from_idx.size());
    for (std::size_t i = 0; i < to_idx.size(); ++i)
        for (std::size_t j = 0; j < from_idx.size(); ++j)
            if (to.vertex(to_idx[i]) == from.vertex(from_idx[j])) M(i, j) = 1;
    return M;
}

namespace {

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

// Xᵗ: Z^{R(E/H)} -> Z^{H}, counting edges of g from each regular vertex of E/H into each vertex of E_H.
IntMatrix transition_into(const Graph& g, const Graph& EH, const Graph& EQ, const std::vector<std::size_t>& RQ) {
    IntMatrix Xt(EH.num_vertices(), RQ.size());
    for (const auto& e : g.edges()) {
        auto src = EQ.find_vertex(g.vertex(e.source));
        auto dst = EH.find_vertex(g.vertex(e.range));
        if (!src || !dst) continue;
        for (std::size_t j = 0; j < RQ.size(); ++j)
            if (RQ[j] == *src) Xt(*dst, j) += 1;
    }
    return Xt;
}

}  // namespace

ConnectingMap connecting_delta(const Graph& g, const VertexSet& H) {
    if (!is_hsat(g, H)) throw PreconditionError("connecting_delta: subset must be hereditary and saturated");
    Graph EH = restriction(g, H, true);
    Graph EQ = quotient(g, H);
    const auto RQ = EQ.regulars().members();
    IntMatrix Xt = transition_into(g, EH, EQ, RQ);
    IntMatrix ker = kernel_basis(k_matrix(EQ));
    GroupMap m(PresentedGroup::free(ker.cols()), PresentedGroup::cokernel(k_matrix(EH)), Xt * ker);
    return ConnectingMap{EH, EQ, Xt.transpose(), ker, m};
}

CheckReport snake_check(const Graph& g, const VertexSet& H, std::size_t trials, std::uint64_t seed) {
    ConnectingMap cd = connecting_delta(g, H);
    const auto RQ = cd.quotient_graph.regulars().members();
    const auto Hm = H.members();
    std::mt19937_64 rng(seed);
    CheckReport rep;
    if (cd.kernel_basis.cols() == 0) return rep;
    for (std::size_t t = 0; t < trials; ++t) {
        IntVector c = random_vector(rng, cd.kernel_basis.cols(), 3);
        IntVector x = cd.kernel_basis * c;
        IntVector expected = cd.map.apply(c);

        // lift x(0) to E with random noise from H, then apply φ
        GradedElement lift;
        for (std::size_t j = 0; j < RQ.size(); ++j)
            lift.add(g.vertex_index(cd.quotient_graph.vertex(RQ[j])), 0, x[j]);
        for (std::size_t k = 0; k < Hm.size() && !Hm.empty(); ++k)
            if (rng() % 2) lift.add(Hm[rng() % Hm.size()], static_cast<long>(rng() % 3) - 1, static_cast<long>(rng() % 5) - 2);
        GradedElement y = phi(lift);

        // expand until the part outside H disappears
        bool cleared = false;
        if (y.is_zero()) cleared = true;
        long L = y.is_zero() ? 0 : y.min_level();
        for (std::size_t step = 0; step <= g.num_vertices() + 1 && !cleared; ++step, --L) {
            y = graded_expand_to_level(g, y, L);
            cleared = true;
            for (const auto& [key, coef] : y.terms())
                if (!H.contains(key.first)) cleared = false;
        }
        ++rep.checked;
        if (!cleared) {
            rep.passed = false;
            rep.counterexample = "phi(lift) keeps a component outside H";
            break;
        }
        IntVector got(cd.restriction_graph.num_vertices(), Int(0));
        for (const auto& [key, coef] : y.terms()) got[cd.restriction_graph.vertex_index(g.vertex(key.first))] += coef;
        if (!cd.map.codomain.equal(got, expected)) {
            rep.passed = false;
            rep.counterexample = "graded connecting map disagrees with [X^t x]";
            break;
        }
    }
    return rep;
}

bool SixTermRow::integer_exact() const {
    for (const auto& v : integer_exactness)
        if (!v.exact) return false;
    return !integer_exactness.empty();
}

bool SixTermRow::full_exact() const {
    for (const auto& v : full_exactness)
        if (!v.exact) return false;
    return true;
}

bool SixTermRow::coefficient_exact() const {
    for (const auto& v : coefficient_exactness)
        if (!v.exact) return false;
    return true;
}

SixTermRow six_term_row(const Graph& g, const VertexSet& HI, const VertexSet& HJ, const VertexSet& HP,
                        const CoeffGroup& coeff, std::size_t enumeration_cap) {
    if (!HI.subset_of(HJ) || !HJ.subset_of(HP)) throw PreconditionError("six_term_row: subsets must be nested");
    SixTermRow row;
    row.HI = HI;
    row.HJ = HJ;
    row.HP = HP;
    row.PI = subquotient(g, HI, HP);
    const VertexSet H = transfer(g, HJ - HI, row.PI);
    row.JI = restriction(row.PI, H, true);
    row.PJ = quotient(row.PI, H);

    const Graph* gs[3] = {&row.JI, &row.PI, &row.PJ};
    IntMatrix K[3];
    SmithData S[3];
    IntMatrix ker[3];
    std::vector<std::size_t> R[3];
    PresentedGroup K0[3];
    for (int i = 0; i < 3; ++i) {
        K[i] = k_matrix(*gs[i]);
        S[i] = snf(K[i]);
        ker[i] = kernel_basis(S[i]);
        R[i] = gs[i]->regulars().members();
        K0[i] = PresentedGroup::cokernel(K[i]);
    }
    row.k1_JI = KOne{coker_with_coefficients(K[0], coeff), ker[0]};
    row.k1_PI = KOne{coker_with_coefficients(K[1], coeff), ker[1]};
    row.k1_PJ = KOne{coker_with_coefficients(K[2], coeff), ker[2]};
    row.k0_JI = K0[0].normal_form();
    row.k0_PI = K0[1].normal_form();
    row.k0_PJ = K0[2].normal_form();

    // vertex-level maps
    IntMatrix sigma = name_map(row.JI, iota(row.JI.num_vertices()), row.PI, iota(row.PI.num_vertices()));
    IntMatrix sigma2 = name_map(row.PI, iota(row.PI.num_vertices()), row.PJ, iota(row.PJ.num_vertices()));
    IntMatrix incR = name_map(row.JI, R[0], row.PI, R[1]);
    IntMatrix projR = name_map(row.PI, R[1], row.PJ, R[2]);

    auto in_kernel_coords = [&](int target, const IntMatrix& vectors) {
        IntMatrix M(ker[target].cols(), vectors.cols());
        for (std::size_t c = 0; c < vectors.cols(); ++c) {
            IntVector y = kernel_coordinates(S[target], vectors.col(c));
            for (std::size_t r = 0; r < y.size(); ++r) M(r, c) = y[r];
        }
        return M;
    };
    IntMatrix tau = in_kernel_coords(1, incR * ker[0]);
    IntMatrix tau2 = in_kernel_coords(2, projR * ker[1]);
    IntMatrix Xt = transition_into(row.PI, row.JI, row.PJ, R[2]);
    IntMatrix delta = Xt * ker[2];

    PresentedGroup KerG[3];
    for (int i = 0; i < 3; ++i) KerG[i] = PresentedGroup::free(ker[i].cols());
    row.integer_maps = {GroupMap(KerG[0], KerG[1], tau), GroupMap(KerG[1], KerG[2], tau2),
                        GroupMap(KerG[2], K0[0], delta), GroupMap(K0[0], K0[1], sigma),
                        GroupMap(K0[1], K0[2], sigma2)};
    row.integer_exactness = check_exact(row.integer_maps);

    if (coeff.is_concrete()) {
        const FgAbGroup& G = coeff.group;
        const std::size_t F = coefficient_factors(G);
        PresentedGroup C[3], Full[3];
        for (int i = 0; i < 3; ++i) {
            C[i] = tensor_presentation(K[i], G);
            IntMatrix rel = C[i].relations().vconcat(IntMatrix(ker[i].cols(), C[i].relations().cols()));
            Full[i] = PresentedGroup(C[i].generators() + ker[i].cols(), rel);
        }
        IntMatrix sig_t = tensor_map(sigma, F), sig2_t = tensor_map(sigma2, F);
        IntMatrix conn = IntMatrix(row.JI.num_vertices(), C[2].generators()).hconcat(delta);
        row.full_maps = {GroupMap(Full[0], Full[1], sig_t.direct_sum(tau)),
                         GroupMap(Full[1], Full[2], sig2_t.direct_sum(tau2)), GroupMap(Full[2], K0[0], conn),
                         GroupMap(K0[0], K0[1], sigma), GroupMap(K0[1], K0[2], sigma2)};
        row.full_exactness = check_exact(row.full_maps);

        std::vector<GroupMap> crow{GroupMap(C[0], C[1], sig_t), GroupMap(C[1], C[2], sig2_t),
                                   GroupMap(C[2], PresentedGroup::free(0), IntMatrix(0, C[2].generators()))};
        if (auto en = check_exact_by_enumeration(crow, enumeration_cap)) {
            row.coefficient_enumerated = true;
            row.coefficient_exactness = *en;
        }
    }
    return row;
}

}  // namespace lpk
