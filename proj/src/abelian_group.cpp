#include "lpk/abelian_group.hpp"

#include "lpk/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace lpk {

namespace {

FgAbGroup coker_group(const IntMatrix& M) {
    SmithData s = snf(M);
    FgAbGroup g;
    g.free_rank = M.rows() - s.rank();
    for (const auto& d : s.diag)
        if (d >= 2) g.torsion.push_back(d);
    return g;
}

IntVector column_of(const IntMatrix& M, std::size_t c) { return M.col(c); }

bool all_columns_in(const IntMatrix& gens, const SmithData& lattice) {
    for (std::size_t c = 0; c < gens.cols(); ++c)
        if (!in_column_span(lattice, column_of(gens, c))) return false;
    return true;
}

}  // namespace

FgAbGroup FgAbGroup::from_cyclic(std::size_t free_rank, const std::vector<Int>& orders) {
    std::vector<Int> nz;
    for (const auto& m : orders) {
        if (m < 0) throw PreconditionError("cyclic order must be nonnegative");
        if (m == 0)
            ++free_rank;
        else if (m > 1)
            nz.push_back(m);
    }
    FgAbGroup g = coker_group(IntMatrix::diagonal(nz));
    g.free_rank += free_rank;
    return g;
}

Int FgAbGroup::order() const {
    if (!is_finite()) throw PreconditionError("order of an infinite group");
    Int n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
}

FgAbGroup FgAbGroup::operator+(const FgAbGroup& rhs) const {
    std::vector<Int> t = torsion;
    t.insert(t.end(), rhs.torsion.begin(), rhs.torsion.end());
    return from_cyclic(free_rank + rhs.free_rank, t);
}

std::string FgAbGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << 'Z';
        if (free_rank > 1) os << '^' << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        if (!first) os << " ⊕ ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

bool group_iso(const FgAbGroup& a, const FgAbGroup& b) { return a == b; }

PresentedGroup::PresentedGroup(std::size_t generators, IntMatrix relations)
    : gens_(generators), rel_(std::move(relations)) {
    if (rel_.rows() != gens_) throw PreconditionError("PresentedGroup: relation rows must equal generator count");
    smith_ = snf(rel_);
    rank_ = smith_.rank();
    nf_.free_rank = gens_ - rank_;
    for (std::size_t i = 0; i < rank_; ++i)
        if (smith_.diag[i] >= 2) {
            nf_.torsion.push_back(smith_.diag[i]);
            tors_idx_.push_back(i);
        }
}

IntVector PresentedGroup::coordinates(const IntVector& x) const {
    if (x.size() != gens_) throw PreconditionError("coordinates: length mismatch");
    IntVector y = smith_.U * x;
    IntVector out;
    out.reserve(tors_idx_.size() + gens_ - rank_);
    for (std::size_t i : tors_idx_) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), smith_.diag[i].get_mpz_t());
        out.push_back(r);
    }
    for (std::size_t i = rank_; i < gens_; ++i) out.push_back(y[i]);
    return out;
}

IntVector PresentedGroup::from_coordinates(const IntVector& coords) const {
    if (coords.size() != tors_idx_.size() + gens_ - rank_) throw PreconditionError("from_coordinates: length mismatch");
    IntVector y(gens_, Int(0));
    for (std::size_t k = 0; k < tors_idx_.size(); ++k) y[tors_idx_[k]] = coords[k];
    for (std::size_t i = rank_; i < gens_; ++i) y[i] = coords[tors_idx_.size() + i - rank_];
    return smith_.Uinv * y;
}

std::vector<IntVector> PresentedGroup::enumerate(std::size_t cap) const {
    if (!nf_.is_finite()) throw CapExceeded("cannot enumerate an infinite group");
    if (nf_.order() > cap) throw CapExceeded("group order " + nf_.order().get_str() + " exceeds cap");
    std::vector<IntVector> out;
    IntVector c(nf_.torsion.size(), Int(0));
    for (;;) {
        out.push_back(from_coordinates(c));
        std::size_t k = c.size();
        while (k > 0) {
            --k;
            if (++c[k] < nf_.torsion[k]) break;
            c[k] = 0;
            if (k == 0) return out;
        }
        if (c.empty()) return out;
    }
}

bool PresentedGroup::same_as(const PresentedGroup& other) const {
    return gens_ == other.gens_ && all_columns_in(rel_, other.smith_) && all_columns_in(other.rel_, smith_);
}

GroupMap::GroupMap(PresentedGroup dom, PresentedGroup cod, IntMatrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
    if (matrix.rows() != codomain.generators() || matrix.cols() != domain.generators())
        throw PreconditionError("GroupMap: matrix shape " + std::to_string(matrix.rows()) + "x" +
                                std::to_string(matrix.cols()) + " does not match " +
                                std::to_string(codomain.generators()) + "x" + std::to_string(domain.generators()));
}

bool GroupMap::well_defined() const { return all_columns_in(matrix * domain.relations(), codomain.smith()); }

bool check_well_defined(const GroupMap& f) { return f.well_defined(); }

FgAbGroup lattice_quotient(const IntMatrix& S, const IntMatrix& R) {
    SmithData st = snf(S.hconcat(R));
    IntMatrix C(st.rank(), R.cols());
    for (std::size_t c = 0; c < R.cols(); ++c) {
        IntVector y = span_coordinates(st, R.col(c));
        for (std::size_t r = 0; r < y.size(); ++r) C(r, c) = y[r];
    }
    return coker_group(C);
}

IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& R) {
    IntMatrix K = kernel_basis(M.hconcat(R));
    std::vector<std::size_t> top(M.cols());
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
    return K.select_rows(top);
}

MapInvariants map_invariants(const GroupMap& f) {
    const IntMatrix& RA = f.domain.relations();
    const IntMatrix& RB = f.codomain.relations();
    MapInvariants inv;
    inv.kernel = lattice_quotient(preimage_lattice(f.matrix, RB), RA);
    inv.image = lattice_quotient(f.matrix, RB);
    inv.cokernel = coker_group(f.matrix.hconcat(RB));
    return inv;
}

namespace {

void require_composable(const std::vector<GroupMap>& seq) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (!seq[i - 1].codomain.same_as(seq[i].domain))
            throw PreconditionError("check_exact: maps " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                    " are not composable");
}

}  // namespace

std::vector<NodeVerdict> check_exact(const std::vector<GroupMap>& seq) {
    require_composable(seq);
    std::vector<NodeVerdict> out;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const GroupMap& f = seq[i - 1];
        const GroupMap& g = seq[i];
        const IntMatrix& R = g.domain.relations();
        IntMatrix im = f.matrix.hconcat(R);
        IntMatrix ker = preimage_lattice(g.matrix, g.codomain.relations()).hconcat(R);
        NodeVerdict v{i, false, all_columns_in(im, snf(ker)), all_columns_in(ker, snf(im))};
        v.exact = v.image_in_kernel && v.kernel_in_image;
        out.push_back(v);
    }
    return out;
}

std::optional<std::vector<NodeVerdict>> check_exact_by_enumeration(const std::vector<GroupMap>& seq,
                                                                   std::size_t cap) {
    require_composable(seq);
    std::vector<NodeVerdict> out;
    try {
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const GroupMap& f = seq[i - 1];
            const GroupMap& g = seq[i];
            const PresentedGroup& mid = g.domain;
            std::set<IntVector> image, kernel;
            for (const auto& x : f.domain.enumerate(cap)) image.insert(mid.coordinates(f.apply(x)));
            for (const auto& y : mid.enumerate(cap))
                if (g.codomain.is_zero(g.apply(y))) kernel.insert(mid.coordinates(y));
            NodeVerdict v{i, false, std::includes(kernel.begin(), kernel.end(), image.begin(), image.end()),
                          std::includes(image.begin(), image.end(), kernel.begin(), kernel.end())};
            v.exact = v.image_in_kernel && v.kernel_in_image;
            out.push_back(v);
        }
    } catch (const CapExceeded&) {
        return std::nullopt;
    }
    return out;
}

CoeffGroup CoeffGroup::cyclic(const Int& m) {
    if (m < 1) throw PreconditionError("cyclic coefficient order must be positive");
    CoeffGroup g;
    g.kind = Kind::FiniteCyclic;
    g.group = FgAbGroup::from_cyclic(0, {m});
    return g;
}

CoeffGroup CoeffGroup::abelian(const FgAbGroup& grp) {
    CoeffGroup g;
    g.kind = Kind::FgAbelian;
    g.group = grp;
    return g;
}

CoeffGroup CoeffGroup::divisible(std::string name) {
    CoeffGroup g;
    g.kind = Kind::Divisible;
    g.name = std::move(name);
    return g;
}

CoeffGroup CoeffGroup::symbolic(std::string name) {
    CoeffGroup g;
    g.kind = Kind::Symbolic;
    g.name = std::move(name);
    return g;
}

namespace {

// Cyclic factors of G, torsion first, a 0 for each Z.
std::vector<Int> factor_orders(const FgAbGroup& G) {
    std::vector<Int> t = G.torsion;
    t.insert(t.end(), G.free_rank, Int(0));
    return t;
}

// G/dG for d >= 1.
FgAbGroup quotient_by_multiple(const FgAbGroup& G, const Int& d) {
    std::vector<Int> parts;
    for (const auto& t : factor_orders(G)) {
        Int g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), t.get_mpz_t());
        parts.push_back(g);
    }
    return FgAbGroup::from_cyclic(0, parts);
}

}  // namespace

CoefficientCokernel coker_with_coefficients(const IntMatrix& M, const CoeffGroup& G) {
    SmithData s = snf(M);
    CoefficientCokernel out;
    out.free_copies = M.rows() - s.rank();
    if (G.kind != CoeffGroup::Kind::Divisible)
        for (const auto& d : s.diag)
            if (d >= 2) out.quotients.push_back(d);

    const std::string& n = G.name;
    std::vector<std::string> terms;
    for (const auto& d : out.quotients) terms.push_back(n + "/" + d.get_str() + n);
    if (out.free_copies == 1) terms.push_back(n);
    if (out.free_copies > 1) terms.push_back(n + "^" + std::to_string(out.free_copies));
    if (terms.empty()) {
        out.expression = "0";
    } else {
        for (std::size_t i = 0; i < terms.size(); ++i) out.expression += (i ? " ⊕ " : "") + terms[i];
    }

    if (G.is_concrete()) {
        FgAbGroup acc;
        for (const auto& d : out.quotients) acc = acc + quotient_by_multiple(G.group, d);
        for (std::size_t i = 0; i < out.free_copies; ++i) acc = acc + G.group;
        out.group = acc;
        out.expression = acc.to_string();
    }
    return out;
}

std::size_t coefficient_factors(const FgAbGroup& G) { return G.torsion.size() + G.free_rank; }

PresentedGroup tensor_presentation(const IntMatrix& M, const FgAbGroup& G) {
    const std::vector<Int> t = factor_orders(G);
    const std::size_t F = t.size();
    const std::size_t n = M.rows();
    std::size_t extra = 0;
    for (const auto& x : t)
        if (x != 0) ++extra;
    IntMatrix R(n * F, M.cols() * F + n * extra);
    std::size_t col = 0;
    for (std::size_t c = 0; c < M.cols(); ++c)
        for (std::size_t j = 0; j < F; ++j, ++col)
            for (std::size_t v = 0; v < n; ++v) R(v * F + j, col) = M(v, c);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t j = 0; j < F; ++j)
            if (t[j] != 0) R(v * F + j, col++) = t[j];
    return PresentedGroup(n * F, std::move(R));
}

IntMatrix tensor_map(const IntMatrix& f, std::size_t factors) {
    IntMatrix out(f.rows() * factors, f.cols() * factors);
    for (std::size_t w = 0; w < f.rows(); ++w)
        for (std::size_t v = 0; v < f.cols(); ++v)
            for (std::size_t j = 0; j < factors; ++j) out(w * factors + j, v * factors + j) = f(w, v);
    return out;
}

}  // namespace lpk
