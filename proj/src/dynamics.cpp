#include "lpk/dynamics.hpp"

#include "lpk/errors.hpp"

#include <functional>

namespace lpk {

namespace {

void require_square(const IntMatrix& A, const char* what) {
    if (!A.is_square()) throw PreconditionError(std::string(what) + ": matrix must be square");
}

using Rat = mpq_class;

// Enumerates nonnegative integer solutions with entries <= bound of M z = rhs (rational elimination,
// free variables run through the box in lexicographic order). `visit` returns true to stop.
// Returns false when the budget ran out.
bool solve_in_box(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs, std::size_t unknowns, unsigned bound,
                  std::size_t& budget, const std::function<bool(const IntVector&)>& visit, bool& stopped) {
    const std::size_t rows = M.size();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        std::swap(rhs[p], rhs[r]);
        Rat inv = 1 / M[r][c];
        for (auto& x : M[r]) x *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (std::size_t k = 0; k < unknowns; ++k) M[i][k] -= f * M[r][k];
            rhs[i] -= f * rhs[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return true;  // inconsistent: nothing to enumerate

    std::vector<bool> is_pivot(unknowns, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < unknowns; ++c)
        if (!is_pivot[c]) free.push_back(c);

    std::vector<unsigned> val(free.size(), 0);
    IntVector z(unknowns);
    for (;;) {
        if (budget == 0) return false;
        --budget;
        for (std::size_t f = 0; f < free.size(); ++f) z[free[f]] = val[f];
        bool ok = true;
        for (std::size_t i = 0; i < pivots.size() && ok; ++i) {
            Rat x = rhs[i];
            for (std::size_t f = 0; f < free.size(); ++f)
                if (M[i][free[f]] != 0) x -= M[i][free[f]] * val[f];
            if (x.get_den() != 1 || x < 0 || x > bound) ok = false;
            else z[pivots[i]] = x.get_num();
        }
        if (ok && visit(z)) {
            stopped = true;
            return true;
        }
        std::size_t f = 0;
        while (f < free.size() && val[f] == bound) val[f++] = 0;
        if (f == free.size()) return true;
        ++val[f];
    }
}

}  // namespace

FgAbGroup bowen_franks(const IntMatrix& A) {
    require_square(A, "bowen_franks");
    return PresentedGroup::cokernel(IntMatrix::identity(A.rows()) - A).normal_form();
}

Int det_invariant(const IntMatrix& A) {
    require_square(A, "det_invariant");
    return (IntMatrix::identity(A.rows()) - A).determinant();
}

IntMatrix dynamics_matrix(const Graph& g) { return adjacency(g).A.transpose(); }

bool verify_certificate(const IntMatrix& A, const IntMatrix& B, const ShiftEqCertificate& c) {
    require_square(A, "verify_certificate");
    require_square(B, "verify_certificate");
    if (c.R.rows() != A.rows() || c.R.cols() != B.rows() || c.S.rows() != B.rows() || c.S.cols() != A.rows())
        throw PreconditionError("verify_certificate: R must be nA x nB and S must be nB x nA");
    if (c.lag == 0) return false;
    return c.R.is_nonnegative() && c.S.is_nonnegative() && A * c.R == c.R * B && c.S * A == B * c.S &&
           c.R * c.S == A.power(c.lag) && c.S * c.R == B.power(c.lag);
}

const char* to_string(ShiftEqResult::Kind k) {
    switch (k) {
        case ShiftEqResult::Kind::Certificate: return "certificate";
        case ShiftEqResult::Kind::Obstruction: return "obstruction";
        default: return "unknown";
    }
}

ShiftEqResult shift_equivalent_bounded(const IntMatrix& A, const IntMatrix& B, unsigned max_lag, unsigned max_entry,
                                       std::size_t max_candidates) {
    require_square(A, "shift_equivalent_bounded");
    require_square(B, "shift_equivalent_bounded");
    if (!A.is_nonnegative() || !B.is_nonnegative())
        throw PreconditionError("shift_equivalent_bounded: matrices must be nonnegative");
    ShiftEqResult out;
    out.bf_a = bowen_franks(A);
    out.bf_b = bowen_franks(B);
    out.det_a = det_invariant(A);
    out.det_b = det_invariant(B);
    if (out.bf_a != out.bf_b) {
        out.kind = ShiftEqResult::Kind::Obstruction;
        out.reason = "Bowen-Franks groups differ: " + out.bf_a.to_string() + " vs " + out.bf_b.to_string();
        return out;
    }
    if (out.det_a != out.det_b) {
        out.kind = ShiftEqResult::Kind::Obstruction;
        out.reason = "det(I - A) differs: " + out.det_a.get_str() + " vs " + out.det_b.get_str();
        return out;
    }

    const std::size_t nA = A.rows(), nB = B.rows();
    // A R − R B = 0, unknown R(i,j) at i*nB + j
    std::vector<std::vector<Rat>> eqR;
    for (std::size_t i = 0; i < nA; ++i)
        for (std::size_t j = 0; j < nB; ++j) {
            std::vector<Rat> row(nA * nB, Rat(0));
            for (std::size_t k = 0; k < nA; ++k) row[k * nB + j] += Rat(A(i, k));
            for (std::size_t k = 0; k < nB; ++k) row[i * nB + k] -= Rat(B(k, j));
            eqR.push_back(std::move(row));
        }

    std::size_t budget = max_candidates;
    bool stopped = false, complete = true;
    for (unsigned lag = 1; lag <= max_lag && !stopped; ++lag) {
        const IntMatrix Al = A.power(lag), Bl = B.power(lag);
        auto try_R = [&](const IntVector& rv) {
            ++out.candidates;
            IntMatrix R(nA, nB);
            for (std::size_t i = 0; i < nA; ++i)
                for (std::size_t j = 0; j < nB; ++j) R(i, j) = rv[i * nB + j];
            // S(i,j) at i*nA + j: S A − B S = 0, R S = A^ℓ, S R = B^ℓ
            std::vector<std::vector<Rat>> eqS;
            std::vector<Rat> rhs;
            auto fresh = [&] { return std::vector<Rat>(nB * nA, Rat(0)); };
            for (std::size_t i = 0; i < nB; ++i)
                for (std::size_t j = 0; j < nA; ++j) {
                    auto row = fresh();
                    for (std::size_t k = 0; k < nA; ++k) row[i * nA + k] += Rat(A(k, j));
                    for (std::size_t k = 0; k < nB; ++k) row[k * nA + j] -= Rat(B(i, k));
                    eqS.push_back(std::move(row));
                    rhs.emplace_back(0);
                }
            for (std::size_t i = 0; i < nA; ++i)
                for (std::size_t j = 0; j < nA; ++j) {
                    auto row = fresh();
                    for (std::size_t k = 0; k < nB; ++k) row[k * nA + j] += Rat(R(i, k));
                    eqS.push_back(std::move(row));
                    rhs.emplace_back(Al(i, j));
                }
            for (std::size_t i = 0; i < nB; ++i)
                for (std::size_t j = 0; j < nB; ++j) {
                    auto row = fresh();
                    for (std::size_t k = 0; k < nA; ++k) row[i * nA + k] += Rat(R(k, j));
                    eqS.push_back(std::move(row));
                    rhs.emplace_back(Bl(i, j));
                }
            bool found = false;
            auto try_S = [&](const IntVector& sv) {
                IntMatrix S(nB, nA);
                for (std::size_t i = 0; i < nB; ++i)
                    for (std::size_t j = 0; j < nA; ++j) S(i, j) = sv[i * nA + j];
                ShiftEqCertificate c{R, S, lag};
                if (!verify_certificate(A, B, c)) return false;
                out.certificate = c;
                return found = true;
            };
            bool s_stop = false;
            if (!solve_in_box(eqS, rhs, nB * nA, max_entry, budget, try_S, s_stop)) complete = false;
            return found || !complete;
        };
        std::vector<Rat> zero(eqR.size(), Rat(0));
        if (!solve_in_box(eqR, zero, nA * nB, max_entry, budget, try_R, stopped)) complete = false;
        if (!complete) break;
    }
    if (out.certificate) {
        out.kind = ShiftEqResult::Kind::Certificate;
        out.reason = "certificate with lag " + std::to_string(out.certificate->lag);
    } else {
        out.kind = ShiftEqResult::Kind::Unknown;
        out.truncated = !complete;
        out.reason = complete ? "no certificate within the lag and entry bounds" : "candidate budget exhausted";
    }
    return out;
}

DimensionTriple::DimensionTriple(IntMatrix a) : A(std::move(a)) {
    require_square(A, "DimensionTriple");
    if (!A.is_nonnegative()) throw PreconditionError("DimensionTriple: matrix must be nonnegative");
}

namespace {

IntVector lift(const DimensionTriple& t, const DimElement& a, long level) {
    if (a.x.size() != t.size()) throw PreconditionError("dimension element has the wrong length");
    IntVector x = a.x;
    for (long k = a.level; k < level; ++k) x = t.A * x;
    return x;
}

}  // namespace

bool dimension_triple_equal(const DimensionTriple& t, const DimElement& a, const DimElement& b) {
    const long m = std::max(a.level, b.level);
    IntVector d = sub(lift(t, a, m), lift(t, b, m));
    // ker A^j stabilizes by j = n
    for (std::size_t j = 0; j <= t.size(); ++j) {
        if (is_zero_vector(d)) return true;
        d = t.A * d;
    }
    return is_zero_vector(d);
}

DimElement dimension_shift(const DimensionTriple& t, const DimElement& a) { return {a.level, t.A * lift(t, a, a.level)}; }

DimElement dimension_add(const DimensionTriple& t, const DimElement& a, const DimElement& b) {
    const long m = std::max(a.level, b.level);
    return {m, add(lift(t, a, m), lift(t, b, m))};
}

bool dimension_positive(const DimensionTriple& t, const DimElement& a, std::size_t bound) {
    IntVector x = lift(t, a, a.level);
    for (std::size_t j = 0; j <= bound; ++j) {
        bool nonneg = true;
        for (const auto& c : x) nonneg = nonneg && c >= 0;
        if (nonneg) return true;
        x = t.A * x;
    }
    return false;
}

DimElement to_dimension(const Graph& g, const GradedElement& a) {
    const std::size_t n = g.num_vertices();
    if (a.is_zero()) return {0, IntVector(n, Int(0))};
    DimensionTriple t(dynamics_matrix(g));
    DimElement out{-a.min_level(), IntVector(n, Int(0))};
    for (const auto& [key, c] : a.terms()) {
        IntVector e(n, Int(0));
        e[key.first] = c;
        out = dimension_add(t, out, DimElement{-key.second, e});
    }
    return out;
}

}  // namespace lpk
