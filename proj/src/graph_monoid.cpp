#include "lpk/graph_monoid.hpp"

#include "lpk/abelian_group.hpp"
#include "lpk/errors.hpp"
#include "lpk/k_invariants.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace lpk {

// ---------------------------------------------------------------- GradedElement

GradedElement GradedElement::generator(std::size_t v, long level, const Int& c) {
    GradedElement a;
    a.add(v, level, c);
    return a;
}

GradedElement GradedElement::at_level(const IntVector& y, long level) {
    GradedElement a;
    for (std::size_t v = 0; v < y.size(); ++v) a.add(v, level, y[v]);
    return a;
}

void GradedElement::add(std::size_t v, long level, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace({v, level}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Int GradedElement::coefficient(std::size_t v, long level) const {
    auto it = terms_.find({v, level});
    return it == terms_.end() ? Int(0) : it->second;
}

bool GradedElement::is_nonnegative() const {
    for (const auto& [k, c] : terms_)
        if (c < 0) return false;
    return true;
}

long GradedElement::min_level() const {
    if (terms_.empty()) throw PreconditionError("min_level of the zero element");
    long m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) m = std::min(m, k.second);
    return m;
}

long GradedElement::max_level() const {
    if (terms_.empty()) throw PreconditionError("max_level of the zero element");
    long m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) m = std::max(m, k.second);
    return m;
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
    GradedElement r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
    return r;
}

GradedElement GradedElement::operator-(const GradedElement& o) const { return *this + o.scaled(-1); }

GradedElement GradedElement::scaled(const Int& k) const {
    GradedElement r;
    for (const auto& [key, c] : terms_) r.add(key.first, key.second, c * k);
    return r;
}

GradedElement GradedElement::shifted(long k) const {
    GradedElement r;
    for (const auto& [key, c] : terms_) r.add(key.first, key.second + k, c);
    return r;
}

IntVector GradedElement::forget_levels(std::size_t n) const {
    IntVector y(n, Int(0));
    for (const auto& [key, c] : terms_) {
        if (key.first >= n) throw PreconditionError("forget_levels: vertex out of range");
        y[key.first] += c;
    }
    return y;
}

const char* to_string(EqVerdict::Kind k) {
    switch (k) {
        case EqVerdict::Kind::Equal: return "Equal";
        case EqVerdict::Kind::NotEqual: return "NotEqual";
        default: return "Unknown";
    }
}

// ---------------------------------------------------------------- ungraded monoid

namespace {

void require_size(const Graph& g, const MonoidElement& a) {
    if (a.size() != g.num_vertices()) throw PreconditionError("monoid element has the wrong number of coordinates");
    for (const auto& c : a)
        if (c < 0) throw PreconditionError("monoid element has a negative coefficient");
}

bool is_zero_element(const MonoidElement& a) {
    return std::all_of(a.begin(), a.end(), [](const Int& c) { return c == 0; });
}

MonoidElement rewrite(const Graph& g, const MonoidElement& a, std::size_t v) {
    MonoidElement b = a;
    b[v] -= 1;
    for (auto e : g.out_edges(v)) b[g.edges()[e].range] += 1;
    return b;
}

using State = std::vector<std::uint32_t>;

std::size_t mass_of(const State& s) {
    std::size_t m = 0;
    for (auto x : s) m += x;
    return m;
}

MonoidElement to_element(const State& s) {
    MonoidElement a(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) a[i] = static_cast<unsigned long>(s[i]);
    return a;
}

std::optional<State> to_state(const MonoidElement& a, std::size_t max_mass) {
    Int total = 0;
    for (const auto& c : a) total += c;
    if (total > static_cast<unsigned long>(max_mass)) return std::nullopt;
    State s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = static_cast<std::uint32_t>(a[i].get_ui());
    return s;
}

}  // namespace

std::vector<MonoidElement> successors_one_step(const Graph& g, const MonoidElement& a) {
    require_size(g, a);
    if (is_zero_element(a)) throw PreconditionError("successors_one_step: the zero element has no rewrites");
    std::vector<MonoidElement> out;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (a[v] >= 1 && !g.is_sink(v)) out.push_back(rewrite(g, a, v));
    return out;
}

bool is_one_step(const Graph& g, const MonoidElement& a, const MonoidElement& b) {
    if (is_zero_element(a)) return false;
    for (const auto& s : successors_one_step(g, a))
        if (s == b) return true;
    return false;
}

bool verify_trace(const Graph& g, const EqVerdict& v, const MonoidElement& a, const MonoidElement& b) {
    if (v.kind != EqVerdict::Kind::Equal || v.trace_a.empty() || v.trace_b.empty()) return false;
    if (v.trace_a.front() != a || v.trace_b.front() != b || v.trace_a.back() != v.trace_b.back()) return false;
    for (const auto* t : {&v.trace_a, &v.trace_b})
        for (std::size_t i = 1; i < t->size(); ++i)
            if (!is_one_step(g, (*t)[i - 1], (*t)[i])) return false;
    return true;
}

EqVerdict ungraded_equal(const Graph& g, const MonoidElement& a, const MonoidElement& b, const MonoidBudget& budget) {
    require_size(g, a);
    require_size(g, b);
    EqVerdict out;
    if (a == b) {
        out.kind = EqVerdict::Kind::Equal;
        out.reason = "identical elements";
        out.trace_a = {a};
        out.trace_b = {b};
        return out;
    }
    // The zero element admits no rewrite and no nonzero element rewrites to it.
    if (is_zero_element(a) || is_zero_element(b)) {
        out.kind = EqVerdict::Kind::NotEqual;
        out.reason = "only one side is zero";
        return out;
    }
    PresentedGroup k0 = PresentedGroup::cokernel(k_matrix(g));
    if (!k0.equal(a, b)) {
        out.kind = EqVerdict::Kind::NotEqual;
        out.reason = "classes differ in K0";
        return out;
    }

    // Joint search. visited[side] maps each discovered state to its parent (itself for the root).
    std::map<State, State> visited[2];
    std::set<std::tuple<std::size_t, int, State>> queue;
    auto trace_to = [&](int side, State s) {
        std::vector<MonoidElement> path;
        for (;;) {
            path.push_back(to_element(s));
            const State& p = visited[side].at(s);
            if (p == s) break;
            s = p;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    auto meet = [&](int side, const State& s) {
        out.kind = EqVerdict::Kind::Equal;
        out.reason = "common descendant found";
        auto mine = trace_to(side, s);
        auto theirs = trace_to(1 - side, s);
        out.trace_a = side == 0 ? mine : theirs;
        out.trace_b = side == 0 ? theirs : mine;
        return out;
    };

    const MonoidElement* roots[2] = {&a, &b};
    for (int side = 0; side < 2; ++side) {
        auto s = to_state(*roots[side], budget.max_mass);
        if (!s) {
            out.truncated = true;
            continue;
        }
        visited[side].emplace(*s, *s);
        if (visited[1 - side].count(*s)) return meet(side, *s);
        queue.emplace(mass_of(*s), side, *s);
    }

    while (!queue.empty()) {
        if (out.explored >= budget.max_states) {
            out.truncated = true;
            break;
        }
        auto [mass, side, s] = *queue.begin();
        queue.erase(queue.begin());
        ++out.explored;
        for (std::size_t v = 0; v < s.size(); ++v) {
            if (s[v] == 0 || g.is_sink(v)) continue;
            const std::size_t out_deg = g.out_edges(v).size();
            if (mass + out_deg - 1 > budget.max_mass) {
                out.truncated = true;
                continue;
            }
            State t = s;
            t[v] -= 1;
            for (auto e : g.out_edges(v)) t[g.edges()[e].range] += 1;
            if (visited[side].count(t)) continue;
            visited[side].emplace(t, s);
            if (visited[1 - side].count(t)) return meet(side, t);
            queue.emplace(mass + out_deg - 1, side, t);
        }
    }
    if (!out.truncated) {
        out.kind = EqVerdict::Kind::NotEqual;
        out.reason = "rewrite closures are finite and disjoint";
    } else {
        out.kind = EqVerdict::Kind::Unknown;
        out.reason = "budget exhausted";
    }
    return out;
}

// ---------------------------------------------------------------- graded monoid

GradedElement graded_expand_step(const Graph& g, const GradedElement& a, std::size_t v, long level, const Int& amount) {
    if (v >= g.num_vertices()) throw PreconditionError("graded_expand_step: vertex out of range");
    if (g.is_sink(v)) throw PreconditionError("graded_expand_step: sinks do not expand");
    GradedElement r = a;
    r.add(v, level, -amount);
    for (auto e : g.out_edges(v)) r.add(g.edges()[e].range, level - 1, amount);
    return r;
}

GradedElement graded_expand_to_level(const Graph& g, const GradedElement& a, long L) {
    if (a.is_zero()) return a;
    if (L > a.min_level()) throw PreconditionError("graded_expand_to_level: target level above the support");
    GradedElement r = a;
    for (long lvl = r.max_level(); lvl > L; --lvl) {
        std::vector<std::pair<std::size_t, Int>> here;
        for (const auto& [key, c] : r.terms())
            if (key.second == lvl && !g.is_sink(key.first)) here.emplace_back(key.first, c);
        for (const auto& [v, c] : here) r = graded_expand_step(g, r, v, lvl, c);
    }
    return r;
}

EqVerdict graded_equal(const Graph& g, const GradedElement& a, const GradedElement& b) {
    EqVerdict out;
    GradedElement d = a - b;
    if (d.is_zero()) {
        out.kind = EqVerdict::Kind::Equal;
        out.reason = "identical after collecting terms";
        if (!a.is_zero()) out.level = a.min_level();
        return out;
    }
    long L = d.min_level();
    if (!a.is_zero()) L = std::min(L, a.min_level());
    if (!b.is_zero()) L = std::min(L, b.min_level());
    GradedElement x = graded_expand_to_level(g, d, L);
    // Sink terms never change again; regular terms at level L move one level down per step
    // through the transpose of the regular block. A nilpotent part dies within |E⁰| steps.
    for (std::size_t step = 0; step <= g.num_vertices() + 1; ++step) {
        for (const auto& [key, c] : x.terms())
            if (g.is_sink(key.first)) {
                out.kind = EqVerdict::Kind::NotEqual;
                out.reason = "a sink coefficient survives expansion";
                out.level = L;
                return out;
            }
        if (x.is_zero()) {
            out.kind = EqVerdict::Kind::Equal;
            out.reason = "expansions agree";
            out.level = L;
            return out;
        }
        --L;
        x = graded_expand_to_level(g, x, L);
    }
    out.kind = EqVerdict::Kind::NotEqual;
    out.reason = "difference is not in the eventual kernel of the level transition";
    out.level = L;
    return out;
}

bool order_ideal_membership(const Graph& g, const GradedElement& a, const VertexSet& H) {
    if (!a.is_nonnegative()) throw PreconditionError("order_ideal_membership: element must be nonnegative");
    if (!is_hsat(g, H)) throw PreconditionError("order_ideal_membership: subset must be hereditary and saturated");
    if (a.is_zero()) return true;
    GradedElement x = graded_expand_to_level(g, a, a.min_level());
    for (const auto& [key, c] : x.terms())
        if (!H.contains(key.first)) return false;
    return true;
}

GradedElement transport(const Graph& from, const GradedElement& a, const Graph& to) {
    GradedElement r;
    for (const auto& [key, c] : a.terms())
        if (auto w = to.find_vertex(from.vertex(key.first))) r.add(*w, key.second, c);
    return r;
}

namespace {

GradedElement random_element(std::mt19937_64& rng, std::size_t n) {
    GradedElement a;
    if (n == 0) return a;
    const std::size_t terms = 1 + rng() % 3;
    for (std::size_t t = 0; t < terms; ++t)
        a.add(rng() % n, static_cast<long>(rng() % 5) - 2, static_cast<long>(1 + rng() % 3));
    return a;
}

// A few random partial expansions; the result stays nonnegative and in the same class.
GradedElement random_rewrite(const Graph& g, GradedElement a, std::mt19937_64& rng) {
    const std::size_t steps = rng() % 5;
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<std::pair<GradedElement::Key, Int>> candidates;
        for (const auto& [key, c] : a.terms())
            if (!g.is_sink(key.first)) candidates.emplace_back(key, c);
        if (candidates.empty()) break;
        const auto& [key, c] = candidates[rng() % candidates.size()];
        Int amount = 1 + static_cast<long>(rng() % c.get_ui());
        a = graded_expand_step(g, a, key.first, key.second, amount);
    }
    return a;
}

GradedElement part_in(const GradedElement& a, const VertexSet& H, bool inside) {
    GradedElement r;
    for (const auto& [key, c] : a.terms())
        if (H.contains(key.first) == inside) r.add(key.first, key.second, c);
    return r;
}

}  // namespace

RoundtripReport quotient_roundtrip(const Graph& g, const VertexSet& H1, const VertexSet& H2, std::size_t samples,
                                   std::uint64_t seed) {
    Graph Q = subquotient(g, H1, H2);  // validates H1 ⊆ H2, both hereditary saturated
    Graph E2 = restriction(g, H2, true);
    VertexSet H1in2 = transfer(g, H1, E2);
    std::mt19937_64 rng(seed);
    RoundtripReport rep;
    auto fail = [&](const std::string& what, const GradedElement& x) {
        rep.passed = false;
        rep.counterexample = what + ": " + to_string(E2, x);
    };
    // f deletes H1 generators; g includes generators of the subquotient.
    auto f = [&](const GradedElement& x) { return transport(E2, part_in(x, H1in2, false), Q); };
    auto gmap = [&](const GradedElement& x) { return transport(Q, x, E2); };

    for (std::size_t s = 0; s < samples && rep.passed; ++s) {
        // f∘g = id, on a representative of g(a) that has been rewritten inside E_{H2}
        GradedElement a = random_element(rng, Q.num_vertices());
        GradedElement ga = random_rewrite(E2, gmap(a), rng);
        if (graded_equal(Q, f(ga), a).kind != EqVerdict::Kind::Equal) {
            fail("f(g(a)) differs from a", ga);
            break;
        }
        // g∘f = id in the quotient: g(f(b')) + i = b' with i supported on H1, for a rewrite b' of b
        GradedElement b = random_element(rng, E2.num_vertices());
        GradedElement b2 = random_rewrite(E2, b, rng);
        if (graded_equal(Q, f(b), f(b2)).kind != EqVerdict::Kind::Equal) {
            fail("f does not respect rewriting", b);
            break;
        }
        GradedElement i = part_in(b2, H1in2, true);
        if (!order_ideal_membership(E2, i, H1in2) || !(gmap(f(b2)) + i == b2) ||
            graded_equal(E2, gmap(f(b2)) + i, b).kind != EqVerdict::Kind::Equal) {
            fail("g(f(b)) is not b modulo the H1 part", b);
            break;
        }
        rep.checked += 2;
    }
    return rep;
}

// ---------------------------------------------------------------- literals

namespace {

struct Term {
    Int coef;
    std::string name;
    std::optional<long> level;
};

std::vector<Term> parse_terms(std::string_view text, bool allow_negative) {
    std::vector<Term> out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) { throw ParseError(0, "element literal '" + std::string(text) + "': " + why); };
    auto is_name_char = [](char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '*' && c != '(' && c != ')';
    };
    skip();
    if (i == text.size()) fail("empty");
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Term t{1, "", std::nullopt};
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        bool have_coef = j > i;
        if (have_coef) {
            t.coef = Int(std::string(text.substr(i, j - i)));
            i = j;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            } else {
                // a bare integer is only allowed as the zero literal
                if (t.coef != 0) fail("expected '*' after a coefficient");
                skip();
                continue;
            }
        }
        j = i;
        while (j < text.size() && is_name_char(text[j])) ++j;
        if (j == i) fail("expected a vertex name");
        t.name = std::string(text.substr(i, j - i));
        i = j;
        skip();
        if (i < text.size() && text[i] == '(') {
            std::size_t close = text.find(')', i);
            if (close == std::string_view::npos) fail("missing ')'");
            std::string inner(text.substr(i + 1, close - i - 1));
            try {
                std::size_t used = 0;
                t.level = std::stol(inner, &used);
                if (used != inner.size()) fail("bad level");
            } catch (const std::logic_error&) {
                fail("bad level '" + inner + "'");
            }
            i = close + 1;
            skip();
        }
        if (sign < 0 && !allow_negative) fail("negative coefficients are not allowed here");
        t.coef *= sign;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

GradedElement parse_graded_element(const Graph& g, std::string_view text) {
    GradedElement a;
    for (const auto& t : parse_terms(text, true)) {
        auto v = g.find_vertex(t.name);
        if (!v) throw ParseError(0, "element literal: unknown vertex '" + t.name + "'");
        if (!t.level) throw ParseError(0, "element literal: graded term '" + t.name + "' needs a level, e.g. v(0)");
        a.add(*v, *t.level, t.coef);
    }
    return a;
}

MonoidElement parse_monoid_element(const Graph& g, std::string_view text) {
    MonoidElement a(g.num_vertices(), Int(0));
    for (const auto& t : parse_terms(text, false)) {
        auto v = g.find_vertex(t.name);
        if (!v) throw ParseError(0, "element literal: unknown vertex '" + t.name + "'");
        if (t.level) throw ParseError(0, "element literal: ungraded term '" + t.name + "' must not carry a level");
        a[*v] += t.coef;
    }
    return a;
}

std::string to_string(const Graph& g, const GradedElement& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest level first, then vertex order
    std::vector<std::pair<GradedElement::Key, Int>> ts(a.terms().begin(), a.terms().end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
        if (x.first.second != y.first.second) return x.first.second > y.first.second;
        return x.first.first < y.first.first;
    });
    for (const auto& [key, c] : ts) {
        Int m = abs(c);
        if (c < 0) os << '-';
        else if (!first) os << "+";
        if (m != 1) os << m << '*';
        os << g.vertex(key.first) << '(' << key.second << ')';
        first = false;
    }
    return os.str();
}

std::string to_string(const Graph& g, const MonoidElement& a) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] == 0) continue;
        if (!first) os << '+';
        if (a[v] != 1) os << a[v] << '*';
        os << g.vertex(v);
        first = false;
    }
    return first ? "0" : os.str();
}

}  // namespace lpk
