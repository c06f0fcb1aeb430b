#include "lpk/report.hpp"

#include "lpk/errors.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace lpk::report {

json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError(0, "bad integer '" + j.get<std::string>() + "'");
        return x;
    }
    throw ParseError(0, "expected an integer");
}

json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(int_json(m(i, k)));
        rows.push_back(std::move(r));
    }
    return rows;
}

IntMatrix matrix_from_json(const json& j, std::size_t cols_if_empty) {
    if (!j.is_array()) throw ParseError(0, "matrix must be an array of rows");
    if (j.empty()) return IntMatrix(0, cols_if_empty);
    const std::size_t cols = j[0].size();
    IntMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError(0, "matrix rows must have equal length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = int_from_json(j[i][k]);
    }
    return m;
}

json to_json(const FgAbGroup& g) {
    json t = json::array();
    for (const auto& d : g.torsion) t.push_back(int_json(d));
    return {{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.to_string()}};
}

FgAbGroup group_from_json(const json& j) {
    std::vector<Int> t;
    for (const auto& d : j.at("torsion")) t.push_back(int_from_json(d));
    return FgAbGroup::from_cyclic(j.at("free_rank").get<std::size_t>(), t);
}

json to_json(const Graph& g) {
    json es = json::array();
    for (const auto& e : g.edges()) es.push_back({e.id, g.vertex(e.source), g.vertex(e.range)});
    return {{"vertices", g.vertices()}, {"edges", es}};
}

Graph graph_from_json(const json& j) {
    std::vector<std::array<std::string, 3>> es;
    for (const auto& e : j.at("edges")) es.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<std::string>()});
    return Graph::from_names(j.at("vertices").get<std::vector<std::string>>(), es);
}

json names(const Graph& g, const VertexSet& s) {
    json out = json::array();
    for (auto v : s.members()) out.push_back(g.vertex(v));
    return out;
}

json to_json(const ShiftEqCertificate& c) { return {{"R", to_json(c.R)}, {"S", to_json(c.S)}, {"lag", c.lag}}; }

ShiftEqCertificate certificate_from_json(const json& j) {
    try {
        ShiftEqCertificate c;
        c.R = matrix_from_json(j.at("R"));
        c.S = matrix_from_json(j.at("S"));
        c.lag = j.at("lag").get<unsigned>();
        return c;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("certificate: ") + e.what());
    }
}

json to_json(const KOne& k) {
    json q = json::array();
    for (const auto& d : k.coker_part.quotients) q.push_back(int_json(d));
    json coeff = {{"expression", k.coker_part.expression}, {"free_copies", k.coker_part.free_copies}, {"quotients", q}};
    if (k.coker_part.group) coeff["group"] = to_json(*k.coker_part.group);
    json out = {{"text", k.to_string()},
                {"kernel_rank", k.kernel_rank()},
                {"kernel_basis", to_json(k.ker_part)},
                {"coefficient_part", coeff}};
    if (auto g = k.group()) out["group"] = to_json(*g);
    return out;
}

json to_json(const GroupMap& f) {
    return {{"domain", to_json(f.domain.normal_form())},
            {"codomain", to_json(f.codomain.normal_form())},
            {"matrix", to_json(f.matrix)},
            {"invariants",
             [&] {
                 MapInvariants m = map_invariants(f);
                 return json{{"kernel", to_json(m.kernel)}, {"image", to_json(m.image)}, {"cokernel", to_json(m.cokernel)}};
             }()}};
}

json to_json(const NodeVerdict& v) {
    return {{"node", v.node}, {"exact", v.exact}, {"image_in_kernel", v.image_in_kernel}, {"kernel_in_image", v.kernel_in_image}};
}

json to_json(const EqVerdict& v, const Graph& g) {
    json out = {{"verdict", to_string(v.kind)}, {"reason", v.reason}, {"explored", v.explored}, {"truncated", v.truncated}};
    auto trace = [&](const std::vector<MonoidElement>& t) {
        json a = json::array();
        for (const auto& x : t) a.push_back(to_string(g, x));
        return a;
    };
    if (!v.trace_a.empty() || !v.trace_b.empty()) out["trace"] = {{"a", trace(v.trace_a)}, {"b", trace(v.trace_b)}};
    else out["level"] = v.level;
    return out;
}

json to_json(const IdealLattice& L, const Graph& g) {
    json els = json::array();
    for (const auto& H : L.elements) els.push_back(names(g, H));
    json order = json::array();
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < L.size(); ++j)
            if (i != j && L.leq[i][j]) order.push_back({i, j});
    return {{"size", L.size()}, {"elements", els}, {"inclusions", order}};
}

json to_json(const SpectrumTopology& ts, const Graph& g) {
    json primes = json::array();
    for (auto p : ts.primes) primes.push_back({{"index", p}, {"vertices", names(g, ts.lattice.elements[p])}});
    json opens = json::array();
    for (std::size_t h = 0; h < ts.opens.size(); ++h) opens.push_back(ts.opens[h].members());
    json lcs = json::array();
    for (const auto& y : locally_closed_all(ts))
        lcs.push_back({{"primes", y.primes.members()}, {"outer", y.outer}, {"inner", y.inner}});
    return {{"lattice", to_json(ts.lattice, g)}, {"primes", primes}, {"opens", opens}, {"locally_closed", lcs}};
}

json to_json(const SixTermRow& r, const Graph& g) {
    json maps = json::array(), exact = json::array();
    for (const auto& f : r.integer_maps) maps.push_back(to_json(f));
    for (const auto& v : r.integer_exactness) exact.push_back(to_json(v));
    json full = json::array(), fexact = json::array(), cexact = json::array();
    for (const auto& f : r.full_maps) full.push_back(to_json(f));
    for (const auto& v : r.full_exactness) fexact.push_back(to_json(v));
    for (const auto& v : r.coefficient_exactness) cexact.push_back(to_json(v));
    return {{"HI", names(g, r.HI)},
            {"HJ", names(g, r.HJ)},
            {"HP", names(g, r.HP)},
            {"K1bar", {{"J/I", to_json(r.k1_JI)}, {"P/I", to_json(r.k1_PI)}, {"P/J", to_json(r.k1_PJ)}}},
            {"K0", {{"J/I", to_json(r.k0_JI)}, {"P/I", to_json(r.k0_PI)}, {"P/J", to_json(r.k0_PJ)}}},
            {"integer_maps", maps},
            {"integer_exactness", exact},
            {"full_maps", full},
            {"full_exactness", fexact},
            {"coefficient_enumerated", r.coefficient_enumerated},
            {"coefficient_exactness", cexact},
            {"exact", r.exact()}};
}

json to_json(const VdbReport& r) {
    return {{"k_matrix", to_json(r.k_matrix)},
            {"kernel_basis", to_json(r.kernel_basis)},
            {"ker_phi", to_json(r.kernel)},
            {"coker_phi", to_json(r.cokernel)},
            {"K0", to_json(r.k0)},
            {"K1", to_json(r.k1)},
            {"checks",
             {{"forget_surjective", r.forget_surjective},
              {"forget_kills_phi", r.forget_kills_phi},
              {"kernel_in_ker_phi", r.kernel_in_ker_phi},
              {"kernel_psi_injective", r.kernel_psi_injective},
              {"telescoping", r.telescoping},
              {"psi_diagram", r.psi_diagram}}},
            {"ok", r.ok()}};
}

json to_json(const FilteredKTable& t) {
    json entries = json::array();
    for (const auto& e : t.entries)
        entries.push_back({{"primes", e.y.primes.members()},
                           {"outer", names(t.graph, t.topology.lattice.elements[e.y.outer])},
                           {"inner", names(t.graph, t.topology.lattice.elements[e.y.inner])},
                           {"graph", to_json(e.graph)},
                           {"K0", to_json(e.k0)},
                           {"K1bar", to_json(e.k1bar)}});
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = to_json(r.row, t.graph);
        row["triple"] = {r.I, r.J, r.P};
        rows.push_back(std::move(row));
    }
    return {{"spectrum", to_json(t.topology, t.graph)}, {"entries", entries}, {"rows", rows}, {"exact", t.exact()}};
}

json to_json(const ComparisonReport& r, const FilteredKTable&, const FilteredKTable&) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"kind", c.kind}, {"where", c.where}, {"left", c.left}, {"right", c.right}, {"match", c.match}});
    json out = {{"consistent", r.consistent},
                {"lattices_isomorphic", r.lattices_isomorphic},
                {"from_certificate", r.from_certificate},
                {"isomorphisms_tried", r.isomorphisms_tried},
                {"lattice_iso", r.lattice_iso},
                {"checks", checks},
                {"exact_left", r.exact_left},
                {"exact_right", r.exact_right},
                {"squares",
                 {{"attempted", r.squares.attempted},
                  {"found", r.squares.found},
                  {"exhausted_budget", r.squares.exhausted_budget},
                  {"variables", r.squares.variables},
                  {"nodes", r.squares.nodes},
                  {"note", r.squares.note}}},
                {"truncated", r.truncated},
                {"note", ComparisonReport::note}};
    if (!r.consistent) out["obstruction"] = {{"kind", r.obstruction_kind}, {"location", r.obstruction}};
    return out;
}

json to_json(const ShiftEqResult& r) {
    json out = {{"result", to_string(r.kind)},
                {"reason", r.reason},
                {"bowen_franks", {to_json(r.bf_a), to_json(r.bf_b)}},
                {"det_invariant", {int_json(r.det_a), int_json(r.det_b)}},
                {"candidates", r.candidates},
                {"truncated", r.truncated}};
    if (r.certificate) out["certificate"] = to_json(*r.certificate);
    return out;
}

IntMatrix parse_matrix(std::string_view text) {
    std::vector<IntVector> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        IntVector row;
        while (ls >> tok) {
            Int x;
            if (x.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0) throw ParseError(lineno, "bad integer '" + tok + "'");
            row.push_back(x);
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows[0].size())
            throw ParseError(lineno, "row has " + std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(rows[0].size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(0, "empty matrix");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
    return m;
}

std::string matrix_to_text(const IntMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) out += (k ? " " : "") + m(i, k).get_str();
        out += '\n';
    }
    return out;
}

FieldModel parse_field(std::string_view text) {
    if (text == "symbolic") return FieldModel::symbolic();
    if (text == "divisible") return FieldModel::divisible();
    Int q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0)
        throw ParseError(0, "field must be 'symbolic', 'divisible' or a prime power, got '" + std::string(text) + "'");
    if (!is_prime_power(q)) throw ParseError(0, "field order " + q.get_str() + " is not a prime power");
    return FieldModel::finite(q);
}

VertexSet parse_vertex_set(const Graph& g, std::string_view text) {
    VertexSet s(g.num_vertices());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string_view::npos) j = text.size();
        std::string name(text.substr(i, j - i));
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(name.begin());
        if (!name.empty()) {
            auto v = g.find_vertex(name);
            if (!v) throw ParseError(0, "unknown vertex '" + name + "'");
            s.insert(*v);
        }
        i = j + 1;
    }
    return s;
}

}  // namespace lpk::report
