#include "lpk/cli.hpp"

#include "lpk/errors.hpp"
#include "lpk/families.hpp"
#include "lpk/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lpk::cli {

using report::json;

std::string CommandResult::output() const {
    if (json) return report.dump(2) + "\n";
    return text.empty() || text.back() == '\n' ? text : text + "\n";
}

std::string describe_graph_sources() {
    return "a graph file, or family:rose:N | family:loop | family:line | family:fan | family:loop-pair | "
           "family:two-vertex | family:sinks:N | family:random:SEED:INDEX";
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

unsigned long to_count(const std::string& s) {
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ParseError(0, "expected a number, got '" + s + "'");
}

Graph load_graph(const std::string& source) {
    if (source.rfind("family:", 0) == 0) {
        auto parts = split(source.substr(7), ':');
        const std::string kind = parts.empty() ? "" : parts[0];
        auto arg = [&](std::size_t i) {
            if (parts.size() <= i) throw ParseError(0, "family '" + kind + "' needs more parameters");
            return to_count(parts[i]);
        };
        if (kind == "rose") return families::rose(arg(1));
        if (kind == "loop") return families::loop();
        if (kind == "line") return families::line();
        if (kind == "fan") return families::fan();
        if (kind == "loop-pair") return families::loop_pair();
        if (kind == "two-vertex") return families::two_vertex_example();
        if (kind == "sinks") return families::sinks(arg(1));
        if (kind == "random") {
            const auto idx = arg(2);
            return families::random_connected(arg(1), idx + 1, 1, 4, 2)[idx];
        }
        throw ParseError(0, "unknown graph family '" + kind + "'");
    }
    try {
        return parse_graph(read_file(source));
    } catch (const ParseError& e) {
        throw ParseError(0, source + ": " + e.what());
    }
}

IntMatrix load_matrix(const std::string& path) {
    try {
        return report::parse_matrix(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(0, path + ": " + e.what());
    }
}

const char* status_of(int code) {
    switch (code) {
        case kOk: return "ok";
        case kObstruction: return "obstruction";
        case kCapExceeded: return "unknown";
        default: return "error";
    }
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string set_text(const Graph& g, const VertexSet& s) {
    std::string out = "{";
    for (auto v : s.members()) out += (out.size() > 1 ? "," : "") + g.vertex(v);
    return out + "}";
}

struct Options {
    bool json = false;
    std::string field = "symbolic";
    std::size_t lattice_cap = kDefaultLatticeCap;
    std::size_t row_cap = 20000;
    std::size_t enumeration_cap = 10000;
    std::size_t max_states = 100000;
    std::size_t max_mass = 64;
    std::size_t samples = 25;
    std::uint64_t seed = 1;
    unsigned max_lag = 2;
    unsigned max_entry = 2;
    std::size_t max_candidates = 1000000;
    std::size_t iso_cap = 1000;
    std::string certificate;
    std::string hi, hj, hp;
    std::vector<std::string> files;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_flag("--json", o.json, "Emit a JSON report");
}

void add_field(CLI::App* sub, Options& o) {
    sub->add_option("--field", o.field, "Coefficient field: a prime power q, 'divisible' or 'symbolic'")
        ->capture_default_str();
}

void add_lattice_cap(CLI::App* sub, Options& o) {
    sub->add_option("--lattice-cap", o.lattice_cap, "Maximum number of hereditary saturated subsets")
        ->capture_default_str();
}

CommandResult run_batch(const std::string& path);

// Each verb fills the result and returns its exit code.
int dispatch(const std::string& verb, Options& o, CommandResult& r) {
    json& j = r.report;
    std::ostringstream t;
    auto finish = [&](int code) {
        r.text = t.str();
        return code;
    };

    if (verb == "info") {
        Graph g = load_graph(o.files.at(0));
        auto adj = adjacency(g);
        j["graph"] = report::to_json(g);
        j["num_vertices"] = g.num_vertices();
        j["num_edges"] = g.num_edges();
        j["sinks"] = report::names(g, g.sinks());
        j["regular"] = report::names(g, g.regulars());
        j["adjacency"] = report::to_json(adj.A);
        j["irreducible"] = is_irreducible(g);
        j["downward_directed"] = is_downward_directed(g, VertexSet::full(g.num_vertices()));
        t << "vertices: " << g.num_vertices() << "\nedges: " << g.num_edges() << "\nsinks: " << set_text(g, g.sinks())
          << "\nadjacency: " << adj.A.to_string() << "\nirreducible: " << yes(is_irreducible(g))
          << "\ndownward directed: " << yes(j["downward_directed"].get<bool>()) << "\n";
        return finish(kOk);
    }
    if (verb == "hsat") {
        Graph g = load_graph(o.files.at(0));
        auto L = enumerate_hsat(g, o.lattice_cap);
        j["lattice"] = report::to_json(L, g);
        t << L.size() << " hereditary saturated subsets\n";
        for (const auto& H : L.elements) t << "  " << set_text(g, H) << "\n";
        return finish(kOk);
    }
    if (verb == "spec") {
        Graph g = load_graph(o.files.at(0));
        auto ts = graded_primes(g, enumerate_hsat(g, o.lattice_cap));
        j["spectrum"] = report::to_json(ts, g);
        t << ts.num_primes() << " graded primes\n";
        for (std::size_t p = 0; p < ts.num_primes(); ++p) t << "  p" << p << " = " << set_text(g, ts.lattice.elements[ts.primes[p]]) << "\n";
        t << locally_closed_all(ts).size() << " locally closed sets (the empty set included)\n";
        return finish(kOk);
    }
    if (verb == "k0") {
        Graph g = load_graph(o.files.at(0));
        auto k = k0(g);
        j["K0"] = report::to_json(k.group.normal_form());
        j["relations"] = report::to_json(k_matrix(g));
        j["generators"] = g.vertices();
        t << "K0 = " << k.group.normal_form().to_string() << "\n";
        return finish(kOk);
    }
    if (verb == "k1" || verb == "k1bar") {
        Graph g = load_graph(o.files.at(0));
        FieldModel f = report::parse_field(o.field);
        KOne k = verb == "k1" ? k1(g, f) : k1bar(g, f);
        j["field"] = f.to_string();
        j[verb == "k1" ? "K1" : "Kbar1"] = report::to_json(k);
        t << (verb == "k1" ? "K1 = " : "Kbar1 = ") << k.to_string() << "\n";
        return finish(kOk);
    }
    if (verb == "monoid-eq" || verb == "graded-eq") {
        Graph g = load_graph(o.files.at(0));
        EqVerdict v;
        if (verb == "monoid-eq") {
            v = ungraded_equal(g, parse_monoid_element(g, o.files.at(1)), parse_monoid_element(g, o.files.at(2)),
                               MonoidBudget{o.max_states, o.max_mass});
        } else {
            v = graded_equal(g, parse_graded_element(g, o.files.at(1)), parse_graded_element(g, o.files.at(2)));
        }
        j["a"] = o.files.at(1);
        j["b"] = o.files.at(2);
        j["result"] = report::to_json(v, g);
        t << to_string(v.kind) << " (" << v.reason << ")\n";
        for (const auto* tr : {&v.trace_a, &v.trace_b}) {
            if (tr->size() < 2) continue;
            t << "  ";
            for (std::size_t i = 0; i < tr->size(); ++i) t << (i ? " -> " : "") << to_string(g, (*tr)[i]);
            t << "\n";
        }
        return finish(v.kind == EqVerdict::Kind::Equal ? kOk
                      : v.kind == EqVerdict::Kind::NotEqual ? kObstruction
                                                            : kCapExceeded);
    }
    if (verb == "fk") {
        Graph g = load_graph(o.files.at(0));
        FieldModel f = report::parse_field(o.field);
        auto table = fkbar(g, f.reduced_units(), FkOptions{o.lattice_cap, o.row_cap, o.enumeration_cap});
        j["field"] = f.to_string();
        j["table"] = report::to_json(table);
        t << table.topology.num_primes() << " graded primes, " << table.entries.size() << " locally closed sets, "
          << table.rows.size() << " rows\n";
        for (const auto& e : table.entries) {
            t << "  " << set_text(g, table.topology.lattice.elements[e.y.outer]) << "/"
              << set_text(g, table.topology.lattice.elements[e.y.inner]) << ": K0 = " << e.k0.to_string()
              << ", Kbar1 = " << e.k1bar.to_string() << "\n";
        }
        t << "rows exact: " << yes(table.exact()) << "\n";
        return finish(table.exact() ? kOk : kObstruction);
    }
    if (verb == "compare") {
        Graph g1 = load_graph(o.files.at(0)), g2 = load_graph(o.files.at(1));
        FieldModel f = report::parse_field(o.field);
        CompareOptions co;
        co.fk = FkOptions{o.lattice_cap, o.row_cap, o.enumeration_cap};
        co.iso_cap = o.iso_cap;
        if (!o.certificate.empty()) {
            json cj;
            try {
                cj = json::parse(read_file(o.certificate));
            } catch (const json::parse_error& e) {
                throw ParseError(0, o.certificate + ": " + e.what());
            }
            co.certificate = report::certificate_from_json(cj.contains("certificate") ? cj["certificate"] : cj);
        }
        auto a = fkbar(g1, f.reduced_units(), co.fk), b = fkbar(g2, f.reduced_units(), co.fk);
        auto rep = compare_fkbar(a, b, co);
        j["field"] = f.to_string();
        j["comparison"] = report::to_json(rep, a, b);
        if (rep.consistent) t << "consistent (" << ComparisonReport::note << ")\n";
        else t << "obstruction: " << rep.obstruction << "\n";
        if (rep.consistent) return finish(kOk);
        return finish(rep.truncated ? kCapExceeded : kObstruction);
    }
    if (verb == "shifteq") {
        IntMatrix A = load_matrix(o.files.at(0)), B = load_matrix(o.files.at(1));
        auto res = shift_equivalent_bounded(A, B, o.max_lag, o.max_entry, o.max_candidates);
        j["shift_equivalence"] = report::to_json(res);
        t << to_string(res.kind) << ": " << res.reason << "\n";
        if (res.certificate)
            t << "R = " << res.certificate->R.to_string() << "\nS = " << res.certificate->S.to_string() << "\n";
        return finish(res.kind == ShiftEqResult::Kind::Certificate   ? kOk
                      : res.kind == ShiftEqResult::Kind::Obstruction ? kObstruction
                                                                     : kCapExceeded);
    }
    if (verb == "bf") {
        IntMatrix A = load_matrix(o.files.at(0));
        FgAbGroup bf = bowen_franks(A);
        Int d = det_invariant(A);
        j["bowen_franks"] = report::to_json(bf);
        j["det_invariant"] = report::int_json(d);
        t << "BF = " << bf.to_string() << "\ndet(I - A) = " << d << "\n";
        return finish(kOk);
    }
    if (verb == "vdb") {
        Graph g = load_graph(o.files.at(0));
        FieldModel f = report::parse_field(o.field);
        auto v = vdb_sequence(g, f, o.samples, o.seed);
        j["field"] = f.to_string();
        j["sequence"] = report::to_json(v);
        t << "ker phi = " << v.kernel.to_string() << "\ncoker phi = " << v.cokernel.to_string()
          << "\nK0 = " << v.k0.to_string() << "\nK1 = " << v.k1.to_string() << "\nchecks: " << (v.ok() ? "pass" : "FAIL")
          << "\n";
        return finish(v.ok() ? kOk : kObstruction);
    }
    if (verb == "sixterm") {
        Graph g = load_graph(o.files.at(0));
        FieldModel f = report::parse_field(o.field);
        VertexSet HI = report::parse_vertex_set(g, o.hi), HJ = report::parse_vertex_set(g, o.hj),
                  HP = report::parse_vertex_set(g, o.hp);
        for (const auto* H : {&HI, &HJ, &HP})
            if (!is_hsat(g, *H)) throw PreconditionError(set_text(g, *H) + " is not hereditary and saturated");
        auto row = six_term_row(g, HI, HJ, HP, f.reduced_units(), o.enumeration_cap);
        j["field"] = f.to_string();
        j["row"] = report::to_json(row, g);
        t << row.k1_JI.to_string() << " -> " << row.k1_PI.to_string() << " -> " << row.k1_PJ.to_string() << " -> "
          << row.k0_JI.to_string() << " -> " << row.k0_PI.to_string() << " -> " << row.k0_PJ.to_string() << "\n"
          << "exact: " << yes(row.exact()) << "\n";
        return finish(row.exact() ? kOk : kObstruction);
    }
    throw ParseError(0, "unknown command '" + verb + "'");
}

CommandResult run_batch(const std::string& path) {
    CommandResult r;
    r.json = true;
    json jobs;
    try {
        jobs = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(0, path + ": " + e.what());
    }
    if (!jobs.is_array()) throw ParseError(0, path + ": expected a JSON array of argument lists");
    json results = json::array();
    int worst = kOk;
    for (const auto& job : jobs) {
        if (!job.is_array()) throw ParseError(0, path + ": every job must be an array of strings");
        std::vector<std::string> args;
        for (const auto& a : job) args.push_back(a.get<std::string>());
        if (!args.empty() && args[0] == "batch") throw ParseError(0, "batch files cannot nest");
        CommandResult sub = run_command(args);
        worst = std::max(worst, sub.exit_code);
        results.push_back({{"args", args}, {"exit", sub.exit_code}, {"report", sub.report}});
    }
    r.report = {{"verb", "batch"}, {"jobs", results}};
    r.exit_code = worst;
    r.report["status"] = status_of(worst);
    return r;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult r;
    Options o;
    CLI::App app{"Invariants of finite directed graphs: ideal lattices, graph monoids, K-theory, shift equivalence"};
    app.name("lpk");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    auto graph_cmd = [&](const char* name, const char* about) {
        auto* s = app.add_subcommand(name, about);
        s->add_option("graph", o.files, describe_graph_sources())->required()->expected(1);
        add_common(s, o);
        return s;
    };
    graph_cmd("info", "Vertices, sinks, adjacency matrix and connectivity");
    add_lattice_cap(graph_cmd("hsat", "Lattice of hereditary saturated subsets"), o);
    add_lattice_cap(graph_cmd("spec", "Graded prime spectrum and its locally closed sets"), o);
    graph_cmd("k0", "K0 as the cokernel of (Bᵗ − I; Cᵗ)");
    add_field(graph_cmd("k1", "K1 with coefficients in the unit group"), o);
    add_field(graph_cmd("k1bar", "Reduced K1"), o);
    for (const char* name : {"monoid-eq", "graded-eq"}) {
        auto* s = app.add_subcommand(name, std::string(name) == "monoid-eq" ? "Equality in the graph monoid"
                                                                             : "Equality in the graded monoid");
        s->add_option("inputs", o.files, "Graph and two element literals such as 2*v+w or 2*v(0)+w(-1)")
            ->required()
            ->expected(3);
        s->add_option("--max-states", o.max_states, "Search budget in explored states")->capture_default_str();
        s->add_option("--max-mass", o.max_mass, "Largest total coefficient visited")->capture_default_str();
        add_common(s, o);
    }
    for (const char* name : {"fk", "compare"}) {
        const bool cmp = std::string(name) == "compare";
        auto* s = app.add_subcommand(name, cmp ? "Compare filtered K-theory of two graphs" : "Filtered K-theory table");
        s->add_option(cmp ? "graphs" : "graph", o.files, describe_graph_sources())->required()->expected(cmp ? 2 : 1);
        add_field(s, o);
        add_lattice_cap(s, o);
        s->add_option("--row-cap", o.row_cap, "Maximum number of lattice triples")->capture_default_str();
        s->add_option("--enumeration-cap", o.enumeration_cap, "Largest group listed element by element")
            ->capture_default_str();
        if (cmp) {
            s->add_option("--iso-cap", o.iso_cap, "Lattice isomorphisms tried")->capture_default_str();
            s->add_option("--certificate", o.certificate, "Shift equivalence certificate (JSON from shifteq)");
        }
        add_common(s, o);
    }
    {
        auto* s = app.add_subcommand("shifteq", "Bounded search for a shift equivalence");
        s->add_option("matrices", o.files, "Two matrix files")->required()->expected(2);
        s->add_option("--max-lag", o.max_lag, "Largest lag")->capture_default_str();
        s->add_option("--max-entry", o.max_entry, "Largest entry of R and S")->capture_default_str();
        s->add_option("--max-candidates", o.max_candidates, "Search budget")->capture_default_str();
        add_common(s, o);
    }
    {
        auto* s = app.add_subcommand("bf", "Bowen-Franks group and det(I - A)");
        s->add_option("matrix", o.files, "Matrix file")->required()->expected(1);
        add_common(s, o);
    }
    {
        auto* s = graph_cmd("vdb", "The sequence K1 -> K0gr -> K0gr -> K0 -> 0 and its checks");
        add_field(s, o);
        s->add_option("--samples", o.samples, "Random samples per check")->capture_default_str();
        s->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    }
    {
        auto* s = graph_cmd("sixterm", "Six-term row for HI ⊆ HJ ⊆ HP");
        add_field(s, o);
        s->add_option("--hi", o.hi, "Comma separated vertices of HI");
        s->add_option("--hj", o.hj, "Comma separated vertices of HJ");
        s->add_option("--hp", o.hp, "Comma separated vertices of HP");
        s->add_option("--enumeration-cap", o.enumeration_cap, "Largest group listed element by element")
            ->capture_default_str();
    }
    {
        auto* s = app.add_subcommand("batch", "Run a JSON array of argument lists; prints a JSON array of reports");
        s->add_option("jobs", o.files, "Batch file")->required()->expected(1);
    }

    std::string verb;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        verb = app.get_subcommands().front()->get_name();
        r.json = o.json;
        if (verb == "batch") return run_batch(o.files.at(0));
        r.report = {{"verb", verb}};
        r.exit_code = dispatch(verb, o, r);
    } catch (const CLI::CallForHelp&) {
        r.text = app.help();
        r.exit_code = kOk;
        r.report = {{"verb", "help"}};
    } catch (const CLI::CallForAllHelp&) {
        r.text = app.help("", CLI::AppFormatMode::All);
        r.exit_code = kOk;
        r.report = {{"verb", "help"}};
    } catch (const CLI::ParseError& e) {
        r.exit_code = kInputError;
        r.text = std::string("error: ") + e.what();
        r.report = {{"verb", verb}, {"error", e.what()}};
    } catch (const CapExceeded& e) {
        r.exit_code = kCapExceeded;
        r.text = std::string("cap exceeded: ") + e.what();
        r.report = {{"verb", verb}, {"error", e.what()}};
    } catch (const std::exception& e) {
        r.exit_code = kInputError;
        r.text = std::string("error: ") + e.what();
        r.report = {{"verb", verb}, {"error", e.what()}};
    }
    r.report["status"] = status_of(r.exit_code);
    return r;
}

}  // namespace lpk::cli
