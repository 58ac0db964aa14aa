#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "urm/embed.hpp"
#include "urm/errors.hpp"
#include "urm/exact.hpp"
#include "urm/forests.hpp"
#include "urm/gadget.hpp"
#include "urm/graph.hpp"
#include "urm/io.hpp"
#include "urm/linegraph.hpp"
#include "urm/report.hpp"
#include "urm/treewidth.hpp"
#include "urm/twsolve.hpp"
#include "urm/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

// Exit contract: 0 feasible/yes, 1 verified negative, 2 input error,
// 3 internal falsification (a structural self-check failed).
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitFalsified = 3;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool human_output(const std::string& json_path) { return json_path != "-"; }

void emit(const urm::RunReport& report, const std::string& json_path) {
    if (json_path.empty()) return;
    if (json_path == "-") {
        std::cout << report.to_json() << '\n';
        return;
    }
    std::ofstream out(json_path);
    if (!out) throw urm::parse_error("cannot open '" + json_path + "' for writing", 0);
    out << report.to_json() << '\n';
}

std::string witness_text(const std::vector<urm::Edge>& edges) {
    std::ostringstream out;
    for (const urm::Edge& e : edges) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

int run_verify(const std::string& graph_path, const std::string& matching_path,
               int pm_cap, const std::string& json_path) {
    auto t0 = Clock::now();
    urm::Graph g = urm::read_graph_file(graph_path);
    urm::Matching m = urm::read_matching_file(matching_path, g);

    urm::RunReport report;
    report.command = "verify";
    report.input_digest = urm::digest_file(graph_path);
    report.algorithm = "alternating-cycle + perfect-matching";

    urm::UrmCertificate by_cycle = urm::verify_urm_cycle(g, m);
    bool pm_ran = false;
    if (static_cast<int>(m.saturated().size()) <= pm_cap) {
        urm::UrmCertificate by_pm = urm::verify_urm_pm(g, m, pm_cap);
        pm_ran = true;
        if (by_pm.uniquely_restricted != by_cycle.uniquely_restricted) {
            report.notes.push_back("verifier disagreement");
            emit(report, json_path);
            std::cerr << "falsified: the two verifiers disagree\n";
            return kExitFalsified;
        }
    }
    report.accepted = by_cycle.uniquely_restricted;
    report.counters["pm_verifier_ran"] = pm_ran ? 1 : 0;
    report.timing_ms["total"] = ms_since(t0);
    if (by_cycle.uniquely_restricted) {
        if (human_output(json_path))
            std::cout << "uniquely restricted (" << m.size() << " edges)\n";
        emit(report, json_path);
        return kExitYes;
    }
    if (human_output(json_path)) {
        std::cout << "not uniquely restricted; alternating cycle:";
        for (urm::Vertex v : *by_cycle.cycle) std::cout << ' ' << v;
        std::cout << '\n';
    }
    report.notes.push_back("alternating cycle witness in note below");
    std::ostringstream cyc;
    for (urm::Vertex v : *by_cycle.cycle) cyc << v << ' ';
    report.notes.push_back(cyc.str());
    emit(report, json_path);
    return kExitNo;
}

struct SolveOptions {
    std::string graph_path;
    std::string algo = "bb";
    std::string td_path;
    std::string root_path;
    std::string json_path;
    int target = 0;
    double delta = 1e-3;
    std::uint64_t seed = 1;
    std::int64_t budget_nodes = -1; // negative = unlimited
    std::int64_t budget_ms = -1;
    int brute_cap = 16;
    std::optional<int> lower_bound;
    int jobs = 1;
};

int run_solve(const SolveOptions& opt) {
    auto t0 = Clock::now();
    urm::RunReport report;
    report.command = "solve";
    report.algorithm = opt.algo;
    report.seed = opt.seed;
    report.counters["jobs"] = static_cast<std::uint64_t>(opt.jobs);

    if (opt.algo == "linegraph") {
        urm::Graph host;
        std::vector<std::optional<urm::Vertex>> hedge_to_g; // host edge id -> input vertex
        bool translated = false;
        if (!opt.root_path.empty()) {
            host = urm::read_graph_file(opt.root_path);
            report.input_digest = urm::digest_file(opt.root_path);
        } else {
            urm::Graph g = urm::read_graph_file(opt.graph_path);
            report.input_digest = urm::digest_file(opt.graph_path);
            // Root each component and take the disjoint union.
            int offset = 0;
            std::vector<std::pair<urm::Edge, urm::Vertex>> edge_owner;
            std::vector<std::pair<int, int>> union_edges;
            for (const auto& comp : g.components()) {
                auto [sub, old_ids] = g.induced(comp);
                auto rooted = urm::root_graph(sub);
                if (!rooted) {
                    report.notes.push_back("input is not a line graph");
                    emit(report, opt.json_path);
                    std::cerr << "input is not a line graph; rerun with --root\n";
                    return kExitInput;
                }
                for (int v = 0; v < sub.vertex_count(); ++v) {
                    urm::Edge he(rooted->vertex_to_edge[v].u + offset,
                                 rooted->vertex_to_edge[v].v + offset);
                    edge_owner.emplace_back(he, old_ids[v]);
                }
                for (const urm::Edge& e : rooted->root.edges())
                    union_edges.emplace_back(e.u + offset, e.v + offset);
                offset += rooted->root.vertex_count();
            }
            urm::Graph h(offset);
            for (auto [a, b] : union_edges) h.add_edge(a, b);
            host = std::move(h);
            translated = true;
            auto sorted = host.sorted_edges();
            hedge_to_g.assign(sorted.size(), std::nullopt);
            std::map<urm::Edge, int> index;
            for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);
            for (auto& [he, gv] : edge_owner) hedge_to_g[index.at(he)] = gv;
        }

        urm::LineDecision decision =
            urm::urm_line_decide(host, opt.target, opt.delta, opt.seed);
        report.accepted = decision.accepted;
        report.counters["forests_tried"] = decision.forests_tried;
        report.timing_ms["total"] = ms_since(t0);
        if (!decision.accepted) {
            if (human_output(opt.json_path))
                std::cout << "no: no uniquely restricted matching of size " << opt.target
                          << '\n';
            emit(report, opt.json_path);
            return kExitNo;
        }
        std::vector<urm::Edge> witness = decision.witness->edges();
        if (translated) {
            // Map line-graph vertices back to the input graph's ids and
            // re-verify against the original input.
            urm::Graph g = urm::read_graph_file(opt.graph_path);
            std::vector<urm::Edge> mapped;
            for (const urm::Edge& e : witness)
                mapped.emplace_back(*hedge_to_g[e.u], *hedge_to_g[e.v]);
            urm::Matching check(g, mapped);
            if (!urm::verify_urm_cycle(g, check).uniquely_restricted)
                throw urm::internal_error("translated witness failed verification");
            witness = check.edges();
        }
        report.size = opt.target;
        report.witness = witness;
        if (human_output(opt.json_path))
            std::cout << "yes: uniquely restricted matching of size " << opt.target << '\n'
                      << witness_text(witness);
        emit(report, opt.json_path);
        return kExitYes;
    }

    urm::Graph g = urm::read_graph_file(opt.graph_path);
    report.input_digest = urm::digest_file(opt.graph_path);
    urm::UrmSolution sol;
    if (opt.algo == "brute") {
        sol = urm::max_urm_brute(g, opt.brute_cap);
    } else if (opt.algo == "bb") {
        urm::SearchBudget budget;
        if (opt.budget_nodes >= 0)
            budget.max_nodes = static_cast<std::uint64_t>(opt.budget_nodes);
        budget.max_millis = opt.budget_ms;
        sol = urm::max_urm_bb(g, budget, opt.lower_bound);
        report.counters["budget_exhausted"] = sol.optimal ? 0 : 1;
    } else if (opt.algo == "treewidth") {
        urm::TreewidthStats stats;
        if (!opt.td_path.empty()) {
            urm::TreeDecomposition td = urm::read_td_file(opt.td_path);
            sol = urm::solve_treewidth(g, urm::to_nice(td, g), &stats);
        } else {
            sol = urm::solve_treewidth(g, &stats);
        }
        report.counters["dp_states"] = stats.total_states;
        report.counters["dp_max_states_per_node"] = stats.max_states_per_node;
    } else {
        throw urm::contract_error("unknown algorithm '" + opt.algo + "'");
    }

    // Witnesses never leave the solver unverified, but the report contract
    // re-checks before emitting.
    if (!urm::verify_urm_cycle(g, sol.matching).uniquely_restricted)
        throw urm::internal_error("solver witness failed verification");

    report.size = sol.size;
    report.witness = sol.matching.edges();
    report.optimal = sol.optimal;
    report.counters["search_nodes"] = sol.nodes_explored;
    report.timing_ms["total"] = ms_since(t0);
    if (human_output(opt.json_path))
        std::cout << (sol.optimal ? "optimum " : "best-found ") << sol.size << '\n'
                  << witness_text(sol.matching.edges());
    emit(report, opt.json_path);
    return kExitYes;
}

int run_gen_gadget(const std::string& e3c_path, const std::string& prefix,
                   const std::string& json_path) {
    auto instances = urm::read_e3c_file(e3c_path);
    urm::GadgetLayout layout = urm::build_gadget(instances);
    urm::write_graph_file(prefix + ".gr", layout.graph);
    {
        std::ofstream meta(prefix + ".meta.json");
        if (!meta) throw urm::parse_error("cannot open '" + prefix + ".meta.json'", 0);
        meta << urm::gadget_metadata_json(layout) << '\n';
    }
    urm::RunReport report;
    report.command = "gen gadget";
    report.input_digest = urm::digest_file(e3c_path);
    report.algorithm = "cross-composition";
    report.size = layout.target;
    report.counters["vertices"] = static_cast<std::uint64_t>(layout.graph.vertex_count());
    report.counters["edges"] = static_cast<std::uint64_t>(layout.graph.edge_count());
    report.counters["collection"] = static_cast<std::uint64_t>(layout.collection.size());
    emit(report, json_path);
    if (human_output(json_path))
        std::cout << "wrote " << prefix << ".gr (" << layout.graph.vertex_count()
                  << " vertices, " << layout.graph.edge_count() << " edges), target "
                  << layout.target << '\n';
    return kExitYes;
}

int run_gen_random(int n, double p, std::uint64_t seed, const std::string& out_path) {
    urm::Graph g = urm::random_graph(n, p, seed);
    urm::write_graph_file(out_path, g);
    std::cout << "wrote " << out_path << " (" << g.vertex_count() << " vertices, "
              << g.edge_count() << " edges)\n";
    return kExitYes;
}

int run_forests(int target, const std::string& out_path) {
    if (target > 6) throw urm::contract_error("forest dumps are limited to targets up to 6");
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw urm::parse_error("cannot open '" + out_path + "'", 0);
        out = &file;
    }
    int survivors = 0;
    for (const urm::CandidateForest& cf : urm::candidate_forests(target)) {
        auto decomposition = urm::p3_filter(cf);
        if (!decomposition) continue;
        ++survivors;
        *out << "c forest " << survivors << " key " << cf.canonical_key << '\n';
        for (const auto& path : decomposition->paths)
            *out << "c p3 " << path[0] << ' ' << path[1] << ' ' << path[2] << '\n';
        urm::write_graph(*out, cf.forest);
    }
    *out << "c total " << survivors << '\n';
    return kExitYes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniquely restricted matching toolkit"};
    app.require_subcommand(1);

    int jobs = 1;
    if (const char* env = std::getenv("URM_JOBS")) jobs = std::max(1, std::atoi(env));
    app.add_option("--jobs", jobs, "worker cap (reserved; execution is single-threaded)");

    // verify
    auto* verify = app.add_subcommand("verify", "check a matching for unique restriction");
    std::string v_graph, v_matching, v_json;
    int v_pm_cap = 40;
    verify->add_option("graph", v_graph)->required();
    verify->add_option("matching", v_matching)->required();
    verify->add_option("--pm-cap", v_pm_cap, "saturated-vertex cap for the enumeration verifier");
    verify->add_option("--json", v_json, "write the run report ('-' for stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "maximum uniquely restricted matching");
    SolveOptions s;
    solve->add_option("graph", s.graph_path)->required();
    solve->add_option("--algo", s.algo, "brute | bb | treewidth | linegraph")
        ->check(CLI::IsMember({"brute", "bb", "treewidth", "linegraph"}));
    solve->add_option("--td", s.td_path, "decomposition file (treewidth)");
    solve->add_option("--root", s.root_path, "file holding the root graph H (linegraph)");
    solve->add_option("--l", s.target, "decision size (linegraph)");
    solve->add_option("--delta", s.delta, "failure probability (linegraph)");
    solve->add_option("--seed", s.seed, "random seed");
    solve->add_option("--budget-nodes", s.budget_nodes, "node budget, unlimited if omitted (bb)");
    solve->add_option("--budget-ms", s.budget_ms, "time budget in ms, -1 = unlimited (bb)");
    solve->add_option("--brute-cap", s.brute_cap, "vertex cap (brute)");
    int s_lower = -1;
    solve->add_option("--lower-bound", s_lower, "known lower bound (bb)");
    solve->add_option("--json", s.json_path, "write the run report ('-' for stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto* gadget = gen->add_subcommand("gadget", "cross-composition instance from exact-cover inputs");
    std::string g_e3c, g_prefix = "gadget", g_json;
    gadget->add_option("--e3c", g_e3c, "exact-cover JSON document")->required();
    gadget->add_option("--out", g_prefix, "output prefix");
    gadget->add_option("--json", g_json, "write the run report ('-' for stdout)");
    auto* random = gen->add_subcommand("random", "seeded random graph");
    int r_n = 10;
    double r_p = 0.3;
    std::uint64_t r_seed = 1;
    std::string r_out = "random.gr";
    random->add_option("--n", r_n)->required();
    random->add_option("--p", r_p)->required();
    random->add_option("--seed", r_seed);
    random->add_option("--out", r_out);

    // forests
    auto* forests = app.add_subcommand("forests", "dump filter-surviving candidate forests");
    int f_target = 1;
    std::string f_out;
    forests->add_option("-l,--l", f_target, "matching size encoded by the forests")->required();
    forests->add_option("--out", f_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (verify->parsed()) return run_verify(v_graph, v_matching, v_pm_cap, v_json);
        if (solve->parsed()) {
            if (s.algo == "linegraph" && s.target < 1)
                throw urm::contract_error("--algo linegraph requires --l");
            if (s_lower >= 0) s.lower_bound = s_lower;
            s.jobs = jobs;
            return run_solve(s);
        }
        if (gadget->parsed()) return run_gen_gadget(g_e3c, g_prefix, g_json);
        if (random->parsed()) return run_gen_random(r_n, r_p, r_seed, r_out);
        if (forests->parsed()) return run_forests(f_target, f_out);
        return kExitInput;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitYes : kExitInput;
    } catch (const urm::internal_error& e) {
        std::cerr << "falsified: " << e.what() << '\n';
        return kExitFalsified;
    } catch (const urm::parse_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const urm::contract_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const urm::resource_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
