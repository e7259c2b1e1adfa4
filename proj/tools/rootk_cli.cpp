#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rootk/serialize.hpp"

using namespace rootk;

namespace {

struct Options {
    std::string format = "table";
    std::string type_text;
    std::string spec_text;
    bool witness = false;
    std::string dot_path;
    int max_rank = 8;
    std::string exceptional_text;
    int depth = 1;
    long long cap = -1;  // -1 means the library default / GKM_WEYL_CAP
};

std::string normalized(std::string text) {
    if (!text.empty()) text[0] = char(std::toupper(static_cast<unsigned char>(text[0])));
    return text;
}

RootSystem system_for(const Options& o) { return make_root_system(parse_type(normalized(o.type_text))); }

SubsystemSpec spec_for(const RootSystem& sys, const std::string& spec_text) {
    return parse_spec(to_string(sys.type) + " " + spec_text);
}

std::string subgroup_text(const Subsystem& sub) {
    std::string s;
    for (const LieType& c : sub.components) {
        if (!s.empty()) s += " x ";
        s += to_string(c);
    }
    if (sub.torus_rank > 0) {
        if (!s.empty()) s += " x ";
        s += "T^" + std::to_string(sub.torus_rank);
    }
    return s;
}

std::vector<LieType> parse_exceptional(const std::string& text) {
    std::vector<LieType> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) out.push_back(parse_type(normalized(token)));
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
    f << content;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_roots(const Options& o) {
    RootSystem sys = system_for(o);
    if (o.format == "json") {
        print_json(roots_to_json(sys));
        return 0;
    }
    std::cout << "# type " << to_string(sys.type) << ", positive roots " << sys.positive.size()
              << ", Weyl order " << weyl_order(sys.type).str() << "\n";
    std::cout << "# highest " << format_root(sys.highest) << ", marks " << format_root(sys.marks)
              << "\n";
    std::cout << "# index  root  height\n";
    for (std::size_t i = 0; i < sys.positive.size(); ++i)
        std::cout << std::setw(5) << i + 1 << "  " << std::left << std::setw(20)
                  << format_root(sys.positive[i]) << std::right << std::setw(4)
                  << height(sys.positive[i]) << "\n";
    return 0;
}

int run_subsystems(const Options& o) {
    RootSystem sys = system_for(o);
    if (!o.spec_text.empty()) {
        Subsystem sub = subsystem_roots(sys, spec_for(sys, o.spec_text));
        if (o.format == "json") {
            print_json(subsystem_to_json(sys, sub));
            return 0;
        }
        std::cout << "ambient " << to_string(sys.type) << "\n";
        std::cout << "spec " << steps_string(sub.spec) << "\n";
        std::cout << "subgroup " << subgroup_text(sub) << "\n";
        std::cout << "positive roots " << sub.roots.size() << "\n";
        for (const StepTrace& t : sub.trace) {
            std::cout << "step " << to_string(t.step) << ": removed " << format_root(t.removed);
            if (t.added) std::cout << ", added lowest root " << format_root(*t.added);
            std::cout << "\n";
        }
        std::cout << "nodes";
        for (const Root& r : sub.nodes) std::cout << " " << format_root(r);
        std::cout << "\n";
        return 0;
    }
    auto maxs = maximal_subsystems(sys);
    if (o.format == "json") {
        Json j;
        j["schema"] = schema_version;
        j["ambient"] = to_string(sys.type);
        Json subs = Json::array();
        for (const auto& [step, sub] : maxs) {
            Json entry;
            entry["spec"] = to_string(step);
            Json comps = Json::array();
            for (const LieType& c : sub.components) comps.push_back(to_string(c));
            entry["components"] = std::move(comps);
            entry["torus_rank"] = sub.torus_rank;
            entry["positive_count"] = sub.roots.size();
            subs.push_back(std::move(entry));
        }
        j["subsystems"] = std::move(subs);
        print_json(j);
        return 0;
    }
    std::cout << "# maximal-rank subsystems of " << to_string(sys.type) << "\n";
    std::cout << "# spec  subgroup  positive_roots\n";
    for (const auto& [step, sub] : maxs)
        std::cout << std::left << std::setw(8) << to_string(step) << "  " << std::setw(20)
                  << subgroup_text(sub) << "  " << std::right << std::setw(4) << sub.roots.size()
                  << "\n";
    return 0;
}

std::string relation_text(const WeightSet& weights, const std::vector<int>& circuit,
                          const std::vector<BigInt>& coeffs) {
    std::string s;
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const BigInt& c = coeffs[i];
        if (c == 0) continue;
        const BigInt mag = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (mag != 1) s += mag.str() + "*";
        s += weights.labels[circuit[i]];
    }
    return s + " = 0";
}

int run_indep(const Options& o) {
    RootSystem sys = system_for(o);
    Subsystem sub = subsystem_roots(sys, spec_for(sys, o.spec_text));
    WeightSet comp = complement_weight_set(sys, sub);
    IndependenceReport rep = independence_number(comp);
    if (o.format == "json") {
        print_json(indep_to_json(sys, sub, comp, rep, o.witness));
        return 0;
    }
    std::cout << "ambient " << to_string(sys.type) << "\n";
    std::cout << "spec " << steps_string(sub.spec) << "\n";
    std::cout << "subgroup " << subgroup_text(sub) << "\n";
    std::cout << "complement size " << comp.vectors.size() << "\n";
    std::cout << "k " << rep.k << "\n";
    std::cout << "rank " << rep.rank << "\n";
    if (o.witness) {
        if (rep.circuit) {
            std::cout << "circuit";
            for (int idx : *rep.circuit) std::cout << " " << comp.labels[idx];
            std::cout << "\n";
            if (rep.witness_relation)
                std::cout << "relation " << relation_text(comp, *rep.circuit, *rep.witness_relation)
                          << "\n";
        } else {
            std::cout << "circuit none (set is independent)\n";
        }
    }
    return 0;
}

int run_verify(const Options& o) {
    VerifyOptions vo;
    vo.max_classical_rank = o.max_rank;
    vo.depth = o.depth;
    vo.exceptional = parse_exceptional(o.exceptional_text);
    VerificationReport rep = verify_range(vo);
    if (o.format == "json") {
        print_json(report_to_json(rep));
    } else {
        std::cout << "# ambient  spec  subgroup_k  expected_k  symmetric  label  status\n";
        for (const PairVerdict& v : rep.pairs) {
            std::cout << std::left << std::setw(4) << to_string(v.ambient) << "  " << std::setw(16)
                      << steps_string(v.spec) << "  " << std::right << std::setw(2) << v.computed_k
                      << "  " << std::setw(2) << v.expected_k << "  "
                      << (v.symmetric ? "yes" : "no ") << "  " << std::left << std::setw(5)
                      << (v.cartan_label ? *v.cartan_label : "-") << "  "
                      << (v.matches ? "ok" : "MISMATCH") << "\n";
        }
        std::cout << rep.pairs.size() << " pairs, " << rep.mismatch_count << " mismatches\n";
    }
    return rep.mismatch_count == 0 ? 0 : 1;
}

int run_siggraph(const Options& o) {
    RootSystem sys = system_for(o);
    SignedGraph g = o.spec_text.empty() ? build_ambient_graph(sys.type)
                                        : complement_graph(sys, spec_for(sys, o.spec_text));
    GraphVerdict verdict = graph_k(g);
    if (!o.dot_path.empty()) write_file(o.dot_path, to_dot(g));
    if (o.format == "json") {
        print_json(signed_graph_to_json(g, verdict));
        return 0;
    }
    std::cout << "type " << to_string(g.type) << "\n";
    if (!o.spec_text.empty()) std::cout << "spec " << o.spec_text << "\n";
    std::cout << "vertices " << g.vertex_count() << "\n";
    std::cout << "edges " << g.edges.size() << "\n";
    std::cout << "loops " << g.loops.size() << "\n";
    std::cout << "k " << verdict.k << "\n";
    if (verdict.witness) {
        std::cout << "pattern " << to_string(verdict.witness->kind) << "\n";
        std::cout << "support";
        for (const ElementRef& ref : verdict.witness->support) {
            if (ref.is_loop)
                std::cout << " loop@" << g.loops[ref.index].vertex;
            else
                std::cout << " " << g.edges[ref.index].u << char(g.edges[ref.index].sign)
                          << g.edges[ref.index].v;
        }
        std::cout << "\n";
    }
    if (!o.dot_path.empty()) std::cout << "dot written to " << o.dot_path << "\n";
    return 0;
}

int run_gkm(const Options& o) {
    RootSystem sys = system_for(o);
    SubsystemSpec spec = spec_for(sys, o.spec_text);
    GkmGraph g = gkm_graph(sys, spec, o.cap);
    const int k = gkm_common_k(sys, g);
    if (!o.dot_path.empty()) write_file(o.dot_path, gkm_to_dot(sys, g));
    if (o.format == "json") {
        Json j = gkm_to_json(sys, g);
        j["k"] = k;
        print_json(j);
        return 0;
    }
    std::cout << "ambient " << to_string(sys.type) << "\n";
    std::cout << "spec " << steps_string(spec) << "\n";
    std::cout << "weyl order " << g.order_g.str() << "\n";
    std::cout << "subgroup weyl order " << g.order_h.str() << "\n";
    std::cout << "fixed points " << g.vertices << "\n";
    std::cout << "degree " << g.degree << "\n";
    std::cout << "edges " << g.edges.size() << "\n";
    std::cout << "k " << k << " at every fixed point\n";
    if (!o.dot_path.empty()) std::cout << "dot written to " << o.dot_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"independence numbers of flag manifolds via root systems"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };
    auto add_type = [&](CLI::App* cmd) {
        cmd->add_option("type", o.type_text, "Lie type, e.g. A3, B4, F4")->required();
    };

    CLI::App* roots = app.add_subcommand("roots", "positive roots of an ambient type");
    add_type(roots);
    add_format(roots);

    CLI::App* subsystems =
        app.add_subcommand("subsystems", "maximal-rank subsystems, or one spec in detail");
    add_type(subsystems);
    subsystems->add_option("--spec", o.spec_text, "removal sequence, e.g. ext:4 or ext:2;node:1");
    add_format(subsystems);

    CLI::App* indep = app.add_subcommand("indep", "independence number of a complement");
    add_type(indep);
    indep->add_option("--spec", o.spec_text, "removal sequence")->required();
    indep->add_flag("--witness", o.witness, "print a smallest circuit and its relation");
    add_format(indep);

    CLI::App* verify = app.add_subcommand("verify", "sweep pairs and compare computed k with the predicted value");
    verify->add_option("--max-rank", o.max_rank, "classical rank bound (default 8)")
        ->check(CLI::Range(2, default_max_classical_rank));
    verify->add_option("--exceptional", o.exceptional_text, "comma list, e.g. f4,e6");
    verify->add_option("--depth", o.depth, "removal sequence depth (default 1)")
        ->check(CLI::PositiveNumber);
    add_format(verify);

    CLI::App* siggraph = app.add_subcommand("siggraph", "signed graph of a classical type");
    add_type(siggraph);
    siggraph->add_option("--spec", o.spec_text, "removal sequence for a complement graph");
    siggraph->add_option("--dot", o.dot_path, "write DOT to this path");
    add_format(siggraph);

    CLI::App* gkm = app.add_subcommand("gkm", "fixed points and GKM graph");
    add_type(gkm);
    gkm->add_option("--spec", o.spec_text, "removal sequence")->required();
    gkm->add_option("--cap", o.cap, "Weyl group size cap (default 10^6 or GKM_WEYL_CAP)");
    gkm->add_option("--dot", o.dot_path, "write DOT to this path");
    add_format(gkm);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (roots->parsed()) return run_roots(o);
        if (subsystems->parsed()) return run_subsystems(o);
        if (indep->parsed()) return run_indep(o);
        if (verify->parsed()) return run_verify(o);
        if (siggraph->parsed()) return run_siggraph(o);
        if (gkm->parsed()) return run_gkm(o);
    } catch (const internal_error& e) {
        std::cerr << "bug: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
