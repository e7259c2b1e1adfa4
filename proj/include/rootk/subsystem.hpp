#pragma once

// Maximal-rank subsystems by iterated diagram removals.  An ext step deletes
// a prime-mark node from the extended diagram of its component (the lowest
// root joins as an ordinary node); a node step deletes a mark-1 node from the
// ordinary diagram and contributes a torus factor.  Root subsets are computed
// from the integer span of the surviving nodes and, for single removals,
// cross-checked against the coefficient congruence n_i = 0 (mod m_i).

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootk/root_system.hpp"

namespace rootk {

enum class RemovalMode { ext, node };

struct RemovalStep {
    RemovalMode mode;
    int index;  // 1-based in the current (renumbered) diagram

    friend bool operator==(const RemovalStep& a, const RemovalStep& b) {
        return a.mode == b.mode && a.index == b.index;
    }
};

inline std::string to_string(const RemovalStep& s) {
    return (s.mode == RemovalMode::ext ? "ext:" : "node:") + std::to_string(s.index);
}

struct SubsystemSpec {
    LieType ambient;
    std::vector<RemovalStep> steps;
    std::string preset;  // original preset label when one was used, else empty
};

inline std::string steps_string(const SubsystemSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        if (i) out += ";";
        out += to_string(spec.steps[i]);
    }
    return out;
}

inline std::string to_string(const SubsystemSpec& spec) {
    return to_string(spec.ambient) + " " + steps_string(spec);
}

namespace detail {

inline bool is_prime(int m) {
    if (m < 2) return false;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

/// Solves sum_j x_j basis_j = target over the rationals; the basis vectors
/// are assumed linearly independent, so a solution is unique when it exists.
inline std::optional<std::vector<Rational>> solve_in_span(const std::vector<Root>& basis,
                                                          const Root& target) {
    const int m = int(basis.size());
    if (m == 0) return std::nullopt;
    const int n = int(target.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m + 1));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) a[i][j] = basis[j][i];
    for (int i = 0; i < n; ++i) a[i][m] = target[i];

    std::vector<int> pivot_of_col(m, -1);
    int r = 0;
    for (int col = 0; col < m && r < n; ++col) {
        int pr = -1;
        for (int i = r; i < n; ++i)
            if (a[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[pr], a[r]);
        for (int i = 0; i < n; ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rational f = a[i][col] / a[r][col];
            for (int j = col; j <= m; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_of_col[col] = r;
        ++r;
    }
    for (int i = r; i < n; ++i)
        if (a[i][m] != 0) return std::nullopt;  // inconsistent: target outside the span
    std::vector<Rational> x(m, 0);
    for (int col = 0; col < m; ++col) {
        if (pivot_of_col[col] < 0) throw internal_error("dependent node basis in span solve");
        x[col] = a[pivot_of_col[col]][m] / a[pivot_of_col[col]][col];
    }
    return x;
}

inline std::optional<std::vector<int>> integer_solution(const std::vector<Root>& basis,
                                                        const Root& target) {
    auto x = solve_in_span(basis, target);
    if (!x) return std::nullopt;
    std::vector<int> out(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) {
        if (denominator((*x)[i]) != 1) return std::nullopt;
        out[i] = int(numerator((*x)[i]));
    }
    return out;
}

}  // namespace detail

/// The working diagram: surviving nodes as ambient coefficient vectors, in
/// canonical order (components sorted by their smallest key, nodes within a
/// component by key).  Original simple roots carry keys 1..n; lowest-root
/// nodes added by ext steps receive fresh keys.
struct DiagramState {
    std::vector<Root> nodes;
    std::vector<int> keys;
    int torus_rank = 0;
    int next_key = 1;
};

struct StepTrace {
    RemovalStep step;
    Root removed;
    std::optional<Root> added;   // the lowest root, for ext steps
    std::vector<int> from_prev;  // new position -> previous position (1-based), 0 for a new node
};

struct Subsystem {
    SubsystemSpec spec;
    std::vector<Root> nodes;          // final simple system of H
    std::vector<Root> roots;          // positive roots of H, lex sorted
    std::vector<LieType> components;  // canonical component order
    int torus_rank = 0;
    std::vector<StepTrace> trace;
};

/// Partition of the current nodes into connected components (indices into
/// `nodes`), ordered canonically.
inline std::vector<std::vector<int>> node_components(const RootSystem& sys,
                                                     const DiagramState& st) {
    const int m = int(st.nodes.size());
    std::vector<int> comp(m, -1);
    int n_comp = 0;
    for (int i = 0; i < m; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = n_comp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < m; ++v)
                if (comp[v] < 0 && sys.inner(st.nodes[u], st.nodes[v]) != 0) {
                    comp[v] = n_comp;
                    stack.push_back(v);
                }
        }
        ++n_comp;
    }
    std::vector<std::vector<int>> groups(n_comp);
    for (int i = 0; i < m; ++i) groups[comp[i]].push_back(i);
    // Canonical order: members by key, components by their smallest key.
    for (auto& g : groups)
        std::sort(g.begin(), g.end(), [&](int a, int b) { return st.keys[a] < st.keys[b]; });
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
        return st.keys[a.front()] < st.keys[b.front()];
    });
    return groups;
}

struct ComponentData {
    std::vector<int> marks;  // coefficients of the component's highest root over its nodes
    Root lowest;             // -(highest), in ambient coefficients
};

/// Marks of one component: its roots are the ambient roots expressible as
/// integer combinations of the component nodes; the positive ones (w.r.t. the
/// nodes) have nonnegative coefficients, and the highest root is their
/// coordinatewise maximum.
inline ComponentData component_marks(const RootSystem& sys, const std::vector<Root>& comp_nodes) {
    const int m = int(comp_nodes.size());
    std::vector<std::vector<int>> positives;
    for (const Root& rho : sys.positive) {
        for (const Root& signed_rho : {rho, negate(rho)}) {
            auto x = detail::integer_solution(comp_nodes, signed_rho);
            if (!x) continue;
            bool nonneg = true;
            for (int c : *x) nonneg = nonneg && c >= 0;
            if (nonneg) positives.push_back(*x);
        }
    }
    std::vector<int> hi(m, 0);
    for (const auto& x : positives)
        for (int i = 0; i < m; ++i) hi[i] = std::max(hi[i], x[i]);
    if (std::find(positives.begin(), positives.end(), hi) == positives.end())
        throw internal_error("component has no coordinatewise maximal root");
    ComponentData data;
    data.marks = hi;
    data.lowest.assign(sys.rank(), 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < sys.rank(); ++j) data.lowest[j] -= hi[i] * comp_nodes[i][j];
    return data;
}

/// Identifies the Lie type of a connected component from its Cartan integers,
/// resolving low-rank aliases (any 2-node double edge is B2, a 3-node
/// simply-laced path is A3, single nodes are A1).
inline LieType classify_component(const RootSystem& sys, const std::vector<Root>& comp_nodes) {
    const int m = int(comp_nodes.size());
    if (m == 1) return LieType{Family::A, 1};

    IntMatrix q(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) { q[i][j] = 2; continue; }
            Rational c = 2 * sys.inner(comp_nodes[i], comp_nodes[j]) / sys.len2(comp_nodes[j]);
            if (denominator(c) != 1) throw internal_error("non-integral component Cartan entry");
            q[i][j] = int(numerator(c));
        }
    std::vector<std::vector<int>> adj(m);
    int max_bond = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (q[i][j] != 0) {
                adj[i].push_back(j);
                adj[j].push_back(i);
                max_bond = std::max(max_bond, q[i][j] * q[j][i]);
            }
    auto degree = [&](int v) { return int(adj[v].size()); };

    if (max_bond == 3) {
        if (m != 2) throw internal_error("triple bond in a component of rank != 2");
        return LieType{Family::G, 2};
    }

    int branch = -1;
    for (int v = 0; v < m; ++v) {
        if (degree(v) > 3) throw internal_error("component node of degree > 3");
        if (degree(v) == 3) {
            if (branch >= 0) throw internal_error("component with two branch nodes");
            branch = v;
        }
    }

    if (branch >= 0) {
        if (max_bond != 1) throw internal_error("branched component with a multiple bond");
        std::vector<int> arms;
        for (int s : adj[branch]) {
            int len = 1, prev = branch, cur = s;
            while (degree(cur) == 2) {
                int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = nxt;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1) return LieType{Family::D, m};
        if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
            return LieType{Family::E, m};
        throw internal_error("unrecognized branched component");
    }

    // A path; order it from one end.
    int end = -1;
    for (int v = 0; v < m; ++v)
        if (degree(v) == 1) { end = v; break; }
    if (end < 0) throw internal_error("component is a cycle");
    std::vector<int> path{end};
    int prev = -1, cur = end;
    while (int(path.size()) < m) {
        int nxt = -1;
        for (int w : adj[cur])
            if (w != prev) nxt = w;
        if (nxt < 0) throw internal_error("component path is disconnected");
        path.push_back(nxt);
        prev = cur;
        cur = nxt;
    }

    if (max_bond == 1) return LieType{Family::A, m};

    int double_at = -1;  // path position i with a double bond between i and i+1
    for (int i = 0; i + 1 < m; ++i)
        if (q[path[i]][path[i + 1]] * q[path[i + 1]][path[i]] == 2) {
            if (double_at >= 0) throw internal_error("component with two double bonds");
            double_at = i;
        }
    if (m == 2) return LieType{Family::B, 2};  // C2 alias resolves to B2
    if (double_at > 0 && double_at + 2 < m) {
        if (m == 4 && double_at == 1) return LieType{Family::F, 4};
        throw internal_error("interior double bond outside F4");
    }
    // Terminal double bond: compare the leaf's length with its partner's.
    int leaf = double_at == 0 ? path[0] : path[m - 1];
    int partner = double_at == 0 ? path[1] : path[m - 2];
    if (sys.len2(comp_nodes[leaf]) < sys.len2(comp_nodes[partner])) return LieType{Family::B, m};
    return LieType{Family::C, m};
}

/// Applies one removal to the state; `trace` receives the renumbering record.
inline DiagramState apply_step(const RootSystem& sys, const DiagramState& st, RemovalStep step,
                               StepTrace* trace = nullptr) {
    const int m = int(st.nodes.size());
    if (step.index < 1 || step.index > m)
        throw std::invalid_argument("step " + to_string(step) + ": index out of range 1.." +
                                    std::to_string(m));
    const int idx = step.index - 1;
    auto groups = node_components(sys, st);
    std::vector<int> comp_members;
    for (const auto& g : groups)
        if (std::find(g.begin(), g.end(), idx) != g.end()) comp_members = g;
    std::vector<Root> comp_nodes;
    int pos_in_comp = -1;
    for (std::size_t i = 0; i < comp_members.size(); ++i) {
        comp_nodes.push_back(st.nodes[comp_members[i]]);
        if (comp_members[i] == idx) pos_in_comp = int(i);
    }
    auto data = component_marks(sys, comp_nodes);
    const int mark = data.marks[pos_in_comp];

    DiagramState out;
    out.torus_rank = st.torus_rank;
    out.next_key = st.next_key;
    std::vector<std::pair<int, std::pair<Root, int>>> keyed;  // (key, (root, prev position))
    for (int i = 0; i < m; ++i)
        if (i != idx) keyed.push_back({st.keys[i], {st.nodes[i], i + 1}});

    if (step.mode == RemovalMode::ext) {
        if (!detail::is_prime(mark))
            throw std::invalid_argument("step " + to_string(step) +
                                        ": ext removal requires a prime mark, node has mark " +
                                        std::to_string(mark));
        keyed.push_back({out.next_key++, {data.lowest, 0}});
    } else {
        if (mark != 1)
            throw std::invalid_argument("step " + to_string(step) +
                                        ": node removal requires mark 1, node has mark " +
                                        std::to_string(mark));
        out.torus_rank += 1;
    }

    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Canonical order: components by smallest key, members by key.  Sorting by
    // key first, then grouping, realizes that order.
    DiagramState flat;
    flat.torus_rank = out.torus_rank;
    flat.next_key = out.next_key;
    std::vector<int> prev_pos;
    for (const auto& [key, payload] : keyed) {
        flat.nodes.push_back(payload.first);
        flat.keys.push_back(key);
        prev_pos.push_back(payload.second);
    }
    auto regroups = node_components(sys, flat);
    out.nodes.clear();
    out.keys.clear();
    std::vector<int> ordered_prev;
    for (const auto& g : regroups)
        for (int i : g) {
            out.nodes.push_back(flat.nodes[i]);
            out.keys.push_back(flat.keys[i]);
            ordered_prev.push_back(prev_pos[i]);
        }

    if (trace) {
        trace->step = step;
        trace->removed = st.nodes[idx];
        trace->added = step.mode == RemovalMode::ext ? std::optional<Root>(data.lowest)
                                                     : std::nullopt;
        trace->from_prev = ordered_prev;
    }
    return out;
}

inline DiagramState initial_state(const RootSystem& sys) {
    DiagramState st;
    for (int i = 0; i < sys.rank(); ++i) {
        Root a(sys.rank(), 0);
        a[i] = 1;
        st.nodes.push_back(a);
        st.keys.push_back(i + 1);
    }
    st.next_key = sys.rank() + 1;
    return st;
}

inline DiagramState resolve_steps(const RootSystem& sys, const SubsystemSpec& spec,
                                  std::vector<StepTrace>* traces = nullptr) {
    DiagramState st = initial_state(sys);
    for (const RemovalStep& step : spec.steps) {
        StepTrace tr;
        st = apply_step(sys, st, step, &tr);
        if (traces) traces->push_back(tr);
    }
    return st;
}

namespace detail {

struct PresetRule {
    bool needs_param;
    int lo, hi;  // inclusive parameter range (when needed)
};

/// Translates a classification-table preset into removal steps.
inline std::vector<RemovalStep> preset_steps(const RootSystem& sys, const std::string& label,
                                             std::optional<int> param) {
    const LieType t = sys.type;
    const int n = t.rank;
    auto need = [&](Family f, const char* family_name) {
        if (t.family != f)
            throw std::invalid_argument("preset " + label + " needs a " + family_name +
                                        " ambient, got " + to_string(t));
    };
    auto param_in = [&](int lo, int hi) {
        if (!param)
            throw std::invalid_argument("preset " + label + " requires a parameter in " +
                                        std::to_string(lo) + ".." + std::to_string(hi));
        if (*param < lo || *param > hi)
            throw std::invalid_argument("preset " + label + " parameter " +
                                        std::to_string(*param) + " outside " +
                                        std::to_string(lo) + ".." + std::to_string(hi));
        return *param;
    };
    auto no_param = [&]() {
        if (param)
            throw std::invalid_argument("preset " + label + " takes no parameter");
    };
    auto ext = [](int i) { return RemovalStep{RemovalMode::ext, i}; };
    auto node = [](int i) { return RemovalStep{RemovalMode::node, i}; };

    if (label == "AIII") {
        need(Family::A, "type A");
        int i = param_in(0, n - 1);
        return {node(i + 1)};
    }
    if (label == "BDI") {
        if (t.family == Family::B) {
            int i = param_in(1, n);
            return {i == 1 ? node(1) : ext(i)};
        }
        need(Family::D, "type B or D");
        int i = param_in(1, n - 1);
        if (i == 1 || i == n - 1) return {node(1)};
        return {ext(i)};
    }
    if (label == "DIII") {
        need(Family::D, "type D");
        no_param();
        return {node(n)};
    }
    if (label == "CI") {
        need(Family::C, "type C");
        no_param();
        return {node(n)};
    }
    if (label == "CII") {
        need(Family::C, "type C");
        int i = param_in(1, n - 1);
        return {ext(i)};
    }
    struct Fixed { const char* label; Family family; int rank; RemovalStep step; };
    static const Fixed fixed[] = {
        {"EII", Family::E, 6, {RemovalMode::ext, 2}},
        {"EIII", Family::E, 6, {RemovalMode::node, 1}},
        {"EV", Family::E, 7, {RemovalMode::ext, 7}},
        {"EVI", Family::E, 7, {RemovalMode::ext, 2}},
        {"EVII", Family::E, 7, {RemovalMode::node, 1}},
        {"EVIII", Family::E, 8, {RemovalMode::ext, 1}},
        {"EIX", Family::E, 8, {RemovalMode::ext, 7}},
        {"FI", Family::F, 4, {RemovalMode::ext, 1}},
        {"FII", Family::F, 4, {RemovalMode::ext, 4}},
    };
    for (const Fixed& f : fixed)
        if (label == f.label) {
            if (t.family != f.family || t.rank != f.rank)
                throw std::invalid_argument("preset " + label + " needs ambient " +
                                            to_string(LieType{f.family, f.rank}) + ", got " +
                                            to_string(t));
            no_param();
            return {f.step};
        }
    throw std::invalid_argument("unknown preset label '" + label + "'");
}

}  // namespace detail

/// Grammar: `ambient step (";" step)*` or `ambient "preset:" LABEL ["(" INT ")"]`
/// with step = ("ext" | "node") ":" INT.  The spec is fully resolved against
/// the ambient, so illegal indices or marks are rejected here.
inline SubsystemSpec parse_spec(const std::string& text,
                                int max_classical_rank = default_max_classical_rank) {
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string body = trim(text);
    std::size_t sp = body.find_first_of(" \t");
    if (sp == std::string::npos)
        throw std::invalid_argument("spec '" + text + "': expected `ambient steps`");
    SubsystemSpec spec;
    spec.ambient = parse_type(body.substr(0, sp));
    validate_type(spec.ambient, max_classical_rank);
    std::string rest = trim(body.substr(sp));
    RootSystem sys = make_root_system(spec.ambient, max_classical_rank);

    if (rest.rfind("preset:", 0) == 0) {
        std::string label = trim(rest.substr(7));
        std::optional<int> param;
        std::size_t open = label.find('(');
        if (open != std::string::npos) {
            if (label.back() != ')')
                throw std::invalid_argument("spec '" + text + "': unbalanced preset parameter");
            std::string num = label.substr(open + 1, label.size() - open - 2);
            label = trim(label.substr(0, open));
            try {
                param = std::stoi(num);
            } catch (const std::exception&) {
                throw std::invalid_argument("spec '" + text + "': bad preset parameter '" + num + "'");
            }
        }
        spec.preset = label + (param ? "(" + std::to_string(*param) + ")" : "");
        spec.steps = detail::preset_steps(sys, label, param);
    } else {
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t semi = rest.find(';', pos);
            std::string tok = trim(semi == std::string::npos ? rest.substr(pos)
                                                             : rest.substr(pos, semi - pos));
            if (tok.empty())
                throw std::invalid_argument("spec '" + text + "': empty step");
            RemovalMode mode;
            std::string num;
            if (tok.rfind("ext:", 0) == 0) { mode = RemovalMode::ext; num = tok.substr(4); }
            else if (tok.rfind("node:", 0) == 0) { mode = RemovalMode::node; num = tok.substr(5); }
            else
                throw std::invalid_argument("spec '" + text + "': step '" + tok +
                                            "' must be ext:<i> or node:<i>");
            int index;
            try {
                index = std::stoi(num);
            } catch (const std::exception&) {
                throw std::invalid_argument("spec '" + text + "': bad step index '" + num + "'");
            }
            spec.steps.push_back(RemovalStep{mode, index});
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
    }
    if (spec.steps.empty())
        throw std::invalid_argument("spec '" + text + "': at least one step required");
    resolve_steps(sys, spec);  // legality dry-run; throws on violations
    return spec;
}

/// Resolves the spec and computes the positive roots of H as the ambient
/// positives lying in the integer span of the surviving nodes.
inline Subsystem subsystem_roots(const RootSystem& sys, const SubsystemSpec& spec) {
    if (spec.ambient != sys.type)
        throw std::invalid_argument("spec ambient " + to_string(spec.ambient) +
                                    " does not match system " + to_string(sys.type));
    Subsystem sub;
    sub.spec = spec;
    DiagramState st = resolve_steps(sys, spec, &sub.trace);
    sub.nodes = st.nodes;
    sub.torus_rank = st.torus_rank;

    if (!st.nodes.empty()) {
        for (const Root& rho : sys.positive)
            if (detail::integer_solution(st.nodes, rho)) sub.roots.push_back(rho);
    }

    // Independent route for single removals: the coefficient congruence.
    if (spec.steps.size() == 1) {
        const RemovalStep step = spec.steps[0];
        const int i = step.index - 1;
        const int m = sys.marks[i];
        std::vector<Root> congruent;
        for (const Root& rho : sys.positive) {
            bool keep = step.mode == RemovalMode::ext ? rho[i] % m == 0 : rho[i] == 0;
            if (keep) congruent.push_back(rho);
        }
        if (congruent != sub.roots)
            throw internal_error("span and congruence methods disagree for " + to_string(spec));
    }

    auto groups = node_components(sys, st);
    for (const auto& g : groups) {
        std::vector<Root> comp_nodes;
        for (int i : g) comp_nodes.push_back(st.nodes[i]);
        sub.components.push_back(classify_component(sys, comp_nodes));
    }
    int rank_sum = sub.torus_rank;
    for (const LieType& c : sub.components) rank_sum += c.rank;
    if (rank_sum != sys.rank())
        throw internal_error("component ranks plus torus do not add up to the ambient rank");
    return sub;
}

/// Positive roots of G not in H.
inline std::vector<Root> complement(const RootSystem& sys, const Subsystem& sub) {
    std::set<Root> in_h(sub.roots.begin(), sub.roots.end());
    std::vector<Root> out;
    for (const Root& rho : sys.positive)
        if (!in_h.count(rho)) out.push_back(rho);
    return out;
}

/// All single-step removals admitted by the marks of the ambient diagram.
inline std::vector<std::pair<RemovalStep, Subsystem>> maximal_subsystems(const RootSystem& sys) {
    std::vector<std::pair<RemovalStep, Subsystem>> out;
    for (int i = 1; i <= sys.rank(); ++i) {
        const int m = sys.marks[i - 1];
        std::optional<RemovalStep> step;
        if (m == 1) step = RemovalStep{RemovalMode::node, i};
        else if (detail::is_prime(m)) step = RemovalStep{RemovalMode::ext, i};
        if (!step) continue;
        SubsystemSpec spec{sys.type, {*step}, ""};
        out.push_back({*step, subsystem_roots(sys, spec)});
    }
    return out;
}

}  // namespace rootk
