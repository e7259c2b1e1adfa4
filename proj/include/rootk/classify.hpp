#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "rootk/matroid.hpp"
#include "rootk/signed_graph.hpp"
#include "rootk/subsystem.hpp"

namespace rootk {

struct PairVerdict {
    LieType ambient;
    SubsystemSpec spec;
    std::vector<LieType> components;
    int torus_rank = 0;
    int complement_size = 0;
    int computed_k = 0;
    bool symmetric = false;
    std::optional<std::string> cartan_label;
    int expected_k = 0;
    bool matches = false;  // computed_k == expected_k
};

struct VerificationReport {
    std::vector<PairVerdict> pairs;
    int mismatch_count = 0;
    std::chrono::duration<double> elapsed{};
};

/// The complement roots as a weight set in simple-root coordinates.
inline WeightSet complement_weight_set(const RootSystem& sys, const Subsystem& sub) {
    WeightSet s;
    s.dimension = sys.rank();
    for (const Root& rho : complement(sys, sub)) {
        s.vectors.push_back(rho);
        s.labels.push_back(format_root(rho));
    }
    return s;
}

/// Root criterion for G/H symmetric: no two complement roots (taken with both
/// signs) may sum to a root outside H.  Scanning positive representatives
/// with a sum and a difference test covers all sign combinations.
inline bool is_symmetric_pair(const RootSystem& sys, const Subsystem& sub) {
    std::set<Root> in_h(sub.roots.begin(), sub.roots.end());
    std::vector<Root> comp = complement(sys, sub);
    auto escapes = [&](Root w) {
        if (std::all_of(w.begin(), w.end(), [](int c) { return c == 0; })) return false;
        bool neg = height(w) < 0;
        if (neg) w = negate(w);
        return sys.is_positive_root(w) && !in_h.count(w);
    };
    for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t j = i + 1; j < comp.size(); ++j) {
            Root sum = comp[i], diff = comp[i];
            for (std::size_t c = 0; c < sum.size(); ++c) {
                sum[c] += comp[j][c];
                diff[c] -= comp[j][c];
            }
            if (escapes(sum) || escapes(diff)) return false;
        }
    return true;
}

inline bool is_symmetric_pair(const RootSystem& sys, const SubsystemSpec& spec) {
    return is_symmetric_pair(sys, subsystem_roots(sys, spec));
}

namespace detail {

/// Component multiset of H with the low-rank identifications applied
/// (B1 = C1 = A1, D1 = T^1, C2 = B2, D2 = A1 x A1, D3 = A3).
struct HShape {
    std::vector<LieType> components;  // sorted
    int torus = 0;

    bool operator==(const HShape& o) const {
        return components == o.components && torus == o.torus;
    }
};

inline void add_canonical(HShape& h, Family f, int r) {
    if (r <= 0) return;
    switch (f) {
        case Family::B:
        case Family::C:
            if (r == 1) h.components.push_back({Family::A, 1});
            else if (r == 2) h.components.push_back({Family::B, 2});
            else h.components.push_back({f, r});
            break;
        case Family::D:
            if (r == 1) ++h.torus;
            else if (r == 2) {
                h.components.push_back({Family::A, 1});
                h.components.push_back({Family::A, 1});
            } else if (r == 3) h.components.push_back({Family::A, 3});
            else h.components.push_back({Family::D, r});
            break;
        default:
            h.components.push_back({f, r});
            break;
    }
}

inline HShape finish(HShape h) {
    std::sort(h.components.begin(), h.components.end());
    return h;
}

inline HShape shape_of(const Subsystem& sub) {
    HShape h;
    h.torus = sub.torus_rank;
    for (const LieType& c : sub.components) add_canonical(h, c.family, c.rank);
    return finish(h);
}

struct TableRow {
    std::string label;
    HShape shape;
    int expected_k;  // predicted by the classification, valid for ambient rank > 2
};

/// The maximal rank symmetric pairs with the given ambient, in table order,
/// each carrying its independence number.
inline std::vector<TableRow> cartan_rows(LieType t) {
    const int n = t.rank;
    std::vector<TableRow> rows;
    auto row = [&](const std::string& label, std::vector<std::pair<Family, int>> parts,
                   int torus, int expected) {
        HShape h;
        h.torus = torus;
        for (auto [f, r] : parts) add_canonical(h, f, r);
        rows.push_back({label, finish(h), expected});
    };
    switch (t.family) {
        case Family::A:
            for (int i = 0; i <= n - 1; ++i)
                row("AIII", {{Family::A, i}, {Family::A, n - 1 - i}}, 1,
                    i == 0 || i == n - 1 ? n : 3);
            break;
        case Family::B:
            for (int i = 1; i <= n; ++i)
                row("BDI", {{Family::D, i}, {Family::B, n - i}}, 0, i == n ? n : 2);
            break;
        case Family::D:
            for (int i = 1; i <= n - 1; ++i)
                row("BDI", {{Family::D, i}, {Family::D, n - i}}, 0, 3);
            row("DIII", {{Family::A, n - 1}}, 1, 3);
            break;
        case Family::C:
            row("CI", {{Family::A, n - 1}}, 1, 2);
            for (int i = 1; i <= n - 1; ++i)
                row("CII", {{Family::C, i}, {Family::C, n - i}}, 0, 3);
            break;
        case Family::E:
            if (n == 6) {
                row("EII", {{Family::A, 5}, {Family::A, 1}}, 0, 3);
                row("EIII", {{Family::D, 5}}, 1, 3);
            } else if (n == 7) {
                row("EV", {{Family::A, 7}}, 0, 3);
                row("EVI", {{Family::D, 6}, {Family::A, 1}}, 0, 3);
                row("EVII", {{Family::E, 6}}, 1, 3);
            } else if (n == 8) {
                row("EVIII", {{Family::D, 8}}, 0, 3);
                row("EIX", {{Family::E, 7}, {Family::A, 1}}, 0, 3);
            }
            break;
        case Family::F:
            row("FI", {{Family::C, 3}, {Family::A, 1}}, 0, 2);
            row("FII", {{Family::B, 4}}, 0, 3);
            break;
        case Family::G:
            break;
    }
    return rows;
}

inline const TableRow* find_row(LieType ambient, const HShape& shape) {
    static std::mutex guard;
    static std::map<LieType, std::vector<TableRow>> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(ambient);
    if (it == cache.end()) it = cache.emplace(ambient, cartan_rows(ambient)).first;
    for (const TableRow& r : it->second)
        if (r.shape == shape) return &r;
    return nullptr;
}

}  // namespace detail

/// Symmetric-space label from the classification table; first matching row
/// wins (so the triality-ambiguous D4 with H = A3 x T^1 reads as BDI rather
/// than DIII).  Nothing is reported for non-symmetric or rank <= 2 pairs.
inline std::optional<std::string> cartan_label(const RootSystem& sys, const Subsystem& sub,
                                               bool symmetric) {
    if (!symmetric || sys.rank() <= 2) return std::nullopt;
    const detail::TableRow* row = detail::find_row(sys.type, detail::shape_of(sub));
    if (!row) return std::nullopt;
    return row->label;
}

inline std::optional<std::string> cartan_label(const RootSystem& sys, const SubsystemSpec& spec) {
    Subsystem sub = subsystem_roots(sys, spec);
    return cartan_label(sys, sub, is_symmetric_pair(sys, sub));
}

/// Independence number predicted by the classification: n for the projective
/// and even-sphere pairs, 2 for anything non-symmetric, of rank <= 2, or one
/// of the three symmetric exceptions, and 3 for the remaining table rows.
/// Deliberately computed without the matroid engine.
inline int theorem_expected_k(const RootSystem& sys, const Subsystem& sub, bool symmetric) {
    const int n = sys.rank();
    const detail::HShape shape = detail::shape_of(sub);

    detail::HShape full_flag;  // A_{n-1} x T^1
    full_flag.torus = 1;
    detail::add_canonical(full_flag, Family::A, n - 1);
    full_flag = detail::finish(full_flag);
    if (sys.type.family == Family::A && shape == full_flag) return n;

    detail::HShape d_n;
    detail::add_canonical(d_n, Family::D, n);
    d_n = detail::finish(d_n);
    if (sys.type.family == Family::B && shape == d_n) return n;

    if (!symmetric) return 2;
    if (n <= 2) return 2;
    const detail::TableRow* row = detail::find_row(sys.type, shape);
    return row ? row->expected_k : 2;
}

inline int theorem_expected_k(const RootSystem& sys, const SubsystemSpec& spec) {
    Subsystem sub = subsystem_roots(sys, spec);
    return theorem_expected_k(sys, sub, is_symmetric_pair(sys, sub));
}

/// Full pipeline for one pair; for classical ambients the signed-graph
/// verdict is compared against the matroid answer and a disagreement is a
/// bug, not data.
inline PairVerdict classify_pair(const RootSystem& sys, const SubsystemSpec& spec) {
    PairVerdict v;
    v.ambient = sys.type;
    v.spec = spec;
    Subsystem sub = subsystem_roots(sys, spec);
    v.components = sub.components;
    v.torus_rank = sub.torus_rank;
    WeightSet comp = complement_weight_set(sys, sub);
    v.complement_size = int(comp.vectors.size());
    v.computed_k = independence_number(comp).k;
    if (sys.has_ambient()) {
        GraphVerdict g = graph_k(complement_graph(sys, spec));
        if (g.k != v.computed_k)
            throw internal_error("signed graph and matroid disagree on " + to_string(spec));
    }
    v.symmetric = is_symmetric_pair(sys, sub);
    v.cartan_label = cartan_label(sys, sub, v.symmetric);
    v.expected_k = theorem_expected_k(sys, sub, v.symmetric);
    v.matches = v.computed_k == v.expected_k;
    return v;
}

struct VerifyOptions {
    int max_classical_rank = 8;
    std::vector<LieType> exceptional;  // extra ambients beyond the classical range
    int depth = 1;
    int per_ambient_cap = 4096;  // deterministic truncation for deep sweeps
};

namespace detail {

/// Removal sequences up to the depth bound, in index order at every level.
inline void enumerate_specs(const RootSystem& sys, const DiagramState& st,
                            std::vector<RemovalStep>& steps, int depth, int cap,
                            std::vector<SubsystemSpec>& out) {
    if (int(out.size()) >= cap || depth == 0) return;
    for (int i = 1; i <= int(st.nodes.size()); ++i) {
        // At most one mode is legal per node (mark 1 admits node, a prime
        // mark admits ext); probe both and let apply_step validate.
        for (RemovalMode mode : {RemovalMode::ext, RemovalMode::node}) {
            try {
                RemovalStep candidate{mode, i};
                DiagramState next = apply_step(sys, st, candidate, nullptr);
                steps.push_back(candidate);
                out.push_back(SubsystemSpec{sys.type, steps, ""});
                enumerate_specs(sys, next, steps, depth - 1, cap, out);
                steps.pop_back();
            } catch (const std::invalid_argument&) {
            }
            if (int(out.size()) >= cap) return;
        }
    }
}

}  // namespace detail

/// Enumerates every removal sequence up to the requested depth over the
/// ambient range and classifies each pair.  Tasks run on a small pool; the
/// report is ordered by (ambient, spec text) regardless of scheduling.
inline VerificationReport verify_range(const VerifyOptions& opt) {
    const auto started = std::chrono::steady_clock::now();
    if (opt.max_classical_rank < 2)
        throw std::invalid_argument("classical rank range must reach at least 2");
    if (opt.depth < 1) throw std::invalid_argument("depth must be at least 1");

    std::vector<LieType> ambients;
    for (int n = 2; n <= opt.max_classical_rank; ++n) ambients.push_back({Family::A, n});
    for (int n = 2; n <= opt.max_classical_rank; ++n) ambients.push_back({Family::B, n});
    for (int n = 2; n <= opt.max_classical_rank; ++n) ambients.push_back({Family::C, n});
    for (int n = 4; n <= opt.max_classical_rank; ++n) ambients.push_back({Family::D, n});
    for (LieType t : ambients) validate_type(t, opt.max_classical_rank);
    for (LieType t : opt.exceptional) {
        validate_type(t);
        if (is_classical(t.family))
            throw std::invalid_argument(to_string(t) + " is not an exceptional type");
        ambients.push_back(t);
    }

    struct Task {
        const RootSystem* sys;
        SubsystemSpec spec;
    };
    std::vector<std::unique_ptr<RootSystem>> systems;
    std::vector<Task> tasks;
    for (LieType t : ambients) {
        systems.push_back(std::make_unique<RootSystem>(make_root_system(t, opt.max_classical_rank)));
        const RootSystem& sys = *systems.back();
        std::vector<SubsystemSpec> specs;
        std::vector<RemovalStep> steps;
        detail::enumerate_specs(sys, initial_state(sys), steps, opt.depth,
                                opt.per_ambient_cap, specs);
        for (SubsystemSpec& s : specs) tasks.push_back({&sys, std::move(s)});
    }

    std::vector<PairVerdict> verdicts(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_guard;
    auto worker = [&] {
        for (std::size_t i = cursor.fetch_add(1); i < tasks.size(); i = cursor.fetch_add(1)) {
            try {
                verdicts[i] = classify_pair(*tasks[i].sys, tasks[i].spec);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_guard);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    unsigned pool_size = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                            std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < pool_size; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::sort(verdicts.begin(), verdicts.end(), [](const PairVerdict& a, const PairVerdict& b) {
        if (a.ambient != b.ambient) return a.ambient < b.ambient;
        return steps_string(a.spec) < steps_string(b.spec);
    });
    VerificationReport report;
    report.pairs = std::move(verdicts);
    for (const PairVerdict& v : report.pairs)
        if (!v.matches) ++report.mismatch_count;
    report.elapsed = std::chrono::steady_clock::now() - started;
    return report;
}

struct TripleSurvey {
    bool holds = true;
    std::optional<std::array<Root, 3>> counterexample;  // lex sorted
};

namespace detail {

inline bool rank_lt_3(const Root& a, const Root& b, const Root& c) {
    // Bareiss on a 3 x n matrix of small integers; long long never overflows
    // at root-coefficient magnitudes.
    std::array<std::vector<long long>, 3> m;
    m[0].assign(a.begin(), a.end());
    m[1].assign(b.begin(), b.end());
    m[2].assign(c.begin(), c.end());
    const std::size_t n = a.size();
    long long prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < 3; ++col) {
        std::size_t pivot = row;
        while (pivot < 3 && m[pivot][col] == 0) ++pivot;
        if (pivot == 3) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t r = row + 1; r < 3; ++r)
            for (std::size_t c2 = col + 1; c2 < n; ++c2)
                m[r][c2] = (m[r][c2] * m[row][col] - m[r][col] * m[row][c2]) / prev;
        prev = m[row][col];
        ++row;
    }
    return row < 3;
}

}  // namespace detail

/// Scans every triple of distinct positive roots, highest roots first so the
/// reported counterexample is reproducible, for the simply laced dependence
/// law "dependent implies u = v + w".
inline TripleSurvey dependent_triple_survey(const RootSystem& sys) {
    std::vector<Root> roots(sys.positive.rbegin(), sys.positive.rend());
    auto is_sum = [](const Root& u, const Root& v, const Root& w) {
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != v[i] + w[i]) return false;
        return true;
    };
    const int m = int(roots.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const Root &a = roots[i], &b = roots[j], &c = roots[k];
                if (is_sum(a, b, c) || is_sum(b, a, c) || is_sum(c, a, b)) continue;
                if (!detail::rank_lt_3(a, b, c)) continue;
                std::array<Root, 3> w{a, b, c};
                std::sort(w.begin(), w.end());
                return {false, w};
            }
    return {true, std::nullopt};
}

/// The dependence law itself, restricted to the simply laced families where
/// it is a theorem.
inline bool simply_laced_triple_check(const RootSystem& sys) {
    Family f = sys.type.family;
    if (f != Family::A && f != Family::D && f != Family::E)
        throw std::invalid_argument("the triple law applies to simply laced types only, not " +
                                    to_string(sys.type));
    return dependent_triple_survey(sys).holds;
}

struct GramSurvey {
    int triples = 0;
    bool identity_holds = true;  // det G == 1 + 2abc - a^2 - b^2 - c^2 throughout
    bool all_positive = true;    // det G > 0 throughout
    std::set<Rational> off_diagonal;  // pairwise inner products encountered
};

/// Exact Gram-determinant scan over all triples of an equal-length root
/// family rescaled to unit length; positivity of every determinant is the
/// independence of every triple.
inline GramSurvey unit_gram_survey(const RootSystem& sys, const std::vector<Root>& roots) {
    GramSurvey out;
    if (roots.empty()) return out;
    const Rational len = sys.len2(roots[0]);
    for (const Root& r : roots)
        if (sys.len2(r) != len)
            throw std::invalid_argument("unit rescaling needs an equal-length root family");
    const int m = int(roots.size());
    auto unit_inner = [&](int i, int j) { return sys.inner(roots[i], roots[j]) / len; };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const Rational a = unit_inner(i, j), b = unit_inner(i, k), c = unit_inner(j, k);
                out.off_diagonal.insert(a);
                out.off_diagonal.insert(b);
                out.off_diagonal.insert(c);
                // det [[1,a,b],[a,1,c],[b,c,1]] expanded along the first row.
                const Rational det = (1 - c * c) - a * (a - b * c) + b * (a * c - b);
                const Rational closed = 1 + 2 * a * b * c - a * a - b * b - c * c;
                if (det != closed) out.identity_holds = false;
                if (det <= 0) out.all_positive = false;
                ++out.triples;
            }
    return out;
}

}  // namespace rootk
