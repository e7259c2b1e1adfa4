#pragma once

// Simple Lie types A..G: Cartan matrices, positive roots, highest root,
// extended diagram data and Weyl group orders.  Roots are integer coefficient
// vectors over the simple roots; all arithmetic is exact.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rootk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Coefficient vector of a root over the simple roots a_1..a_n.
using Root = std::vector<int>;
using IntMatrix = std::vector<std::vector<int>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Thrown when two independent internal computations disagree; always a bug,
/// never a user error.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct LieType {
    Family family;
    int rank;

    friend bool operator==(const LieType& x, const LieType& y) {
        return x.family == y.family && x.rank == y.rank;
    }
    friend bool operator!=(const LieType& x, const LieType& y) { return !(x == y); }
    friend bool operator<(const LieType& x, const LieType& y) {
        if (x.family != y.family) return x.family < y.family;
        return x.rank < y.rank;
    }
};

inline constexpr int default_max_classical_rank = 12;

inline bool is_classical(Family f) {
    return f == Family::A || f == Family::B || f == Family::C || f == Family::D;
}

inline std::string to_string(LieType t) {
    return std::string(1, char(t.family)) + std::to_string(t.rank);
}

/// Parses labels like "A3", "f4", "E8" (case-insensitive).
inline LieType parse_type(const std::string& text) {
    if (text.size() < 2)
        throw std::invalid_argument("bad Lie type '" + text + "'");
    char f = char(std::toupper((unsigned char)text[0]));
    if (f < 'A' || f > 'G')
        throw std::invalid_argument("bad Lie family in '" + text + "'");
    int rank = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if (!std::isdigit((unsigned char)text[i]))
            throw std::invalid_argument("bad rank in '" + text + "'");
        rank = rank * 10 + (text[i] - '0');
    }
    return LieType{Family(f), rank};
}

inline void validate_type(LieType t, int max_classical_rank = default_max_classical_rank) {
    const int n = t.rank;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("unsupported type " + to_string(t) + ": " + why);
    };
    switch (t.family) {
        case Family::A: if (n < 1) fail("rank must be >= 1"); break;
        case Family::B: if (n < 2) fail("rank must be >= 2"); break;
        case Family::C: if (n < 2) fail("rank must be >= 2"); break;
        case Family::D: if (n < 4) fail("rank must be >= 4 (D2, D3 are aliases)"); break;
        case Family::E: if (n < 6 || n > 8) fail("rank must be 6, 7 or 8"); break;
        case Family::F: if (n != 4) fail("rank must be 4"); break;
        case Family::G: if (n != 2) fail("rank must be 2"); break;
    }
    if (is_classical(t.family) && n > max_classical_rank)
        fail("classical rank cap is " + std::to_string(max_classical_rank));
}

/// Undirected simple-root adjacency (1-based pairs), fixing the node
/// numbering used throughout: classical chains 1..n, F4 chain 1-2=3-4,
/// E6 chain 1-2-3-5-6 with node 4 under 3, E7 chain 1..6 with 7 under 4,
/// E8 chain 1..7 with 8 under 3.
inline std::vector<std::pair<int, int>> diagram_edges(LieType t) {
    const int n = t.rank;
    std::vector<std::pair<int, int>> e;
    switch (t.family) {
        case Family::A: case Family::B: case Family::C: case Family::G: case Family::F:
            for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
            break;
        case Family::D:
            for (int i = 1; i < n - 1; ++i) e.push_back({i, i + 1});
            e.push_back({n - 2, n});
            break;
        case Family::E:
            if (n == 6) e = {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {5, 6}};
            if (n == 7) e = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
            if (n == 8) e = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 8}};
            break;
    }
    return e;
}

/// Squared lengths of the simple roots, normalized so long roots have
/// squared length 2.
inline std::vector<Rational> simple_len2(LieType t) {
    const int n = t.rank;
    std::vector<Rational> len(n, Rational(2));
    switch (t.family) {
        case Family::B: len[n - 1] = 1; break;                       // a_n = e_n short
        case Family::C: for (int i = 0; i < n - 1; ++i) len[i] = 1; break;  // a_n = 2e_n long
        case Family::F: len[2] = 1; len[3] = 1; break;               // a_3, a_4 short
        case Family::G: len[0] = Rational(2, 3); break;              // a_1 short
        default: break;
    }
    return len;
}

/// cartan[i][j] = 2(a_i, a_j)/(a_j, a_j).
inline IntMatrix cartan_matrix(LieType t, int max_classical_rank = default_max_classical_rank) {
    validate_type(t, max_classical_rank);
    const int n = t.rank;
    const auto len = simple_len2(t);
    IntMatrix c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    for (auto [a, b] : diagram_edges(t)) {
        const int i = a - 1, j = b - 1;
        // For any Dynkin edge, (a_i, a_j) = -max(len_i, len_j)/2 under the
        // long-root normalization; off-diagonal entries follow.
        Rational ip = -std::max(len[i], len[j]) / 2;
        Rational cij = 2 * ip / len[j], cji = 2 * ip / len[i];
        if (denominator(cij) != 1 || denominator(cji) != 1)
            throw internal_error("non-integral Cartan entry for " + to_string(t));
        c[i][j] = int(numerator(cij));
        c[j][i] = int(numerator(cji));
    }
    return c;
}

inline int height(const Root& r) {
    int h = 0;
    for (int c : r) h += c;
    return h;
}

inline Root negate(const Root& r) {
    Root out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = -r[i];
    return out;
}

/// Digit string "1231" when every coefficient is a single digit >= 0,
/// otherwise comma-separated "(1,-2,10)".
inline std::string format_root(const Root& r) {
    bool digits = true;
    for (int c : r) digits = digits && c >= 0 && c <= 9;
    std::string s;
    if (digits) {
        for (int c : r) s += char('0' + c);
        return s;
    }
    s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(r[i]);
    }
    return s + ")";
}

struct RootSystem {
    LieType type;
    IntMatrix cartan;            // cartan[i][j] = 2(a_i, a_j)/(a_j, a_j)
    RatMatrix gram;              // gram[i][j] = (a_i, a_j), long roots squared length 2
    std::vector<Root> positive;  // sorted lexicographically
    Root highest;
    std::vector<int> marks;      // coefficients of the highest root
    std::vector<int> extended_adjacency;  // 1-based nodes adjacent to the lowest root
    std::map<Root, int> positive_index;

    int rank() const { return type.rank; }

    bool is_positive_root(const Root& r) const { return positive_index.count(r) != 0; }

    bool is_root(const Root& r) const {
        return is_positive_root(r) || is_positive_root(negate(r));
    }

    Rational inner(const Root& u, const Root& v) const {
        Rational s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j] != 0) s += Rational(u[i] * v[j]) * gram[i][j];
        }
        return s;
    }

    Rational len2(const Root& r) const { return inner(r, r); }

    /// 2(r, a_i)/(a_i, a_i), an integer for any r in the root lattice.
    int pairing_with_simple(const Root& r, int i) const {
        int s = 0;
        for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * cartan[j][i];
        return s;
    }

    Root reflect_simple(const Root& r, int i) const {
        Root out = r;
        out[i] -= pairing_with_simple(r, i);
        return out;
    }

    /// s_beta(r) = r - 2(r, beta)/(beta, beta) * beta; integral whenever both
    /// arguments are roots.
    Root reflect(const Root& r, const Root& beta) const {
        Rational coef = 2 * inner(r, beta) / len2(beta);
        if (denominator(coef) != 1)
            throw internal_error("non-integral reflection coefficient");
        int c = int(numerator(coef));
        Root out = r;
        for (std::size_t i = 0; i < r.size(); ++i) out[i] -= c * beta[i];
        return out;
    }

    // Ambient realization, classical types only.  A_n lives in R^{n+1} with
    // a_i = e_i - e_{i+1}; B_n appends a_n = e_n, C_n a_n = 2e_n and
    // D_n a_n = e_{n-1} + e_n.

    bool has_ambient() const { return is_classical(type.family); }

    int ambient_dim() const { return type.family == Family::A ? type.rank + 1 : type.rank; }

    std::vector<int> ambient(const Root& r) const {
        if (!has_ambient())
            throw std::invalid_argument("ambient coordinates exist for classical types only");
        const int n = type.rank;
        std::vector<int> v(ambient_dim(), 0);
        for (int i = 0; i < n; ++i) {
            const int c = r[i];
            if (c == 0) continue;
            if (i < n - 1) { v[i] += c; v[i + 1] -= c; continue; }
            switch (type.family) {
                case Family::A: v[n - 1] += c; v[n] -= c; break;
                case Family::B: v[n - 1] += c; break;
                case Family::C: v[n - 1] += 2 * c; break;
                case Family::D: v[n - 2] += c; v[n - 1] += c; break;
                default: break;
            }
        }
        return v;
    }
};

namespace detail {

inline RatMatrix gram_from_cartan(const IntMatrix& cartan, const std::vector<Rational>& len) {
    const std::size_t n = cartan.size();
    RatMatrix g(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g[i][j] = Rational(cartan[i][j]) * len[j] / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g[i][j] != g[j][i]) throw internal_error("Gram matrix not symmetric");
    return g;
}

}  // namespace detail

/// Builds the full positive system by closing the simple roots under root
/// strings: b + a_i is a root iff p - <b, a_i^v> > 0 where p is the largest
/// k with b - k a_i a root.
inline RootSystem make_root_system(LieType t, int max_classical_rank = default_max_classical_rank) {
    RootSystem sys;
    sys.type = t;
    sys.cartan = cartan_matrix(t, max_classical_rank);
    sys.gram = detail::gram_from_cartan(sys.cartan, simple_len2(t));

    const int n = t.rank;
    std::set<Root> known;
    std::vector<Root> frontier;
    for (int i = 0; i < n; ++i) {
        Root a(n, 0);
        a[i] = 1;
        known.insert(a);
        frontier.push_back(a);
    }
    while (!frontier.empty()) {
        std::vector<Root> next;
        for (const Root& r : frontier) {
            for (int i = 0; i < n; ++i) {
                int p = 0;
                Root down = r;
                for (;;) {
                    down[i] -= 1;
                    if (down[i] < 0 || !known.count(down)) break;
                    ++p;
                }
                if (p - sys.pairing_with_simple(r, i) > 0) {
                    Root up = r;
                    up[i] += 1;
                    if (known.insert(up).second) next.push_back(up);
                }
            }
        }
        frontier = std::move(next);
    }

    sys.positive.assign(known.begin(), known.end());
    for (std::size_t i = 0; i < sys.positive.size(); ++i)
        sys.positive_index[sys.positive[i]] = int(i);

    // Highest root: the unique coordinatewise maximal element.
    Root hi(n, 0);
    for (const Root& r : sys.positive)
        for (int i = 0; i < n; ++i) hi[i] = std::max(hi[i], r[i]);
    if (!known.count(hi)) throw internal_error("no coordinatewise maximal root in " + to_string(t));
    sys.highest = hi;
    sys.marks = hi;

    for (int j = 0; j < n; ++j) {
        Root aj(n, 0);
        aj[j] = 1;
        if (hi != aj && sys.inner(hi, aj) != 0) sys.extended_adjacency.push_back(j + 1);
    }
    // A1: the lowest root is -a_1 itself; by convention it attaches to node 1.
    if (sys.extended_adjacency.empty()) sys.extended_adjacency.push_back(1);
    return sys;
}

/// |W|: the exponents are the conjugate partition of the height distribution
/// of the positive roots, and the order is prod (m_i + 1).
inline BigInt weyl_order(LieType t, int max_classical_rank = default_max_classical_rank) {
    RootSystem sys = make_root_system(t, max_classical_rank);
    int max_h = 0;
    for (const Root& r : sys.positive) max_h = std::max(max_h, height(r));
    std::vector<int> hist(max_h + 1, 0);
    for (const Root& r : sys.positive) hist[height(r)]++;
    BigInt order = 1;
    for (int j = 1; j <= hist[1]; ++j) {
        int exponent = 0;
        for (int h = 1; h <= max_h; ++h)
            if (hist[h] >= j) ++exponent;
        order *= exponent + 1;
    }
    return order;
}

}  // namespace rootk
