#pragma once

// Exact linear matroid queries over integer vectors: rank, the independence
// number k (largest q such that every q-subset is linearly independent) and
// smallest circuits with integer dependency witnesses.  All elimination is
// fraction-free over arbitrary-precision integers.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootk/root_system.hpp"

namespace rootk {

struct WeightSet {
    int dimension = 0;
    std::vector<std::vector<int>> vectors;
    std::vector<std::string> labels;  // optional; empty or one per vector
};

struct IndependenceReport {
    int k = 0;     // 0 flags the degenerate empty set
    int rank = 0;  // rank of the whole set
    std::optional<std::vector<int>> circuit;             // sorted indices of a smallest circuit
    std::optional<std::vector<BigInt>> witness_relation;  // sum c_i * v_i = 0, content 1
};

namespace detail {

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divide_qr(a, b, q, r);
    if (r != 0) throw internal_error("fraction-free elimination produced a non-exact division");
    return q;
}

// Incremental fraction-free echelon (Bareiss): rows are adjoined one at a
// time and fully reduced against the rows already present.  Supports
// backtracking, which the subset search below leans on.
class Echelon {
  public:
    explicit Echelon(int dimension) : dim_(dimension) {}

    int rank() const { return int(rows_.size()); }

    // Reduces v against the current rows; returns the reduced row (all zero
    // iff v is dependent on the current rows).
    std::vector<BigInt> reduce(const std::vector<int>& v) const {
        std::vector<BigInt> row(v.begin(), v.end());
        BigInt prev = 1;
        for (std::size_t s = 0; s < rows_.size(); ++s) {
            const BigInt& pivot = rows_[s][pivot_col_[s]];
            const BigInt coef = row[pivot_col_[s]];
            for (int j = 0; j < dim_; ++j)
                row[j] = exact_div(row[j] * pivot - coef * rows_[s][j], prev);
            prev = pivot;
        }
        return row;
    }

    static bool is_zero(const std::vector<BigInt>& row) {
        for (const BigInt& x : row)
            if (x != 0) return false;
        return true;
    }

    // Pre: row == reduce(original) and not all zero.
    void push(std::vector<BigInt> row) {
        int p = 0;
        while (row[p] == 0) ++p;
        rows_.push_back(std::move(row));
        pivot_col_.push_back(p);
    }

    void pop() {
        rows_.pop_back();
        pivot_col_.pop_back();
    }

  private:
    int dim_;
    std::vector<std::vector<BigInt>> rows_;
    std::vector<int> pivot_col_;
};

inline bool proportional(const std::vector<int>& u, const std::vector<int>& v) {
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (std::int64_t(u[i]) * v[j] != std::int64_t(u[j]) * v[i]) return false;
    return true;
}

inline bool is_zero_vector(const std::vector<int>& v) {
    for (int x : v)
        if (x != 0) return false;
    return true;
}

inline std::string describe_vector(const WeightSet& s, int i) {
    std::string out = "#" + std::to_string(i);
    if (i < int(s.labels.size()) && !s.labels[i].empty()) out += " (" + s.labels[i] + ")";
    return out;
}

inline void validate_weight_set(const WeightSet& s) {
    for (std::size_t i = 0; i < s.vectors.size(); ++i)
        if (int(s.vectors[i].size()) != s.dimension)
            throw std::invalid_argument("weight vector " + describe_vector(s, int(i)) +
                                        " has wrong dimension");
    for (std::size_t i = 0; i < s.vectors.size(); ++i)
        if (is_zero_vector(s.vectors[i]))
            throw std::invalid_argument("weight vector " + describe_vector(s, int(i)) + " is zero");
    for (std::size_t i = 0; i < s.vectors.size(); ++i)
        for (std::size_t j = i + 1; j < s.vectors.size(); ++j)
            if (proportional(s.vectors[i], s.vectors[j]))
                throw std::invalid_argument("weight vectors " + describe_vector(s, int(i)) +
                                            " and " + describe_vector(s, int(j)) +
                                            " are proportional");
}

// Integer dependency with content 1 and positive leading coefficient for the
// vectors of a circuit (unique up to sign since a circuit has nullity 1).
inline std::vector<BigInt> circuit_relation(const WeightSet& s, const std::vector<int>& circuit) {
    const int q = int(circuit.size());
    const int n = s.dimension;
    // Rational Gaussian elimination on the transposed system sum x_i v_i = 0,
    // solved with x_last = -1.
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < n; ++j) m[j][i] = s.vectors[circuit[i]][j];
    std::vector<Rational> rhs(n, 0);
    for (int j = 0; j < n; ++j) rhs[j] = m[j][q - 1];

    std::vector<int> pivot_row(q - 1, -1);
    int r = 0;
    for (int col = 0; col < q - 1 && r < n; ++col) {
        int pr = -1;
        for (int i = r; i < n; ++i)
            if (m[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[pr], m[r]);
        std::swap(rhs[pr], rhs[r]);
        for (int i = 0; i < n; ++i) {
            if (i == r || m[i][col] == 0) continue;
            Rational f = m[i][col] / m[r][col];
            for (int j = col; j < q - 1; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_row[col] = r;
        ++r;
    }
    std::vector<Rational> x(q, 0);
    x[q - 1] = -1;
    for (int col = 0; col < q - 1; ++col) {
        if (pivot_row[col] < 0) throw internal_error("circuit relation solve hit a free variable");
        x[col] = rhs[pivot_row[col]] / m[pivot_row[col]][col];
    }
    BigInt lcm_den = 1;
    for (const Rational& v : x) lcm_den = lcm(lcm_den, denominator(v));
    std::vector<BigInt> rel(q);
    for (int i = 0; i < q; ++i) rel[i] = numerator(x[i]) * (lcm_den / denominator(x[i]));
    BigInt g = 0;
    for (const BigInt& c : rel) g = gcd(g, c);
    if (g == 0) throw internal_error("circuit relation is trivial");
    for (BigInt& c : rel) c /= g;
    if (rel[0] < 0)
        for (BigInt& c : rel) c = -c;
    for (const BigInt& c : rel)
        if (c == 0) throw internal_error("circuit relation has a zero coefficient");
    return rel;
}

}  // namespace detail

/// Rank of the row span, by fraction-free (Bareiss) elimination.
inline int exact_rank(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return 0;
    detail::Echelon ech(int(rows[0].size()));
    for (const auto& r : rows) {
        auto red = ech.reduce(r);
        if (!detail::Echelon::is_zero(red)) ech.push(std::move(red));
    }
    return ech.rank();
}

/// Smallest circuit (minimum-cardinality dependent subset), by exhausting
/// subset sizes in increasing order with a shared prefix echelon; ties are
/// broken lexicographically on the sorted index tuples.  nullopt iff the set
/// is linearly independent.
inline std::optional<std::vector<int>> smallest_circuit(const WeightSet& s) {
    detail::validate_weight_set(s);
    const int m = int(s.vectors.size());
    if (m == 0) return std::nullopt;
    const int rank = exact_rank(s.vectors);
    if (rank == m) return std::nullopt;

    // Every subset smaller than the current target size q is independent
    // (previous passes found nothing), so any dependent q-subset found in
    // lexicographic order is the canonical smallest circuit.  q never exceeds
    // rank + 1, where every subset of that size is dependent.
    std::vector<int> chosen;
    detail::Echelon ech(s.dimension);
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int start, int remaining) -> void {
        if (found) return;
        for (int i = start; i <= m - remaining && !found; ++i) {
            auto red = ech.reduce(s.vectors[i]);
            if (detail::Echelon::is_zero(red)) {
                if (remaining != 1)
                    throw internal_error("dependent prefix below the current search size");
                chosen.push_back(i);
                found = chosen;
                chosen.pop_back();
                return;
            }
            if (remaining == 1) continue;
            chosen.push_back(i);
            ech.push(std::move(red));
            self(self, i + 1, remaining - 1);
            ech.pop();
            chosen.pop_back();
        }
    };
    for (int q = 3; q <= rank + 1 && !found; ++q) dfs(dfs, 0, q);
    if (!found) throw internal_error("dependent set with no circuit found");
    return found;
}

/// True iff the given (sorted, distinct) indices form a circuit: dependent
/// with every proper subset independent.
inline bool is_circuit(const WeightSet& s, const std::vector<int>& indices) {
    std::vector<std::vector<int>> rows;
    for (int i : indices) rows.push_back(s.vectors.at(i));
    const int c = int(rows.size());
    if (c == 0 || exact_rank(rows) != c - 1) return false;
    for (int drop = 0; drop < c; ++drop) {
        std::vector<std::vector<int>> sub;
        for (int i = 0; i < c; ++i)
            if (i != drop) sub.push_back(rows[i]);
        if (exact_rank(sub) != c - 1) return false;
    }
    return true;
}

/// k(S): pairwise independence is a precondition, so k >= 2 for |S| >= 2;
/// the empty set yields the flagged k = 0.
inline IndependenceReport independence_number(const WeightSet& s) {
    detail::validate_weight_set(s);
    IndependenceReport rep;
    rep.rank = exact_rank(s.vectors);
    if (s.vectors.empty()) return rep;  // k = 0, flagged degenerate
    auto circ = smallest_circuit(s);
    if (!circ) {
        rep.k = int(s.vectors.size());
        return rep;
    }
    rep.k = int(circ->size()) - 1;
    rep.witness_relation = detail::circuit_relation(s, *circ);
    rep.circuit = std::move(circ);
    return rep;
}

/// k of the block-diagonal union of two weight sets.
inline int direct_sum_k(const WeightSet& a, const WeightSet& b) {
    WeightSet u;
    u.dimension = a.dimension + b.dimension;
    for (const auto& v : a.vectors) {
        std::vector<int> w(u.dimension, 0);
        std::copy(v.begin(), v.end(), w.begin());
        u.vectors.push_back(std::move(w));
    }
    for (const auto& v : b.vectors) {
        std::vector<int> w(u.dimension, 0);
        std::copy(v.begin(), v.end(), w.begin() + a.dimension);
        u.vectors.push_back(std::move(w));
    }
    for (std::size_t i = 0; i < a.vectors.size() + b.vectors.size(); ++i) {
        std::string label;
        if (i < a.vectors.size())
            label = i < a.labels.size() ? a.labels[i] : "";
        else if (i - a.vectors.size() < b.labels.size())
            label = b.labels[i - a.vectors.size()];
        u.labels.push_back(label);
    }
    return independence_number(u).k;
}

}  // namespace rootk
