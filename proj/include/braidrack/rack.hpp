#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidrack/errors.hpp"

namespace braidrack {

/// A finite rack on {0,...,m-1} stored as its operation table.
///
/// table(x,y) = x |> y.  Construction verifies both rack axioms: every column
/// map x -> x |> y is a bijection, and |> is right self-distributive.  The
/// inverse table x |>^-1 y and the quandle flag (x |> x = x for all x) are
/// computed once and cached.  Instances are immutable.
class FiniteRack {
public:
    static FiniteRack from_table(const std::vector<std::vector<int>>& rows) {
        const int m = static_cast<int>(rows.size());
        if (m == 0)
            throw MalformedTable("empty table");
        std::vector<int> flat;
        flat.reserve(static_cast<size_t>(m) * m);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m)
                throw MalformedTable("table is not square: row of length " +
                                     std::to_string(row.size()) + " in an order-" +
                                     std::to_string(m) + " table");
            for (int v : row) {
                if (v < 0 || v >= m)
                    throw MalformedTable("entry " + std::to_string(v) +
                                         " out of range for order " + std::to_string(m));
                flat.push_back(v);
            }
        }
        return FiniteRack(m, std::move(flat));
    }

    int order() const noexcept { return order_; }
    bool is_quandle() const noexcept { return is_quandle_; }

    /// x |> y
    int op(int x, int y) const { return table_[static_cast<size_t>(x) * order_ + y]; }
    /// x |>^-1 y, the inverse of the column bijection
    int inv_op(int x, int y) const { return inv_table_[static_cast<size_t>(x) * order_ + y]; }

    const std::vector<int>& table() const noexcept { return table_; }

    bool operator==(const FiniteRack& other) const noexcept {
        return order_ == other.order_ && table_ == other.table_;
    }

private:
    FiniteRack(int m, std::vector<int> flat)
        : order_(m), table_(std::move(flat)), inv_table_(table_.size(), -1) {
        // Axiom 1 per column with seen flags; inv_table built in the same pass.
        std::vector<char> seen(static_cast<size_t>(order_));
        for (int y = 0; y < order_; ++y) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int x = 0; x < order_; ++x) {
                const int v = op(x, y);
                if (seen[v])
                    throw AxiomOneViolation(y);
                seen[v] = 1;
                inv_table_[static_cast<size_t>(v) * order_ + y] = x;
            }
        }
        for (int x = 0; x < order_; ++x)
            for (int y = 0; y < order_; ++y)
                for (int z = 0; z < order_; ++z)
                    if (op(op(x, y), z) != op(op(x, z), op(y, z)))
                        throw AxiomTwoViolation(x, y, z);
        is_quandle_ = true;
        for (int x = 0; x < order_; ++x)
            if (op(x, x) != x) {
                is_quandle_ = false;
                break;
            }
    }

    int order_ = 0;
    bool is_quandle_ = false;
    std::vector<int> table_;      // row-major, table_[x*m + y] = x |> y
    std::vector<int> inv_table_;  // inv_table_[x*m + y] = x |>^-1 y
};

/// Validates a raw operation table and returns the rack.
inline FiniteRack validate_rack(const std::vector<std::vector<int>>& rows) {
    return FiniteRack::from_table(rows);
}

/// Dihedral quandle R_n on Z/nZ: x |> y = (2y - x) mod n.
inline FiniteRack dihedral_quandle(int n) {
    if (n < 1)
        throw InvalidParameters("dihedral_quandle: order must be >= 1");
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            rows[x][y] = ((2 * y - x) % n + n) % n;
    return FiniteRack::from_table(rows);
}

/// (t,s)-rack on Z_m: x |> y = t*x + s*y mod m.  Requires t a unit mod m and
/// s^2 = (1-t)s mod m; the result is a quandle exactly when t+s = 1 mod m.
inline FiniteRack ts_rack(int m, long long t, long long s) {
    if (m < 1)
        throw InvalidParameters("ts_rack: modulus must be >= 1");
    const long long tm = ((t % m) + m) % m;
    const long long sm = ((s % m) + m) % m;
    if (std::gcd(tm, static_cast<long long>(m)) != 1)
        throw InvalidParameters("ts_rack: t = " + std::to_string(t) +
                                " is not a unit mod " + std::to_string(m));
    if (((sm * sm - (1 - tm) * sm) % m + m) % m != 0)
        throw InvalidParameters("ts_rack: s^2 != (1-t)s mod m for (t,s) = (" +
                                std::to_string(t) + "," + std::to_string(s) + ")");
    std::vector<std::vector<int>> rows(m, std::vector<int>(m));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            rows[x][y] = static_cast<int>((tm * x + sm * y) % m);
    return FiniteRack::from_table(rows);
}

/// Trivial quandle of order n: x |> y = x.  Same table as ts_rack(n, 1, 0).
inline FiniteRack trivial_quandle(int n) { return ts_rack(n, 1, 0); }

/// Core quandle of a group given by its Cayley table: x |> y = y x^-1 y.
/// The table is checked to be a group (closure, identity, inverses,
/// associativity) before use.
inline FiniteRack core_quandle(const std::vector<std::vector<int>>& cayley) {
    const int m = static_cast<int>(cayley.size());
    if (m == 0)
        throw MalformedTable("empty Cayley table");
    for (const auto& row : cayley) {
        if (static_cast<int>(row.size()) != m)
            throw MalformedTable("Cayley table is not square");
        for (int v : row)
            if (v < 0 || v >= m)
                throw NotAGroup("closure");
    }
    int identity = -1;
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int x = 0; x < m; ++x)
            if (cayley[e][x] != x || cayley[x][e] != x) {
                ok = false;
                break;
            }
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0)
        throw NotAGroup("identity");
    std::vector<int> inverse(m, -1);
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y)
            if (cayley[x][y] == identity && cayley[y][x] == identity) {
                inverse[x] = y;
                break;
            }
        if (inverse[x] < 0)
            throw NotAGroup("inverses");
    }
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                if (cayley[cayley[x][y]][z] != cayley[x][cayley[y][z]])
                    throw NotAGroup("associativity");
    std::vector<std::vector<int>> rows(m, std::vector<int>(m));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            rows[x][y] = cayley[cayley[y][inverse[x]]][y];
    return FiniteRack::from_table(rows);
}

/// Cayley table of the cyclic group Z_n; handy input for core_quandle.
inline std::vector<std::vector<int>> cyclic_group_table(int n) {
    if (n < 1)
        throw InvalidParameters("cyclic_group_table: order must be >= 1");
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            rows[x][y] = (x + y) % n;
    return rows;
}

namespace detail {

// Splits text into significant lines, dropping '#' comments and blank lines.
// Returns (line-number, content) pairs with 1-based line numbers.
inline std::vector<std::pair<int, std::string>> significant_lines(std::string_view text) {
    std::vector<std::pair<int, std::string>> out;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++lineno;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#')
            out.emplace_back(lineno, std::string(line));
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return out;
}

inline std::vector<int> parse_int_row(const std::string& line, int lineno) {
    std::vector<int> row;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i >= line.size())
            break;
        const size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        const std::string tok = line.substr(start, i - start);
        try {
            size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            row.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("expected an integer, got '" + tok + "'", lineno,
                             static_cast<int>(start) + 1);
        }
    }
    return row;
}

}  // namespace detail

/// Parses the rack table text format: first significant line is the order m,
/// then m rows of m entries; '#' lines are comments.
inline FiniteRack parse_rack_file(std::string_view text) {
    const auto lines = detail::significant_lines(text);
    if (lines.empty())
        throw ParseError("empty input", 1, 1);
    const auto header = detail::parse_int_row(lines[0].second, lines[0].first);
    if (header.size() != 1)
        throw ParseError("expected a single integer (the order)", lines[0].first, 1);
    const int m = header[0];
    if (m < 1)
        throw ParseError("order must be >= 1", lines[0].first, 1);
    if (static_cast<int>(lines.size()) != m + 1)
        throw ParseError("expected " + std::to_string(m) + " rows, got " +
                             std::to_string(lines.size() - 1),
                         lines.back().first, 1);
    std::vector<std::vector<int>> rows;
    rows.reserve(m);
    for (int r = 1; r <= m; ++r) {
        auto row = detail::parse_int_row(lines[r].second, lines[r].first);
        if (static_cast<int>(row.size()) != m)
            throw ParseError("expected " + std::to_string(m) + " entries in row",
                             lines[r].first, 1);
        rows.push_back(std::move(row));
    }
    return validate_rack(rows);
}

/// Canonical text form: order line, then the table rows, single spaces,
/// trailing newline.  parse_rack_file(serialize_rack(r)) == r.
inline std::string serialize_rack(const FiniteRack& rack) {
    std::ostringstream os;
    os << rack.order() << '\n';
    for (int x = 0; x < rack.order(); ++x) {
        for (int y = 0; y < rack.order(); ++y) {
            if (y)
                os << ' ';
            os << rack.op(x, y);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace braidrack
