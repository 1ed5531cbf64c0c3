#pragma once

#include <cctype>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidrack/errors.hpp"

namespace braidrack {

/// A braid word on n strands: a sequence of signed generator letters read top
/// to bottom.  Letter +i is the generator on strands i, i+1 (1-based, strand i
/// crossing over), letter -i its inverse.  The empty word is the identity.
class BraidWord {
public:
    explicit BraidWord(int strands, std::vector<int> letters = {})
        : strands_(strands), letters_(std::move(letters)) {
        if (strands_ < 1)
            throw InvalidParameters("braid must have at least one strand");
        for (int e : letters_) {
            const int i = e < 0 ? -e : e;
            if (i < 1 || i > strands_ - 1)
                throw IndexOutOfRange(i, "generator index out of range for " +
                                             std::to_string(strands_) + " strands");
        }
    }

    int strands() const noexcept { return strands_; }
    const std::vector<int>& letters() const noexcept { return letters_; }
    size_t length() const noexcept { return letters_.size(); }

    bool operator==(const BraidWord& other) const noexcept {
        return strands_ == other.strands_ && letters_ == other.letters_;
    }

private:
    int strands_;
    std::vector<int> letters_;
};

/// Reads an optional "n=<k>" header from braid word text.
inline std::optional<int> parse_braid_header(std::string_view text) {
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (i + 1 >= text.size() || text[i] != 'n' || text[i + 1] != '=')
        return std::nullopt;
    i += 2;
    const size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == start)
        return std::nullopt;
    return std::stoi(std::string(text.substr(start, i - start)));
}

/// Parses a braid word: optional "n=<k>" header, then whitespace-separated
/// letters.  Letters are signed integers ("1 -2 1") or the compact form with
/// an 's' prefix and a trailing apostrophe for inverses ("s1 s2' s1").
inline BraidWord parse_braid(std::string_view text, int strands) {
    if (strands < 1)
        throw InvalidParameters("braid must have at least one strand");
    std::vector<int> letters;
    size_t i = 0;
    bool first_token = true;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size())
            break;
        const size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::string tok(text.substr(start, i - start));
        const int col = static_cast<int>(start) + 1;
        if (first_token && tok.size() > 2 && tok[0] == 'n' && tok[1] == '=') {
            const auto header = parse_braid_header(tok);
            const bool all_digits =
                tok.find_first_not_of("0123456789", 2) == std::string::npos;
            if (!header || !all_digits)
                throw ParseError("bad strand header '" + tok + "'", 1, col);
            if (*header != strands)
                throw ParseError("header declares " + std::to_string(*header) +
                                     " strands but " + std::to_string(strands) +
                                     " were requested",
                                 1, col);
            first_token = false;
            continue;
        }
        first_token = false;
        int sign = 1;
        if (tok.size() >= 2 && (tok[0] == 's' || tok[0] == 'S')) {
            if (tok.back() == '\'') {
                sign = -1;
                tok.pop_back();
            }
            tok.erase(0, 1);
        }
        int index = 0;
        try {
            size_t used = 0;
            index = std::stoi(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad braid letter '" +
                                 std::string(text.substr(start, i - start)) + "'",
                             1, col);
        }
        if (index == 0)
            throw ParseError("generator index 0 is not a letter", 1, col);
        const int abs_index = index < 0 ? -index : index;
        if (abs_index >= strands)
            throw IndexOutOfRange(abs_index, "generator index out of range for " +
                                                 std::to_string(strands) + " strands");
        letters.push_back(sign * index);
    }
    return BraidWord(strands, std::move(letters));
}

/// Canonical signed-integer form, space separated.  parse_braid round-trips it.
inline std::string serialize_braid(const BraidWord& w) {
    std::ostringstream os;
    bool first = true;
    for (int e : w.letters()) {
        if (!first)
            os << ' ';
        os << e;
        first = false;
    }
    return os.str();
}

/// Vertical juxtaposition: a on top, then b.
inline BraidWord compose(const BraidWord& a, const BraidWord& b) {
    if (a.strands() != b.strands())
        throw StrandMismatch("cannot compose words on " + std::to_string(a.strands()) +
                             " and " + std::to_string(b.strands()) + " strands");
    std::vector<int> letters = a.letters();
    letters.insert(letters.end(), b.letters().begin(), b.letters().end());
    return BraidWord(a.strands(), std::move(letters));
}

/// Group inverse: reversed letters with flipped signs.
inline BraidWord inverse(const BraidWord& w) {
    std::vector<int> letters(w.letters().rbegin(), w.letters().rend());
    for (int& e : letters)
        e = -e;
    return BraidWord(w.strands(), std::move(letters));
}

/// Deletes adjacent cancelling pairs until none remain.  The stack pass gives
/// the unique normal form of this confluent rewriting system.
inline BraidWord free_reduce(const BraidWord& w) {
    std::vector<int> out;
    out.reserve(w.letters().size());
    for (int e : w.letters()) {
        if (!out.empty() && out.back() == -e)
            out.pop_back();
        else
            out.push_back(e);
    }
    return BraidWord(w.strands(), std::move(out));
}

enum class RelationKind {
    far_commutation,  // sigma_i sigma_j = sigma_j sigma_i, |i-j| >= 2
    braid_relation,   // sigma_i sigma_j sigma_i = sigma_j sigma_i sigma_j, |i-j| = 1
};

/// Rewrites the subword at `position` with the other side of the named
/// relation.  The braid relation matches the signed instances derivable from
/// the positive one by inverting: outer letters share an index, the middle
/// sign agrees with at least one outer sign, and the rewrite maps signs
/// (s1,s2,s3) -> (s3,s2,s1) while swapping the two indices.
inline BraidWord apply_relation(const BraidWord& w, size_t position, RelationKind kind) {
    const auto& ls = w.letters();
    std::vector<int> out = ls;
    if (kind == RelationKind::far_commutation) {
        if (position + 2 > ls.size())
            throw RelationNotApplicable("window exceeds word length");
        const int e1 = ls[position], e2 = ls[position + 1];
        const int i = std::abs(e1), j = std::abs(e2);
        if (std::abs(i - j) < 2)
            throw RelationNotApplicable("generators are adjacent: |" +
                                        std::to_string(i) + " - " + std::to_string(j) +
                                        "| < 2");
        out[position] = e2;
        out[position + 1] = e1;
        return BraidWord(w.strands(), std::move(out));
    }
    if (position + 3 > ls.size())
        throw RelationNotApplicable("window exceeds word length");
    const int e1 = ls[position], e2 = ls[position + 1], e3 = ls[position + 2];
    const int i = std::abs(e1), j = std::abs(e2);
    if (std::abs(e3) != i || std::abs(i - j) != 1)
        throw RelationNotApplicable("letters do not form a braid-relation window");
    const int s1 = e1 < 0 ? -1 : 1, s2 = e2 < 0 ? -1 : 1, s3 = e3 < 0 ? -1 : 1;
    if (s2 != s1 && s2 != s3)
        throw RelationNotApplicable("sign pattern is not an instance of the relation");
    out[position] = s3 * j;
    out[position + 1] = s2 * i;
    out[position + 2] = s1 * j;
    return BraidWord(w.strands(), std::move(out));
}

/// The permutation sending top position to bottom position, signs ignored.
inline std::vector<int> underlying_permutation(const BraidWord& w) {
    std::vector<int> strand_at(w.strands());
    for (int p = 0; p < w.strands(); ++p)
        strand_at[p] = p;
    for (int e : w.letters()) {
        const int i = (e < 0 ? -e : e) - 1;
        std::swap(strand_at[i], strand_at[i + 1]);
    }
    std::vector<int> perm(w.strands());
    for (int p = 0; p < w.strands(); ++p)
        perm[strand_at[p]] = p;
    return perm;
}

/// Number of components of the braid closure = cycles of the permutation.
inline int closure_components(const BraidWord& w) {
    const auto perm = underlying_permutation(w);
    std::vector<char> seen(perm.size());
    int cycles = 0;
    for (size_t s = 0; s < perm.size(); ++s) {
        if (seen[s])
            continue;
        ++cycles;
        size_t p = s;
        while (!seen[p]) {
            seen[p] = 1;
            p = static_cast<size_t>(perm[p]);
        }
    }
    return cycles;
}

/// Exponent sum of the word.
inline int writhe(const BraidWord& w) {
    int sum = 0;
    for (int e : w.letters())
        sum += e < 0 ? -1 : 1;
    return sum;
}

}  // namespace braidrack
