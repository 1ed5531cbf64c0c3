#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "braidrack/braid.hpp"
#include "braidrack/errors.hpp"
#include "braidrack/rack.hpp"

namespace braidrack {

/// A tuple of rack colors, one per strand, left to right.
struct ColorVector {
    int rack_order;
    std::vector<int> colors;

    ColorVector(int m, std::vector<int> cs) : rack_order(m), colors(std::move(cs)) {
        for (int c : colors)
            if (c < 0 || c >= rack_order)
                throw IndexOutOfRange(c, "color out of range for rack order " +
                                             std::to_string(rack_order));
    }

    bool operator==(const ColorVector& other) const noexcept {
        return rack_order == other.rack_order && colors == other.colors;
    }
};

namespace detail {

// One crossing acting on adjacent colors (a,b) at positions i-1, i:
//   sigma_i^-1 : (a,b) -> (b, a |> b)
//   sigma_i    : (a,b) -> (b |>^-1 a, a)
// The two maps are mutually inverse, so cancelling letters cancel exactly.
inline void apply_letter_inplace(const FiniteRack& rack, std::vector<int>& colors, int letter) {
    const int i = letter < 0 ? -letter : letter;
    if (i < 1 || i >= static_cast<int>(colors.size()))
        throw IndexOutOfRange(i, "generator index out of range for " +
                                     std::to_string(colors.size()) + " strands");
    const int a = colors[i - 1];
    const int b = colors[i];
    if (letter < 0) {
        colors[i - 1] = b;
        colors[i] = rack.op(a, b);
    } else {
        colors[i - 1] = rack.inv_op(b, a);
        colors[i] = a;
    }
}

inline void apply_word_inplace(const FiniteRack& rack, std::vector<int>& colors,
                               const BraidWord& word) {
    for (int e : word.letters())
        apply_letter_inplace(rack, colors, e);
}

// m^n, or throws SizeCapExceeded when the count would exceed cap.
inline std::uint64_t checked_tuple_count(int m, int n, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (int k = 0; k < n; ++k) {
        if (count > cap / static_cast<std::uint64_t>(m))
            throw SizeCapExceeded("tuple space " + std::to_string(m) + "^" +
                                  std::to_string(n) + " exceeds cap " + std::to_string(cap));
        count *= static_cast<std::uint64_t>(m);
    }
    if (count > cap)
        throw SizeCapExceeded("tuple space exceeds cap " + std::to_string(cap));
    return count;
}

inline void decode_tuple(std::uint64_t index, int m, std::vector<int>& out) {
    for (size_t k = out.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % m);
        index /= static_cast<std::uint64_t>(m);
    }
}

// Lexicographic successor with the leftmost strand most significant.
inline void increment_tuple(std::vector<int>& tuple, int m) {
    for (size_t k = tuple.size(); k-- > 0;) {
        if (++tuple[k] < m)
            return;
        tuple[k] = 0;
    }
}

}  // namespace detail

/// Colors after one crossing.
inline ColorVector apply_letter(const FiniteRack& rack, ColorVector colors, int letter) {
    if (colors.rack_order != rack.order())
        throw DimensionMismatch("color vector order does not match rack order");
    detail::apply_letter_inplace(rack, colors.colors, letter);
    return colors;
}

/// Left fold of apply_letter over the word, top to bottom.
inline ColorVector apply_braid(const FiniteRack& rack, ColorVector colors,
                               const BraidWord& word) {
    if (colors.rack_order != rack.order())
        throw DimensionMismatch("color vector order does not match rack order");
    if (static_cast<int>(colors.colors.size()) != word.strands())
        throw StrandMismatch("color vector has " + std::to_string(colors.colors.size()) +
                             " entries for a " + std::to_string(word.strands()) +
                             "-strand word");
    detail::apply_word_inplace(rack, colors.colors, word);
    return colors;
}

/// Lexicographic tuple index, leftmost strand most significant.
inline std::uint64_t tuple_index(const ColorVector& colors) {
    std::uint64_t index = 0;
    for (int c : colors.colors)
        index = index * static_cast<std::uint64_t>(colors.rack_order) +
                static_cast<std::uint64_t>(c);
    return index;
}

inline ColorVector index_tuple(std::uint64_t index, int m, int n) {
    if (m < 1 || n < 0)
        throw InvalidParameters("index_tuple: need m >= 1 and n >= 0");
    std::uint64_t space = 1;
    for (int k = 0; k < n; ++k) {
        if (space > UINT64_MAX / static_cast<std::uint64_t>(m))
            throw InvalidParameters("index_tuple: tuple space overflows");
        space *= static_cast<std::uint64_t>(m);
    }
    if (index >= space)
        throw IndexOutOfRange(static_cast<int>(index > INT32_MAX ? INT32_MAX : index),
                              "tuple index out of range");
    std::vector<int> colors(n);
    detail::decode_tuple(index, m, colors);
    return ColorVector(m, std::move(colors));
}

inline constexpr std::uint64_t kDefaultMatrixCap = 1'000'000;
inline constexpr std::uint64_t kDefaultStreamCap = 10'000'000;

/// The m^n x m^n counting matrix of a braid word over a rack, stored as the
/// permutation of tuple indices it induces: perm[i] = j means the top tuple
/// indexed i propagates to the bottom tuple indexed j.
class CountingMatrix {
public:
    CountingMatrix(int rack_order, int strands, std::vector<std::uint64_t> perm)
        : rack_order_(rack_order), strands_(strands), perm_(std::move(perm)) {
        if (!is_permutation())
            throw InvalidParameters("counting matrix image is not a permutation");
    }

    int rack_order() const noexcept { return rack_order_; }
    int strands() const noexcept { return strands_; }
    std::uint64_t size() const noexcept { return perm_.size(); }
    const std::vector<std::uint64_t>& perm() const noexcept { return perm_; }

    bool operator==(const CountingMatrix& other) const noexcept {
        return rack_order_ == other.rack_order_ && strands_ == other.strands_ &&
               perm_ == other.perm_;
    }

    bool is_permutation() const {
        std::vector<char> seen(perm_.size());
        for (std::uint64_t v : perm_) {
            if (v >= perm_.size() || seen[v])
                return false;
            seen[v] = 1;
        }
        return true;
    }

private:
    int rack_order_;
    int strands_;
    std::vector<std::uint64_t> perm_;
};

/// Builds the counting matrix by propagating every top tuple through the
/// word.  Workers split the index range; each writes disjoint slots, so the
/// result is identical for any worker count.
inline CountingMatrix counting_matrix(const FiniteRack& rack, const BraidWord& word,
                                      std::uint64_t cap = kDefaultMatrixCap,
                                      int workers = 1) {
    const int m = rack.order();
    const int n = word.strands();
    const std::uint64_t total = detail::checked_tuple_count(m, n, cap);
    std::vector<std::uint64_t> perm(total);

    auto fill_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<int> tuple(n), scratch(n);
        detail::decode_tuple(begin, m, tuple);
        for (std::uint64_t i = begin; i < end; ++i) {
            scratch = tuple;
            detail::apply_word_inplace(rack, scratch, word);
            std::uint64_t j = 0;
            for (int c : scratch)
                j = j * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(c);
            perm[i] = j;
            detail::increment_tuple(tuple, m);
        }
    };

    if (workers <= 1 || total < 2) {
        fill_range(0, total);
    } else {
        const std::uint64_t k = static_cast<std::uint64_t>(workers);
        const std::uint64_t chunk = (total + k - 1) / k;
        std::vector<std::thread> threads;
        for (std::uint64_t w = 0; w < k; ++w) {
            const std::uint64_t begin = w * chunk;
            if (begin >= total)
                break;
            const std::uint64_t end = std::min(total, begin + chunk);
            threads.emplace_back(fill_range, begin, end);
        }
        for (auto& t : threads)
            t.join();
    }
    return CountingMatrix(m, n, std::move(perm));
}

/// Composition: counting_matrix(compose(a,b)) = matrix_multiply(M_a, M_b).
inline CountingMatrix matrix_multiply(const CountingMatrix& a, const CountingMatrix& b) {
    if (a.rack_order() != b.rack_order() || a.strands() != b.strands())
        throw DimensionMismatch("counting matrices have different shapes");
    std::vector<std::uint64_t> perm(a.size());
    for (std::uint64_t i = 0; i < a.size(); ++i)
        perm[i] = b.perm()[a.perm()[i]];
    return CountingMatrix(a.rack_order(), a.strands(), std::move(perm));
}

/// Number of fixed tuples = number of 1s on the diagonal.
inline std::uint64_t trace(const CountingMatrix& mat) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < mat.size(); ++i)
        if (mat.perm()[i] == i)
            ++count;
    return count;
}

/// Counts tuples fixed by the word directly, without materializing the
/// matrix; equals trace(counting_matrix(rack, word)).
inline std::uint64_t closure_colorings(const FiniteRack& rack, const BraidWord& word,
                                       std::uint64_t cap = kDefaultStreamCap,
                                       int workers = 1) {
    const int m = rack.order();
    const int n = word.strands();
    const std::uint64_t total = detail::checked_tuple_count(m, n, cap);

    auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<int> tuple(n), scratch(n);
        detail::decode_tuple(begin, m, tuple);
        std::uint64_t fixed = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            scratch = tuple;
            detail::apply_word_inplace(rack, scratch, word);
            if (scratch == tuple)
                ++fixed;
            detail::increment_tuple(tuple, m);
        }
        return fixed;
    };

    if (workers <= 1 || total < 2)
        return count_range(0, total);
    const std::uint64_t k = static_cast<std::uint64_t>(workers);
    const std::uint64_t chunk = (total + k - 1) / k;
    std::vector<std::uint64_t> partial(static_cast<size_t>(k), 0);
    std::vector<std::thread> threads;
    for (std::uint64_t w = 0; w < k; ++w) {
        const std::uint64_t begin = w * chunk;
        if (begin >= total)
            break;
        const std::uint64_t end = std::min(total, begin + chunk);
        threads.emplace_back(
            [&, w, begin, end]() { partial[static_cast<size_t>(w)] = count_range(begin, end); });
    }
    for (auto& t : threads)
        t.join();
    std::uint64_t sum = 0;
    for (std::uint64_t p : partial)
        sum += p;
    return sum;
}

/// "# i = (c1,...,cn)" legend lines mapping tuple indices to tuples.
inline std::string matrix_legend(const CountingMatrix& mat) {
    std::ostringstream os;
    std::vector<int> tuple(mat.strands(), 0);
    for (std::uint64_t i = 0; i < mat.size(); ++i) {
        os << "# " << i << " = (";
        for (size_t k = 0; k < tuple.size(); ++k) {
            if (k)
                os << ',';
            os << tuple[k];
        }
        os << ")\n";
        detail::increment_tuple(tuple, mat.rack_order());
    }
    return os.str();
}

inline std::string matrix_to_perm_string(const CountingMatrix& mat) {
    std::ostringstream os;
    for (std::uint64_t i = 0; i < mat.size(); ++i) {
        if (i)
            os << ' ';
        os << mat.perm()[i];
    }
    os << '\n';
    return os.str();
}

inline std::string matrix_to_dense_string(const CountingMatrix& mat) {
    std::ostringstream os;
    for (std::uint64_t i = 0; i < mat.size(); ++i) {
        for (std::uint64_t j = 0; j < mat.size(); ++j) {
            if (j)
                os << ' ';
            os << (mat.perm()[i] == j ? '1' : '0');
        }
        os << '\n';
    }
    return os.str();
}

inline std::string matrix_to_coo_string(const CountingMatrix& mat) {
    std::ostringstream os;
    for (std::uint64_t i = 0; i < mat.size(); ++i)
        os << i << ' ' << mat.perm()[i] << '\n';
    return os.str();
}

}  // namespace braidrack
