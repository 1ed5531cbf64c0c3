#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidrack/braid.hpp"
#include "braidrack/errors.hpp"
#include "braidrack/rack.hpp"

namespace braidrack {

/// A freely reduced word in the free group on generators 1, 2, ...; letters
/// are signed generator indices and no adjacent pair cancels.
class FreeGroupWord {
public:
    FreeGroupWord() = default;

    static FreeGroupWord from_letters(const std::vector<int>& letters) {
        FreeGroupWord w;
        for (int g : letters)
            w.push(g);
        return w;
    }

    /// Appends one letter, cancelling against the current tail.
    void push(int letter) {
        if (letter == 0)
            throw InvalidParameters("free group letter 0");
        if (!letters_.empty() && letters_.back() == -letter)
            letters_.pop_back();
        else
            letters_.push_back(letter);
    }

    void append(const FreeGroupWord& other) {
        for (int g : other.letters_)
            push(g);
    }

    void append_inverse(const FreeGroupWord& other) {
        for (auto it = other.letters_.rbegin(); it != other.letters_.rend(); ++it)
            push(-*it);
    }

    FreeGroupWord inversed() const {
        FreeGroupWord w;
        w.letters_.assign(letters_.rbegin(), letters_.rend());
        for (int& g : w.letters_)
            g = -g;
        return w;
    }

    const std::vector<int>& letters() const noexcept { return letters_; }
    size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    bool operator==(const FreeGroupWord&) const = default;

private:
    std::vector<int> letters_;
};

/// Normal form for an element of the free rack on generators 1..n: the
/// generator `base` acted on by the reduced conjugator word.  Two elements
/// are equal exactly when both components are.
struct FreeRackElement {
    int base = 1;
    FreeGroupWord conjugator;

    static FreeRackElement generator(int i) {
        if (i < 1)
            throw InvalidParameters("generator index must be >= 1");
        return FreeRackElement{i, {}};
    }

    bool operator==(const FreeRackElement&) const = default;
};

/// The free rack operation in normal form: for v = (b, s),
///   u |> v    = (a, w s^-1 b s)      (sign = +1)
///   u |>^-1 v = (a, w s^-1 b^-1 s)   (sign = -1)
/// with the conjugator reduced as it is built.
inline FreeRackElement free_op(const FreeRackElement& u, const FreeRackElement& v, int sign) {
    if (sign != 1 && sign != -1)
        throw InvalidParameters("free_op sign must be +1 or -1");
    FreeRackElement out{u.base, u.conjugator};
    out.conjugator.append_inverse(v.conjugator);
    out.conjugator.push(sign * v.base);
    out.conjugator.append(v.conjugator);
    return out;
}

/// The fundamental pointed rack of a braid word: the top labels are the free
/// generators and the bottom labels are their images under the word, in
/// normal form.
struct FundamentalPointedRack {
    int strands = 1;
    std::vector<FreeRackElement> top;
    std::vector<FreeRackElement> bottom;
};

inline FundamentalPointedRack fundamental_pointed_rack(const BraidWord& word) {
    FundamentalPointedRack out;
    out.strands = word.strands();
    for (int i = 1; i <= word.strands(); ++i)
        out.top.push_back(FreeRackElement::generator(i));
    out.bottom = out.top;
    for (int e : word.letters()) {
        const int i = (e < 0 ? -e : e) - 1;
        FreeRackElement a = out.bottom[i];
        FreeRackElement b = out.bottom[i + 1];
        if (e < 0) {
            out.bottom[i] = b;
            out.bottom[i + 1] = free_op(a, b, +1);
        } else {
            out.bottom[i] = free_op(b, a, -1);
            out.bottom[i + 1] = a;
        }
    }
    return out;
}

/// Evaluates a free rack element in a finite rack under an assignment of a
/// color to each generator: start at the color of the base generator and fold
/// the conjugator letters left to right, each acting by the color assigned to
/// its generator (|> for positive letters, |>^-1 for negative ones).
inline int evaluate(const FreeRackElement& el, const FiniteRack& rack,
                    const std::vector<int>& assignment) {
    const auto color_of = [&](int gen) {
        if (gen < 1 || gen > static_cast<int>(assignment.size()))
            throw AssignmentLengthMismatch("no color assigned to generator " +
                                           std::to_string(gen));
        const int c = assignment[gen - 1];
        if (c < 0 || c >= rack.order())
            throw IndexOutOfRange(c, "assigned color out of range");
        return c;
    };
    int value = color_of(el.base);
    for (int g : el.conjugator.letters()) {
        if (g > 0)
            value = rack.op(value, color_of(g));
        else
            value = rack.inv_op(value, color_of(-g));
    }
    return value;
}

/// True when the normal-form bottom tuples of the two words coincide.  Equal
/// tuples imply identical coloring action on every rack; unequal tuples do
/// not by themselves distinguish the braids, so this test is one-sided.
inline bool same_bottom_presentation(const BraidWord& a, const BraidWord& b) {
    if (a.strands() != b.strands())
        throw StrandMismatch("words on " + std::to_string(a.strands()) + " and " +
                             std::to_string(b.strands()) + " strands");
    return fundamental_pointed_rack(a).bottom == fundamental_pointed_rack(b).bottom;
}

/// Prints a normal form as e.g. "x1 ^ [x2, x1^-1]"; a bare generator prints
/// as "x1".  The prefix is configurable ("x" or "t").
inline std::string to_string(const FreeRackElement& el, std::string_view prefix = "x") {
    std::ostringstream os;
    os << prefix << el.base;
    if (el.conjugator.empty())
        return os.str();
    os << " ^ [";
    bool first = true;
    for (int g : el.conjugator.letters()) {
        if (!first)
            os << ", ";
        first = false;
        if (g > 0)
            os << prefix << g;
        else
            os << prefix << -g << "^-1";
    }
    os << ']';
    return os.str();
}

}  // namespace braidrack
