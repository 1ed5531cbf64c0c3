#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "braidrack/braid.hpp"
#include "braidrack/color.hpp"
#include "braidrack/errors.hpp"
#include "braidrack/hom.hpp"
#include "braidrack/rack.hpp"

namespace braidrack {

/// A finite rack with an ordered tuple of basepoints.  For braid invariants
/// the tuple has length 2n: the n top basepoints followed by the n bottom
/// ones.
struct PointedRack {
    FiniteRack rack;
    std::vector<int> basepoints;

    PointedRack(FiniteRack r, std::vector<int> bps)
        : rack(std::move(r)), basepoints(std::move(bps)) {
        for (int b : basepoints)
            if (b < 0 || b >= rack.order())
                throw IndexOutOfRange(b, "basepoint out of range for rack order " +
                                             std::to_string(rack.order()));
    }
};

/// The pointed rack counting invariant of a braid word: 1 if propagating the
/// top basepoints through the word lands exactly on the bottom basepoints,
/// else 0.  The only candidate homomorphism sends the i-th top generator to
/// the i-th basepoint, so no enumeration is needed.
inline int pointed_counting_invariant(const PointedRack& px, const BraidWord& word) {
    const int n = word.strands();
    if (static_cast<int>(px.basepoints.size()) != 2 * n)
        throw BasepointCountMismatch("need exactly " + std::to_string(2 * n) +
                                     " basepoints for a " + std::to_string(n) +
                                     "-strand word, got " +
                                     std::to_string(px.basepoints.size()));
    std::vector<int> colors(px.basepoints.begin(), px.basepoints.begin() + n);
    detail::apply_word_inplace(px.rack, colors, word);
    for (int i = 0; i < n; ++i)
        if (colors[i] != px.basepoints[n + i])
            return 0;
    return 1;
}

namespace detail {

// Forced images from matching basepoints; nullopt when two equal source
// basepoints demand different targets (then no pointed hom exists).
inline std::optional<std::vector<int>> basepoint_partial(const PointedRack& source,
                                                         const PointedRack& target) {
    std::vector<int> partial(source.rack.order(), -1);
    for (size_t i = 0; i < source.basepoints.size(); ++i) {
        const int p = source.basepoints[i];
        const int v = target.basepoints[i];
        if (partial[p] != -1 && partial[p] != v)
            return std::nullopt;
        partial[p] = v;
    }
    return partial;
}

}  // namespace detail

/// All rack homomorphisms sending each source basepoint to the matching
/// target basepoint.
inline std::vector<RackHom> pointed_hom_search(const PointedRack& source,
                                               const PointedRack& target) {
    if (source.basepoints.size() != target.basepoints.size())
        throw BasepointCountMismatch("pointed racks have " +
                                     std::to_string(source.basepoints.size()) + " and " +
                                     std::to_string(target.basepoints.size()) +
                                     " basepoints");
    const auto partial = detail::basepoint_partial(source, target);
    if (!partial)
        return {};
    return hom_search(source.rack, target.rack, *partial);
}

/// A basepoint-preserving bijective homomorphism if one exists.
inline std::optional<RackHom> pointed_isomorphic(const PointedRack& a, const PointedRack& b,
                                                 int size_cap = kDefaultIsoCap) {
    if (a.basepoints.size() != b.basepoints.size())
        throw BasepointCountMismatch("pointed racks have " +
                                     std::to_string(a.basepoints.size()) + " and " +
                                     std::to_string(b.basepoints.size()) + " basepoints");
    if (a.rack.order() > size_cap || b.rack.order() > size_cap)
        throw SizeCapExceeded("isomorphism search capped at order " +
                              std::to_string(size_cap));
    if (a.rack.order() != b.rack.order() || a.rack.is_quandle() != b.rack.is_quandle())
        return std::nullopt;
    const auto partial = detail::basepoint_partial(a, b);
    if (!partial)
        return std::nullopt;
    detail::HomSearcher searcher(a.rack, b.rack, /*bijective=*/true, /*first_only=*/true);
    const auto maps = searcher.run(*partial, detail::natural_order(a.rack.order()));
    if (maps.empty())
        return std::nullopt;
    return RackHom{a.rack, b.rack, maps.front()};
}

}  // namespace braidrack
