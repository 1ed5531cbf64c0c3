#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "braidrack/errors.hpp"
#include "braidrack/rack.hpp"

namespace braidrack {

/// A rack homomorphism: map[x |> y] = map[x] |>' map[y] for all x, y.
struct RackHom {
    FiniteRack source;
    FiniteRack target;
    std::vector<int> map;

    bool is_valid() const {
        const int m = source.order();
        if (static_cast<int>(map.size()) != m)
            return false;
        for (int v : map)
            if (v < 0 || v >= target.order())
                return false;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                if (map[source.op(x, y)] != target.op(map[x], map[y]))
                    return false;
        return true;
    }

    bool is_bijective() const {
        if (source.order() != target.order())
            return false;
        std::vector<char> seen(map.size());
        for (int v : map) {
            if (seen[v])
                return false;
            seen[v] = 1;
        }
        return true;
    }
};

namespace detail {

// Sizes of the orbits of each element under all the column bijections and
// their inverses.  Orbit sizes are isomorphism invariants.
inline std::vector<int> orbit_sizes(const FiniteRack& rack) {
    const int m = rack.order();
    std::vector<int> component(m, -1);
    int next_component = 0;
    for (int s = 0; s < m; ++s) {
        if (component[s] >= 0)
            continue;
        std::vector<int> queue{s};
        component[s] = next_component;
        while (!queue.empty()) {
            const int x = queue.back();
            queue.pop_back();
            for (int y = 0; y < m; ++y) {
                for (int nb : {rack.op(x, y), rack.inv_op(x, y)}) {
                    if (component[nb] < 0) {
                        component[nb] = next_component;
                        queue.push_back(nb);
                    }
                }
            }
        }
        ++next_component;
    }
    std::vector<int> count(next_component, 0);
    for (int c : component)
        ++count[c];
    std::vector<int> sizes(m);
    for (int x = 0; x < m; ++x)
        sizes[x] = count[component[x]];
    return sizes;
}

// Backtracking search for maps source -> target satisfying the homomorphism
// equation, with constraint propagation: whenever x and y both have images,
// the images of x |> y and x |>^-1 y are forced.
class HomSearcher {
public:
    HomSearcher(const FiniteRack& src, const FiniteRack& tgt, bool bijective,
                bool first_only)
        : src_(src), tgt_(tgt), bijective_(bijective), first_only_(first_only),
          assign_(src.order(), -1), used_(tgt.order(), 0) {}

    // partial: image per source element, -1 for unassigned.
    std::vector<std::vector<int>> run(const std::vector<int>& partial,
                                      const std::vector<int>& order) {
        std::vector<int> trail;
        for (int x = 0; x < src_.order(); ++x) {
            const int v = x < static_cast<int>(partial.size()) ? partial[x] : -1;
            if (v < 0)
                continue;
            if (!set_value(x, v, trail))
                return {};
        }
        if (!propagate(trail))
            return {};
        order_ = order;
        search(0);
        std::sort(results_.begin(), results_.end());
        return std::move(results_);
    }

private:
    bool set_value(int x, int v, std::vector<int>& trail) {
        if (assign_[x] == v)
            return true;
        if (assign_[x] != -1)
            return false;
        if (bijective_) {
            if (used_[v])
                return false;
            used_[v] = 1;
        }
        assign_[x] = v;
        trail.push_back(x);
        pending_.push_back(x);
        return true;
    }

    // Closes the assignment under the forced consequences of the hom
    // equation; returns false on contradiction.
    bool propagate(std::vector<int>& trail) {
        while (!pending_.empty()) {
            const int u = pending_.back();
            pending_.pop_back();
            for (int v = 0; v < src_.order(); ++v) {
                if (assign_[v] < 0)
                    continue;
                for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
                    const int fwd = src_.op(x, y);
                    const int fwd_img = tgt_.op(assign_[x], assign_[y]);
                    if (!set_value(fwd, fwd_img, trail))
                        return false;
                    const int bwd = src_.inv_op(x, y);
                    const int bwd_img = tgt_.inv_op(assign_[x], assign_[y]);
                    if (!set_value(bwd, bwd_img, trail))
                        return false;
                }
            }
        }
        return true;
    }

    void undo(const std::vector<int>& trail) {
        for (int x : trail) {
            if (bijective_)
                used_[assign_[x]] = 0;
            assign_[x] = -1;
        }
        pending_.clear();
    }

    void search(size_t depth) {
        if (first_only_ && !results_.empty())
            return;
        while (depth < order_.size() && assign_[order_[depth]] != -1)
            ++depth;
        if (depth == order_.size()) {
            results_.push_back(assign_);
            return;
        }
        const int x = order_[depth];
        for (int v = 0; v < tgt_.order(); ++v) {
            if (bijective_ && used_[v])
                continue;
            std::vector<int> trail;
            if (set_value(x, v, trail) && propagate(trail))
                search(depth + 1);
            else
                pending_.clear();
            undo(trail);
            if (first_only_ && !results_.empty())
                return;
        }
    }

    const FiniteRack& src_;
    const FiniteRack& tgt_;
    bool bijective_;
    bool first_only_;
    std::vector<int> assign_;
    std::vector<char> used_;
    std::vector<int> pending_;
    std::vector<int> order_;
    std::vector<std::vector<int>> results_;
};

inline std::vector<int> natural_order(int m) {
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i)
        order[i] = i;
    return order;
}

}  // namespace detail

/// All homomorphisms source -> target extending `partial` (image per source
/// element, -1 or missing = unassigned), sorted by map vector.
inline std::vector<RackHom> hom_search(const FiniteRack& source, const FiniteRack& target,
                                       const std::vector<int>& partial = {}) {
    if (static_cast<int>(partial.size()) > source.order())
        throw IndexOutOfRange(static_cast<int>(partial.size()),
                              "partial assignment longer than source order");
    for (int v : partial)
        if (v < -1 || v >= target.order())
            throw IndexOutOfRange(v, "partial assignment value out of range");
    detail::HomSearcher searcher(source, target, /*bijective=*/false, /*first_only=*/false);
    const auto maps = searcher.run(partial, detail::natural_order(source.order()));
    std::vector<RackHom> out;
    out.reserve(maps.size());
    for (auto& map : maps)
        out.push_back(RackHom{source, target, map});
    return out;
}

inline constexpr int kDefaultIsoCap = 8;

/// A bijective homomorphism a -> b if one exists.  Orders above the cap are
/// refused rather than searched.
inline std::optional<RackHom> is_isomorphic(const FiniteRack& a, const FiniteRack& b,
                                            int size_cap = kDefaultIsoCap) {
    if (a.order() > size_cap || b.order() > size_cap)
        throw SizeCapExceeded("isomorphism search capped at order " +
                              std::to_string(size_cap));
    if (a.order() != b.order() || a.is_quandle() != b.is_quandle())
        return std::nullopt;
    if (a == b) {
        return RackHom{a, b, detail::natural_order(a.order())};
    }
    auto sizes_a = detail::orbit_sizes(a);
    auto sizes_b = detail::orbit_sizes(b);
    {
        auto sa = sizes_a, sb = sizes_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return std::nullopt;
    }
    std::vector<int> order = detail::natural_order(a.order());
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return sizes_a[x] > sizes_a[y]; });
    detail::HomSearcher searcher(a, b, /*bijective=*/true, /*first_only=*/true);
    const auto maps = searcher.run({}, order);
    if (maps.empty())
        return std::nullopt;
    return RackHom{a, b, maps.front()};
}

}  // namespace braidrack
