#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "braidrack/braid.hpp"
#include "braidrack/hom.hpp"
#include "braidrack/rack.hpp"

namespace test_helpers {

using braidrack::BraidWord;
using braidrack::FiniteRack;

inline BraidWord random_word(std::mt19937& rng, int strands, int max_len, int min_len = 0) {
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::vector<int> letters;
    if (strands > 1) {
        std::uniform_int_distribution<int> index_dist(1, strands - 1);
        std::uniform_int_distribution<int> sign_dist(0, 1);
        const int len = len_dist(rng);
        for (int k = 0; k < len; ++k)
            letters.push_back(index_dist(rng) * (sign_dist(rng) ? 1 : -1));
    }
    return BraidWord(strands, std::move(letters));
}

// A pool of small racks drawn from the builtin families.
inline std::vector<FiniteRack> small_rack_pool() {
    std::vector<FiniteRack> pool;
    for (int n = 2; n <= 6; ++n)
        pool.push_back(braidrack::dihedral_quandle(n));
    for (int n = 2; n <= 4; ++n)
        pool.push_back(braidrack::trivial_quandle(n));
    for (int n = 2; n <= 5; ++n)
        pool.push_back(braidrack::core_quandle(braidrack::cyclic_group_table(n)));
    // non-quandle (t,s)-racks: t+s != 1 mod m
    pool.push_back(braidrack::ts_rack(3, 2, 0));
    pool.push_back(braidrack::ts_rack(4, 1, 2));
    pool.push_back(braidrack::ts_rack(5, 2, 0));
    return pool;
}

// Every valid (m,t,s) triple with m <= max_m, one rack per triple.
inline std::vector<FiniteRack> all_ts_racks(int max_m) {
    std::vector<FiniteRack> out;
    for (int m = 1; m <= max_m; ++m)
        for (int t = 0; t < m; ++t)
            for (int s = 0; s < m; ++s) {
                try {
                    out.push_back(braidrack::ts_rack(m, t, s));
                } catch (const braidrack::InvalidParameters&) {
                }
            }
    return out;
}

// Independent oracle: enumerate every map source -> target and keep those
// satisfying the homomorphism equation directly.
inline std::vector<std::vector<int>> brute_force_homs(
    const FiniteRack& source, const FiniteRack& target,
    const std::vector<int>& partial = {}) {
    const int ms = source.order();
    const int mt = target.order();
    std::vector<std::vector<int>> found;
    std::vector<int> map(ms, 0);
    while (true) {
        bool respects_partial = true;
        for (size_t x = 0; x < partial.size(); ++x)
            if (partial[x] >= 0 && map[x] != partial[x]) {
                respects_partial = false;
                break;
            }
        if (respects_partial) {
            bool is_hom = true;
            for (int x = 0; x < ms && is_hom; ++x)
                for (int y = 0; y < ms; ++y)
                    if (map[source.op(x, y)] != target.op(map[x], map[y])) {
                        is_hom = false;
                        break;
                    }
            if (is_hom)
                found.push_back(map);
        }
        int pos = ms - 1;
        while (pos >= 0 && map[pos] == mt - 1)
            map[pos--] = 0;
        if (pos < 0)
            break;
        ++map[pos];
    }
    return found;
}

inline std::vector<std::vector<int>> maps_of(const std::vector<braidrack::RackHom>& homs) {
    std::vector<std::vector<int>> out;
    out.reserve(homs.size());
    for (const auto& h : homs)
        out.push_back(h.map);
    std::sort(out.begin(), out.end());
    return out;
}

// A random applicable relation rewrite of w, if any window admits one.
inline std::optional<BraidWord> random_relation_rewrite(std::mt19937& rng, const BraidWord& w) {
    struct Spot {
        size_t pos;
        braidrack::RelationKind kind;
    };
    std::vector<Spot> spots;
    for (size_t p = 0; p + 2 <= w.length(); ++p) {
        try {
            braidrack::apply_relation(w, p, braidrack::RelationKind::far_commutation);
            spots.push_back({p, braidrack::RelationKind::far_commutation});
        } catch (const braidrack::RelationNotApplicable&) {
        }
    }
    for (size_t p = 0; p + 3 <= w.length(); ++p) {
        try {
            braidrack::apply_relation(w, p, braidrack::RelationKind::braid_relation);
            spots.push_back({p, braidrack::RelationKind::braid_relation});
        } catch (const braidrack::RelationNotApplicable&) {
        }
    }
    if (spots.empty())
        return std::nullopt;
    std::uniform_int_distribution<size_t> pick(0, spots.size() - 1);
    const Spot s = spots[pick(rng)];
    return braidrack::apply_relation(w, s.pos, s.kind);
}

}  // namespace test_helpers
