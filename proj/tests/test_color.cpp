#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "braidrack/color.hpp"
#include "helpers.hpp"

using namespace braidrack;
using test_helpers::random_word;
using test_helpers::small_rack_pool;

namespace {

const std::vector<std::uint64_t> kTwoNegativePerm{0, 6, 3, 7, 4, 1, 5, 2, 8};

std::vector<std::uint64_t> identity_perm(std::uint64_t n) {
    std::vector<std::uint64_t> p(n);
    for (std::uint64_t i = 0; i < n; ++i)
        p[i] = i;
    return p;
}

// (rack, word) pairs with tuple space at most 3^6.
struct RandomCase {
    FiniteRack rack;
    BraidWord word;
};

RandomCase random_case(std::mt19937& rng, int max_len = 12, int min_len = 0) {
    static const std::vector<FiniteRack> pool = small_rack_pool();
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    const FiniteRack& rack = pool[pick(rng)];
    int strands = 2 + static_cast<int>(rng() % 3);
    while (std::pow(static_cast<double>(rack.order()), strands) > 729.0)
        --strands;
    return {rack, random_word(rng, strands, max_len, min_len)};
}

}  // namespace

// ==================== the crossing action ====================

TEST_CASE("negative crossing acts as (a,b) -> (b, a |> b)") {
    const FiniteRack r3 = dihedral_quandle(3);
    CHECK(apply_letter(r3, ColorVector(3, {0, 1}), -1) == ColorVector(3, {1, 2}));
}

TEST_CASE("a crossing and its inverse cancel on every color pair") {
    for (const FiniteRack& rack : small_rack_pool()) {
        for (int a = 0; a < rack.order(); ++a)
            for (int b = 0; b < rack.order(); ++b) {
                const ColorVector start(rack.order(), {a, b});
                CHECK(apply_letter(rack, apply_letter(rack, start, 1), -1) == start);
                CHECK(apply_letter(rack, apply_letter(rack, start, -1), 1) == start);
            }
    }
}

TEST_CASE("apply_braid propagates top colors to the bottom") {
    const FiniteRack r3 = dihedral_quandle(3);
    CHECK(apply_braid(r3, ColorVector(3, {0, 1}), parse_braid("-1 -1", 2)) ==
          ColorVector(3, {2, 0}));
    CHECK(apply_braid(r3, ColorVector(3, {0, 1}), parse_braid("-1 -1 -1", 2)) ==
          ColorVector(3, {0, 1}));
    CHECK(apply_braid(r3, ColorVector(3, {2, 0, 1}), BraidWord(3)) ==
          ColorVector(3, {2, 0, 1}));
    CHECK_THROWS_AS(apply_braid(r3, ColorVector(3, {0, 1}), BraidWord(3)), StrandMismatch);
    CHECK_THROWS_AS(apply_letter(r3, ColorVector(3, {0, 1}), 2), IndexOutOfRange);
}

// ==================== tuple indexing ====================

TEST_CASE("tuple_index is lexicographic with the left strand most significant") {
    CHECK(tuple_index(ColorVector(3, {0, 1})) == 1);
    CHECK(tuple_index(ColorVector(3, {2, 0})) == 6);
    for (std::uint64_t i = 0; i < 9; ++i)
        CHECK(tuple_index(index_tuple(i, 3, 2)) == i);
    CHECK_THROWS_AS(index_tuple(9, 3, 2), IndexOutOfRange);
}

// ==================== counting matrices ====================

TEST_CASE("two negative crossings over R_3 give the reference permutation") {
    const CountingMatrix mat = counting_matrix(dihedral_quandle(3), parse_braid("-1 -1", 2));
    CHECK(mat.perm() == kTwoNegativePerm);
    CHECK(trace(mat) == 3);
    // fixed points are exactly the constant tuples
    for (int c = 0; c < 3; ++c) {
        const std::uint64_t i = tuple_index(ColorVector(3, {c, c}));
        CHECK(mat.perm()[i] == i);
    }
}

TEST_CASE("three equal crossings over R_3 give the identity matrix") {
    CHECK(counting_matrix(dihedral_quandle(3), parse_braid("-1 -1 -1", 2)).perm() ==
          identity_perm(9));
    CHECK(counting_matrix(dihedral_quandle(3), parse_braid("1 1 1", 2)).perm() ==
          identity_perm(9));
}

TEST_CASE("size cap is enforced") {
    CHECK_THROWS_AS(counting_matrix(dihedral_quandle(3), BraidWord(2), 8), SizeCapExceeded);
    CHECK_THROWS_AS(closure_colorings(dihedral_quandle(10), BraidWord(8)), SizeCapExceeded);
    CHECK(counting_matrix(dihedral_quandle(3), BraidWord(2), 9).size() == 9);
}

TEST_CASE("matrix export formats") {
    const CountingMatrix mat = counting_matrix(dihedral_quandle(3), parse_braid("-1 -1", 2));
    CHECK(matrix_to_perm_string(mat) == "0 6 3 7 4 1 5 2 8\n");
    const CountingMatrix id3 = counting_matrix(dihedral_quandle(3), parse_braid("1 1 1", 2));
    const std::string dense = matrix_to_dense_string(id3);
    CHECK(dense.substr(0, 18) == "1 0 0 0 0 0 0 0 0\n");
    CHECK(matrix_to_coo_string(mat).substr(0, 8) == "0 0\n1 6\n");
    CHECK(matrix_legend(mat).substr(0, 24) == "# 0 = (0,0)\n# 1 = (0,1)\n");
}

TEST_CASE("matrix multiplication matches word composition") {
    const FiniteRack r3 = dihedral_quandle(3);
    const BraidWord b1 = parse_braid("-1 -1", 2);
    const BraidWord s1i = parse_braid("-1", 2);
    CHECK(matrix_multiply(counting_matrix(r3, b1), counting_matrix(r3, s1i)).perm() ==
          identity_perm(9));
    CHECK(matrix_multiply(counting_matrix(r3, b1), counting_matrix(r3, inverse(b1))).perm() ==
          identity_perm(9));
    CHECK(matrix_multiply(counting_matrix(r3, BraidWord(2)), counting_matrix(r3, b1)) ==
          counting_matrix(r3, b1));
    CHECK_THROWS_AS(
        matrix_multiply(counting_matrix(r3, b1), counting_matrix(dihedral_quandle(4), b1)),
        DimensionMismatch);
}

TEST_CASE("reference traces over R_3") {
    const FiniteRack r3 = dihedral_quandle(3);
    CHECK(trace(counting_matrix(r3, parse_braid("1 1 1", 2))) == 9);
    CHECK(trace(counting_matrix(r3, parse_braid("1 1 1 1 1", 2))) == 3);
    CHECK(trace(counting_matrix(r3, parse_braid("2 -1 2 -1", 3))) == 3);
}

// ==================== closure colorings ====================

TEST_CASE("closure coloring counts") {
    const FiniteRack r3 = dihedral_quandle(3);
    CHECK(closure_colorings(r3, parse_braid("1 1 1", 2)) == 9);
    CHECK(closure_colorings(r3, parse_braid("2 2 2 1 -2 1", 3)) == 3);
    for (const FiniteRack& rack : small_rack_pool()) {
        const int n = 2;
        CHECK(closure_colorings(rack, BraidWord(n)) ==
              static_cast<std::uint64_t>(rack.order()) * rack.order());
    }
}

TEST_CASE("closure_colorings equals the matrix trace (200 random cases)") {
    std::mt19937 rng(160914);
    for (int k = 0; k < 200; ++k) {
        const auto [rack, word] = random_case(rng);
        CHECK(closure_colorings(rack, word) == trace(counting_matrix(rack, word)));
    }
}

// ==================== randomized properties ====================

TEST_CASE("counting matrices are permutations; every top tuple extends uniquely") {
    std::mt19937 rng(271828);
    for (int k = 0; k < 200; ++k) {
        const auto [rack, word] = random_case(rng);
        const CountingMatrix mat = counting_matrix(rack, word);
        CHECK(mat.is_permutation());
        std::uint64_t expected = 1;
        for (int s = 0; s < word.strands(); ++s)
            expected *= static_cast<std::uint64_t>(rack.order());
        CHECK(mat.size() == expected);
    }
}

TEST_CASE("the matrix is invariant under free reduction and relation rewrites") {
    std::mt19937 rng(602214);
    int rewrites = 0;
    for (int k = 0; k < 800 && rewrites < 200; ++k) {
        const auto [rack, word] = random_case(rng, 12, 5);
        const CountingMatrix mat = counting_matrix(rack, word);
        CHECK(counting_matrix(rack, free_reduce(word)) == mat);
        if (const auto moved = test_helpers::random_relation_rewrite(rng, word)) {
            CHECK(counting_matrix(rack, *moved) == mat);
            ++rewrites;
        }
    }
    CHECK(rewrites >= 200);
}

TEST_CASE("the matrix is multiplicative over composition") {
    std::mt19937 rng(137035);
    for (int k = 0; k < 200; ++k) {
        const auto [rack, a] = random_case(rng);
        const BraidWord b = random_word(rng, a.strands(), 12);
        CHECK(counting_matrix(rack, compose(a, b)) ==
              matrix_multiply(counting_matrix(rack, a), counting_matrix(rack, b)));
    }
}

TEST_CASE("traces are conjugation invariant") {
    std::mt19937 rng(662607);
    for (int k = 0; k < 200; ++k) {
        const auto [rack, a] = random_case(rng);
        const BraidWord b = random_word(rng, a.strands(), 12);
        CHECK(trace(counting_matrix(rack, compose(a, b))) ==
              trace(counting_matrix(rack, compose(b, a))));
    }
}

TEST_CASE("quandle traces are stable under Markov stabilization") {
    std::mt19937 rng(885577);
    int cases = 0;
    for (int k = 0; k < 400 && cases < 200; ++k) {
        const auto [rack, word] = random_case(rng, 8);
        if (!rack.is_quandle())
            continue;
        const int n = word.strands();
        if (std::pow(static_cast<double>(rack.order()), n + 1) > 2187.0)
            continue;
        ++cases;
        const BraidWord widened(n + 1, word.letters());
        const int sign = (rng() % 2) ? 1 : -1;
        const BraidWord stabilized = compose(widened, BraidWord(n + 1, {sign * n}));
        CHECK(closure_colorings(rack, stabilized) == closure_colorings(rack, word));
    }
    CHECK(cases >= 200);
}

TEST_CASE("exhaustive invariance sweep over all 3-strand words up to length 4") {
    const FiniteRack r3 = dihedral_quandle(3);
    const int alphabet[4] = {1, -1, 2, -2};
    std::vector<std::vector<int>> words{{}};
    for (int len = 1; len <= 4; ++len) {
        const size_t prev_start = words.size() - static_cast<size_t>(std::pow(4, len - 1));
        const size_t prev_end = words.size();
        for (size_t w = prev_start; w < prev_end; ++w)
            for (int letter : alphabet) {
                auto next = words[w];
                next.push_back(letter);
                words.push_back(std::move(next));
            }
    }
    for (const auto& letters : words) {
        const BraidWord word(3, letters);
        const CountingMatrix mat = counting_matrix(r3, word);
        CHECK(mat.is_permutation());
        CHECK(closure_colorings(r3, word) == trace(mat));
        CHECK(counting_matrix(r3, free_reduce(word)) == mat);
        for (size_t p = 0; p + 2 <= letters.size(); ++p) {
            try {
                const BraidWord moved = apply_relation(word, p, RelationKind::far_commutation);
                CHECK(counting_matrix(r3, moved) == mat);
            } catch (const RelationNotApplicable&) {
            }
        }
        for (size_t p = 0; p + 3 <= letters.size(); ++p) {
            try {
                const BraidWord moved = apply_relation(word, p, RelationKind::braid_relation);
                CHECK(counting_matrix(r3, moved) == mat);
            } catch (const RelationNotApplicable&) {
            }
        }
    }
}

TEST_CASE("worker count does not change results") {
    const FiniteRack r5 = dihedral_quandle(5);
    const BraidWord word = parse_braid("1 -2 1 1 -2", 3);
    const CountingMatrix sequential = counting_matrix(r5, word);
    for (int workers : {2, 3, 7}) {
        CHECK(counting_matrix(r5, word, kDefaultMatrixCap, workers) == sequential);
        CHECK(closure_colorings(r5, word, kDefaultStreamCap, workers) == trace(sequential));
    }
}
