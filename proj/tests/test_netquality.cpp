#include "oracles.hpp"

#include "nnld/discrepancy.hpp"
#include "nnld/netquality.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace nnld;

namespace {

DigitalNetSpec perm_spec(int b, const std::vector<Permutation>& perms) {
    DigitalNetSpec s{b, perms.front().size(), {}};
    for (const auto& p : perms)
        s.matrices.push_back(GeneratorMatrix::from_permutation(b, p));
    return s;
}

GeneratorMatrix random_matrix(std::mt19937_64& rng, int b, int m) {
    std::uniform_int_distribution<int> dig(0, b - 1);
    std::vector<int> e(static_cast<std::size_t>(m * m));
    for (auto& v : e)
        v = dig(rng);
    return {b, m, e};
}

// GF(2) rank by xor elimination on row bitmasks
int rank_gf2(std::vector<unsigned> rows) {
    int r = 0;
    for (int bit = 31; bit >= 0; --bit) {
        auto it = std::find_if(rows.begin() + r, rows.end(), [bit](unsigned v) { return (v >> bit) & 1U; });
        if (it == rows.end())
            continue;
        std::iter_swap(rows.begin() + r, it);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != r && ((rows[i] >> bit) & 1U))
                rows[i] ^= rows[static_cast<std::size_t>(r)];
        ++r;
    }
    return r;
}

std::int64_t diagonal_points(const PointSet& p) {
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < p.size(); ++i) {
        const auto x = p.point(i);
        c += std::all_of(x.begin(), x.end(), [&](std::int64_t v) { return v == x[0]; });
    }
    return c;
}

bool contains_points(const PointSet& big, const PointSet& small) {
    std::multiset<std::vector<std::int64_t>> pts;
    const auto b = big.rescaled(big.denominator() * small.denominator());
    const auto s = small.rescaled(big.denominator() * small.denominator());
    for (std::int64_t i = 0; i < b.size(); ++i)
        pts.insert({b.point(i).begin(), b.point(i).end()});
    for (std::int64_t i = 0; i < s.size(); ++i)
        if (!pts.count({s.point(i).begin(), s.point(i).end()}))
            return false;
    return true;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

} // namespace

TEST_SUITE("netquality") {

TEST_CASE("rank modulo a prime") {
    CHECK(rank_mod_prime({1, 2, 2, 4}, 2, 2, 5) == 1);
    CHECK(rank_mod_prime({1, 2, 2, 1}, 2, 2, 5) == 2);
    CHECK(rank_mod_prime({1, 2, 2, 1}, 2, 2, 3) == 1);
    CHECK(rank_mod_prime({1, 1, 0, 1, 0, 1}, 2, 3, 2) == 2);
    CHECK(rank_mod_prime({1, 1, 1, 1}, 2, 2, 2) == 1);
    CHECK(is_prime(7));
    CHECK(!is_prime(9));
    CHECK(!is_prime(1));
}

TEST_CASE("rho") {
    DigitalNetSpec ham{2, 4, {GeneratorMatrix::identity(2, 4), GeneratorMatrix::reversed_identity(2, 4)}};
    CHECK(rho(ham) == 4);
    const auto same = perm_spec(2, {Permutation::identity(5), Permutation::identity(5)});
    CHECK(rho(same) == 1);
    CHECK(rho(perm_spec(2, perm_ordering_d3(2))) == 4);
    // composite b: only one-hot generators
    CHECK(rho(perm_spec(4, perm_ordering_d3(1))) == 2);
    std::mt19937_64 rng(1);
    DigitalNetSpec general{6, 3, {random_matrix(rng, 6, 3), random_matrix(rng, 6, 3)}};
    general.matrices[0] = GeneratorMatrix(6, 3, {2, 1, 0, 0, 1, 0, 0, 0, 1});
    try {
        rho(general);
        FAIL("composite base accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported_arithmetic);
    }
}

TEST_CASE("net parameter by prefix buckets matches geometric counting") {
    CHECK(verify_net_parameter(hammersley(2, 4), 2, 4, 2, 0));
    CHECK(!verify_net_parameter(diagonal_lattice(16, 2), 2, 4, 2, 0));
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 40; ++rep) {
        const int b = rep % 2 ? 3 : 2;
        const int m = 1 + rep % (b == 2 ? 4 : 3);
        const int d = 1 + rep % 3;
        DigitalNetSpec s{b, m, {}};
        for (int j = 0; j < d; ++j)
            s.matrices.push_back(random_matrix(rng, b, m));
        const auto p = digital_net(s);
        CHECK(verify_net_parameter(p, b, m, d, m));
        for (int t = 0; t <= m; ++t)
            CHECK(verify_net_parameter(p, b, m, d, t) == oracle::net_property(p, b, m, t));
    }
    ElementaryInterval e{2, {1, 2}, {1, 3}};
    e.validate();
    const auto h = hammersley(2, 3);
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < h.size(); ++i)
        c += e.contains(h, i);
    CHECK(c == oracle::box_count(h, 2, {1, 2}, {1, 3}));
    CHECK_THROWS_AS((ElementaryInterval{2, {1}, {2}}.validate()), Error);
}

TEST_CASE("exact t") {
    for (int m = 1; m <= 6; ++m)
        CHECK(exact_t(hammersley(2, m), 2, m, 2) == 0);
    // duplicated coordinate: only the splits k = (1,0) and (0,1) survive, t = m - 1 = m - rho
    for (int m = 1; m <= 5; ++m)
        CHECK(exact_t(permutation_net(2, m, std::vector{Permutation::identity(m), Permutation::identity(m)}), 2, m, 2) ==
              m - 1);
    CHECK(exact_t(permutation_net(2, 3, perm_ordering_d3(1)), 2, 3, 3) == 1);
    CHECK(exact_t(permutation_net(2, 6, perm_ordering_d3(2)), 2, 6, 3) == 2);
    CHECK(exact_t(permutation_net(2, 4, perm_ordering_d4(1)), 2, 4, 4) == 2);

    // t = m - rho for digital nets over prime bases
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 60; ++rep) {
        const int b = rep % 3 == 2 ? 3 : 2;
        const int m = 1 + rep % (b == 2 ? 4 : 3);
        const int d = 2 + rep % 2;
        DigitalNetSpec s{b, m, {}};
        for (int j = 0; j < d; ++j)
            s.matrices.push_back(random_matrix(rng, b, m));
        CHECK(exact_t(digital_net(s), b, m, d) == m - rho(s));
        const auto q = quality_report(s, true);
        CHECK(q.t_verified == q.t_from_rho);
    }
}

TEST_CASE("permutation orderings") {
    const auto d3 = perm_ordering_d3(1);
    REQUIRE(d3.size() == 3);
    CHECK(d3[0].images() == std::vector<int>{1, 2, 3});
    CHECK(d3[1].images() == std::vector<int>{2, 3, 1});
    CHECK(d3[2].images() == std::vector<int>{3, 1, 2});
    for (int l = 1; l <= 3; ++l) {
        for (const auto& p : perm_ordering_d3(l)) {
            auto v = p.images();
            std::sort(v.begin(), v.end());
            for (int k = 0; k < 3 * l; ++k)
                CHECK(v[static_cast<std::size_t>(k)] == k + 1);
        }
        CHECK(rho(perm_spec(2, perm_ordering_d3(l))) == 2 * l);
    }
    for (int l = 1; l <= 3; ++l) {
        const auto d4 = perm_ordering_d4(l);
        REQUIRE(d4.size() == 4);
        for (const auto& p : d4)
            CHECK(p.size() == 4 * l);
        CHECK(rho(perm_spec(2, d4)) == 2 * l);
    }
    CHECK_THROWS_AS(perm_ordering_d3(0), Error);
    CHECK_THROWS_AS(perm_ordering_d4(0), Error);
}

TEST_CASE("permutation-net t lower bound") {
    CHECK(t_lower_bound_perm(3, 6) == 1);
    CHECK(t_lower_bound_perm(4, 8) == 3);
    for (int m = 1; m <= 12; ++m)
        CHECK(t_lower_bound_perm(2, m) <= 0);
    // every permutation net with b = 2, d = 3, m <= 4; pi_1 = identity loses nothing
    // because relabelling the index digits maps the net onto itself
    for (int m = 1; m <= 4; ++m) {
        std::vector<int> a(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            a[static_cast<std::size_t>(k)] = k + 1;
        std::vector<std::vector<int>> all;
        do
            all.push_back(a);
        while (std::next_permutation(a.begin(), a.end()));
        for (const auto& p2 : all)
            for (const auto& p3 : all) {
                const std::vector<Permutation> ps{Permutation::identity(m), Permutation(p2), Permutation(p3)};
                CHECK(exact_t(permutation_net(2, m, ps), 2, m, 3) >= t_lower_bound_perm(3, m));
            }
    }
}

TEST_CASE("quality report") {
    DigitalNetSpec ham{2, 4, {GeneratorMatrix::identity(2, 4), GeneratorMatrix::reversed_identity(2, 4)}};
    CHECK(format_quality(quality_report(ham, false)) == "rho=4 t=0 t_verified=na bound_ok=true");
    CHECK(format_quality(quality_report(perm_spec(2, perm_ordering_d3(2)), true)) ==
          "rho=4 t=2 t_verified=2 bound_ok=true");
}

TEST_CASE("generator search agrees with brute force") {
    CHECK(search_nnld_generators(1).matrices.size() == 1);
    for (int m = 2; m <= 3; ++m) {
        const auto res = search_nnld_generators(m);
        CHECK(res.prefilter_misses == 0);
        std::vector<GeneratorMatrix> want;
        for (unsigned code = 0; code < (1U << (m * m)); ++code) {
            std::vector<int> e(static_cast<std::size_t>(m * m));
            std::vector<unsigned> rows(static_cast<std::size_t>(m), 0);
            for (int k = 0; k < m * m; ++k) {
                const int bit = (code >> (m * m - 1 - k)) & 1U;
                e[static_cast<std::size_t>(k)] = bit;
                rows[static_cast<std::size_t>(k / m)] = rows[static_cast<std::size_t>(k / m)] << 1 | static_cast<unsigned>(bit);
            }
            if (rank_gf2(rows) < m)
                continue;
            GeneratorMatrix c(2, m, e);
            if (oracle::min_open(digital_net({2, m, {GeneratorMatrix::identity(2, m), c}})) >= 0)
                want.push_back(c);
        }
        std::sort(want.begin(), want.end());
        CHECK(res.matrices == want);
    }
    CHECK_THROWS_AS(search_nnld_generators(6), Error);
    CHECK_THROWS_AS(search_nnld_generators(3, 3), Error);
}

TEST_CASE("generator search under the shift-reflect reading") {
    // the raw-net and shift-reflected readings give the same count at m = 4
    int raw = 0, shifted = 0;
    for (unsigned code = 0; code < (1U << 16); ++code) {
        std::vector<int> e(16);
        std::vector<unsigned> rows(4, 0);
        for (int k = 0; k < 16; ++k) {
            const int bit = (code >> (15 - k)) & 1U;
            e[static_cast<std::size_t>(k)] = bit;
            rows[static_cast<std::size_t>(k / 4)] = rows[static_cast<std::size_t>(k / 4)] << 1 | static_cast<unsigned>(bit);
        }
        if (rank_gf2(rows) < 4)
            continue;
        const auto p = digital_net({2, 4, {GeneratorMatrix::identity(2, 4), GeneratorMatrix(2, 4, e)}});
        raw += verify_nnld(p).certified();
        shifted += verify_nnld(shift_reflect(p)).certified();
    }
    CHECK(raw == 221);
    CHECK(shifted == 221);
}

TEST_CASE("generator lines") {
    const GeneratorMatrix c(2, 4, {0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1, 1, 1, 0});
    CHECK(format_matrix_line(c) == "0100100010111110");
    const auto spec = parse_generator_lines(2, "# comment\n1000010000100001\n" + format_matrix_line(c) + "\n");
    REQUIRE(spec.dim() == 2);
    CHECK(spec.matrices[0] == GeneratorMatrix::identity(2, 4));
    CHECK(spec.matrices[1] == c);
    CHECK_THROWS_AS(parse_generator_lines(2, "10\n"), Error);
    CHECK_THROWS_AS(parse_generator_lines(2, "1002\n"), Error);
}

TEST_CASE("cyclic diagonal subgroup") {
    CHECK(cyclic_diag_subgroup(2, 4, 2).same_multiset(PointSet(2, 16, {0, 0, 15, 15})));
    CHECK(cyclic_diag_subgroup(3, 2, 3).same_multiset(PointSet(3, 9, {0, 0, 0, 4, 4, 4, 8, 8, 8})));
    const auto c = cyclic_diag_subgroup(5, 2, 2);
    CHECK(c.numerator(0, 0) == 0);
    CHECK(c.numerator(0, 1) == 0);

    // projection-regular NNLD digital nets contain the subgroup
    std::mt19937_64 rng(8);
    int hits = 0;
    for (int m = 1; m <= 4; ++m)
        for (const auto& c2 : search_nnld_generators(m).matrices) {
            const auto p = digital_net({2, m, {GeneratorMatrix::identity(2, m), c2}});
            if (!is_projection_regular(p))
                continue;
            ++hits;
            CHECK(contains_points(p, cyclic_diag_subgroup(2, m, 2)));
        }
    for (int rep = 0; rep < 400; ++rep) {
        const int b = rep % 2 ? 3 : 2;
        const int m = 1 + rep % (b == 2 ? 4 : 3);
        const int d = 2 + rep % 2;
        std::vector<Permutation> ps;
        for (int j = 0; j < d; ++j)
            ps.emplace_back(oracle::random_permutation(rng, m));
        DigitalNetSpec s = perm_spec(b, ps);
        if (rep % 4 == 3)
            s.matrices[1] = random_matrix(rng, b, m);
        const auto p = digital_net(s);
        if (!is_projection_regular(p) || !verify_nnld(p).certified())
            continue;
        ++hits;
        CHECK(contains_points(p, cyclic_diag_subgroup(b, m, d)));
    }
    CHECK(hits > 50);
}

TEST_CASE("points on the main diagonal of a net") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 80; ++rep) {
        const int b = rep % 2 ? 3 : 2;
        const int m = 1 + rep % 4;
        const int d = 2 + rep % 3;
        DigitalNetSpec s{b, m, {}};
        for (int j = 0; j < d; ++j)
            s.matrices.push_back(rep % 3 ? GeneratorMatrix::from_permutation(b, Permutation(oracle::random_permutation(rng, m)))
                                         : random_matrix(rng, b, m));
        const auto p = digital_net(s);
        const int t = exact_t(p, b, m, d);
        CHECK(diagonal_points(p) <= ipow(b, t + (m - t + d - 1) / d));
    }
}

TEST_CASE("non-permutation generators do not beat permutations at d = 3") {
    for (int m = 2; m <= 4; ++m) {
        // best t over NNLD permutation triples (pi_1 = identity)
        std::vector<int> a(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            a[static_cast<std::size_t>(k)] = k + 1;
        std::vector<std::vector<int>> all;
        do
            all.push_back(a);
        while (std::next_permutation(a.begin(), a.end()));
        int best = m;
        for (const auto& p2 : all)
            for (const auto& p3 : all) {
                const auto p = permutation_net(2, m, std::vector{Permutation::identity(m), Permutation(p2), Permutation(p3)});
                if (verify_nnld(p).certified())
                    best = std::min(best, exact_t(p, 2, m, 3));
            }
        // every general triple with C1 = I and odd-weight rows in C2, C3
        std::vector<GeneratorMatrix> odd;
        for (unsigned code = 0; code < (1U << (m * m)); ++code) {
            std::vector<int> e(static_cast<std::size_t>(m * m));
            bool ok = true;
            for (int r = 0; r < m && ok; ++r) {
                int w = 0;
                for (int s = 0; s < m; ++s) {
                    const int bit = (code >> (r * m + s)) & 1U;
                    e[static_cast<std::size_t>(r * m + s)] = bit;
                    w += bit;
                }
                ok = w % 2 == 1;
            }
            if (ok)
                odd.emplace_back(2, m, e);
        }
        std::mt19937_64 rng(static_cast<std::uint64_t>(m));
        std::uniform_int_distribution<std::size_t> pick(0, odd.size() - 1);
        const std::size_t pairs = m <= 3 ? odd.size() * odd.size() : 3000;
        for (std::size_t k = 0; k < pairs; ++k) {
            const auto& c2 = m <= 3 ? odd[k / odd.size()] : odd[pick(rng)];
            const auto& c3 = m <= 3 ? odd[k % odd.size()] : odd[pick(rng)];
            const auto p = digital_net({2, m, {GeneratorMatrix::identity(2, m), c2, c3}});
            if (verify_nnld(p).certified())
                CHECK(exact_t(p, 2, m, 3) >= best);
        }
    }
}

}
