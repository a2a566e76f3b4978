#pragma once

// Slow, independent reference computations used to check the library.
// Nothing here calls the certification code; everything is plain
// enumeration over rationals or small integers.

#include "nnld/pointset.hpp"
#include "nnld/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using nnld::PointSet;
using nnld::Rational;

inline std::vector<std::vector<Rational>> rational_points(const PointSet& p) {
    std::vector<std::vector<Rational>> pts(static_cast<std::size_t>(p.size()));
    for (std::int64_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.dim(); ++j)
            pts[static_cast<std::size_t>(i)].push_back(Rational(p.numerator(i, j), p.denominator()));
    return pts;
}

// #{x < z} / n - vol, or #{x <= z} / n - vol
inline Rational recount(const std::vector<std::vector<Rational>>& pts, const std::vector<Rational>& z, bool closed) {
    std::int64_t c = 0;
    for (const auto& x : pts) {
        bool in = true;
        for (std::size_t j = 0; j < z.size() && in; ++j)
            in = closed ? x[j] <= z[j] : x[j] < z[j];
        c += in;
    }
    Rational vol = 1;
    for (const auto& v : z)
        vol *= v;
    return Rational(c, static_cast<std::int64_t>(pts.size())) - vol;
}

// Calls fn(z) for every z in the product of the given axis value lists.
template <class Fn>
void for_each_corner(const std::vector<std::vector<Rational>>& axes, Fn&& fn) {
    std::vector<std::size_t> idx(axes.size(), 0);
    std::vector<Rational> z(axes.size());
    for (;;) {
        for (std::size_t j = 0; j < axes.size(); ++j)
            z[j] = axes[j][idx[j]];
        fn(z);
        std::size_t j = 0;
        while (j < axes.size() && ++idx[j] == axes[j].size())
            idx[j++] = 0;
        if (j == axes.size())
            return;
    }
}

inline std::vector<std::vector<Rational>> axis_values(const PointSet& p, bool with_zero, bool with_one) {
    std::vector<std::vector<Rational>> axes(static_cast<std::size_t>(p.dim()));
    for (int j = 0; j < p.dim(); ++j) {
        std::set<Rational> s;
        for (std::int64_t i = 0; i < p.size(); ++i)
            s.insert(Rational(p.numerator(i, j), p.denominator()));
        if (with_zero)
            s.insert(0);
        if (with_one)
            s.insert(1);
        axes[static_cast<std::size_t>(j)].assign(s.begin(), s.end());
    }
    return axes;
}

// min of delta over the full grid of V_j u {1}
inline Rational min_open(const PointSet& p) {
    const auto pts = rational_points(p);
    Rational best = 1;
    for_each_corner(axis_values(p, false, true), [&](const std::vector<Rational>& z) {
        best = std::min(best, recount(pts, z, false));
    });
    return best;
}

// max of delta_bar over {0} u V_j with every coordinate below 1
inline Rational max_closed_below_one(const PointSet& p) {
    const auto pts = rational_points(p);
    Rational best = -1;
    auto axes = axis_values(p, true, false);
    for (auto& a : axes)
        a.erase(std::remove(a.begin(), a.end(), Rational(1)), a.end());
    for_each_corner(axes, [&](const std::vector<Rational>& z) { best = std::max(best, recount(pts, z, true)); });
    return best;
}

inline Rational star(const PointSet& p) {
    const auto pts = rational_points(p);
    Rational best = 0;
    for_each_corner(axis_values(p, false, true), [&](const std::vector<Rational>& z) {
        best = std::max(best, -recount(pts, z, false));
        best = std::max(best, recount(pts, z, true));
    });
    return best;
}

// Dense sign check of delta with integer arithmetic over `den`, which must
// be a multiple of 64 and of the point denominator.  Probes the 65-point
// lattice in every coordinate plus every critical value shifted by -1/den,
// 0, +1/den.  want_nonneg checks delta >= 0, otherwise delta <= 0.
inline bool dense_sign(const PointSet& p, std::int64_t den, bool want_nonneg) {
    const int d = p.dim();
    const std::int64_t n = p.size();
    const std::int64_t scale = den / p.denominator();
    std::vector<std::vector<std::int64_t>> axes(static_cast<std::size_t>(d));
    for (auto& axis : axes) {
        std::set<std::int64_t> s;
        for (int t = 0; t <= 64; ++t)
            s.insert(den / 64 * t);
        const auto j = static_cast<int>(&axis - axes.data());
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t c = p.numerator(i, j) * scale;
            for (std::int64_t e : {c - 1, c, c + 1})
                if (e >= 0 && e <= den)
                    s.insert(e);
        }
        axis.assign(s.begin(), s.end());
    }
    __int128 dd = 1;
    for (int j = 0; j < d; ++j)
        dd *= den;
    std::vector<std::int64_t> z(static_cast<std::size_t>(d));
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        for (int j = 0; j < d; ++j)
            z[static_cast<std::size_t>(j)] = axes[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
        std::int64_t c = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            bool in = true;
            for (int j = 0; j < d && in; ++j)
                in = p.numerator(i, j) * scale < z[static_cast<std::size_t>(j)];
            c += in;
        }
        __int128 vol = n;
        for (auto v : z)
            vol *= v;
        const __int128 lhs = static_cast<__int128>(c) * dd;
        if (want_nonneg ? lhs < vol : lhs > vol)
            return false;
        int j = 0;
        while (j < d && ++idx[static_cast<std::size_t>(j)] == axes[static_cast<std::size_t>(j)].size())
            idx[static_cast<std::size_t>(j++)] = 0;
        if (j == d)
            return true;
    }
}

// Random set of n points with coordinates k/16.
inline PointSet random_sixteenths(std::mt19937_64& rng, std::int64_t n, int d, bool with_origin) {
    std::uniform_int_distribution<std::int64_t> k(0, 16);
    std::vector<std::int64_t> c(static_cast<std::size_t>(n * d));
    for (auto& v : c)
        v = k(rng);
    if (with_origin)
        std::fill(c.begin(), c.begin() + d, 0);
    return PointSet(d, 16, std::move(c));
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int m) {
    std::vector<int> v(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        v[static_cast<std::size_t>(k)] = k + 1;
    std::shuffle(v.begin(), v.end(), rng);
    return v;
}

// Geometric count of points in prod_j [a_j / b^k_j, (a_j + 1) / b^k_j).
inline std::int64_t box_count(const PointSet& p, int b, const std::vector<int>& k, const std::vector<std::int64_t>& a) {
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < p.size(); ++i) {
        bool in = true;
        for (int j = 0; j < p.dim() && in; ++j) {
            std::int64_t bk = 1;
            for (int s = 0; s < k[static_cast<std::size_t>(j)]; ++s)
                bk *= b;
            const Rational x(p.numerator(i, j), p.denominator());
            in = Rational(a[static_cast<std::size_t>(j)], bk) <= x && x < Rational(a[static_cast<std::size_t>(j)] + 1, bk);
        }
        c += in;
    }
    return c;
}

// (t,m,d)-net property by geometric counting over all elementary intervals.
inline bool net_property(const PointSet& p, int b, int m, int t) {
    const int d = p.dim();
    std::int64_t want = 1;
    for (int s = 0; s < t; ++s)
        want *= b;
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    bool ok = true;
    // compositions of m - t into d parts
    auto rec = [&](auto&& self, int j, int left) -> void {
        if (!ok)
            return;
        if (j == d - 1) {
            k[static_cast<std::size_t>(j)] = left;
            std::vector<std::int64_t> lim(static_cast<std::size_t>(d));
            for (int q = 0; q < d; ++q) {
                lim[static_cast<std::size_t>(q)] = 1;
                for (int s = 0; s < k[static_cast<std::size_t>(q)]; ++s)
                    lim[static_cast<std::size_t>(q)] *= b;
            }
            std::vector<std::int64_t> a(static_cast<std::size_t>(d), 0);
            for (;;) {
                if (box_count(p, b, k, a) != want) {
                    ok = false;
                    return;
                }
                int q = 0;
                while (q < d && ++a[static_cast<std::size_t>(q)] == lim[static_cast<std::size_t>(q)])
                    a[static_cast<std::size_t>(q++)] = 0;
                if (q == d)
                    return;
            }
        }
        for (int v = 0; v <= left; ++v) {
            k[static_cast<std::size_t>(j)] = v;
            self(self, j + 1, left - v);
        }
    };
    rec(rec, 0, m - t);
    return ok;
}

} // namespace oracle
