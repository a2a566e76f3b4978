#include "nnld/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace nnld {

namespace {

enum class Mode {
    open_min,             // inf of delta over prod (V_j u {1})
    closed_max_below_one, // sup of delta_bar over prod ({0} u V_j) without coordinate 1
    closed_max,           // max of delta_bar over prod (V_j u {1})
};

BigInt to_big(__int128 v) {
    const bool neg = v < 0;
    const unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
}

const BigInt& to_big(const BigInt& v) { return v; }

// Branch and bound over boxes of grid corners.  A region is a product of
// index ranges [lo_j, hi_j] into the sorted per-coordinate grids.  The score
// of a corner is n * den^d * (-delta) in open mode and n * den^d * delta_bar
// in closed mode, so both searches look for large scores.  Over a region the
// open count is at least the count at the low corner and the volume at most
// the volume at the high corner (closed mode: the other way round), which
// gives an exact upper bound on the score.  Points are split into those
// counted at the low corner (`base`) and those whose membership is still
// undecided inside the region.
template <class Int>
class GridSearch {
public:
    GridSearch(const PointSet& p, Mode mode, Budget budget)
        : mode_(mode), budget_(budget), n_(p.size()), d_(p.dim()), den_(p.denominator()),
          cols_(static_cast<std::size_t>(d_)), grid_(static_cast<std::size_t>(d_)) {
        if (n_ > std::int64_t{1} << 32)
            fail(ErrorKind::budget_exceeded, "point set too large for corner enumeration; reduce n");
        for (int j = 0; j < d_; ++j) {
            auto& c = cols_[static_cast<std::size_t>(j)];
            auto& g = grid_[static_cast<std::size_t>(j)];
            c.resize(static_cast<std::size_t>(n_));
            for (std::int64_t i = 0; i < n_; ++i)
                c[static_cast<std::size_t>(i)] = p.numerator(i, j);
            g = c;
            if (mode_ == Mode::closed_max_below_one) {
                g.push_back(0);
                std::erase(g, den_);
            } else {
                g.push_back(den_);
            }
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
        }
        den_pow_ = 1;
        for (int j = 0; j < d_; ++j)
            den_pow_ *= Int(den_);
        n_int_ = Int(n_);
    }

    // Lexicographically largest corner whose score is > 0 (strict) or >= 0.
    bool lexmax_nonnegative(bool strict) {
        goal_ = strict ? Goal::lexmax_positive : Goal::lexmax_nonnegative;
        run();
        return found_;
    }

    // Largest score; ties go to the lexicographically largest corner.
    void maximize() {
        goal_ = Goal::maximize;
        run();
    }

    bool found() const noexcept { return found_; }
    std::uint64_t boxes() const noexcept { return boxes_; }

    // delta (open) or delta_bar (closed) at the recorded corner.
    Rational best_delta() const {
        const Int scaled = open() ? Int(-best_) : best_;
        return Rational(to_big(scaled), to_big(Int(n_int_ * den_pow_)));
    }

    std::vector<Rational> best_corner() const {
        std::vector<Rational> z;
        for (int j = 0; j < d_; ++j)
            z.emplace_back(grid_[static_cast<std::size_t>(j)][static_cast<std::size_t>(best_idx_[static_cast<std::size_t>(j)])],
                           den_);
        return z;
    }

private:
    enum class Goal { lexmax_positive, lexmax_nonnegative, maximize };

    bool open() const noexcept { return mode_ == Mode::open_min; }

    void charge(std::size_t ops) {
        ops_ += ops;
        if (ops_ > budget_.max_ops)
            fail(ErrorKind::budget_exceeded,
                 "corner enumeration exceeded " + std::to_string(budget_.max_ops) +
                     " operations; reduce n or d, or raise --max-ops");
    }

    std::int64_t value(int j, int idx) const {
        return grid_[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx)];
    }

    // x_i inside the box anchored at the corner with grid indices `idx`.
    bool inside(std::uint32_t i, const std::vector<int>& idx) const {
        for (int j = 0; j < d_; ++j) {
            const std::int64_t x = cols_[static_cast<std::size_t>(j)][i];
            const std::int64_t z = value(j, idx[static_cast<std::size_t>(j)]);
            if (open() ? x >= z : x > z)
                return false;
        }
        return true;
    }

    bool lex_greater(const std::vector<int>& a) const {
        return std::lexicographical_compare(best_idx_.begin(), best_idx_.end(), a.begin(), a.end());
    }

    void run() {
        found_ = false;
        lo_.assign(static_cast<std::size_t>(d_), 0);
        hi_.resize(static_cast<std::size_t>(d_));
        for (int j = 0; j < d_; ++j)
            hi_[static_cast<std::size_t>(j)] = static_cast<int>(grid_[static_cast<std::size_t>(j)].size()) - 1;
        std::int64_t base = 0;
        std::vector<std::uint32_t> undecided;
        for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(n_); ++i) {
            if (inside(i, lo_))
                ++base;
            else if (inside(i, hi_))
                undecided.push_back(i);
        }
        charge(static_cast<std::size_t>(n_) * static_cast<std::size_t>(d_));
        explore(base, undecided);
    }

    void explore(std::int64_t base, const std::vector<std::uint32_t>& undecided) {
        ++boxes_;
        charge(undecided.size() + static_cast<std::size_t>(d_));
        Int prod = 1;
        for (int j = 0; j < d_; ++j)
            prod *= Int(value(j, open() ? hi_[static_cast<std::size_t>(j)] : lo_[static_cast<std::size_t>(j)]));
        const std::int64_t count = open() ? base : base + static_cast<std::int64_t>(undecided.size());
        const Int bound = open() ? Int(n_int_ * prod - Int(count) * den_pow_) : Int(Int(count) * den_pow_ - n_int_ * prod);

        switch (goal_) {
        case Goal::lexmax_positive:
            if (bound <= 0 || (found_ && !lex_greater(hi_)))
                return;
            break;
        case Goal::lexmax_nonnegative:
            if (bound < 0 || (found_ && !lex_greater(hi_)))
                return;
            break;
        case Goal::maximize:
            if (found_ && (bound < best_ || (bound == best_ && !lex_greater(hi_))))
                return;
            break;
        }

        if (undecided.empty()) {
            // The count is constant on the region, so the score is monotone
            // in the volume and the best corner is found directly.
            if (open())
                record(hi_, bound);
            else
                resolve_closed(base, bound);
            return;
        }

        // Split where the volume changes most across the region.
        int split = -1;
        double widest = 0;
        for (int j = 0; j < d_; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            if (hi_[sj] == lo_[sj])
                continue;
            double gap = static_cast<double>(value(j, hi_[sj]) - value(j, lo_[sj]));
            for (int l = 0; l < d_; ++l)
                if (l != j)
                    gap *= static_cast<double>(value(l, hi_[static_cast<std::size_t>(l)])) / static_cast<double>(den_);
            if (split < 0 || gap > widest) {
                widest = gap;
                split = j;
            }
        }

        const auto s = static_cast<std::size_t>(split);
        const int lo = lo_[s];
        const int hi = hi_[s];
        const int mid = lo + (hi - lo) / 2;
        std::vector<std::uint32_t> child;
        child.reserve(undecided.size());

        // Upper half first so large corners are met early.
        lo_[s] = mid + 1;
        std::int64_t upper_base = base;
        for (auto i : undecided) {
            if (inside(i, lo_))
                ++upper_base;
            else
                child.push_back(i);
        }
        explore(upper_base, child);
        lo_[s] = lo;

        hi_[s] = mid;
        child.clear();
        for (auto i : undecided)
            if (inside(i, hi_))
                child.push_back(i);
        explore(base, child);
        hi_[s] = hi;
    }

    void record(const std::vector<int>& idx, const Int& score) {
        if (found_ && (goal_ == Goal::maximize ? (score < best_ || (score == best_ && !lex_greater(idx)))
                                               : !lex_greater(idx)))
            return;
        found_ = true;
        best_ = score;
        best_idx_ = idx;
    }

    // Closed mode with a constant count: the score falls as the corner grows.
    void resolve_closed(std::int64_t base, const Int& bound) {
        std::vector<int> idx = hi_;
        if (goal_ == Goal::maximize) {
            // bound is the score at lo_; pick the largest corner with the same
            // volume.
            bool zero = false;
            for (int j = 0; j < d_; ++j)
                zero = zero || value(j, lo_[static_cast<std::size_t>(j)]) == 0;
            if (!zero) {
                idx = lo_;
            } else {
                bool hi_zero = false;
                for (int j = 0; j < d_; ++j)
                    hi_zero = hi_zero || value(j, hi_[static_cast<std::size_t>(j)]) == 0;
                if (!hi_zero)
                    for (int j = d_ - 1; j >= 0; --j)
                        if (value(j, lo_[static_cast<std::size_t>(j)]) == 0) {
                            idx[static_cast<std::size_t>(j)] = lo_[static_cast<std::size_t>(j)];
                            break;
                        }
            }
            record(idx, bound);
            return;
        }
        // Greedy: each coordinate as large as possible while the rest at lo_
        // still qualify.
        const Int counted = Int(base) * den_pow_;
        std::vector<Int> suffix(static_cast<std::size_t>(d_) + 1, Int(1));
        for (int j = d_ - 1; j >= 0; --j)
            suffix[static_cast<std::size_t>(j)] =
                suffix[static_cast<std::size_t>(j) + 1] * Int(value(j, lo_[static_cast<std::size_t>(j)]));
        const bool strict = goal_ == Goal::lexmax_positive;
        Int prefix = 1;
        for (int j = 0; j < d_; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            auto ok = [&](int k) {
                const Int score = counted - n_int_ * Int(prefix * Int(value(j, k)) * suffix[sj + 1]);
                return strict ? score > 0 : score >= 0;
            };
            int a = lo_[sj], b = hi_[sj];
            while (a < b) {
                const int mid = a + (b - a + 1) / 2;
                if (ok(mid))
                    a = mid;
                else
                    b = mid - 1;
            }
            idx[sj] = a;
            prefix *= Int(value(j, a));
        }
        record(idx, counted - n_int_ * prefix);
    }

    Mode mode_;
    Goal goal_ = Goal::maximize;
    Budget budget_;
    std::int64_t n_;
    int d_;
    std::int64_t den_;
    std::vector<std::vector<std::int64_t>> cols_;
    std::vector<std::vector<std::int64_t>> grid_;
    Int den_pow_{};
    Int n_int_{};

    std::vector<int> lo_;
    std::vector<int> hi_;
    bool found_ = false;
    Int best_{};
    std::vector<int> best_idx_;
    std::uint64_t boxes_ = 0;
    std::uint64_t ops_ = 0;
};

struct SearchOutcome {
    bool violated = false;
    std::vector<Rational> corner;
    Rational delta;
    std::uint64_t boxes = 0;
};

template <class Int>
SearchOutcome search_with(const PointSet& p, Mode mode, bool certify, Budget budget) {
    GridSearch<Int> s(p, mode, budget);
    SearchOutcome out;
    if (certify) {
        // The witness is the largest violating corner in lexicographic
        // order; without one, the largest corner attaining delta = 0.
        out.violated = s.lexmax_nonnegative(true);
        if (!out.violated)
            s.lexmax_nonnegative(false);
    } else {
        s.maximize();
    }
    out.boxes = s.boxes();
    out.corner = s.best_corner();
    out.delta = s.best_delta();
    return out;
}

SearchOutcome search(const PointSet& p, Mode mode, bool certify, Budget budget) {
    // |count * den^d - n * prod z| <= n * den^d; keep two bits of headroom.
    const int bits = std::bit_width(static_cast<std::uint64_t>(p.size())) +
                     p.dim() * std::bit_width(static_cast<std::uint64_t>(p.denominator()));
    if (bits <= 124)
        return search_with<__int128>(p, mode, certify, budget);
    return search_with<BigInt>(p, mode, certify, budget);
}

void check_corner(const PointSet& p, std::span<const Rational> z) {
    if (static_cast<int>(z.size()) != p.dim())
        fail(ErrorKind::invalid_parameter, "corner dimension " + std::to_string(z.size()) +
                                               " does not match point set dimension " + std::to_string(p.dim()));
    for (const auto& zj : z)
        if (zj < 0 || zj > 1)
            fail(ErrorKind::invalid_parameter, "corner coordinate " + to_string(zj) + " outside [0,1]");
}

Rational local_disc(const PointSet& p, std::span<const Rational> z, bool closed) {
    check_corner(p, z);
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < p.size(); ++i) {
        bool inside = true;
        for (int j = 0; j < p.dim() && inside; ++j) {
            const Rational x = p.coordinate(i, j);
            const auto& zj = z[static_cast<std::size_t>(j)];
            inside = closed ? x <= zj : x < zj;
        }
        count += inside;
    }
    Rational vol = 1;
    for (const auto& zj : z)
        vol *= zj;
    return Rational(count, p.size()) - vol;
}

} // namespace

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::certified_nnld: return "certified-NNLD";
    case Verdict::certified_npld: return "certified-NPLD";
    case Verdict::refuted: return "refuted";
    case Verdict::star_value: return "star-value";
    }
    return "unknown";
}

std::string format_report(const DiscrepancyReport& r) {
    std::ostringstream os;
    os << "verdict=" << to_string(r.verdict) << " witness=";
    for (std::size_t j = 0; j < r.corner.size(); ++j)
        os << (j ? "," : "") << to_string(r.corner[j]);
    os << " delta=" << to_string(r.delta) << " boxes=" << r.boxes;
    return os.str();
}

Rational local_disc_open(const PointSet& p, std::span<const Rational> z) {
    return local_disc(p, z, false);
}

Rational local_disc_closed(const PointSet& p, std::span<const Rational> z) {
    return local_disc(p, z, true);
}

DiscrepancyReport verify_nnld(const PointSet& p, Budget budget) {
    auto s = search(p, Mode::open_min, true, budget);
    return {s.violated ? Verdict::refuted : Verdict::certified_nnld, std::move(s.corner), s.delta, s.boxes};
}

DiscrepancyReport verify_npld(const PointSet& p, Budget budget) {
    auto s = search(p, Mode::closed_max_below_one, true, budget);
    return {s.violated ? Verdict::refuted : Verdict::certified_npld, std::move(s.corner), s.delta, s.boxes};
}

std::pair<Rational, DiscrepancyReport> star_discrepancy(const PointSet& p, Budget budget) {
    auto low = search(p, Mode::open_min, false, budget);
    auto high = search(p, Mode::closed_max, false, budget);
    const std::uint64_t boxes = low.boxes + high.boxes;
    const Rational below = -low.delta;
    Rational value = std::max({below, high.delta, Rational(0)});
    if (below >= high.delta)
        return {value, {Verdict::star_value, std::move(low.corner), low.delta, boxes}};
    return {value, {Verdict::star_value, std::move(high.corner), high.delta, boxes}};
}

Rational hammersley_star_disc_formula(int m) {
    if (m < 1 || m > 62)
        fail(ErrorKind::invalid_parameter, "Hammersley star discrepancy formula needs 1 <= m <= 62");
    const BigInt n = BigInt(1) << m;
    Rational half_pow = 1;
    for (int k = 0; k < m; ++k)
        half_pow *= Rational(-1, 2);
    return (Rational(m, 3) + Rational(1, 9) * (1 - half_pow)) / Rational(n);
}

std::vector<PrecheckResult> structural_prechecks(const PointSet& p) {
    const std::int64_t n = p.size();
    const __int128 den = p.denominator();

    bool origin = false;
    bool inside = true;
    bool upper_diag = false;
    for (std::int64_t i = 0; i < n; ++i) {
        auto pt = p.point(i);
        origin = origin || std::all_of(pt.begin(), pt.end(), [](std::int64_t v) { return v == 0; });
        // x <= 1 - 1/n  <=>  num * n <= den * (n - 1)
        for (auto v : pt)
            if (static_cast<__int128>(v) * n > den * (n - 1))
                inside = false;
        upper_diag = upper_diag || std::all_of(pt.begin(), pt.end(), [&](std::int64_t v) {
                         return static_cast<__int128>(v) * n == den * (n - 1);
                     });
    }
    const bool regular = is_projection_regular(p);
    return {
        {"contains origin", true, origin},
        {"inside [0,1-1/n]^d", true, inside},
        {"contains ((n-1)/n)*1 (projection regular)", regular, !regular || upper_diag},
    };
}

bool is_projection_regular(const PointSet& p) {
    const std::int64_t n = p.size();
    const __int128 den = p.denominator();
    std::vector<bool> seen(static_cast<std::size_t>(n));
    for (int j = 0; j < p.dim(); ++j) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::int64_t i = 0; i < n; ++i) {
            const __int128 scaled = static_cast<__int128>(p.numerator(i, j)) * n;
            if (scaled % den != 0)
                return false;
            const auto k = static_cast<std::int64_t>(scaled / den);
            if (k >= n || seen[static_cast<std::size_t>(k)])
                return false;
            seen[static_cast<std::size_t>(k)] = true;
        }
    }
    return true;
}

} // namespace nnld
