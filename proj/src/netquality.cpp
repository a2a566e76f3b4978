#include "nnld/netquality.hpp"

#include "nnld/discrepancy.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

namespace nnld {

namespace {

// Calls fn(parts) for every vector of `d` parts in [0, cap] summing to
// `total`, in lexicographic order.  fn returns false to stop early.
bool for_each_composition(int total, int d, int cap, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> parts(static_cast<std::size_t>(d), 0);
    std::function<bool(int, int)> rec = [&](int j, int left) -> bool {
        if (j == d - 1) {
            if (left > cap)
                return true;
            parts[static_cast<std::size_t>(j)] = left;
            return fn(parts);
        }
        for (int v = 0; v <= std::min(left, cap); ++v) {
            parts[static_cast<std::size_t>(j)] = v;
            if (!rec(j + 1, left - v))
                return false;
        }
        return true;
    };
    return rec(0, total);
}

int inverse_mod(int a, int p) {
    int t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        const int q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return t < 0 ? t + p : t;
}

// Rank of the stack of leading rows, or the distinct-row count for one-hot
// generators.
int stacked_rank(const DigitalNetSpec& spec, const std::vector<int>& lead, bool one_hot) {
    const int m = spec.m;
    if (one_hot) {
        std::set<int> cols;
        for (std::size_t j = 0; j < lead.size(); ++j)
            for (int r = 0; r < lead[j]; ++r)
                for (int c = 0; c < m; ++c)
                    if (spec.matrices[j].at(r, c) == 1)
                        cols.insert(c);
        return static_cast<int>(cols.size());
    }
    std::vector<int> rows;
    int count = 0;
    for (std::size_t j = 0; j < lead.size(); ++j)
        for (int r = 0; r < lead[j]; ++r, ++count)
            for (int c = 0; c < m; ++c)
                rows.push_back(spec.matrices[j].at(r, c));
    return rank_mod_prime(std::move(rows), count, m, spec.base);
}

} // namespace

void ElementaryInterval::validate() const {
    if (base < 2)
        fail(ErrorKind::invalid_parameter, "elementary interval base must be >= 2");
    if (k.size() != a.size() || k.empty())
        fail(ErrorKind::invalid_parameter, "elementary interval needs matching non-empty k and a");
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] < 0 || k[j] > 62)
            fail(ErrorKind::invalid_parameter, "elementary interval exponent out of range");
        __int128 cells = 1;
        for (int e = 0; e < k[j]; ++e)
            cells *= base;
        if (a[j] < 0 || a[j] >= cells)
            fail(ErrorKind::invalid_parameter, "elementary interval index a_j outside [0, b^k_j)");
    }
}

bool ElementaryInterval::contains(const PointSet& p, std::int64_t i) const {
    if (static_cast<int>(k.size()) != p.dim())
        fail(ErrorKind::invalid_parameter, "elementary interval dimension mismatch");
    for (int j = 0; j < p.dim(); ++j) {
        const Rational x = p.coordinate(i, j);
        BigInt cells = 1;
        for (int e = 0; e < k[static_cast<std::size_t>(j)]; ++e)
            cells *= base;
        const Rational lo(BigInt(a[static_cast<std::size_t>(j)]), cells);
        const Rational hi(BigInt(a[static_cast<std::size_t>(j)] + 1), cells);
        if (x < lo || x >= hi)
            return false;
    }
    return true;
}

bool is_prime(int b) noexcept {
    if (b < 2)
        return false;
    for (int q = 2; q * q <= b; ++q)
        if (b % q == 0)
            return false;
    return true;
}

int rank_mod_prime(std::vector<int> a, int rows, int cols, int b) {
    if (!is_prime(b))
        fail(ErrorKind::unsupported_arithmetic, "rank over Z_" + std::to_string(b) + " needs a prime modulus");
    if (static_cast<std::size_t>(rows) * cols != a.size())
        fail(ErrorKind::invalid_parameter, "matrix shape does not match entry count");
    auto at = [&](int r, int c) -> int& { return a[static_cast<std::size_t>(r) * cols + c]; };
    for (auto& e : a)
        e = ((e % b) + b) % b;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = rank;
        while (pivot < rows && at(pivot, c) == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        for (int k = 0; k < cols; ++k)
            std::swap(at(pivot, k), at(rank, k));
        const int inv = inverse_mod(at(rank, c), b);
        for (int k = 0; k < cols; ++k)
            at(rank, k) = at(rank, k) * inv % b;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || at(r, c) == 0)
                continue;
            const int f = at(r, c);
            for (int k = 0; k < cols; ++k)
                at(r, k) = ((at(r, k) - f * at(rank, k)) % b + b) % b;
        }
        ++rank;
    }
    return rank;
}

int rho(const DigitalNetSpec& spec) {
    spec.validate();
    const bool one_hot = std::all_of(spec.matrices.begin(), spec.matrices.end(),
                                     [](const GeneratorMatrix& c) { return c.is_one_hot(); });
    if (!is_prime(spec.base) && !one_hot)
        fail(ErrorKind::unsupported_arithmetic,
             "rho over composite base " + std::to_string(spec.base) + " is only defined for one-hot generators");
    for (int r = spec.m; r > 0; --r) {
        const bool all_full = for_each_composition(r, spec.dim(), spec.m, [&](const std::vector<int>& lead) {
            return stacked_rank(spec, lead, one_hot) == r;
        });
        if (all_full)
            return r;
    }
    return 0;
}

bool verify_net_parameter(const PointSet& p, int b, int m, int d, int t, Budget budget) {
    const std::int64_t n = checked_points(b, m);
    if (p.size() != n || p.dim() != d)
        fail(ErrorKind::invalid_parameter, "point set must have b^m points in dimension d");
    if (t < 0 || t > m)
        fail(ErrorKind::invalid_parameter, "t must lie in [0, m]");

    // prefix[(i*d + j)*(m+1) + k] = floor(x_ij * b^k), the cell of x_ij at level k.
    const std::size_t stride = static_cast<std::size_t>(m) + 1;
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(n) * d * stride);
    const __int128 den = p.denominator();
    for (std::int64_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            const __int128 x = p.numerator(i, j);
            if (x == den)
                return false;  // x_ij = 1 lies in no elementary interval
            __int128 scale = 1;
            for (int k = 0; k <= m; ++k, scale *= b)
                prefix[(static_cast<std::size_t>(i) * d + j) * stride + k] =
                    static_cast<std::int64_t>(x * scale / den);
        }

    std::int64_t per_cell = 1;
    for (int e = 0; e < t; ++e)
        per_cell *= b;
    const std::int64_t cells = n / per_cell;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(cells));
    std::uint64_t ops = 0;

    return for_each_composition(m - t, d, m - t, [&](const std::vector<int>& k) {
        ops += static_cast<std::uint64_t>(n) * d;
        if (ops > budget.max_ops)
            fail(ErrorKind::budget_exceeded, "elementary interval enumeration exceeded the operation budget");
        std::fill(counts.begin(), counts.end(), 0);
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t idx = 0;
            for (int j = 0; j < d; ++j) {
                std::int64_t width = 1;
                for (int e = 0; e < k[static_cast<std::size_t>(j)]; ++e)
                    width *= b;
                idx = idx * width + prefix[(static_cast<std::size_t>(i) * d + j) * stride + k[static_cast<std::size_t>(j)]];
            }
            if (++counts[static_cast<std::size_t>(idx)] > per_cell)
                return false;
        }
        return true;
    });
}

int exact_t(const PointSet& p, int b, int m, int d, Budget budget) {
    for (int t = 0; t <= m; ++t)
        if (verify_net_parameter(p, b, m, d, t, budget))
            return t;
    fail(ErrorKind::precondition, "point set is not a (t,m,d)-net for any t; some coordinate equals 1");
}

std::vector<Permutation> perm_ordering_d3(int l) {
    if (l < 1)
        fail(ErrorKind::invalid_parameter, "perm_ordering_d3 needs l >= 1");
    std::vector<std::array<int, 3>> rows;
    for (int i = 1; i <= l; ++i)
        rows.push_back({3 * i - 2, 3 * i - 1, 3 * i});
    for (int i = l; i >= 1; --i) {
        const auto [a, b, c] = rows[static_cast<std::size_t>(i - 1)];
        rows.push_back({b, c, a});
        rows.push_back({c, a, b});
    }
    std::vector<Permutation> cols;
    for (int j = 0; j < 3; ++j) {
        std::vector<int> images;
        for (const auto& r : rows)
            images.push_back(r[static_cast<std::size_t>(j)]);
        cols.emplace_back(std::move(images));
    }
    return cols;
}

std::vector<Permutation> perm_ordering_d4(int l) {
    if (l < 1)
        fail(ErrorKind::invalid_parameter, "perm_ordering_d4 needs l >= 1");
    std::vector<std::array<int, 4>> rows;
    for (int i = 1; i <= l; ++i)
        rows.push_back({4 * i - 3, 4 * i - 2, 4 * i - 1, 4 * i});
    for (int i = l; i >= 1; --i) {
        const auto r = rows[static_cast<std::size_t>(i - 1)];
        for (int shift = 1; shift <= 3; ++shift) {
            std::array<int, 4> rot{};
            for (int j = 0; j < 4; ++j)
                rot[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>((j + shift) % 4)];
            rows.push_back(rot);
        }
    }
    std::vector<Permutation> cols;
    for (int j = 0; j < 4; ++j) {
        std::vector<int> images;
        for (const auto& r : rows)
            images.push_back(r[static_cast<std::size_t>(j)]);
        cols.emplace_back(std::move(images));
    }
    return cols;
}

int t_lower_bound_perm(int d, int m) {
    if (d < 1 || m < 1)
        fail(ErrorKind::invalid_parameter, "t_lower_bound_perm needs d >= 1 and m >= 1");
    return (d - 2) * (m / d) + m % d - 1;
}

std::string format_quality(const QualityReport& q) {
    std::ostringstream os;
    os << "rho=" << q.rho << " t=" << q.t_from_rho << " t_verified=";
    if (q.t_verified)
        os << *q.t_verified;
    else
        os << "na";
    os << " bound_ok=" << (q.bound_ok ? "true" : "false");
    return os.str();
}

QualityReport quality_report(const DigitalNetSpec& spec, bool verify_t, Budget budget) {
    QualityReport q;
    q.rho = rho(spec);
    q.t_from_rho = spec.m - q.rho;
    if (verify_t)
        q.t_verified = exact_t(digital_net(spec), spec.base, spec.m, spec.dim(), budget);
    const bool perm = std::all_of(spec.matrices.begin(), spec.matrices.end(),
                                  [](const GeneratorMatrix& c) { return c.is_permutation(); });
    if (perm)
        q.bound_ok = q.t_verified.value_or(q.t_from_rho) >= t_lower_bound_perm(spec.dim(), spec.m);
    return q;
}

GeneratorSearchResult search_nnld_generators(int m, int b, Budget budget, bool check_prefilter) {
    if (b != 2)
        fail(ErrorKind::invalid_parameter, "generator search is implemented for b = 2 only");
    if (m < 1 || m > 5)
        fail(ErrorKind::invalid_parameter, "generator search needs 1 <= m <= 5 (2^(m^2) candidates)");

    const int cells = m * m;
    const std::uint64_t total = std::uint64_t{1} << cells;
    const GeneratorMatrix first = GeneratorMatrix::identity(2, m);
    GeneratorSearchResult res;
    res.prefilter_checked = check_prefilter;

    std::vector<unsigned> row_bits(static_cast<std::size_t>(m));
    std::vector<int> entries(static_cast<std::size_t>(cells));
    for (std::uint64_t code = 0; code < total; ++code) {
        ++res.examined;
        // Entry (r, c) is bit cells-1-(r*m+c), so ascending codes are in
        // lexicographic entry order.
        bool odd_rows = true;
        for (int r = 0; r < m; ++r) {
            row_bits[static_cast<std::size_t>(r)] =
                static_cast<unsigned>((code >> (cells - m * (r + 1))) & ((1U << m) - 1));
            odd_rows = odd_rows && (std::popcount(row_bits[static_cast<std::size_t>(r)]) % 2 == 1);
        }
        if (!odd_rows && !check_prefilter)
            continue;

        // GF(2) rank on bitmask rows.
        std::vector<unsigned> rows = row_bits;
        int rank = 0;
        for (int bit = m - 1; bit >= 0; --bit) {
            auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](unsigned v) { return (v >> bit) & 1U; });
            if (pivot == rows.end())
                continue;
            std::iter_swap(rows.begin() + rank, pivot);
            for (int r = 0; r < m; ++r)
                if (r != rank && ((rows[static_cast<std::size_t>(r)] >> bit) & 1U))
                    rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
            ++rank;
        }
        if (odd_rows)
            ++res.passed_prefilter;
        if (rank < m)
            continue;
        if (odd_rows)
            ++res.nonsingular_after_prefilter;

        for (int e = 0; e < cells; ++e)
            entries[static_cast<std::size_t>(e)] = static_cast<int>((code >> (cells - 1 - e)) & 1U);
        GeneratorMatrix second(2, m, entries);
        const PointSet net = digital_net({2, m, {first, second}});
        if (!verify_nnld(net, budget).certified())
            continue;
        if (odd_rows)
            res.matrices.push_back(std::move(second));
        else
            ++res.prefilter_misses;
    }
    return res;
}

std::string format_matrix_line(const GeneratorMatrix& c) {
    std::string s;
    s.reserve(c.entries().size());
    for (int e : c.entries())
        s += static_cast<char>('0' + e);
    return s;
}

DigitalNetSpec parse_generator_lines(int base, std::string_view text) {
    if (base < 2 || base > 10)
        fail(ErrorKind::invalid_parameter, "generator files use single digits, so 2 <= b <= 10");
    DigitalNetSpec spec{base, 0, {}};
    int lineno = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        int m = 0;
        while (m * m < static_cast<int>(line.size()))
            ++m;
        if (m * m != static_cast<int>(line.size()))
            fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": length is not a perfect square");
        if (spec.m != 0 && m != spec.m)
            fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": matrices differ in size");
        spec.m = m;
        std::vector<int> entries;
        for (char c : line) {
            if (c < '0' || c >= '0' + base)
                fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": '" + std::string(1, c) +
                                           "' is not a base-" + std::to_string(base) + " digit");
            entries.push_back(c - '0');
        }
        spec.matrices.emplace_back(base, m, std::move(entries));
    }
    if (spec.matrices.empty())
        fail(ErrorKind::parse, "no generator matrices found");
    return spec;
}

PointSet cyclic_diag_subgroup(int b, int m, int d) {
    const std::int64_t n = checked_points(b, m);
    if (d < 1)
        fail(ErrorKind::invalid_parameter, "cyclic_diag_subgroup needs d >= 1");
    const std::int64_t alpha = (n - 1) / (b - 1);
    std::vector<std::int64_t> c;
    for (int k = 0; k < b; ++k)
        c.insert(c.end(), static_cast<std::size_t>(d), k * alpha);
    return PointSet(d, n, std::move(c),
                    {"cyclic_diag_subgroup(b=" + std::to_string(b) + ",m=" + std::to_string(m) +
                         ",d=" + std::to_string(d) + ")",
                     "cyclic_diag_subgroup", Guarantee::none, false});
}

} // namespace nnld
