#include "nnld/pointset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace nnld {

namespace {

constexpr std::int64_t max_points = std::int64_t{1} << 40;
constexpr std::int64_t max_denominator = std::int64_t{1} << 62;

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
    if (l > max_denominator)
        fail(ErrorKind::capacity, "common denominator exceeds 2^62");
    return static_cast<std::int64_t>(l);
}

std::string join(std::span<const int> v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    return os.str();
}

// Base-b digits of i, least significant first.
void digits_of(std::int64_t i, int base, std::vector<int>& out) {
    for (auto& a : out) {
        a = static_cast<int>(i % base);
        i /= base;
    }
}

} // namespace

const char* to_string(Guarantee g) noexcept {
    switch (g) {
    case Guarantee::nnld: return "nnld";
    case Guarantee::npld: return "npld";
    case Guarantee::none: break;
    }
    return "none";
}

PointSet::PointSet(int dim, std::int64_t denominator, std::vector<std::int64_t> numerators,
                   Provenance provenance)
    : dim_(dim), denominator_(denominator), coords_(std::move(numerators)),
      provenance_(std::move(provenance)) {
    if (dim_ < 1)
        fail(ErrorKind::invalid_parameter, "point set dimension must be >= 1");
    if (denominator_ < 1 || denominator_ > max_denominator)
        fail(ErrorKind::invalid_parameter, "denominator must lie in [1, 2^62]");
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0)
        fail(ErrorKind::invalid_parameter, "point set needs n >= 1 complete points");
    for (auto v : coords_)
        if (v < 0 || v > denominator_)
            fail(ErrorKind::invalid_parameter,
                 "numerator " + std::to_string(v) + " outside [0, " + std::to_string(denominator_) + "]");
}

Rational PointSet::coordinate(std::int64_t i, int j) const {
    return Rational(numerator(i, j), denominator_);
}

bool PointSet::same_points(const PointSet& other) const noexcept {
    return dim_ == other.dim_ && denominator_ == other.denominator_ && coords_ == other.coords_;
}

PointSet PointSet::rescaled(std::int64_t den) const {
    if (den % denominator_ != 0)
        fail(ErrorKind::invalid_parameter, "rescale target is not a multiple of the denominator");
    const std::int64_t f = den / denominator_;
    std::vector<std::int64_t> c(coords_);
    for (auto& v : c)
        v *= f;
    return PointSet(dim_, den, std::move(c), provenance_);
}

bool PointSet::same_multiset(const PointSet& other) const {
    if (dim_ != other.dim_ || size() != other.size())
        return false;
    const std::int64_t den = checked_lcm(denominator_, other.denominator_);
    auto rows = [&](const PointSet& p) {
        const PointSet s = p.rescaled(den);
        std::vector<std::vector<std::int64_t>> r;
        r.reserve(static_cast<std::size_t>(s.size()));
        for (std::int64_t i = 0; i < s.size(); ++i) {
            auto pt = s.point(i);
            r.emplace_back(pt.begin(), pt.end());
        }
        std::sort(r.begin(), r.end());
        return r;
    };
    return rows(*this) == rows(other);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int m = size();
    if (m < 1)
        fail(ErrorKind::invalid_parameter, "permutation must have size >= 1");
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int v : images_) {
        if (v < 1 || v > m || seen[static_cast<std::size_t>(v - 1)])
            fail(ErrorKind::invalid_parameter, "not a permutation of {1.." + std::to_string(m) + "}");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation Permutation::identity(int m) {
    if (m < 1)
        fail(ErrorKind::invalid_parameter, "permutation must have size >= 1");
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::reversal(int m) {
    if (m < 1)
        fail(ErrorKind::invalid_parameter, "permutation must have size >= 1");
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.rbegin(), v.rend(), 1);
    return Permutation(std::move(v));
}

GeneratorMatrix::GeneratorMatrix(int base, int m, std::vector<int> entries)
    : base_(base), m_(m), entries_(std::move(entries)) {
    if (base_ < 2)
        fail(ErrorKind::invalid_parameter, "base must be >= 2");
    if (m_ < 1 || entries_.size() != static_cast<std::size_t>(m_) * m_)
        fail(ErrorKind::invalid_parameter, "generator matrix must be m x m with m >= 1");
    for (int e : entries_)
        if (e < 0 || e >= base_)
            fail(ErrorKind::invalid_parameter, "generator entry outside Z_b");
}

GeneratorMatrix GeneratorMatrix::identity(int base, int m) {
    return from_permutation(base, Permutation::identity(m));
}

GeneratorMatrix GeneratorMatrix::reversed_identity(int base, int m) {
    return from_permutation(base, Permutation::reversal(m));
}

GeneratorMatrix GeneratorMatrix::from_permutation(int base, const Permutation& pi) {
    const int m = pi.size();
    std::vector<int> e(static_cast<std::size_t>(m) * m, 0);
    for (int r = 1; r <= m; ++r)
        e[static_cast<std::size_t>(r - 1) * m + (pi(r) - 1)] = 1;
    return GeneratorMatrix(base, m, std::move(e));
}

bool GeneratorMatrix::is_one_hot() const noexcept {
    for (int r = 0; r < m_; ++r) {
        int ones = 0;
        for (int c = 0; c < m_; ++c) {
            const int e = at(r, c);
            if (e == 1)
                ++ones;
            else if (e != 0)
                return false;
        }
        if (ones != 1)
            return false;
    }
    return true;
}

bool GeneratorMatrix::is_permutation() const noexcept {
    if (!is_one_hot())
        return false;
    for (int c = 0; c < m_; ++c) {
        int ones = 0;
        for (int r = 0; r < m_; ++r)
            ones += at(r, c);
        if (ones != 1)
            return false;
    }
    return true;
}

void DigitalNetSpec::validate() const {
    if (matrices.empty())
        fail(ErrorKind::invalid_parameter, "digital net needs at least one generator matrix");
    for (const auto& c : matrices)
        if (c.base() != base || c.m() != m)
            fail(ErrorKind::invalid_parameter, "generator matrices must share base and m");
}

std::int64_t checked_points(int base, int m) {
    if (base < 2)
        fail(ErrorKind::invalid_parameter, "base must be >= 2");
    if (m < 1)
        fail(ErrorKind::invalid_parameter, "m must be >= 1");
    __int128 n = 1;
    for (int k = 0; k < m; ++k) {
        n *= base;
        if (n > max_points)
            fail(ErrorKind::capacity, std::to_string(base) + "^" + std::to_string(m) +
                                          " points exceeds the 2^40 capacity limit");
    }
    return static_cast<std::int64_t>(n);
}

PointSet grid_1d(std::int64_t n) {
    if (n < 1)
        fail(ErrorKind::invalid_parameter, "grid_1d needs n >= 1");
    if (n > max_points)
        fail(ErrorKind::capacity, "grid_1d: n exceeds the 2^40 capacity limit");
    std::vector<std::int64_t> c(static_cast<std::size_t>(n));
    std::iota(c.begin(), c.end(), std::int64_t{0});
    return PointSet(1, n, std::move(c),
                    {"grid_1d(n=" + std::to_string(n) + ")", "grid_1d", Guarantee::nnld, true});
}

PointSet shifted_grid_1d(std::int64_t n) {
    if (n < 1)
        fail(ErrorKind::invalid_parameter, "shifted_grid_1d needs n >= 1");
    if (n > max_points)
        fail(ErrorKind::capacity, "shifted_grid_1d: n exceeds the 2^40 capacity limit");
    std::vector<std::int64_t> c(static_cast<std::size_t>(n));
    std::iota(c.begin(), c.end(), std::int64_t{1});
    return PointSet(1, n, std::move(c),
                    {"shifted_grid_1d(n=" + std::to_string(n) + ")", "shifted_grid_1d", Guarantee::npld, false});
}

PointSet hammersley(int base, int m) {
    const std::int64_t n = checked_points(base, m);
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(2 * n));
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t rev = 0;
        std::int64_t rest = i;
        for (int k = 0; k < m; ++k) {
            rev = rev * base + rest % base;
            rest /= base;
        }
        c.push_back(i);
        c.push_back(rev);
    }
    return PointSet(2, n, std::move(c),
                    {"hammersley(b=" + std::to_string(base) + ",m=" + std::to_string(m) + ")",
                     "hammersley", Guarantee::nnld, true});
}

PointSet permutation_net(int base, int m, std::span<const Permutation> perms) {
    const std::int64_t n = checked_points(base, m);
    if (perms.empty())
        fail(ErrorKind::invalid_parameter, "permutation_net needs at least one permutation");
    for (const auto& p : perms)
        if (p.size() != m)
            fail(ErrorKind::invalid_parameter, "permutation size does not match m");
    const int d = static_cast<int>(perms.size());

    std::vector<std::int64_t> weight(static_cast<std::size_t>(m));  // b^(m-k) for k = 1..m
    weight[static_cast<std::size_t>(m - 1)] = 1;
    for (int k = m - 1; k >= 1; --k)
        weight[static_cast<std::size_t>(k - 1)] = weight[static_cast<std::size_t>(k)] * base;

    std::vector<int> a(static_cast<std::size_t>(m));
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(n * d));
    for (std::int64_t i = 0; i < n; ++i) {
        digits_of(i, base, a);
        for (const auto& pi : perms) {
            std::int64_t x = 0;
            for (int k = 1; k <= m; ++k)
                x += a[static_cast<std::size_t>(pi(k) - 1)] * weight[static_cast<std::size_t>(k - 1)];
            c.push_back(x);
        }
    }
    std::ostringstream desc;
    desc << "permutation_net(b=" << base << ",m=" << m << ",perms=";
    for (int j = 0; j < d; ++j)
        desc << (j ? ";" : "") << join(perms[static_cast<std::size_t>(j)].images());
    desc << ")";
    return PointSet(d, n, std::move(c), {desc.str(), "permutation_net", Guarantee::none, true});
}

PointSet digital_net(const DigitalNetSpec& spec) {
    spec.validate();
    const int b = spec.base;
    const int m = spec.m;
    const std::int64_t n = checked_points(b, m);
    const int d = spec.dim();

    std::vector<int> a(static_cast<std::size_t>(m));
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(n * d));
    for (std::int64_t h = 0; h < n; ++h) {
        digits_of(h, b, a);
        for (const auto& C : spec.matrices) {
            std::int64_t x = 0;
            for (int r = 0; r < m; ++r) {
                int digit = 0;
                for (int s = 0; s < m; ++s)
                    digit = (digit + C.at(r, s) * a[static_cast<std::size_t>(s)]) % b;
                x = x * b + digit;
            }
            c.push_back(x);
        }
    }
    const bool perm = std::all_of(spec.matrices.begin(), spec.matrices.end(),
                                  [](const GeneratorMatrix& C) { return C.is_permutation(); });
    std::ostringstream desc;
    desc << "digital_net(b=" << b << ",m=" << m << ",d=" << d << ",C=";
    for (int j = 0; j < d; ++j) {
        desc << (j ? ";" : "");
        for (int e : spec.matrices[static_cast<std::size_t>(j)].entries())
            desc << e;
    }
    desc << ")";
    return PointSet(d, n, std::move(c), {desc.str(), "digital_net", Guarantee::none, perm});
}

PointSet rank1_lattice_powers(int base, int m, int dim) {
    if (dim < 1 || m < dim)
        fail(ErrorKind::invalid_parameter, "rank1_lattice_powers needs m >= d >= 1");
    const std::int64_t n = checked_points(base, m);
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(n * dim));
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t x = i;
        for (int j = 0; j < dim; ++j) {
            c.push_back(x);
            x = static_cast<std::int64_t>((static_cast<__int128>(x) * base) % n);
        }
    }
    return PointSet(dim, n, std::move(c),
                    {"rank1_lattice_powers(b=" + std::to_string(base) + ",m=" + std::to_string(m) +
                         ",d=" + std::to_string(dim) + ")",
                     "rank1_lattice_powers", Guarantee::nnld, false});
}

PointSet rank1_lattice(std::int64_t n, std::span<const std::int64_t> g) {
    if (n < 1)
        fail(ErrorKind::invalid_parameter, "rank1_lattice needs n >= 1");
    if (n > max_points)
        fail(ErrorKind::capacity, "rank1_lattice: n exceeds the 2^40 capacity limit");
    if (g.empty())
        fail(ErrorKind::invalid_parameter, "rank1_lattice needs a non-empty generating vector");
    for (auto gj : g)
        if (gj < 1)
            fail(ErrorKind::invalid_parameter, "generating vector components must be >= 1");
    const int d = static_cast<int>(g.size());
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(n * d));
    for (std::int64_t i = 0; i < n; ++i)
        for (auto gj : g)
            c.push_back(static_cast<std::int64_t>((static_cast<__int128>(i) * gj) % n));
    std::ostringstream desc;
    desc << "rank1_lattice(n=" << n << ",g=";
    for (int j = 0; j < d; ++j)
        desc << (j ? "," : "") << g[static_cast<std::size_t>(j)];
    desc << ")";
    return PointSet(d, n, std::move(c), {desc.str(), "rank1_lattice", Guarantee::none, false});
}

PointSet diagonal_lattice(std::int64_t n, int dim) {
    if (n < 1 || dim < 1)
        fail(ErrorKind::invalid_parameter, "diagonal_lattice needs n >= 1 and d >= 1");
    if (n > max_points)
        fail(ErrorKind::capacity, "diagonal_lattice: n exceeds the 2^40 capacity limit");
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(n * dim));
    for (std::int64_t k = 0; k < n; ++k)
        c.insert(c.end(), static_cast<std::size_t>(dim), k);
    return PointSet(dim, n, std::move(c),
                    {"diagonal_lattice(n=" + std::to_string(n) + ",d=" + std::to_string(dim) + ")",
                     "diagonal_lattice", Guarantee::nnld, false});
}

PointSet reflect(const PointSet& p) {
    std::vector<std::int64_t> c(p.numerators().begin(), p.numerators().end());
    for (auto& v : c)
        v = p.denominator() - v;
    return PointSet(p.dim(), p.denominator(), std::move(c),
                    {"reflect(" + p.provenance().description + ")", "reflect", Guarantee::none, false});
}

PointSet shift_reflect(const PointSet& p) {
    const std::int64_t den = checked_lcm(p.denominator(), p.size());
    const std::int64_t step = den / p.size();
    const PointSet s = p.rescaled(den);
    std::vector<std::int64_t> c(s.numerators().begin(), s.numerators().end());
    for (auto& v : c) {
        if (v > den - step)
            fail(ErrorKind::precondition, "shift_reflect needs every coordinate <= 1 - 1/n");
        v = den - step - v;
    }
    const auto& src = p.provenance();
    return PointSet(p.dim(), den, std::move(c),
                    {"shift_reflect(" + src.description + ")", "shift_reflect",
                     src.permutation_net ? Guarantee::nnld : Guarantee::none, false});
}

PointSet npld_transform(const PointSet& p) {
    if (p.dim() != 2)
        fail(ErrorKind::invalid_parameter, "npld_transform needs d = 2");
    const std::int64_t den = checked_lcm(p.denominator(), p.size());
    const std::int64_t step = den / p.size();
    const PointSet s = p.rescaled(den);
    std::vector<std::int64_t> c(s.numerators().begin(), s.numerators().end());
    for (std::size_t i = 0; i < c.size(); i += 2) {
        if (c[i] > den - step)
            fail(ErrorKind::precondition, "npld_transform needs first coordinates <= 1 - 1/n");
        c[i] += step;
        c[i + 1] = den - c[i + 1];
    }
    const auto& src = p.provenance();
    return PointSet(2, den, std::move(c),
                    {"npld_transform(" + src.description + ")", "npld_transform",
                     src.construction == "hammersley" ? Guarantee::npld : Guarantee::none, false});
}

PointSet cartesian_product(const PointSet& p, const PointSet& q) {
    const __int128 total = static_cast<__int128>(p.size()) * q.size();
    if (total > max_points)
        fail(ErrorKind::capacity, "cartesian product exceeds the 2^40 capacity limit");
    const std::int64_t den = checked_lcm(p.denominator(), q.denominator());
    const PointSet ps = p.rescaled(den);
    const PointSet qs = q.rescaled(den);
    const int d = p.dim() + q.dim();
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(total) * static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < ps.size(); ++i)
        for (std::int64_t k = 0; k < qs.size(); ++k) {
            auto a = ps.point(i);
            auto b = qs.point(k);
            c.insert(c.end(), a.begin(), a.end());
            c.insert(c.end(), b.begin(), b.end());
        }
    const Guarantee gp = p.provenance().guarantee;
    const Guarantee g = (gp == q.provenance().guarantee) ? gp : Guarantee::none;
    return PointSet(d, den, std::move(c),
                    {"product(" + p.provenance().description + "," + q.provenance().description + ")",
                     "cartesian_product", g, false});
}

} // namespace nnld
