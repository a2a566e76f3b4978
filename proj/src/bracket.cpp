#include "nnld/bracket.hpp"

#include "nnld/discrepancy.hpp"
#include "nnld/netquality.hpp"

#include <cmath>
#include <cstdio>

namespace nnld {

namespace {

// mean over i of f(1 - q_i)
double reflected_mean(const CMIntegrand& f, const PointSet& q) {
    const int d = q.dim();
    const double den = static_cast<double>(q.denominator());
    std::vector<double> values(static_cast<std::size_t>(q.size()));
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < q.size(); ++i) {
        for (int j = 0; j < d; ++j)
            x[static_cast<std::size_t>(j)] = static_cast<double>(q.denominator() - q.numerator(i, j)) / den;
        values[static_cast<std::size_t>(i)] = f(x);
    }
    return pairwise_sum(values) / static_cast<double>(q.size());
}

SideStatus establish(const PointSet& q, Guarantee want, const BoundOptions& opts) {
    const auto& prov = q.provenance();
    const bool backed = prov.guarantee == want;
    const char* property = want == Guarantee::nnld ? "NNLD" : "NPLD";
    if (backed && opts.trust_construction)
        return SideStatus::trusted;
    DiscrepancyReport r;
    try {
        r = want == Guarantee::nnld ? verify_nnld(q, opts.budget) : verify_npld(q, opts.budget);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::budget_exceeded)
            throw;
        if (backed)
            return SideStatus::trusted;
        fail(ErrorKind::refused, std::string("cannot certify ") + prov.description + " as " + property +
                                     " within the budget and the construction carries no guarantee");
    }
    if (!r.certified())
        fail(ErrorKind::refused, prov.description + " is not " + property + ": " + format_report(r));
    return SideStatus::certified;
}

void check_dims(const CMIntegrand& f, const PointSet& q) {
    if (f.dim != q.dim())
        fail(ErrorKind::invalid_parameter, "integrand " + f.name + " has d=" + std::to_string(f.dim) +
                                               " but the point set has d=" + std::to_string(q.dim()));
}

std::string fmt_or_na(const std::optional<double>& v) {
    return v ? format_double(*v) : "na";
}

} // namespace

const char* to_string(SideStatus s) noexcept {
    return s == SideStatus::certified ? "certified" : "trusted";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0;
        for (double x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

BoundSide upper_bound(const CMIntegrand& f, const PointSet& q, const BoundOptions& opts) {
    check_dims(f, q);
    const SideStatus status = establish(q, Guarantee::nnld, opts);
    return {reflected_mean(f, q), q.size(), status, q.provenance().description};
}

BoundSide lower_bound(const CMIntegrand& f, const PointSet& q, const BoundOptions& opts) {
    check_dims(f, q);
    if (!f.nu_absolutely_continuous) {
        for (std::int64_t i = 0; i < q.size(); ++i) {
            int ones = 0;
            for (auto v : q.point(i))
                ones += v == q.denominator();
            if (ones > 0 && ones < q.dim())
                fail(ErrorKind::refused,
                     "point " + std::to_string(i) + " of " + q.provenance().description +
                         " has some but not all coordinates equal to 1, and the measure of " + f.name +
                         " is not absolutely continuous");
        }
    }
    const SideStatus status = establish(q, Guarantee::npld, opts);
    return {reflected_mean(f, q), q.size(), status, q.provenance().description};
}

std::vector<Permutation> default_permutations(int m, int d) {
    if (d < 1 || m < 1)
        fail(ErrorKind::invalid_parameter, "default_permutations needs d >= 1 and m >= 1");
    if (d == 3 && m % 3 == 0)
        return perm_ordering_d3(m / 3);
    if (d == 4 && m % 4 == 0)
        return perm_ordering_d4(m / 4);
    std::vector<Permutation> perms{Permutation::identity(m)};
    for (int j = 1; j < d; ++j) {
        // reversal followed by a cyclic shift of j - 1
        std::vector<int> images(static_cast<std::size_t>(m));
        for (int k = 1; k <= m; ++k)
            images[static_cast<std::size_t>(k - 1)] = (m - k + j - 1) % m + 1;
        perms.emplace_back(std::move(images));
    }
    return perms;
}

BracketResult bracket(const CMIntegrand& f, int b, int m, const BoundOptions& opts) {
    if (m < 1)
        fail(ErrorKind::invalid_parameter, "bracket needs m >= 1");
    const std::int64_t n = checked_points(b, m);
    BracketResult r;
    r.n = n;
    r.eval_error = f.eval_error;
    if (f.dim == 1) {
        r.upper = upper_bound(f, grid_1d(n), opts);
        r.lower = lower_bound(f, shifted_grid_1d(n), opts);
    } else if (f.dim == 2) {
        const PointSet h = hammersley(b, m);
        r.upper = upper_bound(f, h, opts);
        r.lower = lower_bound(f, npld_transform(h), opts);
    } else {
        const auto perms = default_permutations(m, f.dim);
        r.upper = upper_bound(f, shift_reflect(permutation_net(b, m, perms)), opts);
        r.lower_note = "no NPLD construction for d >= 3";
    }
    r.evaluations = r.lower ? 2 * n : n;
    return r;
}

std::pair<double, double> kh_interval(const CMIntegrand& f, const PointSet& p, const Rational& dstar,
                                      std::optional<double> variation) {
    check_dims(f, p);
    std::vector<double> values(static_cast<std::size_t>(p.size()));
    std::vector<double> x(static_cast<std::size_t>(p.dim()));
    for (std::int64_t i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p.dim(); ++j)
            x[static_cast<std::size_t>(j)] = p.value(i, j);
        values[static_cast<std::size_t>(i)] = f(x);
    }
    const double mean = pairwise_sum(values) / static_cast<double>(p.size());
    const double v = variation.value_or(std::abs(f.f0 - f.f1));
    const double half = to_double(dstar) * v;
    return {mean - half, mean + half};
}

std::string bracket_csv_header() {
    return "m,n,lower,upper,width,n_width,n_width_over_log_n";
}

std::string bracket_csv_row(int m, const BracketResult& r) {
    const auto w = r.width();
    std::optional<double> nw, nwl;
    if (w) {
        nw = static_cast<double>(r.n) * *w;
        if (r.n > 1)
            nwl = *nw / std::log(static_cast<double>(r.n));
    }
    std::optional<double> lo;
    if (r.lower)
        lo = r.lower->value;
    return std::to_string(m) + "," + std::to_string(r.n) + "," + fmt_or_na(lo) + "," +
           format_double(r.upper.value) + "," + fmt_or_na(w) + "," + fmt_or_na(nw) + "," + fmt_or_na(nwl);
}

std::vector<Figure2Row> figure2_rows(int m_lo, int m_hi, const BoundOptions& opts) {
    if (m_lo < 1 || m_hi < m_lo || m_hi > 30)
        fail(ErrorKind::invalid_parameter, "figure2 needs 1 <= m_lo <= m_hi <= 30");
    const CMIntegrand f = bvn_integrand(0.7);
    const double vhk = vhk_2d_smooth(f);
    std::vector<Figure2Row> rows;
    for (int m = m_lo; m <= m_hi; ++m) {
        const BracketResult r = bracket(f, 2, m, opts);
        Figure2Row row;
        row.m = m;
        row.n = r.n;
        row.lower = r.lower->value;
        row.upper = r.upper.value;
        row.width = *r.width();
        row.dstar_2n = hammersley_star_disc_formula(m + 1);
        row.vhk = vhk;
        row.kh_width = 2 * to_double(row.dstar_2n) * vhk;
        row.ratio = row.width / row.kh_width;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string figure2_csv_header() {
    return "m,n,lower,upper,width,dstar_2n,dstar_2n_value,vhk,kh_width,ratio,kh_over_bracket";
}

std::string figure2_csv_row(const Figure2Row& r) {
    return std::to_string(r.m) + "," + std::to_string(r.n) + "," + format_double(r.lower) + "," +
           format_double(r.upper) + "," + format_double(r.width) + "," + to_string(r.dstar_2n) + "," +
           format_double(to_double(r.dstar_2n)) + "," + format_double(r.vhk) + "," + format_double(r.kh_width) +
           "," + format_double(r.ratio) + "," + format_double(1 / r.ratio);
}

} // namespace nnld
