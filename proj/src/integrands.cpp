#include "nnld/bracket.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <random>
#include <sstream>

namespace nnld {

namespace {

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace

double bvn_cdf(double x1, double x2, double rho) {
    if (!std::isfinite(x1) || !std::isfinite(x2) || !std::isfinite(rho))
        fail(ErrorKind::invalid_parameter, "bvn_cdf needs finite arguments");
    if (std::abs(rho) >= 1)
        fail(ErrorKind::invalid_parameter, "bvn_cdf needs |rho| < 1");
    // Phi2(h,k,rho) = Phi(h) Phi(k) + (1/2pi) int_0^asin(rho) g(theta) dtheta
    // with g = exp(-(h^2 - 2hk sin t + k^2) / (2 cos^2 t)), obtained from the
    // correlation integral by r = sin t.
    const double h = x1, k = x2;
    auto g = [h, k](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        return std::exp(-(h * h - 2 * h * k * s + k * k) / (2 * c * c));
    };
    const double top = std::asin(rho);
    constexpr int panels = 16;
    double acc = 0;
    for (int p = 0; p < panels; ++p) {
        const double a = top * p / panels;
        const double b = top * (p + 1) / panels;
        acc += boost::math::quadrature::gauss<double, 20>::integrate(g, a, b);
    }
    const double v = std_normal_cdf(h) * std_normal_cdf(k) + acc / (2 * std::numbers::pi);
    return std::clamp(v, 0.0, 1.0);
}

CMIntegrand product_cm(int d) {
    if (d < 1)
        fail(ErrorKind::invalid_parameter, "product_cm needs d >= 1");
    CMIntegrand f;
    f.dim = d;
    f.eval = [d](std::span<const double> x) {
        double v = 1;
        for (int j = 0; j < d; ++j)
            v *= x[static_cast<std::size_t>(j)];
        return v;
    };
    f.f0 = 0;
    f.f1 = 1;
    f.nu_absolutely_continuous = true;
    f.exact_integral = std::ldexp(1.0, -d);
    f.eval_error = 0;
    f.name = "product" + std::to_string(d);
    return f;
}

CMIntegrand bvn_integrand(double rho) {
    CMIntegrand f;
    f.dim = 2;
    bvn_cdf(0, 0, rho);  // validates rho
    f.eval = [rho](std::span<const double> x) { return bvn_cdf(x[0], x[1], rho); };
    f.f0 = bvn_cdf(0, 0, rho);
    f.f1 = bvn_cdf(1, 1, rho);
    f.nu_absolutely_continuous = true;
    f.eval_error = 1e-10;
    if (rho == 0.7) {
        f.name = "bvn07";
    } else {
        std::ostringstream os;
        os << "bvn(rho=" << rho << ")";
        f.name = os.str();
    }
    return f;
}

CMIntegrand constant_integrand(int d, double c) {
    if (d < 1)
        fail(ErrorKind::invalid_parameter, "constant integrand needs d >= 1");
    CMIntegrand f;
    f.dim = d;
    f.eval = [c](std::span<const double>) { return c; };
    f.f0 = c;
    f.f1 = c;
    f.nu_absolutely_continuous = true;
    f.exact_integral = c;
    f.eval_error = 0;
    f.name = "const";
    return f;
}

CMIntegrand table_integrand(int d, std::vector<WeightedAtom> atoms) {
    if (d < 1)
        fail(ErrorKind::invalid_parameter, "table integrand needs d >= 1");
    double total = 0, at_origin = 0, mu = 0;
    for (const auto& a : atoms) {
        if (static_cast<int>(a.location.size()) != d)
            fail(ErrorKind::invalid_parameter, "atom has " + std::to_string(a.location.size()) +
                                                   " coordinates, expected " + std::to_string(d));
        if (!(a.weight >= 0) || !std::isfinite(a.weight))
            fail(ErrorKind::invalid_parameter, "atom weights must be finite and non-negative");
        double mass = a.weight;
        bool origin = true;
        for (double c : a.location) {
            if (!(c >= 0 && c <= 1))
                fail(ErrorKind::invalid_parameter, "atom locations must lie in [0,1]^d");
            mass *= 1 - c;
            origin = origin && c == 0;
        }
        total += a.weight;
        mu += mass;
        if (origin)
            at_origin += a.weight;
    }
    CMIntegrand f;
    f.dim = d;
    f.eval = [atoms = std::move(atoms)](std::span<const double> x) {
        double v = 0;
        for (const auto& a : atoms) {
            bool below = true;
            for (std::size_t j = 0; j < x.size() && below; ++j)
                below = a.location[j] <= x[j];
            if (below)
                v += a.weight;
        }
        return v;
    };
    f.f0 = at_origin;
    f.f1 = total;
    f.nu_absolutely_continuous = false;
    f.exact_integral = mu;
    f.eval_error = 4 * DBL_EPSILON * total;
    f.name = "table";
    return f;
}

std::vector<WeightedAtom> read_atoms(std::istream& is, int d) {
    std::vector<WeightedAtom> atoms;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            while (end && (*end == ' ' || *end == '\t'))
                ++end;
            if (cell.empty() || end == cell.c_str() || *end != '\0')
                fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            fields.push_back(v);
        }
        if (static_cast<int>(fields.size()) != d + 1)
            fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected w and " + std::to_string(d) +
                                       " coordinates");
        atoms.push_back({fields[0], std::vector<double>(fields.begin() + 1, fields.end())});
    }
    return atoms;
}

double vhk_2d_smooth(const CMIntegrand& f) {
    if (f.dim != 2)
        fail(ErrorKind::invalid_parameter, "vhk_2d_smooth needs d = 2");
    const double c00[] = {0, 0}, c01[] = {0, 1}, c10[] = {1, 0}, c11[] = {1, 1};
    return 3 * f(c11) - 2 * f(c01) - 2 * f(c10) + f(c00);
}

CMCheckResult check_complete_monotone_sampled(const CMIntegrand& f, std::uint64_t trials, std::uint64_t seed) {
    const int d = f.dim;
    if (d < 1 || d > 20)
        fail(ErrorKind::invalid_parameter, "sampled check supports 1 <= d <= 20");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> pick(1, (1U << d) - 1);

    CMCheckResult res;
    bool first = true;
    std::vector<double> x(static_cast<std::size_t>(d)), z(x.size()), y(x.size());
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int j = 0; j < d; ++j) {
            const auto sj = static_cast<std::size_t>(j);
            x[sj] = unif(rng);
            z[sj] = x[sj] + (1 - x[sj]) * unif(rng);
        }
        const std::uint32_t u = pick(rng);
        // Delta_u = sum over v subset of u of (-1)^{|u|-|v|} f(z on v, x elsewhere)
        double delta = 0;
        for (std::uint32_t v = u;; v = (v - 1) & u) {
            for (int j = 0; j < d; ++j)
                y[static_cast<std::size_t>(j)] = ((v >> j) & 1U) ? z[static_cast<std::size_t>(j)] : x[static_cast<std::size_t>(j)];
            const int sign = (std::popcount(u) - std::popcount(v)) % 2 ? -1 : 1;
            delta += sign * f(y);
            if (v == 0)
                break;
        }
        ++res.trials;
        if (delta < -std::ldexp(f.eval_error, std::popcount(u)))
            res.passed = false;
        if (first || delta < res.worst) {
            first = false;
            res.worst = delta;
            res.worst_subset.clear();
            for (int j = 0; j < d; ++j)
                if ((u >> j) & 1U)
                    res.worst_subset.push_back(j + 1);
            res.worst_x = x;
            res.worst_z = z;
        }
    }
    return res;
}

} // namespace nnld
