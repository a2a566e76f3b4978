#pragma once

// Guaranteed integral bounds for integrands f with x -> f(1 - x) built from
// NNLD / NPLD point sets, plus the integrand fixtures and the comparison
// with Koksma-Hlawka intervals.

#include "nnld/error.hpp"
#include "nnld/pointset.hpp"
#include "nnld/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nnld {

/// f(x) = f(0) + lambda * nu([0, x]) on [0,1]^d.
struct CMIntegrand {
    int dim = 1;
    std::function<double(std::span<const double>)> eval;
    double f0 = 0;
    double f1 = 1;
    /// nu has a density; needed by the lower bound when NPLD points touch
    /// the upper faces of the cube.
    bool nu_absolutely_continuous = true;
    std::optional<double> exact_integral;
    /// Absolute accuracy of each evaluation.
    double eval_error = 0;
    std::string name;

    double operator()(std::span<const double> x) const { return eval(x); }
};

/// Pr(X1 <= x1, X2 <= x2) for a standard bivariate normal with correlation
/// rho, accurate to about 1e-13.
double bvn_cdf(double x1, double x2, double rho);

/// prod_j x_j, integral 2^-d.
CMIntegrand product_cm(int d);
/// The bivariate normal CDF restricted to [0,1]^2; named "bvn07" for rho = 0.7.
CMIntegrand bvn_integrand(double rho = 0.7);
CMIntegrand constant_integrand(int d, double c);

/// An atom of a discrete measure: weight w at location a.
struct WeightedAtom {
    double weight;
    std::vector<double> location;
};

/// f(x) = sum_a w_a 1{a <= x}; its measure is discrete, so it is never
/// flagged absolutely continuous.  Integral sum_a w_a prod_j (1 - a_j).
CMIntegrand table_integrand(int d, std::vector<WeightedAtom> atoms);
/// Rows "w,a_1,...,a_d"; blank lines and lines starting with '#' are skipped.
std::vector<WeightedAtom> read_atoms(std::istream& is, int d);

enum class SideStatus { certified, trusted };

const char* to_string(SideStatus s) noexcept;

struct BoundOptions {
    /// Skip certification for theorem-backed constructions.
    bool trust_construction = false;
    Budget budget{};
};

struct BoundSide {
    double value = 0;
    std::int64_t n = 0;
    SideStatus status = SideStatus::certified;
    std::string provenance;
};

/// Mean of f(1 - q_i).  Q must be certified or theorem-backed NNLD;
/// otherwise the call is refused.
BoundSide upper_bound(const CMIntegrand& f, const PointSet& q, const BoundOptions& opts = {});
/// Mean of f(1 - q_i) over NPLD points.  Also refuses when a point has some
/// but not all coordinates equal to 1 and nu is not absolutely continuous.
BoundSide lower_bound(const CMIntegrand& f, const PointSet& q, const BoundOptions& opts = {});

struct BracketResult {
    std::optional<BoundSide> lower;
    BoundSide upper;
    std::int64_t n = 0;
    std::int64_t evaluations = 0;
    /// Why `lower` is missing.
    std::string lower_note;
    double eval_error = 0;

    std::optional<double> width() const {
        if (!lower)
            return std::nullopt;
        return upper.value - lower->value;
    }
};

/// Point sets with b^m points: Hammersley and its NPLD transform for d = 2,
/// the two 1-d grids for d = 1, and a shift-reflected permutation net for
/// the upper side when d >= 3 (no lower side there).
BracketResult bracket(const CMIntegrand& f, int b, int m, const BoundOptions& opts = {});

/// Permutations used for the upper side at d >= 3.
std::vector<Permutation> default_permutations(int m, int d);

/// mu_hat -+ Dstar * V with mu_hat the plain mean over P and V defaulting to
/// |f(0) - f(1)|.
std::pair<double, double> kh_interval(const CMIntegrand& f, const PointSet& p, const Rational& dstar,
                                      std::optional<double> variation = std::nullopt);

/// 3 f(1,1) - 2 f(0,1) - 2 f(1,0) + f(0,0).
double vhk_2d_smooth(const CMIntegrand& f);

struct CMCheckResult {
    bool passed = true;
    /// Smallest Delta_u seen, and the subset (1-based) that produced it.
    double worst = 0;
    std::vector<int> worst_subset;
    std::vector<double> worst_x;
    std::vector<double> worst_z;
    std::uint64_t trials = 0;
};

/// Samples x <= z and non-empty u, failing when
/// Delta_u(x, z) < -2^|u| eps_f.
CMCheckResult check_complete_monotone_sampled(const CMIntegrand& f, std::uint64_t trials,
                                              std::uint64_t seed = 20240917);

/// Summation by a fixed binary tree, so results do not depend on evaluation
/// order.
double pairwise_sum(std::span<const double> v);

/// Header of the bracket CSV.
std::string bracket_csv_header();
/// `m,n,lower,upper,width,n_width,n_width_over_log_n`, 17 significant
/// digits; "na" where a value is not available.
std::string bracket_csv_row(int m, const BracketResult& r);

struct Figure2Row {
    int m = 0;
    std::int64_t n = 0;
    double lower = 0;
    double upper = 0;
    double width = 0;
    Rational dstar_2n;
    double vhk = 0;
    double kh_width = 0;
    /// width / (2 D*_{2n} V_HK)
    double ratio = 0;
};

/// One row per m in [m_lo, m_hi] for the bivariate normal integrand.
std::vector<Figure2Row> figure2_rows(int m_lo, int m_hi, const BoundOptions& opts = {});
std::string figure2_csv_header();
std::string figure2_csv_row(const Figure2Row& r);

/// %.17g
std::string format_double(double v);

} // namespace nnld
