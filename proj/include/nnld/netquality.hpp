#pragma once

// Quality of digital nets: the rank criterion rho, t-values checked by
// counting points in elementary intervals, permutation orderings for d = 3
// and d = 4, and the exhaustive search for NNLD-producing generators.

#include "nnld/error.hpp"
#include "nnld/pointset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nnld {

/// prod_j [a_j / b^k_j, (a_j + 1) / b^k_j)
struct ElementaryInterval {
    int base;
    std::vector<int> k;
    std::vector<std::int64_t> a;

    /// Throws invalid_parameter unless 0 <= a_j < b^k_j.
    void validate() const;
    bool contains(const PointSet& p, std::int64_t i) const;
};

/// Rank over Z_b of a rows x cols matrix given row-major; b must be prime.
int rank_mod_prime(std::vector<int> entries, int rows, int cols, int b);

bool is_prime(int b) noexcept;

/// Largest rho such that every stack of leading rows with |m| = rho has
/// rank rho.  Prime b uses Gaussian elimination; composite b is accepted
/// only for one-hot generators, whose rank is the number of distinct rows.
int rho(const DigitalNetSpec& spec);

/// True iff every elementary interval with sum k_j = m - t holds exactly
/// b^t points.
bool verify_net_parameter(const PointSet& p, int b, int m, int d, int t, Budget budget = {});

/// Smallest t in 0..m for which the net property holds.
int exact_t(const PointSet& p, int b, int m, int d, Budget budget = {});

/// Columns of the preferred row ordering for d = 3, m = 3l.
std::vector<Permutation> perm_ordering_d3(int l);
/// Rotation ordering for d = 4, m = 4l: r_1..r_l, then r'_i, r''_i, r'''_i
/// for i = l down to 1.
std::vector<Permutation> perm_ordering_d4(int l);

/// (d - 2) floor(m/d) + (m mod d) - 1; may be negative.
int t_lower_bound_perm(int d, int m);

struct QualityReport {
    int rho = 0;
    int t_from_rho = 0;
    std::optional<int> t_verified;
    bool bound_ok = true;
};

/// `rho=<r> t=<t> t_verified=<t|na> bound_ok=<bool>`
std::string format_quality(const QualityReport& q);

/// rho and optionally the enumerated t.  bound_ok compares the best known t
/// against t_lower_bound_perm when all generators are permutation matrices.
QualityReport quality_report(const DigitalNetSpec& spec, bool verify_t, Budget budget = {});

struct GeneratorSearchResult {
    std::vector<GeneratorMatrix> matrices;  // lexicographic entry order
    std::uint64_t examined = 0;
    std::uint64_t passed_prefilter = 0;
    std::uint64_t nonsingular_after_prefilter = 0;
    /// Set when the complement of the prefilter was certified too.
    bool prefilter_checked = false;
    /// Nonsingular matrices failing the prefilter whose nets were NNLD.
    std::uint64_t prefilter_misses = 0;
};

/// With C1 = I_m fixed, every nonsingular C2 over Z_2 whose raw digital net
/// is certified NNLD.  Rows of even weight are rejected before
/// certification; with `check_prefilter` the rejected nonsingular matrices
/// are certified as well to confirm nothing was lost.
GeneratorSearchResult search_nnld_generators(int m, int b = 2, Budget budget = {},
                                             bool check_prefilter = true);

/// One matrix per line as m^2 base-b digits, row-major.
std::string format_matrix_line(const GeneratorMatrix& c);
/// Inverse of format_matrix_line, one matrix per non-empty line; lines
/// starting with '#' are skipped.
DigitalNetSpec parse_generator_lines(int base, std::string_view text);

/// {k * alpha * 1 : k = 0..b-1} with alpha = (1 - b^-m) / (b - 1), over b^m.
PointSet cyclic_diag_subgroup(int b, int m, int d);

} // namespace nnld
