#pragma once

// Exact local discrepancy and NNLD/NPLD certification.
//
// delta(z)    = #{i : x_i <  z} / n - prod_j z_j    (half-open anchored box)
// delta_bar(z)= #{i : x_i <= z} / n - prod_j z_j    (closed anchored box)
//
// Certification searches the finitely many corners at which the extreme
// values of delta are attained:
//  * inf delta is attained at corners whose coordinates are point
//    coordinates or 1 (the open count is constant on each grid cell and the
//    volume is largest at the cell's upper corner);
//  * sup delta is the closed discrepancy at lower corners with every
//    coordinate below 1.
// The search is a branch and bound over index boxes of that grid: a box is
// dropped when the count at its lower end against the volume at its upper
// end (or the reverse, for sup) cannot violate.  Boxes are split high half
// first, so the reported witness is the lexicographically largest violating
// corner.  All comparisons are integer cross-multiplications.

#include "nnld/error.hpp"
#include "nnld/pointset.hpp"
#include "nnld/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nnld {

enum class Verdict { certified_nnld, certified_npld, refuted, star_value };

const char* to_string(Verdict v) noexcept;

struct DiscrepancyReport {
    Verdict verdict = Verdict::refuted;
    /// On refutation the witness corner, otherwise the extremal corner.
    std::vector<Rational> corner;
    /// delta (open box) or delta_bar (closed box) at `corner`, whichever the
    /// check is phrased in.
    Rational delta;
    std::uint64_t boxes = 0;

    bool certified() const noexcept {
        return verdict == Verdict::certified_nnld || verdict == Verdict::certified_npld;
    }
};

/// `verdict=<...> witness=<num/den,...> delta=<num/den> boxes=<count>`
std::string format_report(const DiscrepancyReport& r);

Rational local_disc_open(const PointSet& p, std::span<const Rational> z);
Rational local_disc_closed(const PointSet& p, std::span<const Rational> z);

DiscrepancyReport verify_nnld(const PointSet& p, Budget budget = {});
DiscrepancyReport verify_npld(const PointSet& p, Budget budget = {});

/// Exact D_n* over the corners prod_j (V_j u {1}); the report carries the
/// extremal corner and the signed local discrepancy there.
std::pair<Rational, DiscrepancyReport> star_discrepancy(const PointSet& p, Budget budget = {});

/// Closed form for base-2 Hammersley sets with n = 2^m points.
Rational hammersley_star_disc_formula(int m);

struct PrecheckResult {
    std::string check;
    bool applicable = true;
    bool passed = true;
};

/// Necessary conditions for NNLD.  Any failed applicable check rules NNLD out.
std::vector<PrecheckResult> structural_prechecks(const PointSet& p);

bool is_projection_regular(const PointSet& p);

} // namespace nnld
