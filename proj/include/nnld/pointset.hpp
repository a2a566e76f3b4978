#pragma once

// Exact-coordinate point sets in [0,1]^d and the constructions that produce
// them.  Every coordinate is an integer numerator over one denominator that
// is shared by the whole set, so all downstream predicates can be evaluated
// with integer arithmetic only.
//
// Digit convention used throughout: i = sum_k a_{i,k} b^(k-1), so a_{i,1} is
// the least significant base-b digit of the index i.

#include "nnld/error.hpp"
#include "nnld/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nnld {

/// What a construction guarantees about its own local discrepancy.
enum class Guarantee { none, nnld, npld };

const char* to_string(Guarantee g) noexcept;

/// Construction descriptor carried along with a point set.  Only the
/// `description` survives a CSV round trip; the guarantee and the
/// permutation-net flag are granted by in-memory constructions alone.
struct Provenance {
    std::string description;
    std::string construction;
    Guarantee guarantee = Guarantee::none;
    bool permutation_net = false;
};

class PointSet {
public:
    /// `numerators` is row-major, n x dim.  Validates every invariant.
    PointSet(int dim, std::int64_t denominator, std::vector<std::int64_t> numerators,
             Provenance provenance = {});

    int dim() const noexcept { return dim_; }
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(coords_.size()) / dim_; }
    std::int64_t denominator() const noexcept { return denominator_; }

    std::int64_t numerator(std::int64_t i, int j) const { return coords_[static_cast<std::size_t>(i) * dim_ + j]; }
    std::span<const std::int64_t> point(std::int64_t i) const {
        return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
    }
    std::span<const std::int64_t> numerators() const noexcept { return coords_; }

    Rational coordinate(std::int64_t i, int j) const;
    double value(std::int64_t i, int j) const {
        return static_cast<double>(numerator(i, j)) / static_cast<double>(denominator_);
    }

    const Provenance& provenance() const noexcept { return provenance_; }

    /// Same coordinates over an equal denominator, in the same order.
    bool same_points(const PointSet& other) const noexcept;

    /// Multiset equality: same points regardless of order, after bringing
    /// both sets to a common denominator.
    bool same_multiset(const PointSet& other) const;

    /// Copy with every numerator scaled so the denominator becomes `den`.
    /// `den` must be a multiple of the current denominator.
    PointSet rescaled(std::int64_t den) const;

private:
    int dim_;
    std::int64_t denominator_;
    std::vector<std::int64_t> coords_;
    Provenance provenance_;
};

/// A bijection of {1..m}, stored by its images.
class Permutation {
public:
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int m);
    static Permutation reversal(int m);

    int size() const noexcept { return static_cast<int>(images_.size()); }
    /// pi(k) for k in 1..m.
    int operator()(int k) const { return images_[static_cast<std::size_t>(k - 1)]; }
    const std::vector<int>& images() const noexcept { return images_; }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

/// m x m matrix over Z_b.
class GeneratorMatrix {
public:
    GeneratorMatrix(int base, int m, std::vector<int> entries);

    static GeneratorMatrix identity(int base, int m);
    static GeneratorMatrix reversed_identity(int base, int m);
    /// Row r has its single 1 in column pi(r).
    static GeneratorMatrix from_permutation(int base, const Permutation& pi);

    int base() const noexcept { return base_; }
    int m() const noexcept { return m_; }
    int at(int row, int col) const { return entries_[static_cast<std::size_t>(row) * m_ + col]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    /// Exactly one 1 per row and zeros elsewhere.
    bool is_one_hot() const noexcept;
    bool is_permutation() const noexcept;

    bool operator==(const GeneratorMatrix&) const = default;
    auto operator<=>(const GeneratorMatrix& o) const { return entries_ <=> o.entries_; }

private:
    int base_;
    int m_;
    std::vector<int> entries_;
};

struct DigitalNetSpec {
    int base;
    int m;
    std::vector<GeneratorMatrix> matrices;

    int dim() const noexcept { return static_cast<int>(matrices.size()); }
    /// Throws invalid_parameter when matrices disagree on b or m.
    void validate() const;
};

/// b^m, refusing anything above 2^40 points.
std::int64_t checked_points(int base, int m);

PointSet grid_1d(std::int64_t n);
/// {1/n, 2/n, ..., 1}: the right-endpoint companion of grid_1d, NPLD in d=1.
PointSet shifted_grid_1d(std::int64_t n);
PointSet hammersley(int base, int m);
PointSet permutation_net(int base, int m, std::span<const Permutation> perms);
PointSet digital_net(const DigitalNetSpec& spec);
PointSet rank1_lattice_powers(int base, int m, int dim);
PointSet rank1_lattice(std::int64_t n, std::span<const std::int64_t> g);
PointSet diagonal_lattice(std::int64_t n, int dim);

PointSet reflect(const PointSet& p);
PointSet shift_reflect(const PointSet& p);
PointSet npld_transform(const PointSet& p);
/// Q index varies fastest.
PointSet cartesian_product(const PointSet& p, const PointSet& q);

// CSV: "# d=<d> n=<n> den=<den> provenance=<text>" then one row of
// comma-separated numerators per point.
void write_csv(std::ostream& os, const PointSet& p);
std::string to_csv(const PointSet& p);
PointSet read_csv(std::istream& is);
PointSet read_csv_file(const std::string& path);

} // namespace nnld
