#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hahn/report.hpp"
#include "hahn/series.hpp"

namespace hahn::witness {

/// Generation caps for the recursive prime-power families: the largest
/// outer prime index, the largest innermost exponent index, and the
/// largest element size in bits. Fixed caps make generation
/// deterministic and fragments finite.
struct TowerCaps {
    std::size_t max_outer_index = 2;
    std::size_t max_exponent_index = 3;
    std::size_t max_bits = 4096;
};

/// Intermediate tower exponents above this are refused outright.
constexpr std::size_t kDefaultExponentGuard = 1u << 20;

/// The i-th prime (2, 3, 5, ...).
const BigInt& nth_prime(std::size_t i);

/// The nested parameter chain f_n = sum of the monomials at the first
/// n+1 exponents. Input must be strictly increasing with length >= 2.
std::vector<Series> sop_chain(const std::vector<GroupElement>& thetas);

/// True iff the chain's solution sets over the universe (under the
/// support relation) form a strictly increasing inclusion chain.
bool verify_sop(const std::vector<Series>& chain, const std::vector<Series>& universe);

/// Level-0 family: powers p_j^e with 1 <= e <= max_exponent_index.
/// Level i >= 1: p_n^m with 0 <= n <= max_outer_index and m drawn from
/// the level-(i-1) family; elements above max_bits bits are left out.
/// Levels above 2 are refused (magnitudes explode).
std::set<BigInt> prime_tower_fragment(std::size_t level, std::size_t j, const TowerCaps& caps);

/// The right-associated tower p_{alpha(0)}^(p_{alpha(1)}^(...)). Length
/// at most 3; throws GuardError when an intermediate exponent exceeds
/// the guard.
BigInt tower_element(const std::vector<std::size_t>& alpha,
                     std::size_t exponent_guard = kDefaultExponentGuard);

/// The tower for alpha lands in the level-i family at column alpha(i),
/// for every i; checked by regenerating each family with caps just large
/// enough to contain the tower.
bool verify_path_intersection(const std::vector<std::size_t>& alpha, const TowerCaps& caps);

/// Families at one level with different columns are disjoint; checked by
/// exhaustive intersection at matched caps and, independently, by the
/// factorization audit.
bool verify_row_disjointness(std::size_t level, std::size_t j, std::size_t k,
                             const TowerCaps& caps);

/// The full factor structure of a family element: the prime index at
/// each level from the outside in, and the innermost exponent.
struct TowerFactorization {
    std::vector<std::size_t> prime_indices;  // outermost first; last = column j
    BigInt innermost_exponent;               // >= 1
};

/// Recovers the construction indices of v as a level-`level` element, or
/// nullopt when v has no such factorization.
std::optional<TowerFactorization> factor_tower_element(const BigInt& v, std::size_t level);

/// Every fragment element factors back to the column that generated it,
/// within the caps, and reconstruction round-trips.
bool audit_fragment(const std::set<BigInt>& fragment, std::size_t level, std::size_t j,
                    const TowerCaps& caps);

struct GridCell {
    std::set<BigInt> fragment;
    Series parameter;  // sum of t^a over the fragment, value group Int
};

/// A depth x width array of parameters, row i built from the level-i
/// families: cell (i, j) holds the generated fragment and its series.
struct WitnessGrid {
    std::size_t depth = 0;
    std::size_t width = 0;
    TowerCaps caps;
    std::vector<std::vector<GridCell>> cells;  // [row][column]
};

WitnessGrid tp2_grid(std::size_t depth, std::size_t width, const TowerCaps& caps);

/// All width^depth row-to-column maps.
std::vector<std::vector<std::size_t>> all_paths(std::size_t depth, std::size_t width);

/// Path consistency (an explicit tower monomial satisfies every row of
/// the path, against parameters regenerated with covering caps) plus
/// row inconsistency (no universe monomial satisfies two cells of one
/// row; fragments disjoint; factorization audit).
Report verify_tp2(const WitnessGrid& grid, const std::vector<std::vector<std::size_t>>& paths);

/// Which side of the support relation the instance's points occupy.
enum class PointParamRel { Direct, Opposite };

/// A shattering instance: target points, one parameter per subset of the
/// point index set (keyed by bitmask), and the relation orientation.
struct ShatterInstance {
    std::vector<Series> points;
    std::map<std::uint64_t, Series> params;
    PointParamRel rel = PointParamRel::Direct;

    bool holds(const Series& point, const Series& param) const;
};

/// True iff every indexed subset is exactly traced by its parameter;
/// with only_shatters also: no universe element outside the points
/// satisfies the relation against any parameter.
bool check_shatters(const ShatterInstance& inst, const std::vector<Series>& universe,
                    bool only_shatters);

/// The canonical instance: points t^0..t^{size-1} with all subset-sum
/// parameters. size <= 20.
ShatterInstance subset_sum_instance(std::size_t size);

/// Exchanges point and parameter roles: the points of the result are the
/// parameters at the principal filters of {0,...,rows-1}, its parameters
/// the old points indexed by subsets. Requires the input to have exactly
/// 2^rows points (indexed by the subsets of {0,...,rows-1}) and
/// parameters for at least the principal-filter masks.
ShatterInstance opposite_instance(const ShatterInstance& inst, std::size_t rows);

}  // namespace hahn::witness
