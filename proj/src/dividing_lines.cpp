#include "hahn/dividing_lines.hpp"

#include <algorithm>

#include "hahn/interpretation.hpp"

namespace hahn::witness {

namespace {

Coefficient rat_one() { return Coefficient::from_rat(BigRat(1)); }

Series int_monomial(const BigInt& exponent) {
    return Series::monomial(GroupElement::from_int(exponent), rat_one());
}

}  // namespace

namespace {
constexpr std::size_t kPrimeTableSize = 64;
}

const BigInt& nth_prime(std::size_t i) {
    // A fixed table, filled once under the magic-static guarantee, keeps
    // concurrent fragment generation free of shared mutable state.
    static const std::vector<BigInt> primes = [] {
        std::vector<BigInt> table = {2, 3};
        while (table.size() < kPrimeTableSize) {
            BigInt candidate = table.back() + 2;
            for (;;) {
                bool is_prime = true;
                for (const BigInt& p : table) {
                    if (p * p > candidate) break;
                    if (candidate % p == 0) {
                        is_prime = false;
                        break;
                    }
                }
                if (is_prime) break;
                candidate += 2;
            }
            table.push_back(candidate);
        }
        return table;
    }();
    if (i >= primes.size())
        throw UsageError("prime index " + std::to_string(i) + " is outside the supported table");
    return primes[i];
}

std::vector<Series> sop_chain(const std::vector<GroupElement>& thetas) {
    if (thetas.size() < 2) throw UsageError("a chain needs at least 2 exponents");
    for (std::size_t i = 1; i < thetas.size(); ++i) {
        if (thetas[i - 1].compare(thetas[i]) != std::strong_ordering::less)
            throw UsageError("chain exponents must be strictly increasing");
    }
    std::vector<Series> chain;
    Series acc;
    for (const auto& theta : thetas) {
        acc = acc + Series::monomial(theta, rat_one());
        chain.push_back(acc);
    }
    return chain;
}

bool verify_sop(const std::vector<Series>& chain, const std::vector<Series>& universe) {
    std::vector<std::vector<bool>> solutions(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
        solutions[i].reserve(universe.size());
        for (const auto& x : universe)
            solutions[i].push_back(interp::support_rel(x, chain[i]));
    }
    for (std::size_t m = 0; m < chain.size(); ++m) {
        for (std::size_t n = m + 1; n < chain.size(); ++n) {
            bool subset = true;
            bool strict = false;
            for (std::size_t u = 0; u < universe.size(); ++u) {
                if (solutions[m][u] && !solutions[n][u]) subset = false;
                if (!solutions[m][u] && solutions[n][u]) strict = true;
            }
            if (!subset || !strict) return false;
        }
    }
    return true;
}

std::set<BigInt> prime_tower_fragment(std::size_t level, std::size_t j, const TowerCaps& caps) {
    if (level > 2) throw UsageError("tower families above level 2 are not supported");
    if (level == 0) {
        std::set<BigInt> out;
        const BigInt& p = nth_prime(j);
        BigInt power = 1;
        for (std::size_t e = 1; e <= caps.max_exponent_index; ++e) {
            power *= p;
            if (bit_length(power) > caps.max_bits) break;
            out.insert(power);
        }
        return out;
    }
    std::set<BigInt> inner = prime_tower_fragment(level - 1, j, caps);
    std::set<BigInt> out;
    for (std::size_t n = 0; n <= caps.max_outer_index; ++n) {
        const BigInt& p = nth_prime(n);
        for (const BigInt& m : inner) {
            // p^m has more than max_bits bits whenever m does, so skip
            // before exponentiating.
            if (m > BigInt(caps.max_bits)) continue;
            BigInt value = pow_nat(p, m);
            if (bit_length(value) > caps.max_bits) continue;
            out.insert(std::move(value));
        }
    }
    return out;
}

BigInt tower_element(const std::vector<std::size_t>& alpha, std::size_t exponent_guard) {
    if (alpha.empty()) throw UsageError("tower needs at least one prime index");
    if (alpha.size() > 3) throw UsageError("towers above height 3 are not supported");
    BigInt value = 1;
    for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) {
        if (value > BigInt(exponent_guard))
            throw GuardError("intermediate tower exponent " + value.str() +
                             " exceeds the guard of " + std::to_string(exponent_guard));
        value = pow_nat(nth_prime(*it), value);
    }
    return value;
}

namespace {

// Caps just large enough that the level-i family at column alpha[i]
// contains the tower for alpha: outer indices cover the prefix, the
// innermost exponent covers the tail tower, bits cover the value.
TowerCaps covering_caps(const std::vector<std::size_t>& alpha, std::size_t i,
                        const TowerCaps& base, const BigInt& tower_value) {
    TowerCaps caps = base;
    for (std::size_t k = 0; k < i; ++k)
        caps.max_outer_index = std::max(caps.max_outer_index, alpha[k]);
    BigInt tail = 1;  // tower over alpha[i+1..]
    for (std::size_t k = alpha.size(); k > i + 1; --k)
        tail = pow_nat(nth_prime(alpha[k - 1]), tail);
    if (tail > BigInt(kDefaultExponentGuard))
        throw GuardError("tail tower exponent exceeds the guard");
    caps.max_exponent_index =
        std::max(caps.max_exponent_index, tail.convert_to<std::size_t>());
    caps.max_bits = std::max(caps.max_bits, bit_length(tower_value) + 1);
    return caps;
}

}  // namespace

bool verify_path_intersection(const std::vector<std::size_t>& alpha, const TowerCaps& caps) {
    if (alpha.empty()) return true;
    BigInt value = tower_element(alpha);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        TowerCaps covering = covering_caps(alpha, i, caps, value);
        std::set<BigInt> fragment = prime_tower_fragment(i, alpha[i], covering);
        if (fragment.count(value) == 0) return false;
    }
    return true;
}

bool verify_row_disjointness(std::size_t level, std::size_t j, std::size_t k,
                             const TowerCaps& caps) {
    if (j == k) throw UsageError("row disjointness needs two distinct columns");
    std::set<BigInt> a = prime_tower_fragment(level, j, caps);
    std::set<BigInt> b = prime_tower_fragment(level, k, caps);
    for (const BigInt& v : a) {
        if (b.count(v)) return false;
    }
    // Independent route: the factor structure pins each element to its
    // own column.
    if (!audit_fragment(a, level, j, caps)) return false;
    if (!audit_fragment(b, level, k, caps)) return false;
    return true;
}

std::optional<TowerFactorization> factor_tower_element(const BigInt& v, std::size_t level) {
    if (v < 2) return std::nullopt;
    // The unique prime divisor, found among the small primes fragments
    // are built from.
    std::size_t prime_index = kPrimeTableSize;
    for (std::size_t i = 0; i < kPrimeTableSize; ++i) {
        if (v % nth_prime(i) == 0) {
            prime_index = i;
            break;
        }
    }
    if (prime_index == kPrimeTableSize) return std::nullopt;
    const BigInt& p = nth_prime(prime_index);
    BigInt rest = v;
    BigInt exponent = 0;
    while (rest % p == 0) {
        rest /= p;
        ++exponent;
    }
    if (rest != 1) return std::nullopt;  // not a prime power
    if (level == 0) {
        TowerFactorization f;
        f.prime_indices = {prime_index};
        f.innermost_exponent = exponent;
        return f;
    }
    auto inner = factor_tower_element(exponent, level - 1);
    if (!inner) return std::nullopt;
    TowerFactorization f;
    f.prime_indices.reserve(inner->prime_indices.size() + 1);
    f.prime_indices.push_back(prime_index);
    f.prime_indices.insert(f.prime_indices.end(), inner->prime_indices.begin(),
                           inner->prime_indices.end());
    f.innermost_exponent = std::move(inner->innermost_exponent);
    return f;
}

bool audit_fragment(const std::set<BigInt>& fragment, std::size_t level, std::size_t j,
                    const TowerCaps& caps) {
    for (const BigInt& v : fragment) {
        auto f = factor_tower_element(v, level);
        if (!f) return false;
        if (f->prime_indices.size() != level + 1) return false;
        if (f->prime_indices.back() != j) return false;
        for (std::size_t i = 0; i + 1 < f->prime_indices.size(); ++i) {
            if (f->prime_indices[i] > caps.max_outer_index) return false;
        }
        if (f->innermost_exponent < 1 ||
            f->innermost_exponent > BigInt(caps.max_exponent_index))
            return false;
        // Reconstruction round-trips.
        BigInt rebuilt = pow_nat(nth_prime(f->prime_indices.back()), f->innermost_exponent);
        for (std::size_t i = f->prime_indices.size() - 1; i > 0; --i)
            rebuilt = pow_nat(nth_prime(f->prime_indices[i - 1]), rebuilt);
        if (rebuilt != v) return false;
    }
    return true;
}

namespace {

Series fragment_parameter(const std::set<BigInt>& fragment) {
    std::vector<Term> terms;
    terms.reserve(fragment.size());
    for (const BigInt& a : fragment)
        terms.push_back(Term{GroupElement::from_int(a), rat_one()});
    return Series::from_terms(std::move(terms));
}

}  // namespace

WitnessGrid tp2_grid(std::size_t depth, std::size_t width, const TowerCaps& caps) {
    WitnessGrid grid;
    grid.depth = depth;
    grid.width = width;
    grid.caps = caps;
    grid.cells.resize(depth);
    for (std::size_t i = 0; i < depth; ++i) {
        grid.cells[i].reserve(width);
        for (std::size_t j = 0; j < width; ++j) {
            GridCell cell;
            cell.fragment = prime_tower_fragment(i, j, caps);
            cell.parameter = fragment_parameter(cell.fragment);
            grid.cells[i].push_back(std::move(cell));
        }
    }
    return grid;
}

std::vector<std::vector<std::size_t>> all_paths(std::size_t depth, std::size_t width) {
    std::vector<std::vector<std::size_t>> paths;
    if (depth == 0) return paths;
    std::vector<std::size_t> current(depth, 0);
    for (;;) {
        paths.push_back(current);
        std::size_t i = 0;
        while (i < depth && current[i] + 1 == width) {
            current[i] = 0;
            ++i;
        }
        if (i == depth) break;
        ++current[i];
    }
    return paths;
}

Report verify_tp2(const WitnessGrid& grid, const std::vector<std::vector<std::size_t>>& paths) {
    Report report;
    for (const auto& path : paths) {
        if (path.size() != grid.depth)
            throw UsageError("path length must equal the grid depth");
        std::string name = "path";
        for (std::size_t j : path) {
            if (j >= grid.width) throw UsageError("path column out of range");
            name += "-" + std::to_string(j);
        }
        bool consistent = true;
        std::optional<std::string> cex;
        if (!path.empty()) {
            BigInt value = tower_element(path);
            Series x = int_monomial(value);
            for (std::size_t i = 0; i < path.size(); ++i) {
                // The grid caps rarely cover the path tower; regenerate the
                // row parameter with caps that do.
                TowerCaps covering = covering_caps(path, i, grid.caps, value);
                Series parameter =
                    fragment_parameter(prime_tower_fragment(i, path[i], covering));
                if (!interp::support_rel(x, parameter)) {
                    consistent = false;
                    cex = "row " + std::to_string(i) + " rejects t^" + value.str();
                    break;
                }
            }
        }
        report.add(name + "-consistent", consistent, cex);
    }

    // Universe for the inconsistency side: every monomial the grid mentions.
    std::vector<Series> universe;
    for (const auto& row : grid.cells) {
        for (const auto& cell : row) {
            for (const BigInt& a : cell.fragment) universe.push_back(int_monomial(a));
        }
    }
    for (std::size_t i = 0; i < grid.depth; ++i) {
        for (std::size_t j = 0; j < grid.width; ++j) {
            for (std::size_t k = j + 1; k < grid.width; ++k) {
                std::string name = "row-" + std::to_string(i) + "-cols-" + std::to_string(j) +
                                   "-" + std::to_string(k) + "-inconsistent";
                bool ok = true;
                std::optional<std::string> cex;
                for (const auto& x : universe) {
                    if (interp::support_rel(x, grid.cells[i][j].parameter) &&
                        interp::support_rel(x, grid.cells[i][k].parameter)) {
                        ok = false;
                        cex = x.str() + " satisfies both columns";
                        break;
                    }
                }
                if (ok) {
                    for (const BigInt& v : grid.cells[i][j].fragment) {
                        if (grid.cells[i][k].fragment.count(v)) {
                            ok = false;
                            cex = "shared fragment element " + v.str();
                            break;
                        }
                    }
                }
                if (ok && (!audit_fragment(grid.cells[i][j].fragment, i, j, grid.caps) ||
                           !audit_fragment(grid.cells[i][k].fragment, i, k, grid.caps))) {
                    ok = false;
                    cex = "factorization audit failed";
                }
                report.add(name, ok, cex);
            }
        }
    }
    return report;
}

bool ShatterInstance::holds(const Series& point, const Series& param) const {
    return rel == PointParamRel::Direct ? interp::support_rel(point, param)
                                        : interp::support_rel(param, point);
}

bool check_shatters(const ShatterInstance& inst, const std::vector<Series>& universe,
                    bool only_shatters) {
    std::size_t n = inst.points.size();
    if (n > 20) throw UsageError("shattering instance too large");
    std::uint64_t subsets = std::uint64_t(1) << n;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        auto it = inst.params.find(mask);
        if (it == inst.params.end())
            throw UsageError("missing parameter for subset mask " + std::to_string(mask));
        for (std::size_t i = 0; i < n; ++i) {
            bool expected = (mask >> i) & 1;
            if (inst.holds(inst.points[i], it->second) != expected) return false;
        }
        if (only_shatters) {
            for (const auto& u : universe) {
                bool is_point = std::any_of(inst.points.begin(), inst.points.end(),
                                            [&](const Series& p) { return p == u; });
                if (is_point) continue;
                if (inst.holds(u, it->second)) return false;
            }
        }
    }
    return true;
}

ShatterInstance subset_sum_instance(std::size_t size) {
    if (size > 20) throw UsageError("shattering instance too large");
    ShatterInstance inst;
    for (std::size_t i = 0; i < size; ++i) inst.points.push_back(int_monomial(BigInt(i)));
    std::uint64_t subsets = std::uint64_t(1) << size;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        Series sum;
        for (std::size_t i = 0; i < size; ++i) {
            if ((mask >> i) & 1) sum = sum + inst.points[i];
        }
        inst.params.emplace(mask, std::move(sum));
    }
    return inst;
}

ShatterInstance opposite_instance(const ShatterInstance& inst, std::size_t rows) {
    if (inst.rel != PointParamRel::Direct)
        throw UsageError("transposition starts from a direct instance");
    if (rows > 6) throw UsageError("transposition above 6 rows is not supported");
    std::uint64_t point_count = std::uint64_t(1) << rows;
    if (inst.points.size() != point_count)
        throw UsageError("transposition at " + std::to_string(rows) +
                         " rows needs exactly 2^rows points indexed by subsets");
    ShatterInstance out;
    out.rel = PointParamRel::Opposite;
    // New point i: the old parameter selecting the principal filter of i,
    // i.e. all point-subsets whose index has bit i set.
    for (std::size_t i = 0; i < rows; ++i) {
        std::uint64_t filter_mask = 0;
        for (std::uint64_t subset_index = 0; subset_index < point_count; ++subset_index) {
            if ((subset_index >> i) & 1) filter_mask |= std::uint64_t(1) << subset_index;
        }
        auto it = inst.params.find(filter_mask);
        if (it == inst.params.end())
            throw UsageError("instance lacks the principal-filter parameter for row " +
                             std::to_string(i));
        out.points.push_back(it->second);
    }
    // New parameter for T <= {0..rows-1}: the old point indexed by T.
    std::uint64_t new_subsets = std::uint64_t(1) << rows;
    for (std::uint64_t mask = 0; mask < new_subsets; ++mask)
        out.params.emplace(mask, inst.points[mask]);
    return out;
}

}  // namespace hahn::witness
