#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hahn::selftest {

constexpr std::uint64_t kDefaultSeed = 1729;

struct CriterionResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;  // counts on success, counterexample on failure
};

CriterionResult field_axioms(std::uint64_t seed);
CriterionResult mso_arithmetic(std::uint64_t seed);
CriterionResult finite_interpretation(std::uint64_t seed);
CriterionResult definability_equivalences(std::uint64_t seed);
CriterionResult sop_chain_nesting(std::uint64_t seed);
CriterionResult tp2_grid_checks(std::uint64_t seed);
CriterionResult shattering_checks(std::uint64_t seed);

/// Runs the whole verification suite with one seed. Each result carries
/// its elapsed time; the per-criterion runtime budgets are enforced
/// inside the criteria that state them.
std::vector<CriterionResult> run_all(std::uint64_t seed = kDefaultSeed);

/// Canonical one-line rendering, stable across runs with equal seeds.
std::string render(const CriterionResult& r);

}  // namespace hahn::selftest
