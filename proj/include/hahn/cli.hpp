#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hahn/algebra.hpp"
#include "hahn/dividing_lines.hpp"
#include "hahn/selftest.hpp"

namespace hahn::cli {

/// Session-wide settings: value group, coefficient field, default bounds
/// and caps, output mode. Sourced from defaults, then a config file
/// (HAHN_TRUNC_CONFIG or --config), then flags; later sources win.
struct SessionConfig {
    GroupKind group = GroupKind::Rat;
    FieldKind field = FieldKind::Rat;
    BigInt modulus = 7;
    std::uint64_t bound = 64;
    std::size_t depth = 32;
    witness::TowerCaps caps;
    bool json_output = false;
    std::uint64_t seed = selftest::kDefaultSeed;

    void load_file(const std::string& path);
    void validate() const;
    AlgebraContext algebra() const { return AlgebraContext{group, field, modulus}; }
};

/// The command-line entry point. Returns 0 on success or all checks
/// passing, 1 on verification failure, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hahn::cli
