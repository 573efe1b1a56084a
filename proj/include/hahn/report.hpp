#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hahn {

struct Check {
    std::string name;
    bool pass = false;
    std::optional<std::string> counterexample;
};

/// Outcome of a verification suite: one entry per check, with an explicit
/// counterexample on failure. Serializes to
/// {"checks":[{"name","pass","counterexample"?}]}.
struct Report {
    std::vector<Check> checks;

    bool all_pass() const;
    void add(std::string name, bool pass, std::optional<std::string> counterexample = {});
    nlohmann::json to_json() const;
    std::string text() const;
};

}  // namespace hahn
