#include "hahn/report.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace hahn {

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, bool pass, std::optional<std::string> counterexample) {
    checks.push_back(Check{std::move(name), pass, std::move(counterexample)});
}

nlohmann::json Report::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json item{{"name", c.name}, {"pass", c.pass}};
        if (c.counterexample) item["counterexample"] = *c.counterexample;
        arr.push_back(std::move(item));
    }
    return nlohmann::json{{"checks", arr}};
}

std::string Report::text() const {
    std::string out;
    for (const auto& c : checks) {
        out += c.pass ? "[ ok ] " : "[FAIL] ";
        out += c.name;
        if (c.counterexample) out += ": " + *c.counterexample;
        out += "\n";
    }
    return out;
}

}  // namespace hahn
