// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hahn/cli.hpp"
#include "hahn/selftest.hpp"

namespace {

using Clock = std::chrono::steady_clock;

void print_line(const hahn::selftest::CriterionResult& r) {
    std::printf("[%s] %-28s %6.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    int failures = 0;
    std::vector<hahn::selftest::CriterionResult> results =
        hahn::selftest::run_all(hahn::selftest::kDefaultSeed);
    for (const auto& r : results) {
        print_line(r);
        if (!r.pass) ++failures;
    }

    // The whole suite must run deterministically through the command-line
    // entry point, with exit code 0, in under 3 minutes.
    hahn::selftest::CriterionResult meta;
    meta.name = "selftest-deterministic";
    std::ostringstream out1, err1, out2, err2;
    auto start = Clock::now();
    int code1 = hahn::cli::run({"selftest"}, out1, err1);
    double first_run = std::chrono::duration<double>(Clock::now() - start).count();
    int code2 = hahn::cli::run({"selftest"}, out2, err2);
    meta.seconds = first_run;
    if (code1 != 0 || code2 != 0) {
        meta.pass = false;
        meta.detail = "selftest exit code " + std::to_string(code1);
    } else if (out1.str() != out2.str()) {
        meta.pass = false;
        meta.detail = "two runs with the fixed seed produced different output";
    } else if (first_run >= 180.0) {
        meta.pass = false;
        meta.detail = "suite took too long";
    } else {
        meta.pass = true;
        meta.detail = "two identical runs, exit 0, " + std::to_string(first_run).substr(0, 5) +
                      "s each";
    }
    print_line(meta);
    if (!meta.pass) ++failures;

    return failures == 0 ? 0 : 1;
}
