/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_VERIFY_HH
#define DRED_VERIFY_HH 1

#include <dred/structure.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dred
{
    /// Built-in templates: "two-cycle", "single-edge" and "parity" (the 4-ary
    /// relation w+x=y, z=1 over {0,1}).
    auto named_fixture(const std::string & name) -> std::optional<RelStructure>;
    auto fixture_names() -> std::vector<std::string>;

    struct SuiteReport
    {
        std::string suite;
        std::vector<std::string> lines;     // one per trial or check, in order
        int passed = 0, failed = 0;

        auto ok() const -> bool
        {
            return failed == 0 && passed > 0;
        }

        auto summary() const -> std::string;
    };

    auto suite_names() -> std::vector<std::string>;

    /// Runs a property suite. Suites that work on fixed templates use the
    /// given ones, or the built-in fixtures when none are given. Unknown
    /// suite names raise a Syntax error.
    auto run_suite(const std::string & suite, std::uint64_t seed, int trials,
            const std::vector<RelStructure> & templates = { }) -> SuiteReport;
}

#endif
