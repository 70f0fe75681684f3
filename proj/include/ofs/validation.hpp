// validation.hpp - seeded cross-backend self-checks run by `validate`.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ofs {

struct CheckResult {
    std::string suite;
    std::string name;
    double error{0};     // worst observed discrepancy
    double tolerance{0};
    bool passed{false};
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

ValidationReport run_validation(std::uint64_t seed);

// One line per check, then a summary line.
void print_report(const ValidationReport& report, std::ostream& out);

} // namespace ofs
