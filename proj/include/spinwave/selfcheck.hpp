// selfcheck.hpp — the oracle-check suite: closed forms against brute force.

#pragma once

#include <string>
#include <vector>

#include "spinwave/model.hpp"

namespace spinwave {

enum class CheckLevel { Fast, Full };

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    // 0 on success, 3 on any failed check.
    int exit_code() const;
};

struct CheckOptions {
    CheckLevel level = CheckLevel::Fast;
    // Transform under test; replaceable to exercise the harness itself.
    TransformFn transform = [](const CouplingParams& p, double t) { return bogoliubov(p, t); };
};

CheckReport oracle_check(const CheckOptions& options = {});

}  // namespace spinwave
