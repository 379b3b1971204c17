#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cleconn {

struct AcceptanceItem {
    std::string id;      // e.g. "7a"
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    // Multiplies every Monte Carlo sample count; 1 is the full suite.
    double sample_scale = 1.0;
    // Item ids (or their leading criterion number) to run; empty runs all.
    std::vector<std::string> only;
};

std::vector<AcceptanceItem> run_acceptance(const AcceptanceOptions& opts,
                                           const std::function<void(const AcceptanceItem&)>& on_item = {});

}  // namespace cleconn
