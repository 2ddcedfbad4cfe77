#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netscope/config_planner.hpp"
#include "netscope/topology_hints.hpp"

namespace netscope {

struct PhaseTimings {
    double passive_s = 0;
    double analysis_s = 0;
};

// Everything below is derived from the plan (which carries the observation
// set) plus run metadata; there is no hidden state.
struct RunReport {
    ScanPlan scan_plan;
    std::string capture_description;
    PhaseTimings timings;
    std::vector<std::string> warnings;
    bool hopcounts_loaded = false;
    std::optional<Ipv4Address> internal_gateway_hint;
};

std::string render_report(const RunReport& report);

}  // namespace netscope
