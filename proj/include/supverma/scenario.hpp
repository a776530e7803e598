#ifndef SUPVERMA_SCENARIO_HPP
#define SUPVERMA_SCENARIO_HPP

#include "supverma/forms.hpp"
#include "supverma/json_io.hpp"

// Scenario-driven batch verification.  A scenario fixes (p,k,l,m), a
// K-module, a subset of checks and a seed; running it produces a
// deterministic JSON report (byte-identical across reruns) plus a
// human-readable summary with timings.  Exit-code mapping is done by
// the CLI: invalid configuration -> 2, any failed check -> 1.

namespace supverma {

inline constexpr const char* kVersion = "0.1.0";

struct Scenario {
    WittParams params;
    std::string module_spec = "trivial";  // trivial|natural|dual_natural|adjoint0|sigma_half|custom
    std::string module_file;              // for custom
    std::vector<std::string> checks;      // resolved list
    uint64_t seed = 1;
    std::string plant = "none";  // none|corrupt_bracket (test instrumentation)
};

const std::vector<std::string>& all_check_names();

// Throws std::invalid_argument with a diagnostic on invalid input.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& sc);

WittAlgebra build_scenario_algebra(const Scenario& sc);
KModule build_scenario_module(const WittAlgebra& w, const Scenario& sc);

struct RunResult {
    nlohmann::json report;
    bool overall_pass = false;
    std::string summary;  // one line per check with wall-clock, not part of the report
};
RunResult run_scenario(const Scenario& sc);

// dump-module targets: ind | ind_sigma | coind | dual_ind | mixed
nlohmann::json dump_module_json(const Scenario& sc, const std::string& target);

}  // namespace supverma

#endif
