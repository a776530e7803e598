#include <CLI11.hpp>
#include <iostream>

#include "supverma/scenario.hpp"

// supverma: scenario-driven verification of induced/coinduced module
// constructions over W(k,l,m) in odd characteristic.
//
// exit codes: 0 all selected checks pass, 1 a verification failed,
// 2 invalid configuration or I/O error.

using namespace supverma;

int main(int argc, char** argv) {
    CLI::App app{"exact verification of generalized reduced Verma and coinduced modules over W(k,l,m)"};
    app.set_version_flag("--version", std::string("supverma ") + kVersion);

    std::string scenario_path, out_dir = ".", dump_path, target;
    bool seed_set = false;
    uint64_t seed = 0;

    CLI::App* run = app.add_subcommand("run", "run a scenario and write report.json");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory for report.json");
    run->add_option("--seed", seed, "override the scenario seed")->each([&](const std::string&) { seed_set = true; });

    CLI::App* da = app.add_subcommand("dump-algebra", "serialize the algebra of a scenario");
    da->add_option("scenario", scenario_path, "scenario JSON file")->required();
    da->add_option("--out", dump_path, "output file")->required();

    CLI::App* dm = app.add_subcommand("dump-module", "serialize a module built from a scenario");
    dm->add_option("scenario", scenario_path, "scenario JSON file")->required();
    dm->add_option("--target", target, "ind|ind_sigma|coind|dual_ind|mixed")->required();
    dm->add_option("--out", dump_path, "output file")->required();

    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);
    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return 0;
    }

    try {
        Scenario sc = scenario_from_json(read_json_file(scenario_path));
        if (seed_set) sc.seed = seed;

        if (run->parsed()) {
            RunResult res = run_scenario(sc);
            write_atomic(out_dir + "/report.json", canonical_dump(res.report));
            std::cout << res.summary;
            std::cout << "report: " << out_dir << "/report.json\n";
            return res.overall_pass ? 0 : 1;
        }
        if (da->parsed()) {
            write_atomic(dump_path, canonical_dump(algebra_to_json(build_scenario_algebra(sc))));
            return 0;
        }
        if (dm->parsed()) {
            write_atomic(dump_path, canonical_dump(dump_module_json(sc, target)));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
