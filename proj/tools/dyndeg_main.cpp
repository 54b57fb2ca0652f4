// dyndeg: exact dynamical-degree computations driven by scene files.
//
//   dyndeg <scene-file> [--format table|csv|records] [--approx] [--max-terms N]
//   dyndeg scenario <name> [--format ...] [--approx] [--max-terms N]

#include "dyndeg/dyndeg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"exact degree sequences and dynamical degrees of correspondences"};

    std::string target;
    dyndeg::RunOptions opt;
    app.add_option("target", target,
                   "scene file, or 'scenario' followed by a scenario name")
        ->required();
    std::string scenario_name;
    app.add_option("name", scenario_name, "scenario name (with 'scenario')");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "records"}))
        ->capture_default_str();
    app.add_flag("--approx", opt.approx, "append decimal approximations");
    app.add_option("--max-terms", opt.max_terms, "degree sequence length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    dyndeg::RunResult res;
    try {
        if (target == "scenario") {
            if (scenario_name.empty()) {
                std::cerr << "error: 'scenario' needs a name; one of:";
                for (const auto& n : dyndeg::scenario_names()) std::cerr << ' ' << n;
                std::cerr << '\n';
                return 1;
            }
            res = dyndeg::run_scenario(scenario_name, opt);
        } else {
            if (!scenario_name.empty()) {
                std::cerr << "error: unexpected argument '" << scenario_name << "'\n";
                return 1;
            }
            std::ifstream in(target);
            if (!in) {
                std::cerr << "error: cannot open scene file: " << target << '\n';
                return 1;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            auto base = std::filesystem::path(target).parent_path().string();
            dyndeg::Scene scene = dyndeg::parse_scene(buf.str(), base);
            res = dyndeg::run_scene(scene, opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    std::cout << res.output;
    return res.exit_code;
}
