// SPDX-License-Identifier: Apache-2.0
#include "qmrts/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace qmrts;

    CLI::App app{"Quasi-monostatic RTS angle-of-arrival simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string output;
    cli::Options options;
    std::string mode = "dirichlet";
    bool no_range_compensation = false;

    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--grid-step-deg", options.grid_step_deg, "Beamforming grid step in degrees")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--zero-pad", options.zero_pad, "Range DFT zero-pad factor (power of two)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--mode", mode, "Closed-form kernel")
            ->check(CLI::IsMember({"sinc", "dirichlet"}));
        cmd->add_option("--subset", options.subset, "Antenna subset NTXxNRX, e.g. 1x4");
    };

    auto* validate = app.add_subcommand("validate", "Check a config and print derived quantities");
    validate->add_option("config", config, "Scenario config file")->required();

    auto* simulate = app.add_subcommand("simulate", "Run one scenario and dump spectra");
    simulate->add_option("config", config, "Scenario config file")->required();
    simulate->add_option("-o,--out-dir", output, "Output directory")->required();
    add_model_flags(simulate);

    auto* sweep = app.add_subcommand("sweep", "Sweep the RTS transmitter displacement");
    sweep->add_option("config", config, "Scenario config file with a [sweep] section")->required();
    sweep->add_option("-o,--out", output, "Output CSV")->required();
    sweep->add_flag("--no-range-compensation", no_range_compensation,
                    "Ignore the moved transmitter's extra path length");
    add_model_flags(sweep);

    auto* compare = app.add_subcommand("compare", "Compare full chain, ideal beamforming and closed form");
    compare->add_option("config", config, "Scenario config file")->required();
    add_model_flags(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kValidationFailure;
    }

    options.mode = parse_kernel_mode(mode);
    options.range_compensation = !no_range_compensation;

    if (validate->parsed())
        return cli::cmd_validate(config, std::cout, std::cerr);
    if (simulate->parsed())
        return cli::cmd_simulate(config, output, options, std::cout, std::cerr);
    if (sweep->parsed())
        return cli::cmd_sweep(config, output, options, std::cout, std::cerr);
    return cli::cmd_compare(config, options, std::cout, std::cerr);
}
