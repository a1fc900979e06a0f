#include <CLI11.hpp>

#include <iostream>

#include "relsw/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"relsw: relative Seiberg-Witten bookkeeping, vortex and spectral-flow tools"};
    app.require_subcommand(1);
    relsw::CommandOptions opts;
    std::string command;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"report", "dimensions, components, CSD ordering and compactness for a pair"},
        {"dims", "dimension and xi-invariant table"},
        {"components", "3-dimensional moduli components and S_d(nu)"},
        {"tunneling", "tunneling moduli for the listed classes"},
        {"specflow", "brute-force spectral flow against the resonance prediction"},
        {"vortex", "solve the tau-vortex equation on a flat torus"},
        {"sum", "splittings, sum-formula right-hand side and dimension additivity"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--input", opts.input, "input JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out, "output directory (artifacts and manifest.csv)");
        sub->add_option("--seed", opts.seed, "random seed");
        sub->add_option("--grid", opts.grid, "vortex grid size N (power of two)");
        sub->add_option("--tolerance", opts.tolerance, "vortex Newton tolerance");
        sub->add_option("--depth", opts.depth, "resonance expansion depth")->check(CLI::PositiveNumber);
        sub->callback([&command, name = name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return relsw::run_command(command, opts, std::cout, std::cerr);
}
