#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "szabolab/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw szabolab::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Cli {
    std::string file;
    bool json = false;
    std::uint64_t seed = 42;
    int samples = 50;
    std::string out;
    bool timings = false;
};

void attach_common(CLI::App* cmd, Cli& cli, bool needs_file) {
    if (needs_file)
        cmd->add_option("file", cli.file, "connection definition file")->required();
    cmd->add_flag("--json", cli.json, "emit the JSON report instead of text");
    cmd->add_option("--seed", cli.seed, "seed for randomized verification");
    cmd->add_option("--samples", cli.samples, "sample count for randomized verification");
    cmd->add_option("--out", cli.out, "write the report to a file instead of stdout");
    cmd->add_flag("--timings", cli.timings, "include timings in the report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for affine connections: cyclic-parallel Ricci tensors, "
                 "nilpotent direction operators, and cotangent-bundle extensions"};
    app.require_subcommand(1);

    Cli cli;
    struct Sub {
        CLI::App* app;
        szabolab::Command command;
        bool needs_file;
    };
    std::vector<Sub> subs = {
        {app.add_subcommand("check-cyclic", "decide the cyclic-parallel Ricci condition"),
         szabolab::Command::check_cyclic, true},
        {app.add_subcommand("check-szabo", "decide nilpotency of the direction operator"),
         szabolab::Command::check_szabo, true},
        {app.add_subcommand("extend", "build and check the cotangent-bundle extension"),
         szabolab::Command::extend, true},
        {app.add_subcommand("verify-paper", "run the built-in verification corpus"),
         szabolab::Command::verify_paper, false},
        {app.add_subcommand("full", "all checks plus the extension"),
         szabolab::Command::full, true},
    };
    for (auto& s : subs) attach_common(s.app, cli, s.needs_file);

    CLI11_PARSE(app, argc, argv);

    try {
        const Sub* chosen = nullptr;
        for (const auto& s : subs)
            if (s.app->parsed()) chosen = &s;
        if (!chosen) {
            std::cerr << "no command given\n";
            return 2;
        }

        std::optional<szabolab::ConnectionSpec> spec;
        if (chosen->needs_file)
            spec = szabolab::parse_connection_file(read_file(cli.file));

        szabolab::Options opt;
        opt.seed = cli.seed;
        opt.samples = cli.samples;
        opt.include_timings = cli.timings;

        const szabolab::Report report = szabolab::run(chosen->command, spec, opt);
        const std::string rendered =
            cli.json ? szabolab::json_string(report) : szabolab::text_string(report);
        if (cli.out.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(cli.out, std::ios::binary);
            if (!out) throw szabolab::Error("cannot write " + cli.out);
            out << rendered;
        }
        return report.any_failure ? 1 : 0;
    } catch (const szabolab::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
