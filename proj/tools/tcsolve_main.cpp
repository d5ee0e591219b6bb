#include "tcsolve/cli.hpp"
#include "tcsolve/errors.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tcsolve::Error(tcsolve::ErrorKind::InvalidInput, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tcsolve::Error(tcsolve::ErrorKind::InvalidInput, "cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace tcsolve;
    CliSettings defaults;
    CLI::App app{"Verify, search and classify meromorphic solutions of f^n + P(z, f) = h"};
    std::string command_name, input_path, config_path, radii_text;
    std::string plot_out = "tcsolve-plot.svg";
    bool json = false;
    std::optional<unsigned> degree_cap;
    std::optional<double> tolerance;
    app.add_option("--command", command_name, "verify, search, classify, growth, nevanlinna or plot")
        ->required()
        ->check(CLI::IsMember({"verify", "search", "classify", "growth", "nevanlinna", "plot"}));
    app.add_option("--input", input_path, "input file with equation:, candidate:, ode:, function: and n: lines")
        ->required();
    app.add_option("--config", config_path, "key = value file (tolerance, degree_cap, radii, grid, assume_small_pole_count)");
    app.add_flag("--json", json, "print the JSON report instead of the text summary");
    app.add_option("--plot-out", plot_out, "SVG path for plot; the CSV table goes next to it")->capture_default_str();
    app.add_option("--radii", radii_text, "comma-separated radii (default: adaptive ladder from 5, 7.5, 11, 17, 25, 38, 57)");
    app.add_option("--degree-cap", degree_cap, "search degree cap (default: 2 * max coefficient degree + 10)");
    app.add_option("--tolerance", tolerance, "relative quadrature tolerance")->default_str(std::to_string(defaults.tolerance));
    app.footer("Defaults: tolerance = 0.001, grid = 256, assume_small_pole_count = true, radii = adaptive.");
    CLI11_PARSE(app, argc, argv);

    Command command = *command_from_string(command_name);
    CliReport rep;
    try {
        CliSettings settings;
        if (!config_path.empty()) apply_config(settings, read_file(config_path));
        if (!radii_text.empty()) settings.radii = parse_radii(radii_text);
        if (degree_cap) settings.degree_cap = degree_cap;
        if (tolerance) settings.tolerance = *tolerance;
        rep = cli_run(command, cli_parse_all(read_file(input_path)), settings);
        if (command == Command::Plot && !rep.svg.empty()) {
            write_file(plot_out, rep.svg);
            std::string csv_path = std::filesystem::path(plot_out).replace_extension(".csv").string();
            write_file(csv_path, rep.csv);
            rep.json["plot"] = {{"svg", plot_out}, {"csv", csv_path}};
            rep.text += "plot written to " + plot_out + " and " + csv_path + "\n";
        }
    } catch (const Error& e) {
        rep = cli_error_report(command, to_string(e.kind()), e.what());
    }
    if (json) std::cout << rep.json.dump(2) << "\n";
    else std::cout << rep.text << (command == Command::Nevanlinna ? rep.csv : "");
    return rep.exit_code;
}
