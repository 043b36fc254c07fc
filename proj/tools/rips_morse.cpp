// Command-line experiment runner. Exit codes: 0 pass, 1 violation, 2 usage.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <rips_morse/rips_morse.hpp>

namespace {

using namespace rips_morse;

struct Output {
    std::string out;
    std::string format = "json";
};

struct SpaceInput {
    std::string matrix;
    std::string points;
    std::size_t cycle = 0;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

FiniteMetricSpace load_space(const SpaceInput& input)
{
    const int given = !input.matrix.empty() + !input.points.empty() + (input.cycle > 0);
    if (given != 1)
        throw InputError("give exactly one of --matrix, --points, --cycle");
    if (!input.matrix.empty()) {
        std::istringstream in(read_file(input.matrix));
        return parse_distance_csv(in);
    }
    if (!input.points.empty()) {
        const auto pts = parse_point_set_json(read_file(input.points));
        return FiniteMetricSpace::from_lattice_points(pts);
    }
    return FiniteMetricSpace::cycle_graph(input.cycle);
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
}

int emit(const CampaignOutcome& outcome, const Output& output)
{
    write_text(output.out, output.format == "csv" ? render_csv(outcome.report) : render_json(outcome.report));
    if (outcome.exit_code == kExitViolation) {
        const std::string witness = (output.out.empty() ? std::string("rips_morse") : output.out) + ".witness.json";
        Json w;
        w["config"] = outcome.report["config"];
        w["violations"] = outcome.report["violations"];
        write_text(witness, render_json(w));
        std::cerr << "violations found; witnesses written to " << witness << "\n";
    }
    return outcome.exit_code;
}

void add_output(CLI::App* cmd, Output& output)
{
    cmd->add_option("--out", output.out, "report file (default: stdout)");
    cmd->add_option("--format", output.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

void add_campaign(CLI::App* cmd, CampaignConfig& c, std::string& window, std::string& mode, bool& seeded,
                  bool with_t = true)
{
    cmd->add_option("--n", c.n, "lattice dimension")->required()->check(CLI::Range(1, 6));
    if (with_t)
        cmd->add_option("--t", c.t, "scale (set diameter)")->required();
    cmd->add_option("--max-size", c.max_size, "largest set size");
    cmd->add_option("--min-size", c.min_size, "smallest set size");
    cmd->add_option("--window", window, "enumeration window x0,y0:x1,y1");
    cmd->add_option("--mode", mode, "set source")->check(CLI::IsMember({"exhaustive", "random"}));
    cmd->add_option("--samples", c.samples, "number of random sets");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { c.seed = s, seeded = true; }, "random seed (required in random mode)");
    cmd->add_option("--coface-cap", c.coface_cap, "largest coface candidate set analysed directly");
    cmd->add_option("--face-cap", c.face_cap, "largest set whose face link is built");
    cmd->add_option("--threads", c.threads, "worker threads (default: RIPS_MORSE_THREADS or all cores)");
}

void finish_campaign(CampaignConfig& c, const std::string& window, const std::string& mode, bool seeded)
{
    if (!window.empty())
        c.window = Window::parse(window);
    c.mode = mode == "random" ? CampaignMode::Random : CampaignMode::Exhaustive;
    if (c.mode == CampaignMode::Random && !seeded)
        throw InputError("random mode requires --seed");
}

std::pair<Distance, Distance> parse_range(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const Distance v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InputError("expected a range a:b, got '" + text + "'");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete Morse verification of Vietoris-Rips complexes of Z^n"};
    app.require_subcommand(1);

    Output output;
    CampaignConfig campaign;
    std::string window;
    std::string mode = "exhaustive";
    bool seeded = false;
    SpaceInput space_input;
    Distance s = 0;
    Distance t = 0;
    std::optional<std::size_t> max_dim;
    std::size_t cap = kDefaultFiltrationCap;
    std::string t_range;

    auto* covering = app.add_subcommand("verify-covering", "check the ball-covering hypothesis on lattice sets");
    add_campaign(covering, campaign, window, mode, seeded);
    covering->add_flag("--helly", campaign.helly, "also cross-check the Helly radius bound");
    add_output(covering, output);

    auto* links = app.add_subcommand("verify-links", "certify descending links of lattice sets");
    add_campaign(links, campaign, window, mode, seeded);
    add_output(links, output);

    auto add_space = [&](CLI::App* cmd) {
        cmd->add_option("--matrix", space_input.matrix, "distance matrix CSV");
        cmd->add_option("--points", space_input.points, "JSON list of lattice points (l1 metric)");
        cmd->add_option("--cycle", space_input.cycle, "graph metric of the m-cycle");
    };
    auto* betti = app.add_subcommand("rips-betti", "reduced Betti numbers and verdict of a Rips complex");
    add_space(betti);
    betti->add_option("--t", t, "scale")->required();
    betti->add_option("--max-dim", max_dim, "largest simplex dimension built");
    add_output(betti, output);

    auto* filtration = app.add_subcommand("filtration-check", "compare Rips_s and Rips_t through band links");
    add_space(filtration);
    filtration->add_option("--s", s, "lower scale")->required();
    filtration->add_option("--t", t, "upper scale")->required();
    filtration->add_option("--cap", cap, "largest space handled");
    filtration->add_option("--coface-cap", campaign.coface_cap, "largest coface candidate set analysed directly");
    add_output(filtration, output);

    auto* scan = app.add_subcommand("conjecture-scan", "observational link and radius scan over a range of t");
    add_campaign(scan, campaign, window, mode, seeded, false);
    scan->add_option("--t-range", t_range, "scales a:b")->required();
    add_output(scan, output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (covering->parsed() || links->parsed()) {
            finish_campaign(campaign, window, mode, seeded);
            return emit(covering->parsed() ? run_verify_covering(campaign) : run_verify_links(campaign), output);
        }
        if (scan->parsed()) {
            finish_campaign(campaign, window, mode, seeded);
            const auto [lo, hi] = parse_range(t_range);
            return emit(run_conjecture_scan(campaign, lo, hi), output);
        }
        const auto space = load_space(space_input);
        if (betti->parsed())
            return emit(run_rips_betti(space, t, max_dim), output);
        LinkAnalysisConfig lcfg;
        lcfg.coface_cap = campaign.coface_cap;
        return emit(run_filtration_check(space, s, t, cap, lcfg), output);
    } catch (const InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
