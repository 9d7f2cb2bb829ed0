#include "autobox/harness.hpp"
#include "autobox/protocol.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <csignal>
#include <fstream>
#include <iostream>

using namespace autobox;

namespace {

int run_command(const std::vector<std::filesystem::path>& comps, const std::filesystem::path& manifest,
                const std::vector<std::string>& heuristics, const std::filesystem::path& report_dir, bool timing,
                bool no_fail, bool serial, bool check) {
    std::vector<std::filesystem::path> search{manifest.parent_path(), manifest.parent_path() / "compositions",
                                              manifest.parent_path().parent_path() / "compositions"};
    for (const auto& c : comps) search.push_back(c.parent_path());
    Workload w = prepare(load_manifest(manifest), comps, search);

    std::vector<Run> runs;
    std::size_t unacceptable = 0, mismatched = 0;
    for (const auto& h : heuristics) {
        Config cfg;
        cfg.heuristics = parse_heuristics(h);
        Run r{cfg.heuristics, serial ? run_serial(w, cfg, timing) : run_parallel(w, cfg, timing)};
        for (std::size_t i = 0; i < w.cases.size(); ++i) {
            const auto& o = r.outcomes[i];
            if (!acceptable(o.category)) ++unacceptable;
            if (check && cfg.heuristics == kAllHeuristics && w.cases[i].expected && *w.cases[i].expected != o.category) {
                ++mismatched;
                std::cerr << "mismatch " << w.cases[i].name << ": expected " << category_name(*w.cases[i].expected)
                          << ", got " << category_name(o.category) << "\n";
            }
        }
        runs.push_back(std::move(r));
    }
    emit_report(report_dir, w.cases, runs, timing);
    std::cout << to_text(acceptable_table(w.cases, runs)) << "\n" << to_text(category_table(runs));
    if (check) std::cout << "expected categories: " << mismatched << " mismatches\n";
    if (mismatched) return 1;
    return unacceptable && !no_fail ? 1 : 0;
}

// First line: {"composition": id}; every later line is a protocol message.
int replay_command(const std::filesystem::path& scenario, std::vector<std::filesystem::path> search) {
    std::ifstream in(scenario);
    if (!in) throw std::runtime_error("cannot read " + scenario.string());
    std::string line;
    std::getline(in, line);
    auto id = nlohmann::json::parse(line).at("composition").get<std::string>();
    search.push_back(scenario.parent_path().parent_path() / "compositions");
    std::shared_ptr<const Composition> comp;
    for (const auto& d : search) {
        if (std::filesystem::exists(d / (id + ".comp"))) {
            comp = Composition::load(d / (id + ".comp"));
            break;
        }
    }
    if (!comp) throw std::runtime_error("unknown composition " + id);
    ProtocolSession session(comp);
    while (std::getline(in, line)) {
        if (!line.empty()) std::cout << session.handle(line) << "\n";
    }
    return 0;
}

Server* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

int serve_command(const std::filesystem::path& comp, const std::string& addr, const std::string& heuristic) {
    Config cfg;
    cfg.heuristics = parse_heuristics(heuristic);
    Server server(Composition::load(comp), cfg);
    int port = server.listen(addr);
    std::cout << "listening on port " << port << std::endl;
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.run();
    g_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automatic language box insertion: replay harness and session server"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Replay a test manifest and write reports");
    std::vector<std::filesystem::path> comps;
    std::filesystem::path manifest, report_dir = "report";
    std::vector<std::string> heuristics;
    bool timing = false, no_fail = false, serial = false, check = false;
    run->add_option("--composition", comps, "Composition file; the file stem is its id (repeatable)")
        ->check(CLI::ExistingFile);
    run->add_option("--tests", manifest, "Test manifest (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--heuristic", heuristics, "all|parse_tree|stack|line, one report row each (repeatable)");
    run->add_option("--report-dir", report_dir, "Output directory");
    run->add_flag("--timing", timing, "Record per-keypress times and write timing.csv");
    run->add_flag("--no-fail", no_fail, "Exit 0 even with unacceptable outcomes");
    run->add_flag("--serial", serial, "Use the single-threaded replay path");
    run->add_flag("--check", check, "Fail when heuristic=all misses an expected category");

    auto* serve = app.add_subcommand("serve", "Serve the NDJSON session protocol over TCP");
    std::filesystem::path serve_comp;
    std::string listen = "127.0.0.1:7070", serve_heuristic = "all";
    serve->add_option("--composition", serve_comp, "Composition file")->required()->check(CLI::ExistingFile);
    serve->add_option("--listen", listen, "host:port (port 0 picks one)");
    serve->add_option("--heuristic", serve_heuristic, "Candidate heuristics");

    auto* replay = app.add_subcommand("replay", "Feed a scenario file through one session, printing each reply");
    std::filesystem::path scenario;
    std::vector<std::filesystem::path> comp_dirs;
    replay->add_option("scenario", scenario, "Scenario (NDJSON)")->required()->check(CLI::ExistingFile);
    replay->add_option("--composition-dir", comp_dirs, "Where composition ids resolve (repeatable)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) {
            if (heuristics.empty()) heuristics = {"all"};
            return run_command(comps, manifest, heuristics, report_dir, timing, no_fail, serial, check);
        }
        if (*replay) return replay_command(scenario, comp_dirs);
        return serve_command(serve_comp, listen, serve_heuristic);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
