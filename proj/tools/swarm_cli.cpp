#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swarm/swarm_c.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBrain = 3;

int report(swarm_status st) {
    std::cerr << "error: " << swarm_last_error() << " (" << swarm_last_error_code() << ")\n";
    if (st == SWARM_E_BRAIN_UNAVAILABLE) return kExitBrain;
    if (st == SWARM_E_IO) return 1;
    return kExitConfig;
}

struct RunFlags {
    std::string config_file;
    std::string difficulty, brain, latency, out, map, model;
    std::uint64_t seed = 0;
    int matches = 0, max_minutes = 0, max_ticks = 0, timeout_ms = 0, memory = 0;
    bool no_reflex = false, no_brain = false, quiet = false;
};

int run(const RunFlags& f, CLI::App& cmd) {
    swarm_config* cfg = nullptr;
    if (swarm_config_new(&cfg) != SWARM_OK) return report(SWARM_E_INTERNAL);
    auto set = [&](const char* key, const std::string& value) {
        swarm_status st = swarm_config_set(cfg, key, value.c_str());
        if (st != SWARM_OK) throw st;
    };
    try {
        if (!f.config_file.empty()) {
            std::ifstream in(f.config_file);
            if (!in) {
                std::cerr << "error: cannot read " << f.config_file << "\n";
                swarm_config_free(cfg);
                return kExitConfig;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            swarm_status st = swarm_config_load_json(cfg, ss.str().c_str());
            if (st != SWARM_OK) throw st;
        }
        // Flags given on the command line override the file.
        if (cmd.count("--difficulty")) set("difficulty", f.difficulty);
        if (cmd.count("--seed")) set("seed", std::to_string(f.seed));
        if (cmd.count("--brain")) set("brain", f.brain);
        if (cmd.count("--latency")) set("latency", f.latency);
        if (cmd.count("--matches")) set("matches", std::to_string(f.matches));
        if (cmd.count("--max-minutes")) set("max_minutes", std::to_string(f.max_minutes));
        if (cmd.count("--max-ticks")) set("max_ticks", std::to_string(f.max_ticks));
        if (cmd.count("--out")) set("out", f.out);
        if (cmd.count("--map")) set("map", f.map);
        if (cmd.count("--model")) set("model", f.model);
        if (cmd.count("--timeout-ms")) set("timeout_ms", std::to_string(f.timeout_ms));
        if (cmd.count("--memory")) set("memory", std::to_string(f.memory));
        if (f.no_reflex) set("reflex", "0");
        if (f.no_brain) set("brain_enabled", "0");
    } catch (swarm_status st) {
        swarm_config_free(cfg);
        return report(st);
    }

    swarm_result* res = nullptr;
    swarm_status st = swarm_run(cfg, &res);
    swarm_config_free(cfg);
    if (!res) return report(st);
    int code = st == SWARM_OK ? kExitOk : report(st);
    if (!f.quiet) {
        std::cout << swarm_result_csv(res);
        std::cout << "wins " << swarm_result_wins(res) << "/" << swarm_result_matches(res) << ", mean duration "
                  << swarm_result_mean_duration(res) << " ticks\n";
    }
    swarm_result_free(res);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier Zerg agent match runner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", swarm_version());

    RunFlags f;
    auto* run_cmd = app.add_subcommand("run", "Play one or more matches against the scripted Terran");
    run_cmd->add_option("--config", f.config_file, "JSON file with the same keys as the flags");
    run_cmd->add_option("--difficulty", f.difficulty, "VeryEasy | Easy | Medium | MediumHard | Hard");
    run_cmd->add_option("--seed", f.seed, "First match seed");
    run_cmd->add_option("--brain", f.brain, "scripted:<rush|macro|turtle> | replay:<file> | remote:<url>");
    run_cmd->add_option("--matches", f.matches, "Number of matches");
    run_cmd->add_option("--latency", f.latency, "gpt-3.5 | gpt-4 | <ticks>");
    run_cmd->add_option("--out", f.out, "Directory for stats, report and replays");
    run_cmd->add_option("--map", f.map, "Map JSON file");
    run_cmd->add_option("--max-minutes", f.max_minutes, "Match length limit in game minutes");
    run_cmd->add_option("--max-ticks", f.max_ticks, "Match length limit in ticks");
    run_cmd->add_option("--model", f.model, "Model name for remote brains");
    run_cmd->add_option("--timeout-ms", f.timeout_ms, "Remote brain timeout");
    run_cmd->add_option("--memory", f.memory, "Rounds of plan memory");
    run_cmd->add_flag("--no-reflex", f.no_reflex, "Disable the unit reflexes");
    run_cmd->add_flag("--no-brain", f.no_brain, "Disable the planner entirely");
    run_cmd->add_flag("--quiet", f.quiet, "Print nothing on success");

    std::string line;
    auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of a command line");
    parse_cmd->add_option("line", line, "(Subject)->(Action)->(Target)")->required();

    std::string replay_file;
    auto* hash_cmd = app.add_subcommand("hash", "Print the hash of a replay file");
    hash_cmd->add_option("file", replay_file)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (*run_cmd) return run(f, *run_cmd);
    if (*parse_cmd) {
        char buf[512];
        swarm_status st = swarm_parse_command(line.c_str(), buf, sizeof buf);
        if (st != SWARM_OK) return report(st);
        std::cout << buf << "\n";
        return kExitOk;
    }
    if (*hash_cmd) {
        std::ifstream in(replay_file, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        std::printf("%016llx\n", static_cast<unsigned long long>(swarm_replay_hash(text.data(), text.size())));
        return kExitOk;
    }
    return kExitConfig;
}
