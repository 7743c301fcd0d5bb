// Copyright 2026 The qmon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: qmon <experiment> [--config FILE] [flags].
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration or usage
// error, 3 input/output error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmon/errors.h"
#include "qmon/experiment.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Flags {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<size_t> threads;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw qmon::IoError("cannot read config '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Merges the config file (if any) with the subcommand and flag overrides.
qmon::ExperimentConfig build_config(qmon::ExperimentKind kind, const Flags &flags) {
    using json = nlohmann::ordered_json;
    json j = json::object();
    if (!flags.config.empty()) {
        try {
            j = json::parse(read_file(flags.config));
        } catch (const nlohmann::json::parse_error &e) {
            throw qmon::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw qmon::ConfigError("config must be a JSON object");
        }
    }
    std::string name = qmon::experiment_name(kind);
    if (j.contains("experiment") && j["experiment"] != name) {
        const auto &e = j["experiment"];
        throw qmon::ConfigError("config is for experiment " + (e.is_string() ? e.get<std::string>() : e.dump()) +
                                ", not " + name);
    }
    j["experiment"] = name;
    if (kind == qmon::ExperimentKind::YCommutant && !j.contains("code")) {
        j["code"] = "toric";
        if (!j.contains("size") && !j.contains("sizes")) {
            j["sizes"] = {10};
        }
    }
    if (flags.seed) {
        j["seed"] = *flags.seed;
    }
    if (flags.out) {
        j["out"] = *flags.out;
    }
    if (flags.format) {
        j["format"] = *flags.format;
    }
    if (flags.threads) {
        j["threads"] = *flags.threads;
    }
    return qmon::parse_config(j.dump());
}

int run(qmon::ExperimentKind kind, const Flags &flags) {
    try {
        auto cfg = build_config(kind, flags);
        auto table = qmon::run_experiment(cfg);
        qmon::emit(table, cfg, cfg.out, cfg.format);
        return kExitOk;
    } catch (const qmon::ConfigError &e) {
        std::cerr << "qmon: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qmon::IoError &e) {
        std::cerr << "qmon: io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "qmon: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Measurement-induced destruction of encoded information"};
    app.require_subcommand(1);
    Flags flags;
    int status = kExitOk;

    struct Command {
        qmon::ExperimentKind kind;
        const char *help;
    };
    const Command commands[] = {
        {qmon::ExperimentKind::Sweep, "Preservation probability over a grid of measurement rates"},
        {qmon::ExperimentKind::Concat, "Flow of the measured-class distribution under concatenation"},
        {qmon::ExperimentKind::Threshold, "Bisect the measurement-rate threshold along frequency rays"},
        {qmon::ExperimentKind::YCommutant, "Toric code under Y measurements: rates, bounds, classes"},
        {qmon::ExperimentKind::Haar, "Reference purity after measuring Haar-random or fixed codes"},
    };
    for (const auto &c : commands) {
        auto *sub = app.add_subcommand(qmon::experiment_name(c.kind), c.help);
        sub->add_option("--config", flags.config, "JSON experiment config");
        sub->add_option("--seed", flags.seed, "Override the config seed");
        sub->add_option("--out", flags.out, "Output path ('-' for stdout)");
        sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
        auto kind = c.kind;
        sub->callback([&status, &flags, kind] { status = run(kind, flags); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }
    return status;
}
