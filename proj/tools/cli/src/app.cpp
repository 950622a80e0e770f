#include <CLI11.hpp>

#include <optional>
#include <string>

#include "common.hpp"

namespace adiclab::cli {

using detail::json;

namespace {

// Flag values land in a JSON object under their long names, only when given.
struct FlagSet {
    json values = json::object();
    std::vector<std::pair<std::string, std::function<void()>>> pending;

    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& name, const std::string& help) {
        auto holder = std::make_shared<T>();
        CLI::Option* opt = app->add_option("--" + name, *holder, help);
        pending.emplace_back(name, [this, name, holder, opt] {
            if (opt->count() > 0) values[name] = *holder;
        });
        return opt;
    }

    void add_flag(CLI::App* app, const std::string& name, const std::string& help) {
        CLI::Option* opt = app->add_flag("--" + name, help);
        pending.emplace_back(name, [this, name, opt] {
            if (opt->count() > 0) values[name] = true;
        });
    }

    void collect() {
        for (auto& [name, fn] : pending) fn();
    }
};

struct Command {
    CLI::App* app;
    FlagSet flags;
    std::function<json(const json&)> normalize;
    std::function<int(const json&, const Io&)> execute;
    bool uses_precision;
};

void add_constructors(FlagSet& f, CLI::App* app) {
    f.add<std::string>(app, "mean", "target digit mean theta (rational, e.g. 3/2 or 1.5)");
    f.add<std::string>(app, "tau", "digit frequencies, e.g. 1/2,1/2,0,0 (greedy construction)");
    f.add<std::string>(app, "rational", "expand the rational x in [0,1]");
    f.add<std::string>(app, "block", "block construction config: JSON text or a JSON file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"adiclab: digit frequencies, constructions and Besicovitch-Eggleston dimensions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::vector<std::unique_ptr<Command>> commands;

    auto make = [&](const char* name, const char* help, auto normalize, auto execute, bool precision) {
        auto c = std::make_unique<Command>();
        c->app = app.add_subcommand(name, help);
        c->normalize = normalize;
        c->execute = execute;
        c->uses_precision = precision;
        c->flags.add<int>(c->app, "base", "digit base s (default 4)");
        c->flags.add<std::string>(c->app, "format", "csv, json or text");
        c->app->add_option("--config", config_path, "JSON config file (flags win over its values)");
        c->app->add_option("--out", out_path, "output file (default stdout)");
        commands.push_back(std::move(c));
        return commands.back().get();
    };

    Command* construct = make("construct", "write a digit prefix", normalize_construct, cmd_construct, false);
    add_constructors(construct->flags, construct->app);
    construct->flags.add<std::string>(construct->app, "length", "number of digits (<= 1e8)");

    Command* analyze = make("analyze", "frequency and mean trace of a digit file or constructor", normalize_analyze,
                            cmd_analyze, true);
    add_constructors(analyze->flags, analyze->app);
    analyze->flags.add<std::string>(analyze->app, "in", "digit file ('#' lines are skipped)");
    analyze->flags.add<std::string>(analyze->app, "length", "digits to generate for a constructor");
    analyze->flags.add<std::string>(analyze->app, "checkpoints", "comma-separated prefix lengths");
    analyze->flags.add<std::string>(analyze->app, "tol", "weak-normality tolerance on the last checkpoint");

    Command* dimension = make("dimension", "dimension of E[tau] or the m(theta) bound", normalize_dimension,
                              cmd_dimension, true);
    dimension->flags.add<std::string>(dimension->app, "tau", "frequency vector");
    dimension->flags.add<std::string>(dimension->app, "theta", "digit mean");
    dimension->flags.add_flag(dimension->app, "oracle", "also run the grid oracle and compare");
    dimension->flags.add<std::string>(dimension->app, "oracle-step", "grid spacing for --oracle (default 1/1000)");
    dimension->flags.add<std::string>(dimension->app, "sweep", "from:to:step over theta, CSV theta,m,dimension_bound");

    Command* verify = make("verify", "run the invariant battery", normalize_verify, cmd_verify, false);
    verify->flags.add<std::vector<std::string>>(verify->app, "module", "restrict to modules")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (auto& c : commands) {
        if (!c->app->parsed()) continue;
        try {
            c->flags.collect();
            if (c->uses_precision && std::getenv("ADICLAB_PRECISION")) c->flags.values["precision"] = precision_from_env();
            json file = config_path ? load_config_file(*config_path) : json::object();
            json config = c->normalize(merge_flags(file, c->flags.values, err));
            return c->execute(config, Io{out, err, out_path});
        } catch (const UsageError& e) {
            err << "error: " << e.what() << "\n";
        } catch (const std::exception& e) {
            err << "error: " << c->app->get_name() << ": " << e.what() << "\n";
        }
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace adiclab::cli
