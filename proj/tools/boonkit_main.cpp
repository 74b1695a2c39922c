// boonkit CLI: verify | datagen | train | eval | bounds. Flags are collected
// as strings into the same key=value map a config file produces, so both
// sources share one validation path; a key set in both places is rejected.

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "boonkit/harness/commands.hpp"

namespace {

std::string key_of(const std::string& flag) {
    std::string key = flag.substr(flag.find_first_not_of('-'));
    for (char& c : key)
        if (c == '-')
            c = '_';
    return key;
}

// Binds long-form string options to one map and reports only the ones the
// user actually passed, so absent flags never shadow config-file keys.
class OptionBag {
  public:
    explicit OptionBag(CLI::App* app) : app_(app) {
        app_->add_option("--config", config_path_, "key=value config file");
    }

    void add(const std::string& flag, const std::string& help) {
        const std::string key = key_of(flag);
        options_.emplace_back(key, app_->add_option(flag, storage_[key], help));
    }

    void add_flag(const std::string& flag, const std::string& help) {
        options_.emplace_back(key_of(flag), app_->add_flag(flag, help));
    }

    boon::ConfigMap collect() const {
        boon::ConfigMap cfg;
        for (const auto& [key, opt] : options_) {
            if (opt->count() == 0)
                continue;
            auto it = storage_.find(key);
            cfg.set(key, it == storage_.end() ? "true" : it->second);
        }
        if (!config_path_.empty())
            cfg.merge_file(boon::load_config_file(config_path_));
        return cfg;
    }

    bool parsed() const { return app_->parsed(); }

  private:
    CLI::App* app_;
    std::string config_path_;
    std::map<std::string, std::string> storage_; // node-based: stable addresses for CLI11 bindings
    std::vector<std::pair<std::string, CLI::Option*>> options_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-corrected spectral operator toolkit"};
    app.require_subcommand(1);

    OptionBag verify(app.add_subcommand("verify", "run the property suites"));
    verify.add("--filter", "run only suites whose names contain this substring");
    verify.add("--out", "write the JSON report here");

    OptionBag datagen(app.add_subcommand("datagen", "generate a dataset file"));
    datagen.add("--problem", "problem family name");
    datagen.add("--resolution", "grid points per axis");
    datagen.add("--n-data", "total sample count (split 5/6 train, 1/6 test)");
    datagen.add("--n-t", "time steps");
    datagen.add("--m", "recorded output steps");
    datagen.add("--t-final", "final time");
    datagen.add("--seed", "sampling seed");
    datagen.add("--nu", "viscosity");
    datagen.add("--k-cond", "heat conductivity");
    datagen.add("--re", "cavity Reynolds number");
    datagen.add("--u-mag", "velocity/forcing magnitude");
    datagen.add("--c-wave", "membrane wave speed");
    datagen.add("--out", "dataset output path");

    OptionBag train(app.add_subcommand("train", "train an operator on a dataset"));
    train.add("--dataset", "training dataset path");
    train.add("--out", "checkpoint output path");
    train.add("--metrics", "per-epoch CSV path");
    train.add("--summary", "final JSON summary path");
    train.add("--epochs", "training epochs");
    train.add("--lr", "initial learning rate");
    train.add("--decay-interval", "epochs between learning-rate halvings");
    train.add("--decay-factor", "learning-rate decay factor");
    train.add("--batch", "batch size");
    train.add("--seed", "init/shuffle seed");
    train.add_flag("--baseline", "disable the boundary correction");
    train.add_flag("--mollifier", "enable the output mollifier");
    train.add("--modes", "spectral modes per layer");
    train.add("--channels", "hidden channels");
    train.add("--bc", "boundary family: dirichlet, neumann, periodic");
    train.add("--side", "boundary side: left, right, both");
    train.add("--stencil-order", "one-sided stencil order (1 or 2)");
    train.add("--alpha", "periodic left weight");
    train.add("--beta", "periodic right weight");

    OptionBag eval(app.add_subcommand("eval", "evaluate checkpoints on datasets"));
    eval.add("--checkpoint", "checkpoint path(s), comma-separated");
    eval.add("--dataset", "dataset path(s), comma-separated");
    eval.add("--split", "train, test, or all");
    eval.add("--out", "write the JSON report here");

    OptionBag bounds(app.add_subcommand("bounds", "tabulate correction-size formulas"));
    bounds.add("--trials", "random trials");
    bounds.add("--seed", "trial seed");
    bounds.add("--out", "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify.parsed())
            return boon::cmd_verify(verify.collect(), std::cout, std::clog);
        if (datagen.parsed())
            return boon::cmd_datagen(datagen.collect(), std::cout, std::clog);
        if (train.parsed())
            return boon::cmd_train(train.collect(), std::cout, std::clog);
        if (eval.parsed())
            return boon::cmd_eval(eval.collect(), std::cout, std::clog);
        if (bounds.parsed())
            return boon::cmd_bounds(bounds.collect(), std::cout, std::clog);
    } catch (const boon::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const boon::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const boon::TruncatedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const boon::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
