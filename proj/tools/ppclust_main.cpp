// Command-line front end: privacy-preserving collaborative clustering
// simulation, standalone server selection, membership-inference evaluation
// and gap visualization data.

#include "ppclust/errors.hpp"
#include "ppclust/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

std::string resolve_out(const std::string& cli_out, const std::string& config_out) {
    if (!cli_out.empty()) return cli_out;
    if (!config_out.empty()) return config_out;
    if (const char* env = std::getenv("PPCLUST_OUT")) return env;
    return "runs";
}

struct CommonArgs {
    std::string config_path;
    std::string out;
    long long seed = -1;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file")->required();
    cmd->add_option("--seed", args.seed, "override the config seed list with one seed");
    cmd->add_option("--out", args.out, "output root (default $PPCLUST_OUT or ./runs)");
    cmd->add_option("--workers", args.workers, "worker threads for sweeps");
}

ppclust::ExperimentConfig load(const CommonArgs& args) {
    ppclust::ExperimentConfig cfg = ppclust::load_config(args.config_path);
    if (args.seed >= 0) cfg.seeds = {static_cast<std::uint64_t>(args.seed)};
    if (args.workers > 0) cfg.workers = args.workers;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"privacy-preserving clustering algorithm selection"};
    app.require_subcommand(1);

    CommonArgs sim_args, sel_args, atk_args, gap_args;
    std::string select_noisy, ingest_csv_path, ingest_label;

    auto* sim = app.add_subcommand("simulate", "run the five-step protocol over the config grid");
    add_common(sim, sim_args);

    auto* sel = app.add_subcommand("select", "server recommendation for a noisy CSV + sidecar");
    add_common(sel, sel_args);
    sel->add_option("--noisy", select_noisy, "noisy CSV (expects <file>.meta.json sidecar)")
        ->required();

    auto* atk = app.add_subcommand("attack", "membership-inference attack power vs epsilon");
    add_common(atk, atk_args);

    auto* gap = app.add_subcommand("gapviz", "original-vs-noisy paired points per epsilon");
    add_common(gap, gap_args);

    auto* chk = app.add_subcommand("ingest-check", "validate a CSV and print its inferred schema");
    chk->add_option("--csv", ingest_csv_path, "CSV file to validate")->required();
    chk->add_option("--label", ingest_label, "label column name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            auto cfg = load(sim_args);
            std::string dir = ppclust::run_simulate(cfg, resolve_out(sim_args.out, cfg.out_dir));
            std::cout << "run directory: " << dir << "\n";
        } else if (sel->parsed()) {
            auto cfg = load(sel_args);
            std::string dir;
            ppclust::Recommendation rec =
                ppclust::run_select(select_noisy, cfg, resolve_out(sel_args.out, cfg.out_dir), &dir);
            std::cout << ppclust::recommendation_json(rec);
            std::cout << "run directory: " << dir << "\n";
        } else if (atk->parsed()) {
            auto cfg = load(atk_args);
            ppclust::AttackCurve curve;
            std::string dir =
                ppclust::run_attack(cfg, resolve_out(atk_args.out, cfg.out_dir), &curve);
            for (const auto& pt : curve)
                std::cout << "epsilon " << pt.epsilon << ": TPR " << pt.tpr << " (FPR " << pt.fpr
                          << ", tau " << pt.tau << ")\n";
            std::cout << "run directory: " << dir << "\n";
        } else if (gap->parsed()) {
            auto cfg = load(gap_args);
            std::string dir = ppclust::run_gapviz(cfg, resolve_out(gap_args.out, cfg.out_dir));
            std::cout << "run directory: " << dir << "\n";
        } else if (chk->parsed()) {
            ppclust::SchemaHints hints;
            if (!ingest_label.empty()) hints.label_column = ingest_label;
            ppclust::Dataset d = ppclust::ingest_csv(ingest_csv_path, hints);
            std::cout << "rows: " << d.n() << "\ncolumns:\n";
            for (const auto& fs : d.schema) {
                std::cout << "  " << fs.name << ": "
                          << (fs.kind == ppclust::FeatureKind::Categorical ? "categorical"
                                                                           : "numeric");
                if (fs.kind == ppclust::FeatureKind::Categorical)
                    std::cout << " (m=" << fs.state_count << ")";
                std::cout << "\n";
            }
            if (d.has_labels()) {
                int classes = 0;
                for (int l : d.labels) classes = std::max(classes, l + 1);
                std::cout << "label classes: " << classes << "\n";
            }
        }
    } catch (const ppclust::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ppclust::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
