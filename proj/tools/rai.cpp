#include <CLI11.hpp>

#include "rai/commands.hpp"

// Command-line surface for the attendance analytics pipeline:
//   gen        synthesize a cohort dataset (presets G1/G2/G3 or a config file)
//   compute    attendance measures per student / course / category
//   correlate  measure-vs-grade correlations, overall or per category
//   hist       course-level index histograms for high vs low grade samples
//   cluster    PCA + DBSCAN grid search over category feature vectors

int main(int argc, char** argv) {
    CLI::App app{"Relative attendance analytics"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    rai::CommonOptions common;
    std::string format = "csv";
    app.add_option("--data-dir", common.data_dir, "Directory with the dataset CSV files");
    app.add_option("--out", common.out_dir, "Output directory");
    app.add_option("--format", format, "Summary format on stdout: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--grade-scale", common.grade_scale_path,
                   "Letter grade scale file (LETTER=points per line)");

    auto* gen = app.add_subcommand("gen", "Generate a synthetic cohort dataset");
    rai::GenOptions gen_options;
    std::uint64_t seed = 0;
    auto* seed_opt = gen->add_option("--seed", seed, "Override the config's RNG seed");
    gen->add_option("--preset", gen_options.preset, "Preset config: G1, G2 or G3");
    gen->add_option("--config", gen_options.config_path, "Generator config file");

    auto* compute = app.add_subcommand("compute", "Compute attendance measures");
    rai::ComputeOptions compute_options;
    compute->add_option("--measure", compute_options.measure, "ar, rai or both")
        ->check(CLI::IsMember({"ar", "rai", "both"}));
    compute->add_option("--per", compute_options.per, "student, course or category")
        ->check(CLI::IsMember({"student", "course", "category"}));

    auto* correlate = app.add_subcommand("correlate", "Correlate measures with grades");
    rai::CorrelateOptions correlate_options;
    correlate->add_option("--by", correlate_options.by, "overall or category")
        ->check(CLI::IsMember({"overall", "category"}));

    auto* hist = app.add_subcommand("hist", "Histogram course RAI by grade band");
    rai::HistOptions hist_options;
    hist->add_option("--high-cut", hist_options.high_cut, "Letter of the high-grade cut");
    hist->add_option("--low-cut", hist_options.low_cut, "Letter of the low-grade cut");
    hist->add_option("--bins", hist_options.bins, "Histogram bin count")
        ->check(CLI::PositiveNumber);

    auto* cluster = app.add_subcommand("cluster", "Cluster category feature vectors");
    rai::ClusterOptions cluster_options;
    cluster->add_option("--measure", cluster_options.measure, "ar or rai")
        ->check(CLI::IsMember({"ar", "rai"}));
    cluster->add_option("--grid", cluster_options.grid,
                        "Grid 'COMPS_LO:HI,EPS_LO:HI[:STEP],MINPTS_LO:HI' (default 5:15,0.1:1.0:0.1,5:20)");
    cluster->add_flag("--seedless", cluster_options.seedless,
                      "Assert the run uses no RNG (always true; the pipeline is deterministic)");
    cluster->add_flag("!--no-standardize", cluster_options.standardize,
                      "Skip z-scoring the feature columns before PCA");
    cluster->add_option("--noise-cap", cluster_options.noise_cap,
                        "Reject grid cells with a higher noise fraction");
    cluster->add_option("--threads", cluster_options.threads,
                        "Grid search worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    if (*seed_opt) gen_options.seed = seed;
    common.format = format == "json" ? rai::OutputFormat::Json : rai::OutputFormat::Csv;

    if (gen->parsed()) return rai::cmd_gen(common, gen_options);
    if (compute->parsed()) return rai::cmd_compute(common, compute_options);
    if (correlate->parsed()) return rai::cmd_correlate(common, correlate_options);
    if (hist->parsed()) return rai::cmd_hist(common, hist_options);
    if (cluster->parsed()) return rai::cmd_cluster(common, cluster_options);
    return rai::kExitFailure;
}
