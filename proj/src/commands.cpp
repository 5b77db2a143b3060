#include "rai/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <json.hpp>

#include "rai/csv.hpp"
#include "rai/datagen.hpp"
#include "rai/errors.hpp"
#include "rai/io.hpp"
#include "rai/measures.hpp"
#include "rai/profiles.hpp"
#include "rai/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rai {

namespace {

int run_guarded(const std::string& name, const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << name << ": io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const IntegrityError& e) {
        std::cerr << name << ": integrity error: " << e.what() << "\n";
        return kExitIntegrityError;
    } catch (const InsufficientSamples& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitInsufficientSamples;
    } catch (const NoValidClustering& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitNoValidClustering;
    } catch (const std::exception& e) {
        std::cerr << name << ": error: " << e.what() << "\n";
        return kExitFailure;
    }
}

GradeScale resolve_scale(const CommonOptions& common) {
    if (common.grade_scale_path.empty()) return GradeScale::default_scale();
    return GradeScale::load(common.grade_scale_path);
}

Dataset load_for_command(const CommonOptions& common, RunReport& report) {
    if (common.data_dir.empty()) throw ConfigError("--data-dir is required");
    IngestWarnings warnings;
    Dataset ds = load_dataset(common.data_dir, resolve_scale(common), &warnings);
    report.warnings = warnings.messages;
    return ds;
}

fs::path require_out(const CommonOptions& common) {
    if (common.out_dir.empty()) throw ConfigError("--out is required");
    fs::create_directories(common.out_dir);
    return fs::path(common.out_dir);
}

void write_json(const fs::path& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    out << value.dump(2) << "\n";
}

// stdout summary in the selected format: flat key/value pairs.
void print_summary(OutputFormat format, const std::vector<std::pair<std::string, std::string>>& kv,
                   const json& as_json) {
    if (format == OutputFormat::Json) {
        std::cout << as_json.dump(2) << "\n";
        return;
    }
    std::cout << "key,value\n";
    for (const auto& [k, v] : kv) std::cout << k << "," << v << "\n";
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", round_half_away(v, 2));
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace

GridRanges parse_grid_spec(const std::string& spec) {
    GridRanges ranges = GridRanges::defaults();
    if (spec.empty()) return ranges;

    auto fail = [&spec]() -> void {
        throw ConfigError("bad --grid spec '" + spec +
                          "', expected COMPS_LO:HI,EPS_LO:HI[:STEP],MINPTS_LO:HI");
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) fail();

    auto split_colon = [](const std::string& s) {
        std::vector<std::string> out;
        std::string piece;
        for (char c : s) {
            if (c == ':') {
                out.push_back(piece);
                piece.clear();
            } else {
                piece.push_back(c);
            }
        }
        out.push_back(piece);
        return out;
    };

    try {
        auto comps = split_colon(parts[0]);
        if (comps.size() != 2) fail();
        ranges.components.clear();
        for (int c = std::stoi(comps[0]); c <= std::stoi(comps[1]); ++c) {
            ranges.components.push_back(c);
        }

        auto eps = split_colon(parts[1]);
        if (eps.size() != 2 && eps.size() != 3) fail();
        const double lo = std::stod(eps[0]);
        const double hi = std::stod(eps[1]);
        const double step = eps.size() == 3 ? std::stod(eps[2]) : 0.1;
        if (step <= 0.0) fail();
        // integer nanos keep the grid values exact (0.3, not 0.1 * 3)
        const long long lo_n = std::llround(lo * 1e9);
        const long long hi_n = std::llround(hi * 1e9);
        const long long step_n = std::llround(step * 1e9);
        ranges.eps.clear();
        for (long long v = lo_n; v <= hi_n; v += step_n) {
            ranges.eps.push_back(static_cast<double>(v) / 1e9);
        }

        auto mps = split_colon(parts[2]);
        if (mps.size() != 2) fail();
        ranges.min_points.clear();
        for (int m = std::stoi(mps[0]); m <= std::stoi(mps[1]); ++m) {
            ranges.min_points.push_back(m);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail();
    }
    if (ranges.components.empty() || ranges.eps.empty() || ranges.min_points.empty()) fail();
    return ranges;
}

int cmd_gen(const CommonOptions& common, const GenOptions& options) {
    return run_guarded("gen", [&] {
        Timer timer;
        RunReport report;
        report.command = "gen";

        GenConfig config;
        if (!options.preset.empty()) {
            auto presets = preset_configs();
            auto it = presets.find(options.preset);
            if (it == presets.end()) {
                throw ConfigError("unknown preset '" + options.preset + "' (have G1, G2, G3)");
            }
            config = it->second;
        } else if (!options.config_path.empty()) {
            config = load_config(options.config_path);
        } else {
            throw ConfigError("gen requires --preset or --config");
        }
        if (options.seed) config.seed = *options.seed;

        const fs::path out = require_out(common);
        GenResult result = generate(config);
        write_generated(out.string(), result, config);

        report.config_echo = options.preset.empty() ? options.config_path : options.preset;
        report.warnings = result.warnings.messages;
        for (const char* name :
             {"students.csv", "classes.csv", "registrations.csv", "attendance.csv", "grades.csv",
              "catalog.csv", "ground_truth_students.csv", "ground_truth_courses.csv",
              "gen_config.txt"}) {
            report.outputs.push_back((out / name).string());
        }

        json summary = {{"command", "gen"},
                        {"students", result.raw.students.size()},
                        {"classes", result.raw.classes.size()},
                        {"registrations", result.raw.registrations.size()},
                        {"grades", result.raw.grades.size()},
                        {"seed", config.seed},
                        {"ingest_warnings", result.warnings.total()}};
        print_summary(common.format,
                      {{"students", std::to_string(result.raw.students.size())},
                       {"classes", std::to_string(result.raw.classes.size())},
                       {"registrations", std::to_string(result.raw.registrations.size())},
                       {"grades", std::to_string(result.raw.grades.size())},
                       {"seed", std::to_string(config.seed)},
                       {"ingest_warnings", std::to_string(result.warnings.total())}},
                      summary);

        report.wall_seconds = timer.seconds();
        print_report(report);
        return kExitOk;
    });
}

int cmd_compute(const CommonOptions& common, const ComputeOptions& options) {
    return run_guarded("compute", [&] {
        Timer timer;
        RunReport report;
        report.command = "compute";

        const bool want_ar = options.measure == "ar" || options.measure == "both";
        const bool want_rai = options.measure == "rai" || options.measure == "both";
        if (!want_ar && !want_rai) throw ConfigError("--measure must be ar, rai or both");

        Dataset ds = load_for_command(common, report);
        const fs::path out = require_out(common);
        MeasureTable table = compute_measures(ds);

        CsvTable csv;
        std::string filename;
        if (options.per == "student") {
            filename = "measures_student.csv";
            csv.header = {"student_id"};
            if (want_ar) csv.header.push_back("ar");
            if (want_rai) csv.header.push_back("rai");
            for (std::size_t s = 0; s < ds.students.size(); ++s) {
                std::vector<std::string> row{ds.students[s].student_id};
                if (want_ar) row.push_back(format_double(table.ar[s]));
                if (want_rai) row.push_back(format_double(table.rai[s]));
                csv.rows.push_back(std::move(row));
            }
        } else if (options.per == "category") {
            filename = "measures_category.csv";
            csv.header = {"student_id", "category"};
            if (want_ar) csv.header.push_back("ar");
            if (want_rai) csv.header.push_back("rai");
            for (std::size_t s = 0; s < ds.students.size(); ++s) {
                for (std::size_t k = 0; k < ds.catalog.size(); ++k) {
                    std::vector<std::string> row{ds.students[s].student_id, ds.catalog[k].code};
                    // absent category stays an empty cell in the raw export
                    const bool absent = std::isnan(table.cat_ar.at(s, k));
                    if (want_ar) row.push_back(absent ? "" : format_double(table.cat_ar.at(s, k)));
                    if (want_rai) {
                        row.push_back(absent ? "" : format_double(table.cat_rai.at(s, k)));
                    }
                    csv.rows.push_back(std::move(row));
                }
            }
        } else if (options.per == "course") {
            filename = "measures_course.csv";
            csv.header = {"student_id", "course_id"};
            if (want_ar) csv.header.push_back("ar");
            if (want_rai) csv.header.push_back("rai");
            for (std::size_t s = 0; s < ds.students.size(); ++s) {
                for (const auto& course : ds.course_ids) {
                    bool registered = false;
                    for (int cls : ds.classes_of_course(course)) {
                        if (ds.roster.pair_index(static_cast<int>(s), cls) >= 0) {
                            registered = true;
                            break;
                        }
                    }
                    if (!registered) continue;
                    std::vector<std::string> row{ds.students[s].student_id, course};
                    if (want_ar) {
                        row.push_back(format_double(course_ar(ds, static_cast<int>(s), course)));
                    }
                    if (want_rai) {
                        row.push_back(format_double(course_rai(ds, static_cast<int>(s), course)));
                    }
                    csv.rows.push_back(std::move(row));
                }
            }
        } else {
            throw ConfigError("--per must be student, course or category");
        }

        const fs::path path = out / filename;
        write_csv(path.string(), csv);
        report.outputs.push_back(path.string());

        json summary = {{"command", "compute"},
                        {"per", options.per},
                        {"measure", options.measure},
                        {"rows", csv.rows.size()}};
        print_summary(common.format,
                      {{"per", options.per},
                       {"measure", options.measure},
                       {"rows", std::to_string(csv.rows.size())}},
                      summary);

        report.wall_seconds = timer.seconds();
        print_report(report);
        return kExitOk;
    });
}

int cmd_correlate(const CommonOptions& common, const CorrelateOptions& options) {
    return run_guarded("correlate", [&] {
        Timer timer;
        RunReport report;
        report.command = "correlate";

        Dataset ds = load_for_command(common, report);
        const fs::path out = require_out(common);

        if (options.by == "overall") {
            CorrelationResult ar = measure_gpa_correlation(ds, MeasureKind::AR);
            CorrelationResult rai_r = measure_gpa_correlation(ds, MeasureKind::RAI);

            CsvTable csv;
            csv.header = {"measure", "r", "n", "p", "r_2dp"};
            csv.rows.push_back({"ar", format_double(ar.r), std::to_string(ar.n),
                                format_double(ar.p), fixed2(ar.r)});
            csv.rows.push_back({"rai", format_double(rai_r.r), std::to_string(rai_r.n),
                                format_double(rai_r.p), fixed2(rai_r.r)});
            const fs::path csv_path = out / "correlation_overall.csv";
            write_csv(csv_path.string(), csv);
            report.outputs.push_back(csv_path.string());

            json summary = {{"command", "correlate"},
                            {"by", "overall"},
                            {"ar", {{"r", ar.r}, {"n", ar.n}, {"p", ar.p}}},
                            {"rai", {{"r", rai_r.r}, {"n", rai_r.n}, {"p", rai_r.p}}}};
            const fs::path json_path = out / "correlation_summary.json";
            write_json(json_path, summary);
            report.outputs.push_back(json_path.string());

            print_summary(common.format,
                          {{"ar_r", format_double(ar.r)},
                           {"ar_p", format_double(ar.p)},
                           {"rai_r", format_double(rai_r.r)},
                           {"rai_p", format_double(rai_r.p)},
                           {"n", std::to_string(ar.n)}},
                          summary);
        } else if (options.by == "category") {
            auto rows = category_correlation_table(ds);

            CsvTable csv;
            csv.header = {"category", "description", "n", "corr_ar", "p_ar", "corr_rai",
                          "p_rai", "corr_ar_2dp", "corr_rai_2dp", "retained"};
            json jrows = json::array();
            for (const auto& row : rows) {
                csv.rows.push_back({row.category, row.description, std::to_string(row.n),
                                    format_double(row.corr_ar), format_double(row.p_ar),
                                    format_double(row.corr_rai), format_double(row.p_rai),
                                    std::isnan(row.corr_ar) ? "" : fixed2(row.corr_ar),
                                    std::isnan(row.corr_rai) ? "" : fixed2(row.corr_rai),
                                    row.retained ? "1" : "0"});
                json jrow = {{"category", row.category}, {"description", row.description},
                             {"n", row.n},               {"retained", row.retained},
                             {"p_ar", row.p_ar},         {"p_rai", row.p_rai}};
                jrow["corr_ar"] = std::isnan(row.corr_ar) ? json() : json(row.corr_ar);
                jrow["corr_rai"] = std::isnan(row.corr_rai) ? json() : json(row.corr_rai);
                jrows.push_back(std::move(jrow));
            }
            const fs::path csv_path = out / "correlation_categories.csv";
            write_csv(csv_path.string(), csv);
            report.outputs.push_back(csv_path.string());

            json summary = {{"command", "correlate"}, {"by", "category"}, {"rows", jrows}};
            const fs::path json_path = out / "correlation_summary.json";
            write_json(json_path, summary);
            report.outputs.push_back(json_path.string());

            int retained = 0;
            for (const auto& row : rows) retained += row.retained ? 1 : 0;
            print_summary(common.format,
                          {{"categories", std::to_string(rows.size())},
                           {"retained", std::to_string(retained)}},
                          summary);
        } else {
            throw ConfigError("--by must be overall or category");
        }

        report.wall_seconds = timer.seconds();
        print_report(report);
        return kExitOk;
    });
}

int cmd_hist(const CommonOptions& common, const HistOptions& options) {
    return run_guarded("hist", [&] {
        Timer timer;
        RunReport report;
        report.command = "hist";

        Dataset ds = load_for_command(common, report);
        const fs::path out = require_out(common);

        auto [high, low] = grade_split_histograms(ds, options.high_cut, options.low_cut,
                                                  options.bins);

        auto write_hist = [&](const char* name, const Histogram& h) {
            CsvTable csv;
            csv.header = {"bin_low", "bin_high", "proportion"};
            for (std::size_t i = 0; i < h.proportions.size(); ++i) {
                csv.rows.push_back({format_double(h.edges[i]), format_double(h.edges[i + 1]),
                                    format_double(h.proportions[i])});
            }
            const fs::path path = out / name;
            write_csv(path.string(), csv);
            report.outputs.push_back(path.string());
        };
        write_hist("hist_high.csv", high);
        write_hist("hist_low.csv", low);

        // sample-level stats, independent of the binning
        auto high_points = ds.scale.points(options.high_cut);
        auto low_points = ds.scale.points(options.low_cut);
        double high_sum = 0.0, low_sum = 0.0;
        int high_n = 0, low_n = 0, high_pos = 0, low_pos = 0;
        for (const auto& sample : grade_rai_samples(ds)) {
            if (sample.points >= *high_points) {
                high_sum += sample.course_rai;
                ++high_n;
                if (sample.course_rai > 0.0) ++high_pos;
            }
            if (sample.points <= *low_points) {
                low_sum += sample.course_rai;
                ++low_n;
                if (sample.course_rai > 0.0) ++low_pos;
            }
        }
        json summary = {
            {"command", "hist"},
            {"bins", options.bins},
            {"high",
             {{"cut", options.high_cut},
              {"n", high_n},
              {"mean_course_rai", high_n ? high_sum / high_n : 0.0},
              {"share_positive", high_n ? static_cast<double>(high_pos) / high_n : 0.0}}},
            {"low",
             {{"cut", options.low_cut},
              {"n", low_n},
              {"mean_course_rai", low_n ? low_sum / low_n : 0.0},
              {"share_positive", low_n ? static_cast<double>(low_pos) / low_n : 0.0}}}};
        const fs::path json_path = out / "hist_summary.json";
        write_json(json_path, summary);
        report.outputs.push_back(json_path.string());

        print_summary(common.format,
                      {{"high_n", std::to_string(high_n)},
                       {"high_mean", format_double(high_n ? high_sum / high_n : 0.0)},
                       {"low_n", std::to_string(low_n)},
                       {"low_mean", format_double(low_n ? low_sum / low_n : 0.0)}},
                      summary);

        report.wall_seconds = timer.seconds();
        print_report(report);
        return kExitOk;
    });
}

int cmd_cluster(const CommonOptions& common, const ClusterOptions& options) {
    return run_guarded("cluster", [&] {
        Timer timer;
        RunReport report;
        report.command = "cluster";

        if (options.measure != "ar" && options.measure != "rai") {
            throw ConfigError("--measure must be ar or rai");
        }
        Dataset ds = load_for_command(common, report);
        const fs::path out = require_out(common);

        const MeasureKind kind = options.measure == "ar" ? MeasureKind::AR : MeasureKind::RAI;
        Matrix features = feature_vectors(ds, kind);

        GridRanges ranges = parse_grid_spec(options.grid);
        ranges.standardize = options.standardize;
        ranges.noise_cap = options.noise_cap;
        ranges.threads = options.threads;

        GridSearchResult result = grid_search(features, ranges);
        MeasureTable table = compute_measures(ds);
        auto profiles = profile_clusters(result.labels, ds, table);
        DecileFlags flags = gpa_decile_flags(ds);

        CsvTable labels_csv;
        labels_csv.header = {"student_id", "label"};
        for (std::size_t s = 0; s < ds.students.size(); ++s) {
            labels_csv.rows.push_back(
                {ds.students[s].student_id, std::to_string(result.labels[s])});
        }
        const fs::path labels_path = out / "labels.csv";
        write_csv(labels_path.string(), labels_csv);
        report.outputs.push_back(labels_path.string());

        json choice = {{"measure", options.measure},
                       {"n_components", result.choice.n_components},
                       {"eps", result.choice.eps},
                       {"min_points", result.choice.min_points},
                       {"silhouette", result.choice.silhouette},
                       {"cluster_count", result.choice.cluster_count},
                       {"noise_count", result.choice.noise_count}};
        const fs::path choice_path = out / "grid_choice.json";
        write_json(choice_path, choice);
        report.outputs.push_back(choice_path.string());

        // Five profile panels: counts, major fractions, mean RAI, decile ratios.
        auto panel = [&](const char* name, const std::vector<std::string>& header,
                         const std::function<void(CsvTable&)>& fill) {
            CsvTable csv;
            csv.header = header;
            fill(csv);
            const fs::path path = out / name;
            write_csv(path.string(), csv);
            report.outputs.push_back(path.string());
        };
        panel("panel_a_counts.csv", {"cluster", "major", "count"}, [&](CsvTable& csv) {
            for (const auto& prof : profiles) {
                for (const auto& [major, count] : prof.major_count) {
                    csv.rows.push_back(
                        {std::to_string(prof.cluster), major, std::to_string(count)});
                }
            }
        });
        panel("panel_b_major_fractions.csv", {"cluster", "major", "fraction_of_major"},
              [&](CsvTable& csv) {
                  for (const auto& prof : profiles) {
                      for (const auto& [major, fraction] : prof.major_fraction) {
                          csv.rows.push_back(
                              {std::to_string(prof.cluster), major, format_double(fraction)});
                      }
                  }
              });
        panel("panel_c_rai.csv", {"cluster", "major", "mean_rai"}, [&](CsvTable& csv) {
            for (const auto& prof : profiles) {
                for (const auto& [major, mean] : prof.major_mean_rai) {
                    csv.rows.push_back({std::to_string(prof.cluster), major, format_double(mean)});
                }
            }
        });
        panel("panel_d_top_decile.csv", {"cluster", "major", "top_decile_ratio", "low_confidence"},
              [&](CsvTable& csv) {
                  for (const auto& prof : profiles) {
                      for (const auto& [major, ratio] : prof.major_top_decile_ratio) {
                          const bool low = flags.low_confidence.count(major)
                                               ? flags.low_confidence.at(major)
                                               : true;
                          csv.rows.push_back({std::to_string(prof.cluster), major,
                                              format_double(ratio), low ? "1" : "0"});
                      }
                  }
              });
        panel("panel_e_last_decile.csv",
              {"cluster", "major", "last_decile_ratio", "low_confidence"}, [&](CsvTable& csv) {
                  for (const auto& prof : profiles) {
                      for (const auto& [major, ratio] : prof.major_last_decile_ratio) {
                          const bool low = flags.low_confidence.count(major)
                                               ? flags.low_confidence.at(major)
                                               : true;
                          csv.rows.push_back({std::to_string(prof.cluster), major,
                                              format_double(ratio), low ? "1" : "0"});
                      }
                  }
              });

        json jprofiles = json::array();
        for (const auto& prof : profiles) {
            jprofiles.push_back({{"cluster", prof.cluster},
                                 {"size", prof.size},
                                 {"top5_majors", prof.top5_majors}});
        }
        const fs::path profiles_path = out / "profiles.json";
        write_json(profiles_path, {{"clusters", jprofiles}});
        report.outputs.push_back(profiles_path.string());

        json summary = choice;
        summary["command"] = "cluster";
        print_summary(common.format,
                      {{"n_components", std::to_string(result.choice.n_components)},
                       {"eps", format_double(result.choice.eps)},
                       {"min_points", std::to_string(result.choice.min_points)},
                       {"silhouette", format_double(result.choice.silhouette)},
                       {"clusters", std::to_string(result.choice.cluster_count)},
                       {"noise", std::to_string(result.choice.noise_count)}},
                      summary);

        report.wall_seconds = timer.seconds();
        print_report(report);
        return kExitOk;
    });
}

}  // namespace rai
