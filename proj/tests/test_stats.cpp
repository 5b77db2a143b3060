#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rai/errors.hpp"
#include "rai/rng.hpp"
#include "rai/stats.hpp"

using namespace rai;
using testutil::ClassSpec;
using testutil::toy_dataset;

TEST_CASE("pearson on pinned inputs") {
    std::vector<double> x{1, 2, 3};
    CHECK(pearson(x, std::vector<double>{2, 4, 6}) == 1.0);
    CHECK(pearson(x, std::vector<double>{3, 2, 1}) == -1.0);
    std::vector<double> x4{1, 2, 3, 4};
    std::vector<double> y4{1, 3, 2, 4};
    CHECK(pearson(x4, y4) == 0.8);  // cov* = 4, var* = 5 each

    CHECK_THROWS_AS(pearson(x, x4), ShapeError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1.0}, std::vector<double>{2.0}), ShapeError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, x), UndefinedCorrelation);
}

TEST_CASE("pearson matches the textbook formula and its symmetries") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(40));
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = rng.next_normal();
            y[i] = 0.4 * x[i] + rng.next_normal();
        }
        const double r = pearson(x, y);
        CHECK(std::abs(r - oracle::pearson_naive(x, y)) < 1e-10);
        CHECK(pearson(y, x) == r);

        std::vector<double> scaled(n);
        const double a = 0.01 + 5.0 * rng.next_double();
        const double b = rng.next_normal();
        for (int i = 0; i < n; ++i) scaled[i] = a * x[i] + b;
        CHECK(std::abs(pearson(scaled, y) - r) < 1e-12);
    }
}

TEST_CASE("p_value pinned and against quadrature") {
    CHECK(p_value(0.0, 5) == 1.0);
    CHECK(p_value(1.0, 5) == 0.0);
    CHECK(p_value(-1.0, 17) == 0.0);

    const double p = p_value(0.5, 10);
    CHECK(std::abs(p - oracle::two_tailed_p(0.5, 10)) < 1e-3);
    CHECK(std::abs(p - 0.141) < 1e-3);

    CHECK_THROWS_AS(p_value(0.5, 2), InsufficientSamples);
    CHECK_THROWS_AS(p_value(1.5, 10), RangeError);
}

TEST_CASE("p_value monotonicity") {
    for (int n : {5, 10, 30, 100}) {
        double prev = 1.1;
        for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
            const double p = p_value(r, n);
            CHECK(p < prev);
            CHECK(p == p_value(-r, n));  // two-tailed symmetry
            prev = p;
        }
    }
    for (double r : {0.2, 0.5, 0.8}) {
        double prev = 1.1;
        for (int n : {4, 8, 16, 64, 256}) {
            const double p = p_value(r, n);
            CHECK(p < prev);
            prev = p;
        }
    }
}

TEST_CASE("p_value agrees with quadrature across the range") {
    for (int n : {5, 12, 40}) {
        for (double r : {0.05, 0.25, 0.45, 0.65, 0.85}) {
            CHECK(std::abs(p_value(r, n) - oracle::two_tailed_p(r, n)) < 1e-6);
        }
    }
}

namespace {

Dataset dataset_with_gpas(const std::vector<double>& gpas) {
    // one shared class plus a private class per student for varied rates
    std::vector<ClassSpec> classes;
    ClassSpec shared;
    for (int s = 1; s <= static_cast<int>(gpas.size()); ++s) {
        shared.members.push_back({s, s % 2 == 0});
    }
    classes.push_back(shared);
    for (int s = 1; s <= static_cast<int>(gpas.size()); ++s) {
        ClassSpec solo;
        solo.members = {{s, s % 3 != 0}};
        classes.push_back(solo);
    }
    Dataset ds = toy_dataset(static_cast<int>(gpas.size()), classes);
    for (std::size_t s = 0; s < gpas.size(); ++s) ds.students[s].gpa = gpas[s];
    return ds;
}

}  // namespace

TEST_CASE("measure_gpa_correlation") {
    Dataset ds = dataset_with_gpas({1.0, 2.0, 3.0, 2.5, 0.5, 3.5});
    // identity mapping: gpa := rai makes the coefficient exactly 1
    MeasureTable table = compute_measures(ds);
    for (std::size_t s = 0; s < ds.students.size(); ++s) ds.students[s].gpa = table.rai[s];
    CorrelationResult result = measure_gpa_correlation(ds, MeasureKind::RAI);
    CHECK(result.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.n == 6);

    for (std::size_t s = 0; s < ds.students.size(); ++s) ds.students[s].gpa.reset();
    ds.students[0].gpa = 1.0;
    ds.students[1].gpa = 2.0;
    CHECK_THROWS_AS(measure_gpa_correlation(ds, MeasureKind::RAI), InsufficientSamples);
}

TEST_CASE("category_correlation_table equals hand-extracted pairs") {
    // two categories; grades pin the (points, measure) pairs per category
    std::vector<ClassSpec> classes;
    Rng rng(5150);
    for (int c = 0; c < 6; ++c) {
        ClassSpec spec;
        spec.category = c < 3 ? "A" : "B";
        for (int s = 1; s <= 8; ++s) {
            if (rng.next_double() < 0.7) spec.members.push_back({s, rng.next_double() < 0.5});
        }
        if (spec.members.empty()) spec.members.push_back({1, true});
        classes.push_back(spec);
    }
    Dataset ds;
    {
        DatasetBuilder builder;
        builder.add_category("A", "first");
        builder.add_category("B", "second");
        for (int s = 1; s <= 8; ++s) builder.add_student("s" + std::to_string(s), "MAJ", "C14");
        const char* letters[] = {"A", "B+", "B", "C+", "C", "D", "F", "A-"};
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const std::string course = "crs" + std::to_string(c + 1);
            builder.add_class("c" + std::to_string(c + 1), course, classes[c].category, "all");
            for (const auto& [ordinal, attended] : classes[c].members) {
                const std::string sid = "s" + std::to_string(ordinal);
                builder.add_registration(sid, "c" + std::to_string(c + 1));
                builder.add_attendance(sid, "c" + std::to_string(c + 1), attended);
                builder.add_grade(sid, course, letters[(ordinal + c) % 8]);
            }
        }
        ds = builder.build();
    }

    auto rows = category_correlation_table(ds);
    REQUIRE(rows.size() == 2);
    CHECK(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.corr_rai > b.corr_rai;
    }));

    MeasureTable table = compute_measures(ds);
    for (const auto& row : rows) {
        std::vector<double> points, rai_vals, ar_vals;
        const int cat = ds.find_category(row.category);
        for (const auto& g : ds.grades) {
            if (!g.points) continue;
            const int cls = ds.classes_of_course(g.course_id)[0];
            if (ds.classes[cls].category != row.category) continue;
            const int s = ds.find_student(g.student_id);
            points.push_back(*g.points);
            rai_vals.push_back(course_rai(ds, s, g.course_id));
            ar_vals.push_back(table.cat_ar.at(s, cat));
        }
        CHECK(row.n == static_cast<int>(points.size()));
        CHECK(row.corr_rai ==
              doctest::Approx(oracle::pearson_naive(points, rai_vals)).epsilon(1e-10));
        CHECK(row.corr_ar ==
              doctest::Approx(oracle::pearson_naive(points, ar_vals)).epsilon(1e-10));
    }
}

TEST_CASE("category with too few samples is not retained") {
    DatasetBuilder builder;
    builder.add_category("A", "tiny");
    builder.add_student("s1", "MAJ", "C14");
    builder.add_student("s2", "MAJ", "C14");
    builder.add_class("c1", "crs1", "A", "all");
    builder.add_class("c2", "crs2", "A", "all");
    for (const char* sid : {"s1", "s2"}) {
        builder.add_registration(sid, "c1");
        builder.add_attendance(sid, "c1", sid[1] == '1');
        builder.add_registration(sid, "c2");
        builder.add_attendance(sid, "c2", true);
    }
    builder.add_grade("s1", "crs1", "A");
    builder.add_grade("s2", "crs1", "C");
    Dataset ds = builder.build();

    auto rows = category_correlation_table(ds);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 2);
    CHECK_FALSE(rows[0].retained);
}

TEST_CASE("rai_histogram") {
    std::vector<double> zeros{0.0, 0.0, 0.0};
    Histogram h = rai_histogram(zeros, 20);
    int nonzero_bins = 0;
    for (double p : h.proportions) {
        if (p > 0) {
            ++nonzero_bins;
            CHECK(p == 1.0);
        }
    }
    CHECK(nonzero_bins == 1);

    std::vector<double> spread{-0.95, 0.95, 0.05, 0.05};
    Histogram two = rai_histogram(spread, 2);
    CHECK(two.proportions[0] == 0.25);
    CHECK(two.proportions[1] == 0.75);
    CHECK(two.edges.front() == -1.0);
    CHECK(two.edges.back() == 1.0);

    CHECK_THROWS_AS(rai_histogram(std::vector<double>{}, 20), EmptyInput);
    CHECK_THROWS_AS(rai_histogram(std::vector<double>{1.5}, 20), RangeError);
    CHECK_THROWS_AS(rai_histogram(zeros, 0), RangeError);

    // 1.0 lands in the last (closed) bin; edges are right-open elsewhere
    std::vector<double> bounds{-1.0, 0.0, 1.0};
    Histogram hb = rai_histogram(bounds, 2);
    CHECK(hb.proportions[0] == doctest::Approx(1.0 / 3));
    CHECK(hb.proportions[1] == doctest::Approx(2.0 / 3));
}

TEST_CASE("histogram proportions always sum to one") {
    Rng rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(200));
        const int bins = 1 + static_cast<int>(rng.next_below(40));
        std::vector<double> values(n);
        for (double& v : values) v = 2.0 * rng.next_double() - 1.0;
        Histogram h = rai_histogram(values, bins);
        double sum = 0.0;
        for (double p : h.proportions) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("grade_split_histograms splits at the letter cuts") {
    DatasetBuilder builder;
    builder.add_category("A", "cat");
    for (int s = 1; s <= 4; ++s) builder.add_student("s" + std::to_string(s), "MAJ", "C14");
    for (int c = 1; c <= 2; ++c) {
        builder.add_class("c" + std::to_string(c), "crs" + std::to_string(c), "A", "all");
    }
    // class 1: s1 attends, s2/s3 skip; class 2: everyone attends
    builder.add_registration("s1", "c1").add_attendance("s1", "c1", true);
    builder.add_registration("s2", "c1").add_attendance("s2", "c1", false);
    builder.add_registration("s3", "c1").add_attendance("s3", "c1", false);
    builder.add_registration("s1", "c2").add_attendance("s1", "c2", true);
    builder.add_registration("s4", "c2").add_attendance("s4", "c2", true);
    builder.add_grade("s1", "crs1", "A");
    builder.add_grade("s2", "crs1", "C");
    builder.add_grade("s3", "crs1", "B");  // falls in neither set
    builder.add_grade("s1", "crs2", "B+");
    builder.add_grade("s4", "crs2", "C-");
    Dataset ds = builder.build();

    auto [high, low] = grade_split_histograms(ds, "B+", "C", 4);
    // high samples: s1/crs1 (D = 2/3), s1/crs2 (D = 0); low: s2/crs1 (-1/3), s4/crs2 (0)
    CHECK(high.proportions[3] == 0.5);  // 2/3 in [0.5, 1]
    CHECK(high.proportions[2] == 0.5);  // 0 in [0, 0.5)
    CHECK(low.proportions[1] == 0.5);   // -1/3 in [-0.5, 0)
    CHECK(low.proportions[2] == 0.5);   // 0 in [0, 0.5)

    // every grade at B+ or above leaves the low set empty
    DatasetBuilder all_high;
    all_high.add_category("A", "cat");
    all_high.add_student("s1", "MAJ", "C14");
    all_high.add_class("c1", "crs1", "A", "all");
    all_high.add_registration("s1", "c1").add_attendance("s1", "c1", true);
    all_high.add_grade("s1", "crs1", "A");
    Dataset high_only = all_high.build();
    CHECK_THROWS_AS(grade_split_histograms(high_only, "B+", "C", 4), EmptyInput);
}
