#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rai/measures.hpp"
#include "rai/model.hpp"

namespace rai {

struct CorrelationResult {
    double r = 0.0;
    int n = 0;
    double p = 1.0;
};

struct CategoryCorrelationRow {
    std::string category;
    std::string description;
    double corr_ar = 0.0;
    double corr_rai = 0.0;
    int n = 0;
    double p_ar = 1.0;
    double p_rai = 1.0;
    bool retained = false;
};

struct Histogram {
    std::vector<double> edges;        // bin_count + 1 edges over [-1, 1]
    std::vector<double> proportions;  // sums to 1
};

// One graded (student, course) sample with its course-level measures.
struct GradeRaiSample {
    int student = -1;
    std::string course_id;
    double points = 0.0;
    double course_rai = 0.0;
    double course_ar = 0.0;
};

// Product-moment correlation coefficient.
double pearson(std::span<const double> x, std::span<const double> y);

// Two-tailed p for a Pearson coefficient under t = r*sqrt((n-2)/(1-r^2))
// with n-2 degrees of freedom.
double p_value(double r, int n);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

CorrelationResult measure_gpa_correlation(const Dataset& ds, MeasureKind measure);

// Per-category correlation of course grade points against the student's
// same-category measures (course-level RAI, within-category AR). Rows sorted
// by corr_rai descending; rows whose p-values miss the 0.05 bar are kept but
// marked not retained.
std::vector<CategoryCorrelationRow> category_correlation_table(const Dataset& ds);

// Equal-width proportion histogram over [-1, 1], right-open except the last bin.
Histogram rai_histogram(std::span<const double> values, int bin_count);

// All graded (student, course) samples with letter points and at least one
// registered unit, sorted by (student_id, course_id).
std::vector<GradeRaiSample> grade_rai_samples(const Dataset& ds);

// Splits the samples at the two letter cuts and bins the course RAI values.
std::pair<Histogram, Histogram> grade_split_histograms(const Dataset& ds,
                                                       const std::string& high_cut,
                                                       const std::string& low_cut, int bin_count);

}  // namespace rai
