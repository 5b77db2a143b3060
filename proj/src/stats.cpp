#include "rai/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rai/errors.hpp"

namespace rai {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ShapeError("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw ShapeError("pearson: need at least 2 samples");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("pearson: constant input");
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr double tol = 1e-12;
    constexpr int max_iter = 300;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < tol) return h;
    }
    throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw RangeError("incomplete_beta: x outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double p_value(double r, int n) {
    if (n < 3) throw InsufficientSamples("p_value requires n >= 3");
    if (std::abs(r) > 1.0) throw RangeError("p_value: |r| > 1");
    if (std::abs(r) == 1.0) return 0.0;
    const double df = static_cast<double>(n - 2);
    const double t2 = r * r * df / (1.0 - r * r);
    // Two-tailed: P(|T| >= t) = I_{df/(df+t^2)}(df/2, 1/2).
    return incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

CorrelationResult measure_gpa_correlation(const Dataset& ds, MeasureKind measure) {
    MeasureTable table = compute_measures(ds);
    const std::vector<double>& values = measure == MeasureKind::AR ? table.ar : table.rai;

    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < ds.students.size(); ++s) {
        if (!ds.students[s].gpa || std::isnan(values[s])) continue;
        xs.push_back(values[s]);
        ys.push_back(*ds.students[s].gpa);
    }
    if (xs.size() < 3) {
        throw InsufficientSamples("need at least 3 students with both measure and GPA, got " +
                                  std::to_string(xs.size()));
    }
    CorrelationResult result;
    result.n = static_cast<int>(xs.size());
    result.r = pearson(xs, ys);
    result.p = p_value(result.r, result.n);
    return result;
}

std::vector<GradeRaiSample> grade_rai_samples(const Dataset& ds) {
    std::vector<GradeRaiSample> samples;
    for (const auto& g : ds.grades) {
        if (!g.points) continue;  // non-letter grades excluded
        int s = ds.student_index.at(g.student_id);
        bool registered = false;
        for (int cls : ds.course_classes.at(g.course_id)) {
            if (ds.roster.pair_index(s, cls) >= 0) {
                registered = true;
                break;
            }
        }
        if (!registered) continue;  // no units registered, course measures undefined
        GradeRaiSample sample;
        sample.student = s;
        sample.course_id = g.course_id;
        sample.points = *g.points;
        sample.course_rai = course_rai(ds, s, g.course_id);
        sample.course_ar = course_ar(ds, s, g.course_id);
        samples.push_back(std::move(sample));
    }
    return samples;  // ds.grades is already sorted by (student_id, course_id)
}

std::vector<CategoryCorrelationRow> category_correlation_table(const Dataset& ds) {
    MeasureTable table = compute_measures(ds);
    auto samples = grade_rai_samples(ds);

    std::vector<CategoryCorrelationRow> rows;
    for (std::size_t k = 0; k < ds.catalog.size(); ++k) {
        CategoryCorrelationRow row;
        row.category = ds.catalog[k].code;
        row.description = ds.catalog[k].description;

        std::vector<double> points, ar_vals, rai_vals;
        for (const auto& sample : samples) {
            int cls = ds.classes_of_course(sample.course_id)[0];
            if (ds.classes[cls].category != row.category) continue;
            points.push_back(sample.points);
            rai_vals.push_back(sample.course_rai);
            ar_vals.push_back(table.cat_ar.at(sample.student, k));
        }
        row.n = static_cast<int>(points.size());
        row.corr_ar = std::numeric_limits<double>::quiet_NaN();
        row.corr_rai = std::numeric_limits<double>::quiet_NaN();
        if (row.n >= 3) {
            try {
                row.corr_ar = pearson(points, ar_vals);
                row.corr_rai = pearson(points, rai_vals);
                row.p_ar = p_value(row.corr_ar, row.n);
                row.p_rai = p_value(row.corr_rai, row.n);
                row.retained = row.p_ar < 0.05 && row.p_rai < 0.05;
            } catch (const UndefinedCorrelation&) {
                row.corr_ar = std::numeric_limits<double>::quiet_NaN();
                row.corr_rai = std::numeric_limits<double>::quiet_NaN();
            }
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const CategoryCorrelationRow& a, const CategoryCorrelationRow& b) {
                  const bool a_def = !std::isnan(a.corr_rai);
                  const bool b_def = !std::isnan(b.corr_rai);
                  if (a_def != b_def) return a_def;  // undefined rows sort last
                  if (a_def && a.corr_rai != b.corr_rai) return a.corr_rai > b.corr_rai;
                  return a.category < b.category;
              });
    return rows;
}

Histogram rai_histogram(std::span<const double> values, int bin_count) {
    if (bin_count < 1) throw RangeError("rai_histogram: bin_count must be >= 1");
    if (values.empty()) throw EmptyInput("rai_histogram: no values");
    for (double v : values) {
        if (!(v >= -1.0 && v <= 1.0)) {
            throw RangeError("rai_histogram: value outside [-1, 1]");
        }
    }
    Histogram h;
    h.edges.resize(bin_count + 1);
    for (int i = 0; i <= bin_count; ++i) {
        h.edges[i] = -1.0 + 2.0 * static_cast<double>(i) / bin_count;
    }
    std::vector<std::size_t> counts(bin_count, 0);
    for (double v : values) {
        int idx = static_cast<int>((v + 1.0) * bin_count / 2.0);
        if (idx >= bin_count) idx = bin_count - 1;  // v == 1 lands in the last, closed bin
        ++counts[idx];
    }
    h.proportions.resize(bin_count);
    for (int i = 0; i < bin_count; ++i) {
        h.proportions[i] = static_cast<double>(counts[i]) / static_cast<double>(values.size());
    }
    return h;
}

std::pair<Histogram, Histogram> grade_split_histograms(const Dataset& ds,
                                                       const std::string& high_cut,
                                                       const std::string& low_cut, int bin_count) {
    auto high_points = ds.scale.points(high_cut);
    auto low_points = ds.scale.points(low_cut);
    if (!high_points) throw ConfigError("unknown letter grade for high cut: " + high_cut);
    if (!low_points) throw ConfigError("unknown letter grade for low cut: " + low_cut);

    std::vector<double> high_vals, low_vals;
    for (const auto& sample : grade_rai_samples(ds)) {
        if (sample.points >= *high_points) high_vals.push_back(sample.course_rai);
        if (sample.points <= *low_points) low_vals.push_back(sample.course_rai);
    }
    return {rai_histogram(high_vals, bin_count), rai_histogram(low_vals, bin_count)};
}

}  // namespace rai
