#include "rai/measures.hpp"

#include <cmath>
#include <limits>

#include "rai/errors.hpp"

namespace rai {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double class_rate(const Dataset& ds, int cls) {
    int n_reg = ds.roster.n_reg_class(cls);
    if (n_reg < 1) throw DegenerateClass("class has no registrations: " + ds.classes[cls].class_id);
    return static_cast<double>(ds.attendance.n_att_class(cls)) / n_reg;
}

double class_rate(const Dataset& ds, const std::string& class_id) {
    return class_rate(ds, ds.find_class(class_id));
}

double student_rate(const Dataset& ds, int student) {
    int n_reg = ds.roster.n_reg_student(student);
    if (n_reg < 1) {
        throw DegenerateStudent("student has no registrations: " + ds.students[student].student_id);
    }
    return static_cast<double>(ds.attendance.n_att_student(student)) / n_reg;
}

double student_rate(const Dataset& ds, const std::string& student_id) {
    return student_rate(ds, ds.find_student(student_id));
}

double contribution(const Dataset& ds, int student, int cls) {
    int pi = ds.roster.pair_index(student, cls);
    if (pi < 0) {
        throw NotRegistered("(" + ds.students[student].student_id + ", " +
                            ds.classes[cls].class_id + ") is not a registration");
    }
    double a = ds.attendance.attended(pi) ? 1.0 : 0.0;
    return a - class_rate(ds, cls);
}

double contribution(const Dataset& ds, const std::string& student_id,
                    const std::string& class_id) {
    return contribution(ds, ds.find_student(student_id), ds.find_class(class_id));
}

double student_rai(const Dataset& ds, int student) {
    const auto& pair_indices = ds.roster.pairs_of_student(student);
    if (pair_indices.empty()) {
        throw DegenerateStudent("student has no registrations: " + ds.students[student].student_id);
    }
    double sum = 0.0;
    for (int pi : pair_indices) {
        double a = ds.attendance.attended(pi) ? 1.0 : 0.0;
        sum += a - class_rate(ds, ds.roster.pairs()[pi].cls);
    }
    return sum / static_cast<double>(pair_indices.size());
}

double student_rai(const Dataset& ds, const std::string& student_id) {
    return student_rai(ds, ds.find_student(student_id));
}

namespace {

// Mean contribution and attendance rate over a student's pairs that satisfy
// a class predicate; nullopt when no pair matches.
template <typename Pred>
std::optional<std::pair<double, double>> restricted_rai_ar(const Dataset& ds, int student,
                                                           Pred&& keep) {
    double sum_d = 0.0;
    int n = 0;
    int att = 0;
    for (int pi : ds.roster.pairs_of_student(student)) {
        int cls = ds.roster.pairs()[pi].cls;
        if (!keep(cls)) continue;
        double a = ds.attendance.attended(pi) ? 1.0 : 0.0;
        sum_d += a - class_rate(ds, cls);
        att += ds.attendance.attended(pi) ? 1 : 0;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return std::make_pair(sum_d / n, static_cast<double>(att) / n);
}

}  // namespace

std::optional<double> rai_by_category(const Dataset& ds, int student, int category) {
    const std::string& code = ds.catalog[category].code;
    auto res = restricted_rai_ar(ds, student,
                                 [&](int cls) { return ds.classes[cls].category == code; });
    if (!res) return std::nullopt;
    return res->first;
}

std::optional<double> rai_by_category(const Dataset& ds, const std::string& student_id,
                                      const std::string& category_code) {
    return rai_by_category(ds, ds.find_student(student_id), ds.find_category(category_code));
}

std::optional<double> ar_by_category(const Dataset& ds, int student, int category) {
    const std::string& code = ds.catalog[category].code;
    auto res = restricted_rai_ar(ds, student,
                                 [&](int cls) { return ds.classes[cls].category == code; });
    if (!res) return std::nullopt;
    return res->second;
}

double course_rai(const Dataset& ds, int student, const std::string& course_id) {
    const auto& units = ds.classes_of_course(course_id);
    auto res = restricted_rai_ar(ds, student, [&](int cls) {
        for (int u : units) {
            if (u == cls) return true;
        }
        return false;
    });
    if (!res) {
        throw NotRegistered(ds.students[student].student_id + " registered no unit of course " +
                            course_id);
    }
    return res->first;
}

double course_ar(const Dataset& ds, int student, const std::string& course_id) {
    const auto& units = ds.classes_of_course(course_id);
    auto res = restricted_rai_ar(ds, student, [&](int cls) {
        for (int u : units) {
            if (u == cls) return true;
        }
        return false;
    });
    if (!res) {
        throw NotRegistered(ds.students[student].student_id + " registered no unit of course " +
                            course_id);
    }
    return res->second;
}

namespace {

MeasureTable compute_measures_impl(const Dataset& ds, const std::string* semester) {
    const int n_students = static_cast<int>(ds.students.size());
    const int n_classes = static_cast<int>(ds.classes.size());
    const int n_categories = static_cast<int>(ds.catalog.size());

    MeasureTable table;
    table.ar.assign(n_students, kNaN);
    table.rai.assign(n_students, kNaN);
    table.class_rate.assign(n_classes, kNaN);
    table.cat_ar = Matrix(n_students, n_categories, kNaN);
    table.cat_rai = Matrix(n_students, n_categories, kNaN);

    std::vector<std::uint8_t> keep(n_classes, 1);
    if (semester) {
        for (int c = 0; c < n_classes; ++c) keep[c] = ds.classes[c].semester == *semester;
    }

    for (int c = 0; c < n_classes; ++c) {
        if (keep[c] && ds.roster.n_reg_class(c) > 0) table.class_rate[c] = class_rate(ds, c);
    }

    for (int s = 0; s < n_students; ++s) {
        int n = 0;
        int att = 0;
        double sum_d = 0.0;
        std::vector<int> cat_n(n_categories, 0), cat_att(n_categories, 0);
        std::vector<double> cat_sum(n_categories, 0.0);
        for (int pi : ds.roster.pairs_of_student(s)) {
            int cls = ds.roster.pairs()[pi].cls;
            if (!keep[cls]) continue;
            double a = ds.attendance.attended(pi) ? 1.0 : 0.0;
            double d = a - table.class_rate[cls];
            ++n;
            att += ds.attendance.attended(pi) ? 1 : 0;
            sum_d += d;
            int cat = ds.category_index.at(ds.classes[cls].category);
            ++cat_n[cat];
            cat_att[cat] += ds.attendance.attended(pi) ? 1 : 0;
            cat_sum[cat] += d;
        }
        if (n == 0) continue;
        table.ar[s] = static_cast<double>(att) / n;
        table.rai[s] = sum_d / n;
        for (int k = 0; k < n_categories; ++k) {
            if (cat_n[k] > 0) {
                table.cat_ar.at(s, k) = static_cast<double>(cat_att[k]) / cat_n[k];
                table.cat_rai.at(s, k) = cat_sum[k] / cat_n[k];
            }
        }
    }
    return table;
}

}  // namespace

MeasureTable compute_measures(const Dataset& ds) { return compute_measures_impl(ds, nullptr); }

MeasureTable compute_measures(const Dataset& ds, const std::string& semester) {
    return compute_measures_impl(ds, &semester);
}

Matrix feature_vectors(const Dataset& ds, MeasureKind measure) {
    if (ds.students.empty() || ds.catalog.empty()) {
        throw EmptyInput("feature_vectors requires a nonempty dataset and catalog");
    }
    MeasureTable table = compute_measures(ds);
    const Matrix& cells = measure == MeasureKind::AR ? table.cat_ar : table.cat_rai;

    Matrix out(cells.rows, cells.cols, 0.0);
    for (std::size_t k = 0; k < cells.cols; ++k) {
        double col_sum = 0.0;
        std::size_t col_n = 0;
        for (std::size_t s = 0; s < cells.rows; ++s) {
            if (!std::isnan(cells.at(s, k))) {
                col_sum += cells.at(s, k);
                ++col_n;
            }
        }
        // AR has no neutral point, so absent cells take the column mean of
        // observed values; RAI's neutral value is 0.
        double ar_fill = col_n > 0 ? col_sum / col_n : 0.0;
        for (std::size_t s = 0; s < cells.rows; ++s) {
            double v = cells.at(s, k);
            if (std::isnan(v)) v = measure == MeasureKind::AR ? ar_fill : 0.0;
            out.at(s, k) = v;
        }
    }
    return out;
}

}  // namespace rai
