#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rai/matrix.hpp"
#include "rai/model.hpp"

namespace rai {

// Peer-normalized attendance measures.
//
//   class rate        r_c  = n_att(c) / n_reg(c)
//   student rate      r_s  = n_att(s) / n_reg(s)
//   contribution      D_sc = a_sc - r_c
//   relative index    RAI_s = mean of D_sc over the student's registered classes
//
// All values are plain doubles; every function is a pure function of the
// immutable dataset, safe to evaluate concurrently.

double class_rate(const Dataset& ds, int cls);
double class_rate(const Dataset& ds, const std::string& class_id);

double student_rate(const Dataset& ds, int student);
double student_rate(const Dataset& ds, const std::string& student_id);

double contribution(const Dataset& ds, int student, int cls);
double contribution(const Dataset& ds, const std::string& student_id, const std::string& class_id);

double student_rai(const Dataset& ds, int student);
double student_rai(const Dataset& ds, const std::string& student_id);

// Mean contribution over the student's registered classes in one category;
// absent when the student registered no class of that category.
std::optional<double> rai_by_category(const Dataset& ds, int student, int category);
std::optional<double> rai_by_category(const Dataset& ds, const std::string& student_id,
                                      const std::string& category_code);

// Within-category attendance rate, absent when nothing registered there.
std::optional<double> ar_by_category(const Dataset& ds, int student, int category);

// Mean contribution restricted to the course's class units.
double course_rai(const Dataset& ds, int student, const std::string& course_id);

// Within-course attendance rate (attended units / registered units).
double course_ar(const Dataset& ds, int student, const std::string& course_id);

enum class MeasureKind { AR, RAI };

struct MeasureTable {
    std::vector<double> ar;          // per student
    std::vector<double> rai;         // per student
    std::vector<double> class_rate;  // per class, r_c
    Matrix cat_ar;                   // [students x categories], NaN = absent
    Matrix cat_rai;                  // [students x categories], NaN = absent
};

// Full-dataset measures. Per-semester rates aggregate across semesters by
// enrollment weighting, which algebraically equals pooling all registered
// classes, so this single table is also the cross-semester aggregate.
MeasureTable compute_measures(const Dataset& ds);

// Same, restricted to the classes of one semester; students with no classes
// that semester get NaN scalars.
MeasureTable compute_measures(const Dataset& ds, const std::string& semester);

// Row per student (sorted ids), column per catalog category. AR cells are
// within-category rates, RAI cells within-category mean contributions.
// Missing cells: RAI -> 0.0, AR -> column mean of observed values.
Matrix feature_vectors(const Dataset& ds, MeasureKind measure);

}  // namespace rai
