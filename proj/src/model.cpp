#include "rai/model.hpp"

#include <algorithm>
#include <set>

#include "rai/errors.hpp"

namespace rai {

Roster::Roster(int n_students, int n_classes, std::vector<RegPair> pairs)
    : pairs_(std::move(pairs)), by_student_(n_students), by_class_(n_classes) {
    std::sort(pairs_.begin(), pairs_.end(), [](const RegPair& a, const RegPair& b) {
        return a.student != b.student ? a.student < b.student : a.cls < b.cls;
    });
    for (int i = 0; i < static_cast<int>(pairs_.size()); ++i) {
        const RegPair& p = pairs_[i];
        if (p.student < 0 || p.student >= n_students || p.cls < 0 || p.cls >= n_classes) {
            throw IntegrityError("registration references a missing student or class");
        }
        if (i > 0 && pairs_[i - 1].student == p.student && pairs_[i - 1].cls == p.cls) {
            throw IntegrityError("duplicate registration pair");
        }
        by_student_[p.student].push_back(i);
        by_class_[p.cls].push_back(i);
    }
}

int Roster::pair_index(int s, int c) const {
    for (int idx : by_student_[s]) {
        if (pairs_[idx].cls == c) return idx;
    }
    return -1;
}

AttendanceMatrix::AttendanceMatrix(const Roster& roster, int n_students, int n_classes,
                                   std::vector<std::uint8_t> flags)
    : flags_(std::move(flags)), att_student_(n_students, 0), att_class_(n_classes, 0) {
    if (static_cast<int>(flags_.size()) != roster.pair_count()) {
        throw IntegrityError("attendance flags do not cover the registration pairs exactly");
    }
    for (int i = 0; i < roster.pair_count(); ++i) {
        if (flags_[i]) {
            ++att_student_[roster.pairs()[i].student];
            ++att_class_[roster.pairs()[i].cls];
        }
    }
}

int Dataset::find_student(const std::string& id) const {
    auto it = student_index.find(id);
    if (it == student_index.end()) throw NotFound("unknown student id: " + id);
    return it->second;
}

int Dataset::find_class(const std::string& id) const {
    auto it = class_index.find(id);
    if (it == class_index.end()) throw NotFound("unknown class id: " + id);
    return it->second;
}

int Dataset::find_category(const std::string& code) const {
    auto it = category_index.find(code);
    if (it == category_index.end()) throw NotFound("unknown category: " + code);
    return it->second;
}

const std::vector<int>& Dataset::classes_of_course(const std::string& course_id) const {
    auto it = course_classes.find(course_id);
    if (it == course_classes.end()) throw NotFound("unknown course id: " + course_id);
    return it->second;
}

DatasetBuilder& DatasetBuilder::set_scale(GradeScale scale) {
    scale_ = std::move(scale);
    return *this;
}

DatasetBuilder& DatasetBuilder::add_category(std::string code, std::string description) {
    categories_.push_back({std::move(code), std::move(description)});
    return *this;
}

DatasetBuilder& DatasetBuilder::add_student(std::string id, std::string major, std::string cohort) {
    students_.push_back({std::move(id), std::move(major), std::move(cohort), std::nullopt});
    return *this;
}

DatasetBuilder& DatasetBuilder::add_class(std::string class_id, std::string course_id,
                                          std::string category, std::string semester) {
    classes_.push_back({std::move(class_id), std::move(course_id), std::move(category),
                        std::move(semester)});
    return *this;
}

DatasetBuilder& DatasetBuilder::add_registration(std::string student_id, std::string class_id) {
    registrations_.emplace_back(std::move(student_id), std::move(class_id));
    return *this;
}

DatasetBuilder& DatasetBuilder::add_attendance(std::string student_id, std::string class_id,
                                               bool attended) {
    attendance_.push_back({{std::move(student_id), std::move(class_id)}, attended});
    return *this;
}

DatasetBuilder& DatasetBuilder::add_grade(std::string student_id, std::string course_id,
                                          std::string letter) {
    grades_.push_back({std::move(student_id), std::move(course_id), std::move(letter), std::nullopt});
    return *this;
}

Dataset DatasetBuilder::build(IngestWarnings* warnings) {
    IngestWarnings local;
    IngestWarnings& warn = warnings ? *warnings : local;

    Dataset ds;
    ds.scale = scale_;

    // Catalog, sorted by code.
    ds.catalog = categories_;
    std::sort(ds.catalog.begin(), ds.catalog.end(),
              [](const CategoryInfo& a, const CategoryInfo& b) { return a.code < b.code; });
    for (int i = 0; i < static_cast<int>(ds.catalog.size()); ++i) {
        if (!ds.category_index.emplace(ds.catalog[i].code, i).second) {
            throw IntegrityError("duplicate category code: " + ds.catalog[i].code);
        }
    }

    // Registration counts on raw ids, to identify degenerates before indexing.
    std::set<std::string> registered_students;
    std::set<std::string> registered_classes;
    for (const auto& [sid, cid] : registrations_) {
        registered_students.insert(sid);
        registered_classes.insert(cid);
    }

    // Students, sorted by id; zero-registration students dropped with a warning.
    std::vector<StudentRecord> students = students_;
    std::sort(students.begin(), students.end(),
              [](const StudentRecord& a, const StudentRecord& b) {
                  return a.student_id < b.student_id;
              });
    std::set<std::string> seen_students;
    std::set<std::string> dropped_students;
    for (const auto& s : students) {
        if (!seen_students.insert(s.student_id).second) {
            throw IntegrityError("duplicate student id: " + s.student_id);
        }
        if (!registered_students.count(s.student_id)) {
            dropped_students.insert(s.student_id);
            ++warn.dropped_students_no_registrations;
            warn.messages.push_back("dropped student with no registrations: " + s.student_id);
        }
    }
    for (const auto& s : students) {
        if (dropped_students.count(s.student_id)) continue;
        ds.student_index.emplace(s.student_id, static_cast<int>(ds.students.size()));
        ds.students.push_back(s);
    }

    // Classes, sorted by id; zero-registration classes dropped with a warning.
    std::vector<ClassUnit> classes = classes_;
    std::sort(classes.begin(), classes.end(),
              [](const ClassUnit& a, const ClassUnit& b) { return a.class_id < b.class_id; });
    std::set<std::string> seen_classes;
    for (const auto& c : classes) {
        if (!seen_classes.insert(c.class_id).second) {
            throw IntegrityError("duplicate class id: " + c.class_id);
        }
        if (!ds.category_index.count(c.category)) {
            throw IntegrityError("class " + c.class_id + " references unknown category " + c.category);
        }
    }
    for (const auto& c : classes) {
        if (!registered_classes.count(c.class_id)) {
            ++warn.dropped_classes_no_registrations;
            warn.messages.push_back("dropped class with no registrations: " + c.class_id);
            continue;
        }
        ds.class_index.emplace(c.class_id, static_cast<int>(ds.classes.size()));
        ds.classes.push_back(c);
    }

    // Course -> class units; all units of a course must share one category.
    for (int i = 0; i < static_cast<int>(ds.classes.size()); ++i) {
        ds.course_classes[ds.classes[i].course_id].push_back(i);
    }
    for (auto& [course, units] : ds.course_classes) {
        std::sort(units.begin(), units.end());
        for (int u : units) {
            if (ds.classes[u].category != ds.classes[units[0]].category) {
                throw IntegrityError("course " + course + " spans multiple categories");
            }
        }
        ds.course_ids.push_back(course);
    }
    std::sort(ds.course_ids.begin(), ds.course_ids.end());

    std::set<std::string> semesters;
    for (const auto& c : ds.classes) semesters.insert(c.semester);
    ds.semesters.assign(semesters.begin(), semesters.end());

    // Registrations as index pairs.
    std::vector<RegPair> pairs;
    pairs.reserve(registrations_.size());
    for (const auto& [sid, cid] : registrations_) {
        auto si = ds.student_index.find(sid);
        if (si == ds.student_index.end()) {
            throw IntegrityError("registration references unknown student: " + sid);
        }
        auto ci = ds.class_index.find(cid);
        if (ci == ds.class_index.end()) {
            throw IntegrityError("registration references unknown class: " + cid);
        }
        pairs.push_back({si->second, ci->second});
    }
    ds.roster = Roster(static_cast<int>(ds.students.size()), static_cast<int>(ds.classes.size()),
                       std::move(pairs));

    // Attendance flags: must cover the registration domain exactly.
    std::vector<std::uint8_t> flags(ds.roster.pair_count(), 0);
    std::vector<std::uint8_t> covered(ds.roster.pair_count(), 0);
    for (const auto& [key, att] : attendance_) {
        const auto& [sid, cid] = key;
        auto si = ds.student_index.find(sid);
        auto ci = ds.class_index.find(cid);
        if (si == ds.student_index.end() || ci == ds.class_index.end()) {
            throw IntegrityError("attendance references unknown student or class: (" + sid + ", " +
                                 cid + ")");
        }
        int pi = ds.roster.pair_index(si->second, ci->second);
        if (pi < 0) {
            throw IntegrityError("attendance flag without registration: (" + sid + ", " + cid + ")");
        }
        if (covered[pi]) {
            throw IntegrityError("duplicate attendance flag: (" + sid + ", " + cid + ")");
        }
        covered[pi] = 1;
        flags[pi] = att ? 1 : 0;
    }
    for (int i = 0; i < ds.roster.pair_count(); ++i) {
        if (!covered[i]) {
            throw IntegrityError("registration without attendance flag: (" +
                                 ds.students[ds.roster.pairs()[i].student].student_id + ", " +
                                 ds.classes[ds.roster.pairs()[i].cls].class_id + ")");
        }
    }
    ds.attendance = AttendanceMatrix(ds.roster, static_cast<int>(ds.students.size()),
                                     static_cast<int>(ds.classes.size()), std::move(flags));

    // Grades: resolve points, keep non-letter grades flagged (points absent).
    std::set<std::pair<std::string, std::string>> grade_keys;
    for (auto g : grades_) {
        if (!grade_keys.insert({g.student_id, g.course_id}).second) {
            throw IntegrityError("duplicate grade for (" + g.student_id + ", " + g.course_id + ")");
        }
        if (dropped_students.count(g.student_id)) {
            ++warn.grades_of_dropped_students;
            warn.messages.push_back("discarded grade of dropped student: " + g.student_id);
            continue;
        }
        if (!ds.student_index.count(g.student_id)) {
            throw IntegrityError("grade references unknown student: " + g.student_id);
        }
        if (!ds.course_classes.count(g.course_id)) {
            throw IntegrityError("grade references unknown course: " + g.course_id);
        }
        g.points = scale_.points(g.letter);
        if (!g.points) {
            ++warn.nonletter_grades_excluded;
            warn.messages.push_back("non-letter grade excluded from analyses: (" + g.student_id +
                                    ", " + g.course_id + ", " + g.letter + ")");
        }
        ds.grades.push_back(std::move(g));
    }
    std::sort(ds.grades.begin(), ds.grades.end(), [](const GradeRecord& a, const GradeRecord& b) {
        return a.student_id != b.student_id ? a.student_id < b.student_id
                                            : a.course_id < b.course_id;
    });

    // Count letter grades whose course the student never registered (kept for
    // GPA, unusable for course-paired analyses).
    for (const auto& g : ds.grades) {
        if (!g.points) continue;
        int s = ds.student_index.at(g.student_id);
        bool registered = false;
        for (int cls : ds.course_classes.at(g.course_id)) {
            if (ds.roster.pair_index(s, cls) >= 0) {
                registered = true;
                break;
            }
        }
        if (!registered) {
            ++warn.unregistered_course_grades;
            warn.messages.push_back("grade for unregistered course: (" + g.student_id + ", " +
                                    g.course_id + ")");
        }
    }

    // GPA: mean letter-grade points per student, absent without letter grades.
    std::vector<double> sum(ds.students.size(), 0.0);
    std::vector<int> cnt(ds.students.size(), 0);
    for (const auto& g : ds.grades) {
        if (!g.points) continue;
        int s = ds.student_index.at(g.student_id);
        sum[s] += *g.points;
        ++cnt[s];
    }
    for (std::size_t s = 0; s < ds.students.size(); ++s) {
        if (cnt[s] > 0) ds.students[s].gpa = sum[s] / cnt[s];
    }

    return ds;
}

}  // namespace rai
