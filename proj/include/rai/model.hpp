#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rai/grade_scale.hpp"

namespace rai {

struct StudentRecord {
    std::string student_id;  // opaque hashed identifier
    std::string major;
    std::string cohort;
    std::optional<double> gpa;  // derived from letter grades at ingestion
};

struct ClassUnit {
    std::string class_id;
    std::string course_id;
    std::string category;
    std::string semester;
};

struct CategoryInfo {
    std::string code;
    std::string description;
};

struct GradeRecord {
    std::string student_id;
    std::string course_id;
    std::string letter;
    std::optional<double> points;  // absent for non-letter grades (P/F-style)
};

struct RegPair {
    int student = -1;
    int cls = -1;
};

// Bipartite registration structure. Pairs are sorted by (student, class) and
// adjacency lists hold pair indices, so the attendance flags can stay aligned
// one-to-one with the pairs.
class Roster {
  public:
    Roster() = default;
    Roster(int n_students, int n_classes, std::vector<RegPair> pairs);

    int pair_count() const { return static_cast<int>(pairs_.size()); }
    const std::vector<RegPair>& pairs() const { return pairs_; }

    const std::vector<int>& pairs_of_student(int s) const { return by_student_[s]; }
    const std::vector<int>& pairs_of_class(int c) const { return by_class_[c]; }

    int n_reg_student(int s) const { return static_cast<int>(by_student_[s].size()); }
    int n_reg_class(int c) const { return static_cast<int>(by_class_[c].size()); }

    // Pair index for (student, class), or -1 when not registered.
    int pair_index(int s, int c) const;

  private:
    std::vector<RegPair> pairs_;
    std::vector<std::vector<int>> by_student_;
    std::vector<std::vector<int>> by_class_;
};

// Boolean attendance flags defined exactly on the roster's pairs.
class AttendanceMatrix {
  public:
    AttendanceMatrix() = default;
    AttendanceMatrix(const Roster& roster, int n_students, int n_classes,
                     std::vector<std::uint8_t> flags);

    bool attended(int pair_index) const { return flags_[pair_index] != 0; }
    int n_att_student(int s) const { return att_student_[s]; }
    int n_att_class(int c) const { return att_class_[c]; }
    const std::vector<std::uint8_t>& flags() const { return flags_; }

  private:
    std::vector<std::uint8_t> flags_;
    std::vector<int> att_student_;
    std::vector<int> att_class_;
};

struct IngestWarnings {
    int dropped_students_no_registrations = 0;
    int dropped_classes_no_registrations = 0;
    int nonletter_grades_excluded = 0;
    int unregistered_course_grades = 0;  // letter grades for courses the student never registered
    int grades_of_dropped_students = 0;

    std::vector<std::string> messages;

    int total() const {
        return dropped_students_no_registrations + dropped_classes_no_registrations +
               nonletter_grades_excluded + unregistered_course_grades + grades_of_dropped_students;
    }
};

// The joined universe. Students, classes and catalog are sorted by id so
// every derived ordering (and so every serialized output) is deterministic.
struct Dataset {
    std::vector<StudentRecord> students;
    std::vector<ClassUnit> classes;
    std::vector<CategoryInfo> catalog;
    std::vector<GradeRecord> grades;  // sorted by (student_id, course_id)
    Roster roster;
    AttendanceMatrix attendance;
    GradeScale scale;

    std::unordered_map<std::string, int> student_index;
    std::unordered_map<std::string, int> class_index;
    std::unordered_map<std::string, int> category_index;
    // course_id -> class indices, ascending
    std::unordered_map<std::string, std::vector<int>> course_classes;
    std::vector<std::string> course_ids;  // sorted
    std::vector<std::string> semesters;   // sorted, distinct

    int find_student(const std::string& id) const;  // throws NotFound
    int find_class(const std::string& id) const;    // throws NotFound
    int find_category(const std::string& code) const;
    const std::vector<int>& classes_of_course(const std::string& course_id) const;
};

// Assembles and validates a Dataset from in-memory records. Degenerate
// students/classes (zero registrations) are dropped with warnings, never
// defaulted. Structural violations throw IntegrityError.
class DatasetBuilder {
  public:
    DatasetBuilder& set_scale(GradeScale scale);
    DatasetBuilder& add_category(std::string code, std::string description);
    DatasetBuilder& add_student(std::string id, std::string major, std::string cohort);
    DatasetBuilder& add_class(std::string class_id, std::string course_id, std::string category,
                              std::string semester);
    DatasetBuilder& add_registration(std::string student_id, std::string class_id);
    DatasetBuilder& add_attendance(std::string student_id, std::string class_id, bool attended);
    DatasetBuilder& add_grade(std::string student_id, std::string course_id, std::string letter);

    Dataset build(IngestWarnings* warnings = nullptr);

  private:
    GradeScale scale_ = GradeScale::default_scale();
    std::vector<CategoryInfo> categories_;
    std::vector<StudentRecord> students_;
    std::vector<ClassUnit> classes_;
    std::vector<std::pair<std::string, std::string>> registrations_;
    std::vector<std::pair<std::pair<std::string, std::string>, bool>> attendance_;
    std::vector<GradeRecord> grades_;
};

}  // namespace rai
