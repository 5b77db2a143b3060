#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rai {

// Letter-grade to grade-point mapping. Symbols not in the scale (P, W, ...)
// are non-letter grades: they carry no points and are excluded from every
// grade-based analysis.
class GradeScale {
  public:
    GradeScale() = default;
    explicit GradeScale(std::vector<std::pair<std::string, double>> entries);

    static GradeScale default_scale();
    static GradeScale load(const std::string& path);

    std::optional<double> points(const std::string& letter) const;
    bool is_letter(const std::string& letter) const { return points(letter).has_value(); }
    double max_points() const { return max_points_; }

    // Nearest letter for a raw point value; ties resolve toward the higher
    // letter. Used by the synthetic generator to quantize grades.
    const std::string& nearest_letter(double raw_points) const;

    const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, double>> entries_;  // sorted by points descending
    double max_points_ = 0.0;
};

}  // namespace rai
