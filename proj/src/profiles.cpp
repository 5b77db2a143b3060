#include "rai/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "rai/errors.hpp"

namespace rai {

DecileFlags gpa_decile_flags(const Dataset& ds) {
    const std::size_t n = ds.students.size();
    DecileFlags flags;
    flags.top.assign(n, false);
    flags.last.assign(n, false);

    std::map<std::string, std::vector<std::size_t>> by_major;
    for (std::size_t s = 0; s < n; ++s) {
        if (ds.students[s].gpa) by_major[ds.students[s].major].push_back(s);
    }

    for (auto& [major, members] : by_major) {
        const std::size_t count = members.size();
        flags.low_confidence[major] = count < 10;

        std::vector<double> gpas(count);
        for (std::size_t i = 0; i < count; ++i) gpas[i] = *ds.students[members[i]].gpa;
        std::sort(gpas.begin(), gpas.end());

        const std::size_t k = (count + 9) / 10;  // ceil(N/10), nearest rank
        const double last_cut = gpas[k - 1];
        const double top_cut = gpas[count - k];
        for (std::size_t s : members) {
            const double g = *ds.students[s].gpa;
            if (g >= top_cut) flags.top[s] = true;
            if (g <= last_cut) flags.last[s] = true;
        }
    }
    return flags;
}

std::vector<ClusterProfile> profile_clusters(const ClusterLabels& labels, const Dataset& ds,
                                             const MeasureTable& measures) {
    if (labels.size() != ds.students.size()) {
        throw ShapeError("profile_clusters: labels do not match the dataset's students");
    }
    const int k = cluster_count(labels);
    const DecileFlags flags = gpa_decile_flags(ds);

    std::map<std::string, int> major_total;
    for (const auto& s : ds.students) ++major_total[s.major];

    std::vector<ClusterProfile> profiles(k);
    std::vector<std::map<std::string, double>> rai_sum(k);
    std::vector<std::map<std::string, int>> top_count(k), last_count(k);

    for (std::size_t s = 0; s < labels.size(); ++s) {
        const int c = labels[s];
        if (c == kNoise) continue;
        const std::string& major = ds.students[s].major;
        ClusterProfile& prof = profiles[c];
        prof.cluster = c;
        ++prof.size;
        ++prof.major_count[major];
        rai_sum[c][major] += measures.rai[s];
        if (flags.top[s]) ++top_count[c][major];
        if (flags.last[s]) ++last_count[c][major];
    }

    for (int c = 0; c < k; ++c) {
        ClusterProfile& prof = profiles[c];
        prof.cluster = c;
        for (const auto& [major, count] : prof.major_count) {
            prof.major_fraction[major] = static_cast<double>(count) / major_total.at(major);
            prof.major_mean_rai[major] = rai_sum[c][major] / count;
            prof.major_top_decile_ratio[major] =
                static_cast<double>(top_count[c][major]) / count;
            prof.major_last_decile_ratio[major] =
                static_cast<double>(last_count[c][major]) / count;
        }
        // top five majors by count, ties by code order
        std::vector<std::pair<std::string, int>> ranked(prof.major_count.begin(),
                                                        prof.major_count.end());
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) {
            prof.top5_majors.push_back(ranked[i].first);
        }
    }
    return profiles;
}

}  // namespace rai
