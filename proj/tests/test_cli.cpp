#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"

namespace fs = std::filesystem;
using testutil::TempDir;
using testutil::slurp;

namespace {

std::string cli() {
    const char* path = std::getenv("RAI_CLI");
    REQUIRE_MESSAGE(path != nullptr, "RAI_CLI must point at the built binary");
    return path;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const fs::path& scratch) {
    const fs::path out_file = scratch / "stdout.txt";
    const std::string cmd = cli() + " " + args + " > " + out_file.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    fs::remove(out_file);
    return result;
}

void write_fixture(const fs::path& dir) {
    auto put = [&dir](const char* name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
    };
    put("students.csv", "student_id,major,cohort\nsA,CS,C14\nsB,CS,C15\nsC,EE,C14\n");
    put("classes.csv",
        "class_id,course_id,category,semester\nc1,crs1,MATH,all\nc2,crs2,ENG,all\n");
    put("registrations.csv", "student_id,class_id\nsA,c1\nsB,c1\nsA,c2\nsC,c2\n");
    put("attendance.csv", "student_id,class_id,attended\nsA,c1,1\nsB,c1,0\nsA,c2,1\nsC,c2,1\n");
    put("grades.csv", "student_id,course_id,letter\nsA,crs1,A\nsB,crs1,C\nsC,crs2,B\n");
    put("catalog.csv", "category,description\nMATH,Mathematics\nENG,English\n");
}

bool identical_trees(const fs::path& a, const fs::path& b) {
    for (const auto& entry : fs::directory_iterator(a)) {
        if (slurp(entry.path()) != slurp(b / entry.path().filename())) return false;
    }
    std::size_t na = 0, nb = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(a)) ++na;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++nb;
    return na == nb;
}

}  // namespace

TEST_CASE("gen with a fixed seed is reproducible byte for byte") {
    TempDir scratch("rai_cli");
    const fs::path a = scratch.path / "a";
    const fs::path b = scratch.path / "b";
    auto first = run("gen --preset G1 --seed 7 --out " + a.string(), scratch.path);
    auto second = run("gen --preset G1 --seed 7 --out " + b.string(), scratch.path);
    CHECK(first.exit_code == 0);
    CHECK(second.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(identical_trees(a, b));
}

TEST_CASE("compute per student matches the hand-computed measures") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    fs::create_directories(data);
    write_fixture(data);
    const fs::path out = scratch.path / "out";

    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " compute --measure both --per student",
                      scratch.path);
    CHECK(result.exit_code == 0);
    // c1: 2 reg 1 att -> r = 0.5; c2: 2 reg 2 att -> r = 1
    // sA: classes {c1, c2} attended both -> ar 1, rai (0.5 + 0)/2 = 0.25
    // sB: {c1} absent -> ar 0, rai -0.5 ; sC: {c2} -> ar 1, rai 0
    CHECK(slurp(out / "measures_student.csv") ==
          "student_id,ar,rai\nsA,1,0.25\nsB,0,-0.5\nsC,1,0\n");

    // rerun into a second directory: byte-identical
    const fs::path out2 = scratch.path / "out2";
    auto rerun = run("--data-dir " + data.string() + " --out " + out2.string() +
                         " compute --measure both --per student",
                     scratch.path);
    CHECK(rerun.exit_code == 0);
    CHECK(slurp(out / "measures_student.csv") == slurp(out2 / "measures_student.csv"));
    CHECK(result.out == rerun.out);
}

TEST_CASE("compute per category leaves absent cells empty") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    fs::create_directories(data);
    write_fixture(data);
    const fs::path out = scratch.path / "out";
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " compute --measure both --per category",
                      scratch.path);
    CHECK(result.exit_code == 0);
    const std::string csv = slurp(out / "measures_category.csv");
    // sB never registered an ENG class: the row exists with empty cells
    CHECK(csv.find("sB,ENG,,\n") != std::string::npos);
    CHECK(csv.find("sB,MATH,0,-0.5\n") != std::string::npos);
}

TEST_CASE("correlate category mode sorts by the rai correlation") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    const fs::path out = scratch.path / "out";
    auto gen = run("gen --preset G1 --seed 3 --out " + data.string(), scratch.path);
    REQUIRE(gen.exit_code == 0);
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " correlate --by category",
                      scratch.path);
    CHECK(result.exit_code == 0);

    std::ifstream csv(out / "correlation_categories.csv");
    std::string line;
    std::getline(csv, line);  // header
    double prev = 2.0;
    int rows = 0;
    while (std::getline(csv, line)) {
        // corr_rai is the 6th column
        std::size_t pos = 0;
        for (int field = 0; field < 5; ++field) pos = line.find(',', pos) + 1;
        const double corr_rai = std::stod(line.substr(pos));
        CHECK(corr_rai <= prev);
        prev = corr_rai;
        ++rows;
    }
    CHECK(rows == 12);
}

TEST_CASE("correlate overall on G1 reports the rai edge in the summary") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    const fs::path out = scratch.path / "out";
    REQUIRE(run("gen --preset G1 --seed 1 --out " + data.string(), scratch.path).exit_code == 0);
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " correlate --by overall",
                      scratch.path);
    CHECK(result.exit_code == 0);
    const std::string summary = slurp(out / "correlation_summary.json");
    const auto ar_pos = summary.find("\"ar\"");
    const auto rai_pos = summary.find("\"rai\"");
    REQUIRE(ar_pos != std::string::npos);
    REQUIRE(rai_pos != std::string::npos);
    auto r_value = [&summary](std::size_t from) {
        const auto key = summary.find("\"r\":", from);
        return std::stod(summary.substr(key + 4));
    };
    CHECK(r_value(rai_pos) > r_value(ar_pos));
}

TEST_CASE("correlate without gpas exits with the insufficient-samples code") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    fs::create_directories(data);
    write_fixture(data);
    std::ofstream(data / "grades.csv", std::ios::binary) << "student_id,course_id,letter\n";
    const fs::path out = scratch.path / "out";
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " correlate --by overall",
                      scratch.path);
    CHECK(result.exit_code == 4);
}

TEST_CASE("hist with one bin holds all the mass") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    const fs::path out = scratch.path / "out";
    REQUIRE(run("gen --preset G1 --seed 5 --out " + data.string(), scratch.path).exit_code == 0);
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " hist --bins 1",
                      scratch.path);
    CHECK(result.exit_code == 0);
    CHECK(slurp(out / "hist_high.csv") == "bin_low,bin_high,proportion\n-1,1,1\n");
    CHECK(slurp(out / "hist_low.csv") == "bin_low,bin_high,proportion\n-1,1,1\n");
}

TEST_CASE("cluster with an impossible grid uses its own exit code") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    const fs::path out = scratch.path / "out";
    REQUIRE(run("gen --preset G3 --seed 2 --out " + data.string(), scratch.path).exit_code == 0);
    // eps far too small for anything to connect
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " cluster --measure rai --seedless --grid 1:2,0.001:0.001,18:20",
                      scratch.path);
    CHECK(result.exit_code == 5);
}

TEST_CASE("a custom grade scale changes the derived gpas") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    fs::create_directories(data);
    write_fixture(data);
    std::ofstream(scratch.path / "scale.txt", std::ios::binary)
        << "A = 5\nB = 4\nC = 3\nD = 2\nF = 0\n";
    const fs::path out = scratch.path / "out";
    auto result = run("--grade-scale " + (scratch.path / "scale.txt").string() + " --data-dir " +
                          data.string() + " --out " + out.string() + " correlate --by overall",
                      scratch.path);
    CHECK(result.exit_code == 0);
}

TEST_CASE("missing data directory is an io error") {
    TempDir scratch("rai_cli");
    auto result = run("--data-dir /nonexistent/nowhere --out " + scratch.path.string() +
                          " compute",
                      scratch.path);
    CHECK(result.exit_code == 2);
}

TEST_CASE("corrupt dataset is an integrity error") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    fs::create_directories(data);
    write_fixture(data);
    std::ofstream(data / "registrations.csv", std::ios::app) << "sA,c1\n";  // duplicate
    auto result = run("--data-dir " + data.string() + " --out " + scratch.path.string() +
                          " compute",
                      scratch.path);
    CHECK(result.exit_code == 3);
}

TEST_CASE("json summary format") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    fs::create_directories(data);
    write_fixture(data);
    const fs::path out = scratch.path / "out";
    auto result = run("--format json --data-dir " + data.string() + " --out " + out.string() +
                          " compute --per student",
                      scratch.path);
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("\"command\": \"compute\"") != std::string::npos);

    auto csv_format = run("--data-dir " + data.string() + " --out " + out.string() +
                              " compute --per student",
                          scratch.path);
    CHECK(csv_format.out.rfind("key,value\n", 0) == 0);
}

TEST_CASE("gen G3 output loads cleanly and supports compute") {
    TempDir scratch("rai_cli");
    const fs::path data = scratch.path / "data";
    const fs::path out = scratch.path / "out";
    REQUIRE(run("gen --preset G3 --out " + data.string(), scratch.path).exit_code == 0);
    auto result = run("--data-dir " + data.string() + " --out " + out.string() +
                          " compute --measure both --per course",
                      scratch.path);
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(out / "measures_course.csv"));
}
