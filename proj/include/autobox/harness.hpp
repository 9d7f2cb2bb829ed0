#pragma once

#include "autobox/autobox.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace autobox {

enum class Category : std::uint8_t {
    complete_insertion,
    partial_insertion_no_errors,
    partial_insertion_errors,
    no_insertion_valid,
    no_insertion_errors,
    no_insertion_multi,
};
inline constexpr Category kCategories[] = {Category::complete_insertion,  Category::partial_insertion_no_errors,
                                           Category::partial_insertion_errors, Category::no_insertion_valid,
                                           Category::no_insertion_errors,  Category::no_insertion_multi};

const char* category_name(Category c);
std::optional<Category> parse_category(std::string_view s);
bool acceptable(Category c);

struct TestCase {
    std::string name;
    std::filesystem::path base_file;
    std::size_t offset = 0;
    std::size_t span = 0;
    std::string fragment;
    std::string composition;
    std::optional<Category> expected;
};

struct Outcome {
    Category category = Category::no_insertion_errors;
    std::size_t box_span = 0;
    std::vector<double> times_ms;  // per keypress, filled only when timing
    std::vector<std::size_t> error_positions;

    double mean_ms() const;
    double max_ms() const;
};

/// Reads a JSON manifest; base files resolve against the manifest's directory.
std::vector<TestCase> load_manifest(const std::filesystem::path& file);

/// Fragment characters covered by automatic boxes.
std::size_t box_span(const Document& d, std::size_t offset, std::size_t len);
Category classify(const Session& s, std::size_t offset, std::size_t len);

/// Loads the base text, deletes the span, types the fragment one character
/// at a time and classifies the result.
Outcome run_test(const TestCase& t, const std::string& base_text, std::shared_ptr<const Composition> comp,
                 const Config& cfg, bool timing);

/// Compositions and base texts for a set of test cases.
struct Workload {
    std::vector<TestCase> cases;
    std::map<std::string, std::shared_ptr<const Composition>> compositions;
    std::map<std::filesystem::path, std::string> bases;
};

/// Loads every referenced composition (from `explicit_files` first, then
/// `search_dirs` by id) and base file.
Workload prepare(std::vector<TestCase> cases, const std::vector<std::filesystem::path>& explicit_files,
                 const std::vector<std::filesystem::path>& search_dirs);

std::vector<Outcome> run_serial(const Workload& w, const Config& cfg, bool timing);
/// Same results as run_serial; test cases are spread over OpenMP threads.
std::vector<Outcome> run_parallel(const Workload& w, const Config& cfg, bool timing);

/// Outcomes of one heuristic configuration.
struct Run {
    std::uint8_t heuristics = kAllHeuristics;
    std::vector<Outcome> outcomes;
};

/// Percentage with one decimal, halves rounded up; empty totals give 0.0.
std::string percent(std::size_t part, std::size_t whole);

/// Writes acceptable.{csv,txt}, categories.{csv,txt} and outcomes.csv, plus
/// timing.csv when `timing`. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const std::filesystem::path& dir, const std::vector<TestCase>& cases,
                                               const std::vector<Run>& runs, bool timing);

/// Table contents, exposed for tests.
std::vector<std::vector<std::string>> acceptable_table(const std::vector<TestCase>& cases, const std::vector<Run>& runs);
std::vector<std::vector<std::string>> category_table(const std::vector<Run>& runs);
std::string to_csv(const std::vector<std::vector<std::string>>& rows);
std::string to_text(const std::vector<std::vector<std::string>>& rows);

}  // namespace autobox
