#include "autobox/harness.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace autobox {

const char* category_name(Category c) {
    switch (c) {
        case Category::complete_insertion: return "complete_insertion";
        case Category::partial_insertion_no_errors: return "partial_insertion_no_errors";
        case Category::partial_insertion_errors: return "partial_insertion_errors";
        case Category::no_insertion_valid: return "no_insertion_valid";
        case Category::no_insertion_errors: return "no_insertion_errors";
        case Category::no_insertion_multi: return "no_insertion_multi";
    }
    return "?";
}

std::optional<Category> parse_category(std::string_view s) {
    for (Category c : kCategories) {
        if (s == category_name(c)) return c;
    }
    return std::nullopt;
}

bool acceptable(Category c) {
    return c != Category::partial_insertion_errors && c != Category::no_insertion_errors;
}

double Outcome::mean_ms() const {
    if (times_ms.empty()) return 0.0;
    double sum = 0;
    for (double t : times_ms) sum += t;
    return sum / static_cast<double>(times_ms.size());
}

double Outcome::max_ms() const {
    return times_ms.empty() ? 0.0 : *std::max_element(times_ms.begin(), times_ms.end());
}

std::vector<TestCase> load_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read manifest " + file.string());
    auto j = nlohmann::json::parse(in);
    if (!j.is_array()) throw std::runtime_error("manifest must be a JSON array");
    std::vector<TestCase> out;
    for (const auto& e : j) {
        TestCase t;
        t.base_file = file.parent_path() / e.at("base_file").get<std::string>();
        t.offset = e.at("offset").get<std::size_t>();
        t.span = e.at("span").get<std::size_t>();
        t.fragment = e.at("fragment").get<std::string>();
        t.composition = e.at("composition").get<std::string>();
        t.name = e.value("name", "test" + std::to_string(out.size() + 1));
        if (e.contains("expected")) {
            t.expected = parse_category(e["expected"].get<std::string>());
            if (!t.expected) throw std::runtime_error("unknown category in " + t.name);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::size_t box_span(const Document& d, std::size_t offset, std::size_t len) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& [id, b] : d.boxes()) {
        if (b.origin == Origin::automatic) spans.emplace_back(d.box_start(id), d.box_end(id));
    }
    std::sort(spans.begin(), spans.end());
    std::size_t covered = 0, reach = offset;
    for (auto [s, e] : spans) {
        s = std::max({s, reach, offset});
        e = std::min(e, offset + len);
        if (e > s) {
            covered += e - s;
            reach = e;
        }
    }
    return covered;
}

Category classify(const Session& s, std::size_t offset, std::size_t len) {
    std::size_t span = box_span(s.doc(), offset, len);
    bool errors = s.doc().has_errors();
    if (span == len) return Category::complete_insertion;
    if (span > 0) return errors ? Category::partial_insertion_errors : Category::partial_insertion_no_errors;
    if (s.last_decision().kind == DecisionKind::present) return Category::no_insertion_multi;
    return errors ? Category::no_insertion_errors : Category::no_insertion_valid;
}

Outcome run_test(const TestCase& t, const std::string& base_text, std::shared_ptr<const Composition> comp,
                 const Config& cfg, bool timing) {
    if (t.fragment.empty()) throw std::invalid_argument(t.name + ": empty fragment");
    if (t.offset > base_text.size() || t.span > base_text.size() - t.offset)
        throw std::invalid_argument(t.name + ": offset and span outside the base file");
    Session s(std::move(comp), base_text, cfg);
    s.move(t.offset);
    s.erase(t.offset, t.span);
    Outcome out;
    using clock = std::chrono::steady_clock;
    for (char c : t.fragment) {
        auto t0 = clock::now();
        s.key(std::string(1, c));
        if (timing) out.times_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
    }
    out.category = classify(s, t.offset, t.fragment.size());
    out.box_span = box_span(s.doc(), t.offset, t.fragment.size());
    out.error_positions = s.doc().error_positions();
    return out;
}

Workload prepare(std::vector<TestCase> cases, const std::vector<std::filesystem::path>& explicit_files,
                 const std::vector<std::filesystem::path>& search_dirs) {
    Workload w;
    for (const auto& f : explicit_files) w.compositions[f.stem().string()] = Composition::load(f);
    for (const auto& t : cases) {
        if (!w.compositions.count(t.composition)) {
            std::optional<std::filesystem::path> found;
            for (const auto& d : search_dirs) {
                auto p = d / (t.composition + ".comp");
                if (std::filesystem::exists(p)) {
                    found = p;
                    break;
                }
            }
            if (!found) throw std::runtime_error("unknown composition " + t.composition);
            w.compositions[t.composition] = Composition::load(*found);
        }
        if (!w.bases.count(t.base_file)) {
            std::ifstream in(t.base_file, std::ios::binary);
            if (!in) throw std::runtime_error("cannot read base file " + t.base_file.string());
            std::stringstream ss;
            ss << in.rdbuf();
            w.bases[t.base_file] = ss.str();
        }
    }
    w.cases = std::move(cases);
    return w;
}

std::vector<Outcome> run_serial(const Workload& w, const Config& cfg, bool timing) {
    std::vector<Outcome> out;
    out.reserve(w.cases.size());
    for (const auto& t : w.cases)
        out.push_back(run_test(t, w.bases.at(t.base_file), w.compositions.at(t.composition), cfg, timing));
    return out;
}

std::vector<Outcome> run_parallel(const Workload& w, const Config& cfg, bool timing) {
    std::vector<Outcome> out(w.cases.size());
    std::vector<std::string> failures(w.cases.size());
    const auto n = static_cast<std::ptrdiff_t>(w.cases.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& t = w.cases[static_cast<std::size_t>(i)];
        try {
            out[static_cast<std::size_t>(i)] =
                run_test(t, w.bases.at(t.base_file), w.compositions.at(t.composition), cfg, timing);
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw std::runtime_error(f);
    }
    return out;
}

std::string percent(std::size_t part, std::size_t whole) {
    if (whole == 0) return "0.0";
    // Integer arithmetic keeps half-up rounding exact.
    std::size_t tenths = (part * 2000 + whole) / (2 * whole);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

namespace {

std::vector<std::string> composition_ids(const std::vector<TestCase>& cases) {
    std::vector<std::string> ids;
    for (const auto& t : cases) ids.push_back(t.composition);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

}  // namespace

std::vector<std::vector<std::string>> acceptable_table(const std::vector<TestCase>& cases, const std::vector<Run>& runs) {
    auto ids = composition_ids(cases);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"heuristic"};
    for (const auto& id : ids) head.push_back(id);
    head.push_back("Overall");
    rows.push_back(head);
    std::vector<std::string> counts{"# Tests"};
    for (const auto& id : ids)
        counts.push_back(std::to_string(std::count_if(cases.begin(), cases.end(), [&](const TestCase& t) {
            return t.composition == id;
        })));
    counts.push_back(std::to_string(cases.size()));
    rows.push_back(counts);
    for (const auto& r : runs) {
        std::vector<std::string> row{heuristics_name(r.heuristics)};
        std::size_t all_ok = 0;
        for (const auto& id : ids) {
            std::size_t n = 0, ok = 0;
            for (std::size_t i = 0; i < cases.size(); ++i) {
                if (cases[i].composition != id) continue;
                ++n;
                ok += acceptable(r.outcomes[i].category);
            }
            all_ok += ok;
            row.push_back(percent(ok, n));
        }
        row.push_back(percent(all_ok, cases.size()));
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::vector<std::string>> category_table(const std::vector<Run>& runs) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"heuristic"};
    for (Category c : kCategories) head.push_back(category_name(c));
    rows.push_back(head);
    for (const auto& r : runs) {
        std::vector<std::string> row{heuristics_name(r.heuristics)};
        for (Category c : kCategories) {
            auto n = static_cast<std::size_t>(std::count_if(r.outcomes.begin(), r.outcomes.end(),
                                                            [&](const Outcome& o) { return o.category == c; }));
            row.push_back(percent(n, r.outcomes.size()));
        }
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            bool quote = row[i].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                out += row[i];
                continue;
            }
            out += '"';
            for (char c : row[i]) out += c == '"' ? std::string("\"\"") : std::string(1, c);
            out += '"';
        }
        out += '\n';
    }
    return out;
}

std::string to_text(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i];
            if (i == 0) cell.resize(width[i], ' ');
            else cell = std::string(width[i] - cell.size(), ' ') + cell;
            line += (i ? "  " : "") + cell;
        }
        out += line + '\n';
    }
    return out;
}

std::vector<std::filesystem::path> emit_report(const std::filesystem::path& dir, const std::vector<TestCase>& cases,
                                               const std::vector<Run>& runs, bool timing) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::string& name, const std::string& body) {
        auto p = dir / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << body;
        written.push_back(p);
    };
    auto acc = acceptable_table(cases, runs);
    auto cat = category_table(runs);
    write("acceptable.csv", to_csv(acc));
    write("acceptable.txt", to_text(acc));
    write("categories.csv", to_csv(cat));
    write("categories.txt", to_text(cat));

    std::vector<std::vector<std::string>> per{{"heuristic", "test", "composition", "category", "expected", "box_span",
                                               "fragment_length"}};
    for (const auto& r : runs) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& t = cases[i];
            per.push_back({heuristics_name(r.heuristics), t.name, t.composition, category_name(r.outcomes[i].category),
                           t.expected ? category_name(*t.expected) : "", std::to_string(r.outcomes[i].box_span),
                           std::to_string(t.fragment.size())});
        }
    }
    write("outcomes.csv", to_csv(per));

    if (timing) {
        std::vector<std::vector<std::string>> rows{{"heuristic", "test", "keypresses", "mean_ms", "max_ms"}};
        for (const auto& r : runs) {
            double sum = 0, worst = 0;
            std::size_t keys = 0;
            for (std::size_t i = 0; i < cases.size(); ++i) {
                const auto& o = r.outcomes[i];
                rows.push_back({heuristics_name(r.heuristics), cases[i].name, std::to_string(o.times_ms.size()),
                                fixed(o.mean_ms(), 4), fixed(o.max_ms(), 4)});
                for (double t : o.times_ms) sum += t;
                keys += o.times_ms.size();
                worst = std::max(worst, o.max_ms());
            }
            rows.push_back({heuristics_name(r.heuristics), "ALL", std::to_string(keys),
                            fixed(keys ? sum / static_cast<double>(keys) : 0.0, 4), fixed(worst, 4)});
        }
        write("timing.csv", to_csv(rows));
    }
    return written;
}

}  // namespace autobox
