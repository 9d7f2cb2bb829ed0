#pragma once

#include "autobox/lbox.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace autobox {

/// Candidate heuristics as a bit set; `all` runs the three together.
enum Heuristic : std::uint8_t {
    kParseTree = 1,
    kStack = 2,
    kLine = 4,
    kAllHeuristics = kParseTree | kStack | kLine,
};

/// Parses "all", "parse_tree", "stack", "line" or a comma list of them.
std::uint8_t parse_heuristics(std::string_view s);
std::string heuristics_name(std::uint8_t h);

struct Config {
    std::uint8_t heuristics = kAllHeuristics;
    std::size_t lookahead_tokens = 10;  // tokens parsed past the longest candidate
    std::size_t recogniser_cap = 1000;
};

enum class DecisionKind : std::uint8_t { none, insert, present, remove, resize, present_resize };
const char* decision_name(DecisionKind k);

struct Decision {
    DecisionKind kind = DecisionKind::none;
    std::vector<Candidate> candidates;  // insert: one; present/present_resize: two or more
    int box = 0;                        // remove, resize, present_resize
    std::size_t new_end = 0;            // resize, local to the host tree
    NodeId trigger = kNoNode;
};

struct Stats {
    std::uint64_t keypresses = 0;
    std::uint64_t searches = 0;  // candidate gatherings
    std::uint64_t inserts = 0;
    std::uint64_t presents = 0;
    std::uint64_t removals = 0;
    std::uint64_t resizes = 0;
    std::uint64_t cap_hits = 0;
};

// Candidate heuristics. Each returns candidates in discovery order with
// stacks valid just before the candidate start.
std::vector<Candidate> cnds_parse_tree(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                                       Stats* stats = nullptr);
std::vector<Candidate> cnds_stack(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                                  Stats* stats = nullptr);
std::vector<Candidate> cnds_line(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                                 Stats* stats = nullptr);
/// Union of the configured heuristics, without duplicates.
std::vector<Candidate> gather(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                              Stats* stats = nullptr);

/// Follow-token filter, then maximal-parse-point ranking.
std::vector<Candidate> combine_all(const Document& d, std::vector<Candidate> cands, const Config& cfg);

/// Zero survivors: none; one: insert; more: present, ordered by (start, end, lang).
Decision decide(std::vector<Candidate> survivors, NodeId trigger);

/// Removal rules for one uncommitted box, in rule order. Returns the rule
/// number that applies or 0.
int removal_rule(const Document& d, int box);
/// Resize targets for one uncommitted box (host-local end offsets).
std::vector<std::size_t> resize_targets(const Document& d, int box);

/// Content of the box lexes and parses in the host right where the box is.
bool valid_in_host(const Document& d, int box);

/// Error leaves that may trigger insertion, in document order.
std::vector<std::pair<std::size_t, NodeId>> triggers(const Document& d,
                                                     const std::vector<std::vector<NodeId>>& errors_before,
                                                     const std::vector<Version>& versions_before,
                                                     std::size_t edit_pos);

/// One editing session: document, cursor, undo history and the automatic
/// pipeline that runs after every keypress.
class Session {
public:
    Session(std::shared_ptr<const Composition> comp, std::string_view text, Config cfg = {});

    Document& doc() { return doc_; }
    const Document& doc() const { return doc_; }
    const Config& config() const { return cfg_; }
    std::size_t cursor() const { return cursor_; }
    const Stats& stats() const { return stats_; }

    /// "\b" deletes backwards, "\x7f" forwards; anything else is inserted.
    void key(std::string_view ch);
    /// Deletes [pos, pos+len) as one edit and runs the pipeline.
    void erase(std::size_t pos, std::size_t len);
    void move(std::size_t pos);
    bool undo();
    /// Applies a presented candidate (1-based id).
    bool choose(int id);
    bool mark_uncommitted(int box);

    const Decision& last_decision() const { return last_; }
    /// Candidates on offer; only non-empty after a present decision.
    const std::vector<Candidate>& candidates() const { return offered_; }
    /// Absolute offsets of a candidate.
    std::pair<std::size_t, std::size_t> absolute(const Candidate& c) const;

private:
    struct Unit {
        Document::Snapshot before;
        std::size_t cursor = 0;
        bool automatic_insert = false;
        std::size_t tree = 0;
        NodeId trigger = kNoNode;
        Decision decision;  // restored by undo
        std::vector<Candidate> offered;
    };

    void apply_edit(std::size_t pos, std::size_t del, std::string_view ins, std::size_t new_cursor);
    void pipeline(std::size_t edit_pos, const std::vector<std::vector<NodeId>>& errors_before,
                  const std::vector<Version>& versions_before);
    void push_unit(bool automatic_insert = false, std::size_t tree = 0, NodeId trigger = kNoNode);
    void commit_on_exit(std::size_t old_cursor, std::size_t new_cursor);

    Document doc_;
    Config cfg_;
    std::size_t cursor_ = 0;
    std::vector<Unit> undo_;
    Decision last_;
    std::vector<Candidate> offered_;
    Stats stats_;
};

}  // namespace autobox
