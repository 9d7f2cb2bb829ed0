#pragma once

#include "autobox/language.hpp"
#include "autobox/tree.hpp"

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace autobox {

enum class Source : std::uint8_t { parse_tree, stack, line, resize, manual };
const char* source_name(Source s);

/// A proposed box. Offsets are relative to the host tree's text.
struct Candidate {
    std::size_t tree = 0;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string lang;
    Source source = Source::stack;
    std::vector<int> stack;  // host LR states just before the box

    bool same_box(const Candidate& o) const {
        return tree == o.tree && start == o.start && end == o.end && lang == o.lang;
    }
};

struct RecogniserResult {
    std::size_t start = 0;          // offset of the first non-whitespace token
    std::vector<std::size_t> ends;  // ascending end offsets of accepted prefixes
    bool cap_hit = false;
};

/// Candidates recogniser: lexes `text` with `lang`'s lexer from `from`,
/// never reading at or past `limit`, and feeds tokens to `lang`'s parser
/// one at a time. Every prefix the parser accepts yields an end offset; the
/// scan stops at the first error on a real token, at `limit`, or after
/// `cap` tokens. Leading whitespace is skipped; the first real token must
/// pass `hint` when one is given.
RecogniserResult recognise(std::string_view text, std::size_t from, std::size_t limit, const Language& lang,
                           const StartHint* hint, std::size_t cap = 1000);

/// Parse stack a from-scratch parse holds just before `target` (a leaf or
/// nonterminal of `t` at version `v`), rebuilt by walking the root path and
/// shifting off-path subtrees whole. Nothing when `target` is unreachable
/// at `v` or the prefix does not parse.
std::optional<std::vector<StackEntry>> recreate_stack(const Tree& t, NodeId target, Version v);

inline std::vector<int> states_of(const std::vector<StackEntry>& st) {
    std::vector<int> out;
    out.reserve(st.size());
    for (const auto& e : st) out.push_back(e.state);
    return out;
}

/// Result of parsing onward from a box position without touching the tree.
struct Lookahead {
    bool box_shifts = false;
    bool follow_ok = false;        // first non-whitespace token after the box parses
    std::size_t reach = 0;         // offset of the first error, or past the last token tried
    bool clean = false;            // no error within the tokens tried
};

/// Simulates shifting a box of `sym` (none when negative) on `stack` and continuing over the
/// host text from `resume` (boxes in the host act as their own terminals).
/// `lead` is optional text placed before `resume`, as when a shrink moves
/// content back to the host. At most `max_tokens` tokens are parsed after
/// the box; `until` stops early once a token starts at or beyond it.
Lookahead look_past_box(const Tree& host, const std::vector<int>& stack, Symbol sym, std::string_view lead,
                        std::size_t resume, std::size_t max_tokens,
                        std::size_t until = std::numeric_limits<std::size_t>::max());

/// Feeds the tokens of `text` (host lexer) after `stack`. True when every
/// real token shifts.
bool parses_in_context(const Language& host, const std::vector<int>& stack, std::string_view text);

enum class BoxState : std::uint8_t { uncommitted, committed };
enum class Origin : std::uint8_t { automatic, manual };

struct Box {
    int id = 0;
    std::size_t host = 0;   // tree index holding the box leaf
    std::size_t inner = 0;  // tree index of the nested tree
    NodeId leaf = kNoNode;
    std::string lang;
    BoxState state = BoxState::uncommitted;
    Origin origin = Origin::automatic;
    NodeId trigger = kNoNode;  // error node in the host tree, automatic boxes only
};

/// Tree of trees: an outer tree plus one nested tree per box. Offsets given
/// to and returned by Document are absolute document offsets unless noted.
class Document {
public:
    Document(std::shared_ptr<const Composition> comp, std::string_view text);

    const Composition& composition() const { return *comp_; }
    std::string text() const { return trees_[0]->text(); }
    std::size_t size() const { return trees_[0]->text().size(); }

    Tree& tree(std::size_t i) { return *trees_[i]; }
    const Tree& tree(std::size_t i) const { return *trees_[i]; }
    std::size_t tree_count() const { return trees_.size(); }
    /// Trees currently reachable from the outer tree, outer first.
    std::vector<std::size_t> live_trees() const;
    bool is_live(std::size_t tree) const;

    const std::map<int, Box>& boxes() const { return boxes_; }
    const Box& box(int id) const { return boxes_.at(id); }
    Box& box(int id) { return boxes_.at(id); }
    bool has_box(int id) const { return boxes_.count(id) > 0; }
    /// Box whose nested tree is `tree`, or nothing for the outer tree.
    std::optional<int> box_of_tree(std::size_t tree) const;

    /// Absolute offset of the first character of tree `i`.
    std::size_t tree_offset(std::size_t i) const;
    std::size_t box_start(int id) const;
    std::size_t box_end(int id) const;

    /// Innermost tree and local offset for a cursor insertion at `pos`.
    std::pair<std::size_t, std::size_t> locate_insert(std::size_t pos) const;
    /// Innermost tree wholly containing [a, b), with the local start offset.
    std::pair<std::size_t, std::size_t> locate_range(std::size_t a, std::size_t b) const;

    /// Applies a text edit, routed to the innermost enclosing tree, and
    /// reparses every tree it touched. Boxes cut by a deletion are
    /// dissolved first. Returns the touched trees.
    std::vector<std::size_t> edit(std::size_t pos, std::size_t del, std::string_view ins);

    /// Replaces [start, end) of tree `host` (local offsets) by a new box.
    int insert_box(std::size_t host, std::size_t start, std::size_t end, const std::string& lang, Origin origin,
                   NodeId trigger);
    /// Splices the box's text back into its host.
    void remove_box(int id);
    /// Moves the box end to `new_end` (local to the host); the start stays.
    void resize_box(int id, std::size_t new_end);

    /// Host LR states just before the box leaf, from the current host tree.
    std::optional<std::vector<int>> stack_before_box(int id) const;

    /// Positions of error leaves (absolute) across all live trees, ascending and unique.
    std::vector<std::size_t> error_positions() const;
    bool has_errors() const;

    /// Restorable state: every tree's version plus the box table.
    struct Snapshot {
        std::vector<Version> versions;
        std::map<int, Box> boxes;
        int next_id = 0;
    };
    Snapshot snapshot() const;
    void restore(const Snapshot& s);

private:
    void sync_boxes();
    void propagate(std::size_t tree, std::vector<std::size_t>& touched);
    std::size_t new_tree(const Language& lang, std::string_view text);

    std::shared_ptr<const Composition> comp_;
    std::vector<std::unique_ptr<Tree>> trees_;
    std::map<int, Box> boxes_;
    std::vector<int> box_of_tree_;  // by tree index, -1 for the outer tree or dead trees
    int next_id_ = 1;
};

}  // namespace autobox
