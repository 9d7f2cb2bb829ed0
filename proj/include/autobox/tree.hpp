#pragma once

#include "autobox/language.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace autobox {

using NodeId = std::uint32_t;
using Version = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::size_t kNoLeaf = std::numeric_limits<std::size_t>::max();

enum class NodeKind : std::uint8_t { root, bos, eos, nonterminal, token, lbox };

/// One entry of an LR parse stack together with the tree node it holds.
/// `end_leaf` is the frontier index just past the entry's text, including
/// trailing whitespace.
struct StackEntry {
    int state;
    NodeId node;
    std::size_t end_leaf;
    bool operator==(const StackEntry&) const = default;
};

struct ParseOutcome {
    bool accepted = false;
    bool reparsed = false;
    std::vector<NodeId> error_nodes;  // every node carrying an error mark
    std::vector<NodeId> new_errors;   // marked now but not before this parse
    std::vector<StackEntry> stack;    // final stack, bottom first
    std::size_t nodes_created = 0;
};

/// A replacement for a text range: either plain text (lexed by the tree) or
/// an existing lbox leaf, which the lexer treats as an opaque barrier.
struct Piece {
    std::variant<std::string, NodeId> content;
    static Piece text(std::string s) { return Piece{std::move(s)}; }
    static Piece box(NodeId n) { return Piece{n}; }
};

/// Parse tree of one language with full version history. Every mutation
/// happens at a fresh version; reads may name any earlier version.
///
/// Each edit produces two versions: the splice version, where re-lexed
/// tokens sit in the old structure, and the parse version. Heuristics that
/// need "the tree as it was before parsing" read at version() - 1.
class Tree {
public:
    explicit Tree(const Language& lang);
    Tree(const Language& lang, std::string_view text);
    Tree(const Tree&) = delete;
    Tree& operator=(const Tree&) = delete;

    const Language& language() const { return *lang_; }
    Version version() const { return version_; }

    NodeId root() const { return root_; }
    NodeId bos() const { return bos_; }
    NodeId eos() const { return eos_; }

    // Versioned reads. A node that did not exist at `v` reads as detached.
    bool exists_at(NodeId n, Version v) const;
    NodeKind kind(NodeId n) const { return nodes_[n].kind; }
    Symbol type(NodeId n, Version v) const { return rev(n, v).type; }
    const std::string& value(NodeId n, Version v) const { return rev(n, v).value; }
    NodeId parent(NodeId n, Version v) const { return rev(n, v).parent; }
    const std::vector<NodeId>& children(NodeId n, Version v) const { return rev(n, v).children; }
    bool error(NodeId n, Version v) const { return rev(n, v).error; }
    std::uint32_t lookahead(NodeId n, Version v) const { return rev(n, v).lookahead; }

    Symbol type(NodeId n) const { return type(n, version_); }
    const std::string& value(NodeId n) const { return value(n, version_); }
    NodeId parent(NodeId n) const { return parent(n, version_); }
    const std::vector<NodeId>& children(NodeId n) const { return children(n, version_); }
    bool error(NodeId n) const { return error(n, version_); }

    bool is_leaf(NodeId n) const;
    bool is_trivia(NodeId n, Version v) const;
    bool is_trivia(NodeId n) const { return is_trivia(n, version_); }

    /// Non-versioned flag set when an automatic insertion triggered by this
    /// node is undone.
    bool noinsert(NodeId n) const { return nodes_[n].noinsert; }
    void set_noinsert(NodeId n, bool on) { nodes_[n].noinsert = on; }

    // Reuse metadata recorded when a nonterminal is built by the parser.
    int start_state(NodeId n) const { return nodes_[n].start_state; }
    Symbol first_type(NodeId n) const { return nodes_[n].first_type; }
    Symbol follow_type(NodeId n) const { return nodes_[n].follow_type; }

    // Current frontier: BOS, tokens and boxes, EOS.
    const std::string& text() const { return text_; }
    std::span<const NodeId> leaves() const { return leaves_; }
    std::size_t leaf_index(NodeId n) const;
    std::size_t start(NodeId leaf) const { return starts_[leaf_index(leaf)]; }
    std::size_t end(NodeId leaf) const;
    std::size_t leaf_start(std::size_t i) const { return starts_[i]; }
    /// Leaf with start <= offset < end; EOS when offset == text size.
    std::size_t leaf_at(std::size_t offset) const;

    // Traversal at a version. Return kNoNode past either end.
    NodeId next_terminal(NodeId n, Version v) const;
    NodeId prev_terminal(NodeId n, Version v) const;
    /// Preorder successor: the first child if any, else the next node to
    /// the right.
    NodeId next_lookahead(NodeId n, Version v) const;
    NodeId first_leaf(NodeId n, Version v) const;
    NodeId last_leaf(NodeId n, Version v) const;

    // Mutation.
    Version apply_edit(std::size_t pos, std::size_t delete_len, std::string_view insert);
    /// Replaces [a, b) by `pieces`, re-lexing as little as possible.
    Version splice(std::size_t a, std::size_t b, std::vector<Piece> pieces);
    /// Creates a detached lbox leaf.
    NodeId make_box_leaf(Symbol type, std::string value);
    /// Updates the text length of a box leaf after its inner tree changed.
    Version set_box_value(NodeId box, std::string value);
    ParseOutcome parse();
    /// New version whose state equals version `v`. Noinsert flags persist.
    Version revert_to(Version v);
    /// Re-lexes and reparses everything from scratch into a fresh version.
    Version reset(std::string_view text);

    /// Version the latest parse started from: the tree as it was before
    /// parsing, with re-lexed tokens in the old structure.
    Version preparse_version() const { return preparse_; }
    /// Start offset of the first box leaf at or after `offset`, or the text
    /// size when there is none.
    std::size_t next_box_start(std::size_t offset) const;
    /// Frontier indices of box leaves, ascending.
    const std::vector<std::size_t>& box_leaves() const { return box_leaves_; }

    bool needs_parse() const { return dirty_; }
    const ParseOutcome& last_outcome() const { return last_; }
    std::vector<NodeId> error_nodes() const { return last_.error_nodes; }
    /// Parse stack when `n` was found erroneous in the latest parse.
    const std::vector<StackEntry>* error_stack(NodeId n) const;
    /// Leaves replaced or added by splices since the previous parse.
    std::size_t first_damaged_leaf() const { return first_damage_; }
    std::size_t node_count() const { return nodes_.size(); }

    /// Batch-lexes the current text as the lexer would (boxes as barriers);
    /// returns (type, start, length) for every token and box.
    std::vector<Lexeme> relex_all() const;

private:
    struct Revision {
        Version version = 0;
        NodeId parent = kNoNode;
        Symbol type = -1;
        bool error = false;
        std::uint32_t lookahead = 0;
        std::vector<NodeId> children;
        std::string value;
    };
    struct Record {
        NodeKind kind;
        bool noinsert = false;
        bool contains_error = false;
        int start_state = -1;
        Symbol first_type = -1;
        Symbol follow_type = -1;
        std::vector<Revision> revs;
    };

    const Revision& rev(NodeId n, Version v) const;
    Revision& write(NodeId n, Version v);
    NodeId create(NodeKind k, Version v, Symbol type);
    void rebuild_frontier();
    void reindex();
    void collect_leaves(NodeId n, Version v, std::vector<NodeId>& out) const;
    void mark_changed_path(NodeId n, Version v);
    bool trivia_type(Symbol s) const;

    friend class IncrementalParser;

    const Language* lang_;
    std::vector<Record> nodes_;
    Version version_ = 0;
    NodeId root_ = kNoNode, bos_ = kNoNode, eos_ = kNoNode;

    std::string text_;
    std::vector<NodeId> leaves_;
    std::vector<std::size_t> starts_;  // one extra entry: text size
    std::vector<std::size_t> leaf_pos_;  // by node id
    std::size_t max_lookahead_ = 1;
    std::vector<std::size_t> box_leaves_;
    Version preparse_ = 0;

    std::vector<char> changed_;  // by node id
    bool dirty_ = false;
    std::size_t first_damage_ = kNoLeaf;

    ParseOutcome last_;
    std::unordered_map<NodeId, std::vector<StackEntry>> error_stacks_;
};

}  // namespace autobox
