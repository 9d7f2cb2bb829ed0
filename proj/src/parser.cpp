#include "autobox/tree.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace autobox {

namespace {

struct Cell;
using CellPtr = std::shared_ptr<const Cell>;

// Persistent stack cell. Trailing whitespace sits with the cell that
// precedes it, so a reduction's children are node, trivia, node, trivia...
struct Cell {
    int state;
    NodeId node;
    std::vector<NodeId> trivia;
    std::size_t end_leaf;
    CellPtr below;
};

CellPtr push(CellPtr below, int state, NodeId node, std::size_t end_leaf) {
    return std::make_shared<const Cell>(Cell{state, node, {}, end_leaf, std::move(below)});
}

}  // namespace

class IncrementalParser {
public:
    explicit IncrementalParser(Tree& t)
        : t_(t), tables_(t.lang_->tables()), v_(t.version_), w_(t.version_ + 1), first_new_(static_cast<NodeId>(t.nodes_.size())) {}

    ParseOutcome run();

private:
    struct Frame {
        NodeId owner;
        std::vector<NodeId> items;
        std::size_t idx;
    };

    NodeId peek() const { return frames_.back().items[frames_.back().idx]; }
    void advance();
    void enter(NodeId nt);
    void skip_past(NodeId a);

    Symbol terminal_type(NodeId leaf) const;
    bool reusable(NodeId n) const;
    Symbol next_type_after(NodeId n) const;
    CellPtr reduce(CellPtr st, int prod, Symbol lookahead);
    CellPtr reduce_all(CellPtr st, Symbol lookahead);
    CellPtr reduce_until(CellPtr st, Symbol lookahead, int state);
    void attach_trivia(NodeId leaf);
    void clear_error(NodeId n);
    void snapshot(NodeId first_leaf);
    bool recover(NodeId t);
    void flatten();
    ParseOutcome finish(ParseOutcome out);
    void adopt(NodeId n);
    std::vector<StackEntry> entries(const CellPtr& st) const;

    Tree& t_;
    const LrTables& tables_;
    const Version v_;
    const Version w_;
    const NodeId first_new_;

    std::vector<Frame> frames_;
    CellPtr stack_;
    std::unordered_map<NodeId, CellPtr> snapshots_;
    std::vector<NodeId> errors_;
    std::vector<NodeId> isolated_;
    std::vector<NodeId> root_children_;
};

void IncrementalParser::advance() {
    ++frames_.back().idx;
    while (frames_.size() > 1 && frames_.back().idx == frames_.back().items.size()) {
        frames_.pop_back();
        ++frames_.back().idx;
    }
}

void IncrementalParser::enter(NodeId nt) {
    const auto& ch = t_.children(nt, v_);
    if (ch.empty()) {
        advance();
        return;
    }
    frames_.push_back({nt, ch, 0});
}

void IncrementalParser::skip_past(NodeId a) {
    while (frames_.back().items[frames_.back().idx] != a) frames_.pop_back();
    advance();
}

Symbol IncrementalParser::terminal_type(NodeId leaf) const {
    return t_.kind(leaf) == NodeKind::eos ? kEos : t_.type(leaf, v_);
}

Symbol IncrementalParser::next_type_after(NodeId n) const {
    NodeId last = t_.last_leaf(n, v_);
    auto leaves = t_.leaves();
    for (std::size_t i = t_.leaf_index(last) + 1; i < leaves.size(); ++i) {
        if (!t_.is_trivia(leaves[i], v_)) return terminal_type(leaves[i]);
    }
    return kEos;
}

bool IncrementalParser::reusable(NodeId n) const {
    const auto& rec = t_.nodes_[n];
    return !t_.changed_[n] && !rec.contains_error && rec.start_state >= 0 && !t_.error(n, v_) &&
           rec.follow_type == next_type_after(n);
}

CellPtr IncrementalParser::reduce(CellPtr st, int prod, Symbol lookahead) {
    const auto& p = tables_.productions()[static_cast<std::size_t>(prod)];
    std::vector<CellPtr> popped(p.rhs.size());
    for (std::size_t i = p.rhs.size(); i-- > 0;) {
        popped[i] = st;
        st = st->below;
    }
    NodeId n = t_.create(NodeKind::nonterminal, w_, p.lhs);
    auto& rec = t_.nodes_[n];
    rec.start_state = st->state;
    std::vector<NodeId> children;
    std::size_t end_leaf = st->end_leaf;
    for (const auto& c : popped) {
        children.push_back(c->node);
        children.insert(children.end(), c->trivia.begin(), c->trivia.end());
        end_leaf = c->end_leaf;
        if (rec.first_type < 0) {
            rec.first_type = t_.is_leaf(c->node) ? terminal_type(c->node) : t_.nodes_[c->node].first_type;
        }
    }
    for (NodeId c : children) {
        if (t_.error(c, w_) || (!t_.is_leaf(c) && t_.nodes_[c].contains_error)) rec.contains_error = true;
    }
    rec.follow_type = lookahead;
    t_.nodes_[n].revs.back().children = std::move(children);
    int g = tables_.goto_state(st->state, p.lhs);
    return push(std::move(st), g, n, end_leaf);
}

CellPtr IncrementalParser::reduce_all(CellPtr st, Symbol lookahead) {
    while (true) {
        auto a = tables_.action(st->state, lookahead);
        if (a.kind != LrTables::ActionKind::reduce) return st;
        st = reduce(std::move(st), a.target, lookahead);
    }
}

// Stops as soon as the top state matches, so an empty reduction that the
// subtree itself starts with is not replayed.
CellPtr IncrementalParser::reduce_until(CellPtr st, Symbol lookahead, int state) {
    while (st->state != state) {
        auto a = tables_.action(st->state, lookahead);
        if (a.kind != LrTables::ActionKind::reduce) return st;
        st = reduce(std::move(st), a.target, lookahead);
    }
    return st;
}

void IncrementalParser::attach_trivia(NodeId leaf) {
    Cell c = *stack_;
    c.trivia.push_back(leaf);
    c.end_leaf = t_.leaf_index(leaf) + 1;
    stack_ = std::make_shared<const Cell>(std::move(c));
}

void IncrementalParser::clear_error(NodeId n) {
    if (t_.error(n, w_)) t_.write(n, w_).error = false;
}

void IncrementalParser::snapshot(NodeId first_leaf) { snapshots_.try_emplace(first_leaf, stack_); }

std::vector<StackEntry> IncrementalParser::entries(const CellPtr& st) const {
    std::vector<StackEntry> out;
    for (const Cell* c = st.get(); c; c = c->below.get()) out.push_back({c->state, c->node, c->end_leaf});
    std::reverse(out.begin(), out.end());
    return out;
}

bool IncrementalParser::recover(NodeId t) {
    const std::size_t damage = t_.first_damage_;
    for (NodeId a = t_.parent(t, v_); a != kNoNode && a != t_.root_; a = t_.parent(a, v_)) {
        if (t_.kind(a) != NodeKind::nonterminal) continue;
        NodeId fl = t_.first_leaf(a, v_);
        NodeId ll = t_.last_leaf(a, v_);
        std::size_t lo = t_.leaf_index(fl), hi = t_.leaf_index(ll);
        bool damaged = damage != kNoLeaf && damage >= lo && damage <= hi;
        if (!damaged && !t_.error(a, v_)) continue;
        auto snap = snapshots_.find(fl);
        if (snap == snapshots_.end()) continue;
        Symbol la = -1;
        auto leaves = t_.leaves();
        for (std::size_t i = lo; i <= hi; ++i) {
            if (!t_.is_trivia(leaves[i], v_)) {
                la = terminal_type(leaves[i]);
                break;
            }
        }
        if (la < 0) continue;
        CellPtr st = reduce_until(snap->second, la, t_.start_state(a));
        int g = tables_.goto_state(st->state, t_.type(a, v_));
        if (st->state != t_.start_state(a) || g < 0) continue;
        stack_ = push(std::move(st), g, a, hi + 1);
        t_.write(a, w_).error = true;
        t_.write(t, w_).error = true;
        errors_.push_back(t);
        errors_.push_back(a);
        isolated_.push_back(a);
        skip_past(a);
        return true;
    }
    t_.write(t, w_).error = true;
    errors_.push_back(t);
    attach_trivia(t);
    advance();
    return false;
}

void IncrementalParser::flatten() {
    std::vector<const Cell*> cells;
    for (const Cell* c = stack_.get(); c; c = c->below.get()) cells.push_back(c);
    std::reverse(cells.begin(), cells.end());
    for (const Cell* c : cells) {
        root_children_.push_back(c->node);
        root_children_.insert(root_children_.end(), c->trivia.begin(), c->trivia.end());
    }
    root_children_.push_back(t_.eos_);
}

void IncrementalParser::adopt(NodeId n) {
    for (NodeId c : t_.children(n, w_)) {
        if (t_.parent(c, w_) != n) t_.write(c, w_).parent = n;
        if (c >= first_new_ && !t_.is_leaf(c)) adopt(c);
    }
}

ParseOutcome IncrementalParser::run() {
    stack_ = push(nullptr, 0, t_.bos_, 1);
    {
        const auto& rc = t_.children(t_.root_, v_);
        frames_.push_back({t_.root_, rc, 1});
    }
    ParseOutcome out;
    while (true) {
        NodeId it = peek();
        NodeKind k = t_.kind(it);
        if (k == NodeKind::nonterminal) {
            NodeId fl = t_.first_leaf(it, v_);
            if (fl == kNoNode) {
                advance();
                continue;
            }
            snapshot(fl);
            if (reusable(it)) {
                CellPtr st = reduce_until(stack_, t_.first_type(it), t_.start_state(it));
                int g = tables_.goto_state(st->state, t_.type(it, v_));
                if (st->state == t_.start_state(it) && g >= 0) {
                    stack_ = push(std::move(st), g, it, t_.leaf_index(t_.last_leaf(it, v_)) + 1);
                    advance();
                    continue;
                }
            }
            enter(it);
            continue;
        }
        if (k == NodeKind::bos) {  // stray BOS never appears past the first slot
            advance();
            continue;
        }
        snapshot(it);
        if (k == NodeKind::token && t_.trivia_type(t_.type(it, v_))) {
            clear_error(it);
            attach_trivia(it);
            advance();
            continue;
        }
        Symbol T = terminal_type(it);
        stack_ = reduce_all(stack_, T);
        auto a = tables_.action(stack_->state, T);
        if (a.kind == LrTables::ActionKind::shift) {
            clear_error(it);
            stack_ = push(stack_, a.target, it, t_.leaf_index(it) + 1);
            advance();
            continue;
        }
        if (a.kind == LrTables::ActionKind::accept) {
            clear_error(it);
            flatten();
            break;
        }
        t_.error_stacks_[it] = entries(stack_);
        if (k == NodeKind::eos) {
            t_.write(it, w_).error = true;
            errors_.push_back(it);
            flatten();
            break;
        }
        recover(it);
    }
    out.stack = entries(stack_);
    return finish(std::move(out));
}

ParseOutcome IncrementalParser::finish(ParseOutcome out) {
    t_.write(t_.root_, w_).children = std::move(root_children_);
    adopt(t_.root_);

    // Isolated subtrees keep spliced structure that was never parsed; such
    // nodes must not be reused later.
    std::vector<NodeId> found = errors_;
    std::vector<NodeId> todo = isolated_;
    while (!todo.empty()) {
        NodeId n = todo.back();
        todo.pop_back();
        if (t_.error(n, w_)) found.push_back(n);
        if (!t_.is_leaf(n)) {
            if (t_.changed_[n]) t_.nodes_[n].contains_error = true;
            for (NodeId c : t_.children(n, w_)) todo.push_back(c);
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (NodeId n : found) {
        if (!t_.error(n, w_)) continue;
        NodeId r = n;
        while (r != kNoNode && r != t_.root_) r = t_.parent(r, w_);
        if (r == t_.root_) out.error_nodes.push_back(n);
    }
    const auto& before = t_.last_.error_nodes;
    for (NodeId n : out.error_nodes) {
        if (!std::binary_search(before.begin(), before.end(), n)) out.new_errors.push_back(n);
    }
    out.accepted = out.error_nodes.empty();
    out.reparsed = true;
    out.nodes_created = t_.nodes_.size() - first_new_;

    t_.version_ = w_;
    std::fill(t_.changed_.begin(), t_.changed_.end(), 0);
    t_.dirty_ = false;
    t_.first_damage_ = kNoLeaf;
    t_.last_ = out;
    return out;
}

ParseOutcome Tree::parse() {
    if (!dirty_) {
        ParseOutcome o = last_;
        o.reparsed = false;
        o.new_errors.clear();
        o.nodes_created = 0;
        return o;
    }
    error_stacks_.clear();
    preparse_ = version_;
    IncrementalParser p(*this);
    return p.run();
}

}  // namespace autobox
