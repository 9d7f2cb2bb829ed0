#include "autobox/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace autobox {


Tree::Tree(const Language& lang) : lang_(&lang) {
    root_ = create(NodeKind::root, 0, -1);
    bos_ = create(NodeKind::bos, 0, -1);
    eos_ = create(NodeKind::eos, 0, kEos);
    nodes_[root_].revs[0].children = {bos_, eos_};
    nodes_[bos_].revs[0].parent = root_;
    nodes_[eos_].revs[0].parent = root_;
    rebuild_frontier();
    dirty_ = true;
}

Tree::Tree(const Language& lang, std::string_view text) : Tree(lang) {
    if (!text.empty()) splice(0, 0, {Piece::text(std::string(text))});
    parse();
}

const Tree::Revision& Tree::rev(NodeId n, Version v) const {
    static const Revision kDetached{};
    const auto& rs = nodes_[n].revs;
    for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
        if (it->version <= v) return *it;
    }
    return kDetached;
}

Tree::Revision& Tree::write(NodeId n, Version v) {
    auto& rs = nodes_[n].revs;
    if (rs.back().version != v) {
        Revision copy = rs.back();
        copy.version = v;
        rs.push_back(std::move(copy));
    }
    return rs.back();
}

NodeId Tree::create(NodeKind k, Version v, Symbol type) {
    auto id = static_cast<NodeId>(nodes_.size());
    Record r;
    r.kind = k;
    Revision rv;
    rv.version = v;
    rv.type = type;
    r.revs.push_back(std::move(rv));
    nodes_.push_back(std::move(r));
    changed_.push_back(0);
    leaf_pos_.push_back(kNoLeaf);
    return id;
}

bool Tree::exists_at(NodeId n, Version v) const {
    return n < nodes_.size() && nodes_[n].revs.front().version <= v;
}

bool Tree::is_leaf(NodeId n) const {
    auto k = nodes_[n].kind;
    return k != NodeKind::nonterminal && k != NodeKind::root;
}

bool Tree::trivia_type(Symbol s) const { return lang_->is_whitespace(s); }

bool Tree::is_trivia(NodeId n, Version v) const {
    return nodes_[n].kind == NodeKind::token && trivia_type(type(n, v));
}

std::size_t Tree::leaf_index(NodeId n) const { return n < leaf_pos_.size() ? leaf_pos_[n] : kNoLeaf; }

std::size_t Tree::end(NodeId leaf) const { return starts_[leaf_index(leaf) + 1]; }

std::size_t Tree::leaf_at(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.begin() + static_cast<std::ptrdiff_t>(leaves_.size()), offset);
    return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

void Tree::collect_leaves(NodeId n, Version v, std::vector<NodeId>& out) const {
    if (is_leaf(n)) {
        out.push_back(n);
        return;
    }
    for (NodeId c : children(n, v)) collect_leaves(c, v, out);
}

void Tree::rebuild_frontier() {
    leaves_.clear();
    collect_leaves(root_, version_, leaves_);
    text_.clear();
    for (NodeId l : leaves_) text_ += value(l, version_);
    reindex();
}

void Tree::reindex() {
    std::fill(leaf_pos_.begin(), leaf_pos_.end(), kNoLeaf);
    starts_.resize(leaves_.size() + 1);
    std::size_t pos = 0;
    max_lookahead_ = 1;
    box_leaves_.clear();
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
        NodeId l = leaves_[i];
        leaf_pos_[l] = i;
        if (nodes_[l].kind == NodeKind::lbox) box_leaves_.push_back(i);
        starts_[i] = pos;
        const auto& r = rev(l, version_);
        pos += r.value.size();
        max_lookahead_ = std::max<std::size_t>(max_lookahead_, r.lookahead);
    }
    starts_[leaves_.size()] = pos;
}

std::size_t Tree::next_box_start(std::size_t offset) const {
    auto it = std::lower_bound(box_leaves_.begin(), box_leaves_.end(), offset,
                               [&](std::size_t i, std::size_t off) { return starts_[i] < off; });
    return it == box_leaves_.end() ? text_.size() : starts_[*it];
}

NodeId Tree::first_leaf(NodeId n, Version v) const {
    if (is_leaf(n)) return n;
    for (NodeId c : children(n, v)) {
        NodeId r = first_leaf(c, v);
        if (r != kNoNode) return r;
    }
    return kNoNode;
}

NodeId Tree::last_leaf(NodeId n, Version v) const {
    if (is_leaf(n)) return n;
    const auto& ch = children(n, v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
        NodeId r = last_leaf(*it, v);
        if (r != kNoNode) return r;
    }
    return kNoNode;
}

NodeId Tree::next_terminal(NodeId n, Version v) const {
    for (NodeId cur = n;;) {
        NodeId p = parent(cur, v);
        if (p == kNoNode) return kNoNode;
        const auto& ch = children(p, v);
        auto it = std::find(ch.begin(), ch.end(), cur);
        if (it == ch.end()) return kNoNode;
        for (++it; it != ch.end(); ++it) {
            NodeId r = first_leaf(*it, v);
            if (r != kNoNode) return r;
        }
        cur = p;
    }
}

NodeId Tree::prev_terminal(NodeId n, Version v) const {
    for (NodeId cur = n;;) {
        NodeId p = parent(cur, v);
        if (p == kNoNode) return kNoNode;
        const auto& ch = children(p, v);
        auto it = std::find(ch.begin(), ch.end(), cur);
        if (it == ch.end()) return kNoNode;
        while (it != ch.begin()) {
            --it;
            NodeId r = last_leaf(*it, v);
            if (r != kNoNode) return r;
        }
        cur = p;
    }
}

NodeId Tree::next_lookahead(NodeId n, Version v) const {
    const auto& own = children(n, v);
    if (!is_leaf(n) && !own.empty()) return own.front();
    for (NodeId cur = n;;) {
        NodeId p = parent(cur, v);
        if (p == kNoNode) return kNoNode;
        const auto& ch = children(p, v);
        auto it = std::find(ch.begin(), ch.end(), cur);
        if (it != ch.end() && ++it != ch.end()) return *it;
        cur = p;
    }
}

void Tree::mark_changed_path(NodeId n, Version v) {
    while (n != kNoNode && !changed_[n]) {
        changed_[n] = 1;
        n = parent(n, v);
    }
}

Version Tree::apply_edit(std::size_t pos, std::size_t delete_len, std::string_view insert) {
    if (pos > text_.size() || delete_len > text_.size() - pos) throw std::out_of_range("edit outside document");
    return splice(pos, pos + delete_len, {Piece::text(std::string(insert))});
}

NodeId Tree::make_box_leaf(Symbol type, std::string value) {
    NodeId n = create(NodeKind::lbox, version_, type);
    nodes_[n].revs[0].value = std::move(value);
    return n;
}

Version Tree::set_box_value(NodeId box, std::string value) {
    std::size_t i = leaf_index(box);
    if (i == kNoLeaf || nodes_[box].kind != NodeKind::lbox) throw std::invalid_argument("not a box leaf of this tree");
    Version v = ++version_;
    std::size_t s = starts_[i], e = starts_[i + 1];
    text_.replace(s, e - s, value);
    write(box, v).value = std::move(value);
    reindex();
    return v;
}

Version Tree::splice(std::size_t a, std::size_t b, std::vector<Piece> pieces) {
    if (a > b || b > text_.size()) throw std::out_of_range("splice outside document");
    const Version prev = version_;
    const Version v = ++version_;
    const std::size_t eos_idx = leaves_.size() - 1;

    std::string ins;
    std::vector<std::pair<std::size_t, NodeId>> piece_boxes;
    for (auto& p : pieces) {
        if (auto* s = std::get_if<std::string>(&p.content)) {
            ins += *s;
        } else {
            NodeId box = std::get<NodeId>(p.content);
            piece_boxes.emplace_back(a + ins.size(), box);
            ins += value(box, v);
        }
    }
    const std::size_t ins_end = a + ins.size();
    const auto delta = static_cast<std::ptrdiff_t>(ins.size()) - static_cast<std::ptrdiff_t>(b - a);

    // First leaf reaching past a.
    std::size_t k = 1;
    while (k < eos_idx && starts_[k + 1] <= a) ++k;
    for (std::size_t i = k; i < eos_idx && starts_[i] < b; ++i) {
        if (nodes_[leaves_[i]].kind == NodeKind::lbox && (starts_[i] < a || starts_[i + 1] > b))
            throw std::invalid_argument("splice cuts through a language box");
    }
    if (k < eos_idx && nodes_[leaves_[k]].kind == NodeKind::lbox && starts_[k] < a)
        throw std::invalid_argument("splice starts inside a language box");

    // Earlier tokens whose lookahead reached the edit are re-lexed too.
    std::size_t i0 = k;
    for (std::size_t j = k; j-- > 1;) {
        NodeId l = leaves_[j];
        if (nodes_[l].kind != NodeKind::token) break;
        std::size_t e = starts_[j + 1];
        if (e + lookahead(l, prev) > a) i0 = j;
        if (e + max_lookahead_ <= a) break;
    }

    std::string new_text = text_.substr(0, a) + ins + text_.substr(b);

    std::map<std::size_t, NodeId> reusable;  // new-text start -> old token
    auto mapped = [&](std::size_t i) -> std::ptrdiff_t {
        if (starts_[i] < a) return static_cast<std::ptrdiff_t>(starts_[i]);
        if (starts_[i] >= b) return static_cast<std::ptrdiff_t>(starts_[i]) + delta;
        return -1;
    };

    struct NewLeaf {
        NodeId reuse_or_box;
        bool is_box;
        Lexeme lx;
    };
    std::vector<NewLeaf> fresh;
    std::size_t old_barrier = new_text.size();
    for (std::size_t q = k; q < eos_idx; ++q) {
        if (starts_[q] >= b && nodes_[leaves_[q]].kind == NodeKind::lbox) {
            old_barrier = static_cast<std::size_t>(mapped(q));
            break;
        }
    }
    std::size_t pos = std::min(starts_[i0], a);
    std::size_t j = i0;  // first old leaf not yet passed
    std::size_t pb = 0;  // next piece box
    const auto& lexer = lang_->lexer();
    while (true) {
        while (j < eos_idx && (starts_[j] < b || static_cast<std::size_t>(mapped(j)) < pos)) ++j;
        bool boxes_left = pb < piece_boxes.size();
        if (!boxes_left && pos >= ins_end && starts_[j] >= b && static_cast<std::size_t>(mapped(j)) == pos) break;
        if (!boxes_left && pos >= new_text.size()) {
            j = eos_idx;
            break;
        }
        if (pb < piece_boxes.size() && piece_boxes[pb].first == pos) {
            NodeId box = piece_boxes[pb].second;
            std::size_t len = value(box, v).size();
            fresh.push_back({box, true, {type(box, v), pos, len, 0}});
            pos += len;
            ++pb;
            continue;
        }
        std::size_t barrier = old_barrier;
        if (pb < piece_boxes.size()) barrier = std::min(barrier, piece_boxes[pb].first);
        Lexeme lx = lexer.next(std::string_view(new_text).substr(0, barrier), pos);
        fresh.push_back({kNoNode, false, lx});
        pos += lx.length;
    }
    // Old tokens in the re-lexed range may keep their identity.
    for (std::size_t q = i0; q < j; ++q) {
        if (nodes_[leaves_[q]].kind == NodeKind::token && mapped(q) >= 0)
            reusable.emplace(static_cast<std::size_t>(mapped(q)), leaves_[q]);
    }

    // Detach the old leaves.
    std::vector<NodeId> removed(leaves_.begin() + static_cast<std::ptrdiff_t>(i0),
                                leaves_.begin() + static_cast<std::ptrdiff_t>(j));
    NodeId anchor;
    std::size_t at;
    {
        NodeId ref = removed.empty() ? leaves_[j] : removed.front();
        anchor = parent(ref, prev);
        const auto& ch = children(anchor, prev);
        at = static_cast<std::size_t>(std::find(ch.begin(), ch.end(), ref) - ch.begin());
    }
    for (NodeId r : removed) {
        NodeId p = parent(r, prev);
        auto& ch = write(p, v).children;
        ch.erase(std::find(ch.begin(), ch.end(), r));
        write(r, v).parent = kNoNode;
        mark_changed_path(p, v);
    }

    std::vector<NodeId> added;
    for (const auto& f : fresh) {
        NodeId n;
        if (f.is_box) {
            n = f.reuse_or_box;
        } else {
            auto it = reusable.find(f.lx.start);
            if (it != reusable.end()) {
                n = it->second;
                reusable.erase(it);
            } else {
                n = create(NodeKind::token, v, f.lx.type);
            }
            auto& r = write(n, v);
            r.type = f.lx.type;
            r.value = new_text.substr(f.lx.start, f.lx.length);
            r.lookahead = static_cast<std::uint32_t>(f.lx.lookahead);
        }
        write(n, v).parent = anchor;
        added.push_back(n);
        changed_[n] = 1;
    }
    {
        auto& ch = write(anchor, v).children;
        ch.insert(ch.begin() + static_cast<std::ptrdiff_t>(at), added.begin(), added.end());
    }
    mark_changed_path(anchor, v);

    leaves_.erase(leaves_.begin() + static_cast<std::ptrdiff_t>(i0), leaves_.begin() + static_cast<std::ptrdiff_t>(j));
    leaves_.insert(leaves_.begin() + static_cast<std::ptrdiff_t>(i0), added.begin(), added.end());
    text_ = std::move(new_text);
    reindex();

    NodeId damage = added.empty() ? leaves_[i0] : added.front();
    if (first_damage_ == kNoLeaf || leaf_index(damage) < first_damage_) first_damage_ = leaf_index(damage);
    dirty_ = true;
    return v;
}

Version Tree::revert_to(Version u) {
    if (u > version_) throw std::out_of_range("cannot revert to a future version");
    const Version v = ++version_;
    for (NodeId n = 0; n < nodes_.size(); ++n) {
        if (!exists_at(n, u)) continue;
        Revision old = rev(n, u);
        const Revision& cur = rev(n, v - 1);
        if (old.parent == cur.parent && old.children == cur.children && old.type == cur.type &&
            old.error == cur.error && old.lookahead == cur.lookahead && old.value == cur.value)
            continue;
        old.version = v;
        auto& rs = nodes_[n].revs;
        if (rs.back().version == v) rs.back() = std::move(old);
        else rs.push_back(std::move(old));
    }
    rebuild_frontier();
    preparse_ = v;
    std::fill(changed_.begin(), changed_.end(), 0);
    dirty_ = false;
    first_damage_ = kNoLeaf;
    error_stacks_.clear();
    last_ = ParseOutcome{};
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        if (error(n)) last_.error_nodes.push_back(n);
        if (!is_leaf(n)) {
            for (NodeId c : children(n)) stack.push_back(c);
        }
    }
    std::sort(last_.error_nodes.begin(), last_.error_nodes.end());
    last_.accepted = last_.error_nodes.empty();
    return v;
}

Version Tree::reset(std::string_view text) {
    splice(0, text_.size(), {Piece::text(std::string(text))});
    parse();
    return version_;
}

const std::vector<StackEntry>* Tree::error_stack(NodeId n) const {
    auto it = error_stacks_.find(n);
    return it == error_stacks_.end() ? nullptr : &it->second;
}

std::vector<Lexeme> Tree::relex_all() const {
    std::vector<Lexeme> out;
    std::size_t seg = 0;
    auto lex_segment = [&](std::size_t from, std::size_t to) {
        std::string_view view = std::string_view(text_).substr(0, to);
        for (std::size_t p = from; p < to;) {
            out.push_back(lang_->lexer().next(view, p));
            p += out.back().length;
        }
    };
    for (std::size_t i = 1; i + 1 < leaves_.size(); ++i) {
        if (nodes_[leaves_[i]].kind != NodeKind::lbox) continue;
        lex_segment(seg, starts_[i]);
        out.push_back({type(leaves_[i]), starts_[i], starts_[i + 1] - starts_[i], 0});
        seg = starts_[i + 1];
    }
    lex_segment(seg, text_.size());
    return out;
}

}  // namespace autobox
