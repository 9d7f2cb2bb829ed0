#include "autobox/lbox.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace autobox {

const char* source_name(Source s) {
    switch (s) {
        case Source::parse_tree: return "parse_tree";
        case Source::stack: return "stack";
        case Source::line: return "line";
        case Source::resize: return "resize";
        case Source::manual: return "manual";
    }
    return "?";
}

RecogniserResult recognise(std::string_view text, std::size_t from, std::size_t limit, const Language& lang,
                           const StartHint* hint, std::size_t cap) {
    RecogniserResult r;
    r.start = from;
    limit = std::min(limit, text.size());
    std::string_view view = text.substr(0, limit);
    const auto& tables = lang.tables();
    std::vector<int> st{0};
    std::vector<int> probe;
    bool first = true;
    std::size_t count = 0;
    for (std::size_t pos = from; pos < limit;) {
        Lexeme t = lang.lexer().next(view, pos);
        pos += t.length;
        if (lang.is_whitespace(t.type)) continue;
        if (first) {
            first = false;
            r.start = t.start;
            if (hint && t.type != kErrorToken) {
                bool listed = hint->types.count(lang.symbols().name(t.type)) > 0;
                if (listed != (hint->kind == StartHint::Kind::allow)) return r;
            }
        }
        if (++count > cap) {
            r.cap_hit = true;
            break;
        }
        if (t.type == kErrorToken || !lr_feed(tables, st, t.type)) break;
        probe = st;
        if (lr_feed(tables, probe, kEos)) r.ends.push_back(t.start + t.length);
    }
    return r;
}

namespace {

// Applies the reductions `lookahead` triggers until the top state is
// `target` (or no reduction applies).
void reduce_until(const LrTables& tb, std::vector<StackEntry>& st, Symbol lookahead, int target) {
    while (st.back().state != target) {
        auto a = tb.action(st.back().state, lookahead);
        if (a.kind != LrTables::ActionKind::reduce) return;
        const auto& p = tb.productions()[static_cast<std::size_t>(a.target)];
        std::size_t end_leaf = st.back().end_leaf;
        st.resize(st.size() - p.rhs.size());
        int g = tb.goto_state(st.back().state, p.lhs);
        if (g < 0) return;
        st.push_back({g, kNoNode, end_leaf});
    }
}

bool feed(const LrTables& tb, std::vector<StackEntry>& st, Symbol sym, NodeId node, std::size_t end_leaf) {
    while (true) {
        auto a = tb.action(st.back().state, sym);
        switch (a.kind) {
            case LrTables::ActionKind::shift:
                st.push_back({a.target, node, end_leaf});
                return true;
            case LrTables::ActionKind::accept:
            case LrTables::ActionKind::error:
                return false;
            case LrTables::ActionKind::reduce: {
                const auto& p = tb.productions()[static_cast<std::size_t>(a.target)];
                std::size_t prev_end = st.back().end_leaf;
                st.resize(st.size() - p.rhs.size());
                int g = tb.goto_state(st.back().state, p.lhs);
                if (g < 0) return false;
                st.push_back({g, kNoNode, prev_end});
                break;
            }
        }
    }
}

class Rebuild {
public:
    Rebuild(const Tree& t, NodeId target, Version v) : t_(t), tb_(t.language().tables()), target_(target), v_(v) {}

    std::optional<std::vector<StackEntry>> run() {
        NodeId p = target_;
        while (p != kNoNode && p != t_.root()) {
            p = t_.parent(p, v_);
            path_.insert(p);
        }
        if (p != t_.root() || !t_.exists_at(target_, v_)) return std::nullopt;
        st_.push_back({0, t_.bos(), 1});
        if (!walk(t_.root()) || failed_) return std::nullopt;
        return std::move(st_);
    }

private:
    bool walk(NodeId n) {
        for (NodeId c : t_.children(n, v_)) {
            if (c == target_) return true;
            if (t_.kind(c) == NodeKind::bos) continue;
            if (path_.count(c)) return walk(c);
            if (!take(c)) {
                failed_ = true;
                return true;
            }
        }
        return false;
    }

    bool take(NodeId c) {
        if (t_.is_leaf(c)) {
            // Leaves missing from the current frontier (older versions) keep the previous end.
            std::size_t idx = t_.leaf_index(c);
            std::size_t end = idx == kNoLeaf ? st_.back().end_leaf : idx + 1;
            if (t_.is_trivia(c, v_)) {
                st_.back().end_leaf = end;
                return true;
            }
            if (t_.kind(c) == NodeKind::eos) return false;
            return feed(tb_, st_, t_.type(c, v_), c, end);
        }
        int ss = t_.start_state(c);
        Symbol lhs = t_.type(c, v_);
        NodeId first = kNoNode, last = t_.last_leaf(c, v_);
        for (NodeId l = t_.first_leaf(c, v_); l != kNoNode; l = t_.next_terminal(l, v_)) {
            if (!t_.is_trivia(l, v_)) {
                first = l;
                break;
            }
            if (l == last) break;
        }
        if (last == kNoNode) {  // empty production
            int g = ss >= 0 ? tb_.goto_state(ss, lhs) : -1;
            if (st_.back().state == ss && g >= 0) st_.push_back({g, c, st_.back().end_leaf});
            return true;
        }
        if (first != kNoNode && ss >= 0) {
            auto trial = st_;
            Symbol ft = t_.kind(first) == NodeKind::eos ? kEos : t_.type(first, v_);
            reduce_until(tb_, trial, ft, ss);
            int g = tb_.goto_state(trial.back().state, lhs);
            if (trial.back().state == ss && g >= 0) {
                std::size_t li = t_.leaf_index(last);
                trial.push_back({g, c, li == kNoLeaf ? trial.back().end_leaf : li + 1});
                st_ = std::move(trial);
                return true;
            }
        }
        for (NodeId k : t_.children(c, v_)) {
            if (!take(k)) return false;
        }
        return true;
    }

    const Tree& t_;
    const LrTables& tb_;
    NodeId target_;
    Version v_;
    std::unordered_set<NodeId> path_;
    std::vector<StackEntry> st_;
    bool failed_ = false;
};

}  // namespace

std::optional<std::vector<StackEntry>> recreate_stack(const Tree& t, NodeId target, Version v) {
    return Rebuild(t, target, v).run();
}

Lookahead look_past_box(const Tree& host, const std::vector<int>& stack, Symbol sym, std::string_view lead,
                        std::size_t resume, std::size_t max_tokens, std::size_t until) {
    Lookahead r;
    const Language& lang = host.language();
    const auto& tables = lang.tables();
    std::vector<int> st = stack;
    if (st.empty() || (sym >= 0 && !lr_feed(tables, st, sym))) return r;
    r.box_shifts = true;
    r.reach = resume;

    bool first = true;
    std::size_t tokens = 0;
    // Returns false once the walk is over.
    auto emit = [&](Symbol type, std::size_t start, std::size_t end) {
        if (start >= until) {
            r.clean = true;
            if (first) r.follow_ok = true;
            return false;
        }
        bool ok = type != kErrorToken && lr_feed(tables, st, type);
        if (first) r.follow_ok = ok;
        first = false;
        if (!ok) {
            r.reach = start;
            return false;
        }
        r.reach = end;
        ++tokens;
        if (type == kEos) {
            r.clean = true;
            r.reach = host.text().size() + 1;
            return false;
        }
        if (tokens >= max_tokens) {
            r.clean = true;
            return false;
        }
        return true;
    };

    const std::string& text = host.text();
    std::size_t pos = resume;
    std::size_t barrier = host.next_box_start(pos);
    std::string buf;
    std::string_view view;
    std::size_t shift = 0;  // offset of view[0] in host coordinates, minus lead size
    if (!lead.empty()) {
        buf.assign(lead);
        buf.append(text, pos, barrier - pos);
        view = buf;
        shift = pos;
        for (std::size_t p = 0; p < view.size();) {
            Lexeme t = lang.lexer().next(view, p);
            p += t.length;
            if (lang.is_whitespace(t.type)) continue;
            std::size_t s = t.start < lead.size() ? shift : shift + t.start - lead.size();
            std::size_t e = p < lead.size() ? shift : shift + p - lead.size();
            if (!emit(t.type, s, e)) return r;
        }
        pos = barrier;
    }
    const auto& boxes = host.box_leaves();
    auto next = std::lower_bound(boxes.begin(), boxes.end(), pos,
                                 [&](std::size_t i, std::size_t off) { return host.leaf_start(i) < off; });
    while (true) {
        barrier = next == boxes.end() ? text.size() : host.leaf_start(*next);
        view = std::string_view(text).substr(0, barrier);
        while (pos < barrier) {
            Lexeme t = lang.lexer().next(view, pos);
            pos += t.length;
            if (lang.is_whitespace(t.type)) continue;
            if (!emit(t.type, t.start, pos)) return r;
        }
        if (next == boxes.end()) break;
        std::size_t e = host.leaf_start(*next + 1);
        if (!emit(host.type(host.leaves()[*next]), barrier, e)) return r;
        pos = e;
        ++next;
    }
    emit(kEos, text.size(), text.size());
    return r;
}

bool parses_in_context(const Language& host, const std::vector<int>& stack, std::string_view text) {
    std::vector<int> st = stack;
    if (st.empty()) return false;
    for (const auto& t : host.lexer().lex_all(text)) {
        if (host.is_whitespace(t.type)) continue;
        if (t.type == kErrorToken || !lr_feed(host.tables(), st, t.type)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

Document::Document(std::shared_ptr<const Composition> comp, std::string_view text) : comp_(std::move(comp)) {
    trees_.push_back(std::make_unique<Tree>(comp_->outer(), text));
    box_of_tree_.push_back(-1);
}

std::size_t Document::new_tree(const Language& lang, std::string_view text) {
    trees_.push_back(std::make_unique<Tree>(lang, text));
    box_of_tree_.push_back(-1);
    return trees_.size() - 1;
}

std::vector<std::size_t> Document::live_trees() const {
    std::vector<std::size_t> out{0};
    for (const auto& [id, b] : boxes_) out.push_back(b.inner);
    return out;
}

bool Document::is_live(std::size_t tree) const {
    return tree == 0 || (tree < box_of_tree_.size() && box_of_tree_[tree] >= 0);
}

std::optional<int> Document::box_of_tree(std::size_t tree) const {
    if (tree >= box_of_tree_.size() || box_of_tree_[tree] < 0) return std::nullopt;
    return box_of_tree_[tree];
}

std::size_t Document::tree_offset(std::size_t i) const {
    auto b = box_of_tree(i);
    return b ? box_start(*b) : 0;
}

std::size_t Document::box_start(int id) const {
    const Box& b = boxes_.at(id);
    return tree_offset(b.host) + tree(b.host).start(b.leaf);
}

std::size_t Document::box_end(int id) const {
    const Box& b = boxes_.at(id);
    return tree_offset(b.host) + tree(b.host).end(b.leaf);
}

namespace {

std::optional<int> box_at_leaf(const std::map<int, Box>& boxes, std::size_t host, NodeId leaf) {
    for (const auto& [id, b] : boxes) {
        if (b.host == host && b.leaf == leaf) return id;
    }
    return std::nullopt;
}

}  // namespace

std::pair<std::size_t, std::size_t> Document::locate_insert(std::size_t pos) const {
    std::size_t t = 0, local = pos;
    while (true) {
        const Tree& tr = tree(t);
        if (local >= tr.text().size()) break;
        std::size_t i = tr.leaf_at(local);
        NodeId leaf = tr.leaves()[i];
        if (tr.kind(leaf) != NodeKind::lbox || tr.leaf_start(i) >= local) break;
        auto id = box_at_leaf(boxes_, t, leaf);
        if (!id) break;
        local -= tr.leaf_start(i);
        t = boxes_.at(*id).inner;
    }
    return {t, local};
}

std::pair<std::size_t, std::size_t> Document::locate_range(std::size_t a, std::size_t b) const {
    if (a == b) return locate_insert(a);
    std::size_t t = 0, la = a, lb = b;
    while (true) {
        const Tree& tr = tree(t);
        if (la >= tr.text().size()) break;
        std::size_t i = tr.leaf_at(la);
        NodeId leaf = tr.leaves()[i];
        if (tr.kind(leaf) != NodeKind::lbox) break;
        std::size_t s = tr.leaf_start(i), e = tr.leaf_start(i + 1);
        if (!(s <= la && lb <= e)) break;
        auto id = box_at_leaf(boxes_, t, leaf);
        if (!id) break;
        la -= s;
        lb -= s;
        t = boxes_.at(*id).inner;
    }
    return {t, la};
}

void Document::propagate(std::size_t t, std::vector<std::size_t>& touched) {
    (void)touched;
    while (auto id = box_of_tree(t)) {
        const Box& b = boxes_.at(*id);
        tree(b.host).set_box_value(b.leaf, tree(t).text());
        t = b.host;
    }
}

void Document::sync_boxes() {
    bool again = true;
    while (again) {
        again = false;
        for (auto it = boxes_.begin(); it != boxes_.end(); ++it) {
            const Box& b = it->second;
            bool host_live = b.host == 0 || std::any_of(boxes_.begin(), boxes_.end(), [&](const auto& kv) {
                                 return kv.second.inner == b.host;
                             });
            if (!host_live || tree(b.host).leaf_index(b.leaf) == kNoLeaf) {
                boxes_.erase(it);
                again = true;
                break;
            }
        }
    }
    std::fill(box_of_tree_.begin(), box_of_tree_.end(), -1);
    for (const auto& [id, b] : boxes_) box_of_tree_[b.inner] = id;
}

std::vector<std::size_t> Document::edit(std::size_t pos, std::size_t del, std::string_view ins) {
    if (pos > size() || del > size() - pos) throw std::out_of_range("edit outside document");
    if (del > 0) {
        // Dissolve boxes the deletion cuts through.
        bool again = true;
        while (again) {
            again = false;
            for (const auto& [id, b] : boxes_) {
                std::size_t s = box_start(id), e = box_end(id);
                bool overlaps = s < pos + del && e > pos;
                bool inside = s <= pos && pos + del <= e;
                bool covers = pos <= s && e <= pos + del;
                if (overlaps && !inside && !covers) {
                    remove_box(id);
                    again = true;
                    break;
                }
            }
        }
    }
    auto [t, local] = del > 0 ? locate_range(pos, pos + del) : locate_insert(pos);
    std::vector<std::size_t> touched{t};
    tree(t).apply_edit(local, del, ins);
    tree(t).parse();
    propagate(t, touched);
    sync_boxes();
    return touched;
}

int Document::insert_box(std::size_t host, std::size_t start, std::size_t end, const std::string& lang,
                         Origin origin, NodeId trigger) {
    Tree& h = tree(host);
    if (start > end || end > h.text().size()) throw std::out_of_range("box outside its host");
    if (h.next_box_start(start) < end) throw std::invalid_argument("box would overlap another box");
    Symbol sym = -1;
    const Language* inner = nullptr;
    for (const auto& [s, l] : comp_->inner_of(h.language())) {
        if (l->id() == lang) {
            sym = s;
            inner = l;
        }
    }
    if (!inner) throw std::invalid_argument("language " + lang + " cannot be boxed here");
    std::string content = h.text().substr(start, end - start);
    std::size_t idx = new_tree(*inner, content);
    NodeId leaf = tree(host).make_box_leaf(sym, content);
    tree(host).splice(start, end, {Piece::box(leaf)});
    tree(host).parse();
    int id = next_id_++;
    Box b;
    b.id = id;
    b.host = host;
    b.inner = idx;
    b.leaf = leaf;
    b.lang = lang;
    b.origin = origin;
    b.trigger = trigger;
    boxes_[id] = b;
    box_of_tree_[idx] = id;
    return id;
}

void Document::remove_box(int id) {
    // Nested boxes go first so the inner text is plain.
    for (bool again = true; again;) {
        again = false;
        for (const auto& [cid, c] : boxes_) {
            if (c.host == boxes_.at(id).inner) {
                remove_box(cid);
                again = true;
                break;
            }
        }
    }
    Box b = boxes_.at(id);
    Tree& h = tree(b.host);
    std::size_t s = h.start(b.leaf), e = h.end(b.leaf);
    h.splice(s, e, {Piece::text(tree(b.inner).text())});
    h.parse();
    boxes_.erase(id);
    box_of_tree_[b.inner] = -1;
    sync_boxes();
}

void Document::resize_box(int id, std::size_t new_end) {
    Box b = boxes_.at(id);
    Tree& h = tree(b.host);
    Tree& in = tree(b.inner);
    std::size_t s = h.start(b.leaf), e = h.end(b.leaf);
    if (new_end < s) throw std::out_of_range("box end before its start");
    if (new_end > e) {
        if (h.next_box_start(e) < new_end) throw std::invalid_argument("box would overlap another box");
        std::string moved = h.text().substr(e, new_end - e);
        in.apply_edit(in.text().size(), 0, moved);
        in.parse();
        h.set_box_value(b.leaf, in.text());
        h.apply_edit(s + in.text().size(), moved.size(), "");
        h.parse();
    } else if (new_end < e) {
        std::size_t keep = new_end - s;
        for (bool again = true; again;) {
            again = false;
            for (const auto& [cid, c] : boxes_) {
                if (c.host == b.inner && in.end(c.leaf) > keep) {
                    remove_box(cid);
                    again = true;
                    break;
                }
            }
        }
        std::string moved = in.text().substr(keep);
        in.apply_edit(keep, moved.size(), "");
        in.parse();
        h.set_box_value(b.leaf, in.text());
        h.apply_edit(s + keep, 0, moved);
        h.parse();
    }
    std::vector<std::size_t> touched;
    propagate(b.host, touched);
    sync_boxes();
}

std::optional<std::vector<int>> Document::stack_before_box(int id) const {
    const Box& b = boxes_.at(id);
    const Tree& h = tree(b.host);
    auto st = recreate_stack(h, b.leaf, h.version());
    if (!st) return std::nullopt;
    return states_of(*st);
}

std::vector<std::size_t> Document::error_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t t : live_trees()) {
        const Tree& tr = tree(t);
        std::size_t base = tree_offset(t);
        for (NodeId n : tr.error_nodes()) {
            if (!tr.is_leaf(n) || tr.leaf_index(n) == kNoLeaf) continue;
            out.push_back(base + tr.start(n));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Document::has_errors() const {
    for (std::size_t t : live_trees()) {
        if (!tree(t).error_nodes().empty()) return true;
    }
    return false;
}

Document::Snapshot Document::snapshot() const {
    Snapshot s;
    for (const auto& t : trees_) s.versions.push_back(t->version());
    s.boxes = boxes_;
    s.next_id = next_id_;
    return s;
}

void Document::restore(const Snapshot& s) {
    for (std::size_t i = 0; i < s.versions.size(); ++i) {
        if (trees_[i]->version() != s.versions[i]) trees_[i]->revert_to(s.versions[i]);
    }
    boxes_ = s.boxes;
    next_id_ = std::max(next_id_, s.next_id);
    std::fill(box_of_tree_.begin(), box_of_tree_.end(), -1);
    for (const auto& [id, b] : boxes_) box_of_tree_[b.inner] = id;
}

}  // namespace autobox
