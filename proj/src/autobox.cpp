#include "autobox/autobox.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace autobox {

std::uint8_t parse_heuristics(std::string_view s) {
    std::uint8_t out = 0;
    std::stringstream in{std::string(s)};
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "all") out |= kAllHeuristics;
        else if (item == "parse_tree") out |= kParseTree;
        else if (item == "stack") out |= kStack;
        else if (item == "line") out |= kLine;
        else throw std::invalid_argument("unknown heuristic: " + item);
    }
    if (!out) throw std::invalid_argument("no heuristic given");
    return out;
}

std::string heuristics_name(std::uint8_t h) {
    if (h == kAllHeuristics) return "all";
    std::string out;
    auto add = [&](const char* n) { out += (out.empty() ? "" : ",") + std::string(n); };
    if (h & kParseTree) add("parse_tree");
    if (h & kStack) add("stack");
    if (h & kLine) add("line");
    return out;
}

const char* decision_name(DecisionKind k) {
    switch (k) {
        case DecisionKind::none: return "none";
        case DecisionKind::insert: return "insert";
        case DecisionKind::present: return "present";
        case DecisionKind::remove: return "remove";
        case DecisionKind::resize: return "resize";
        case DecisionKind::present_resize: return "present_resize";
    }
    return "?";
}

namespace {

const StartHint* hint_for(const Composition& c, const std::string& lang) {
    auto it = c.spec().hints.find(lang);
    return it == c.spec().hints.end() ? nullptr : &it->second;
}

Symbol box_symbol(const Composition& c, const Language& host, const std::string& lang) {
    for (const auto& [sym, l] : c.inner_of(host)) {
        if (l->id() == lang) return sym;
    }
    throw std::invalid_argument("no box symbol for " + lang + " in " + host.id());
}

// Number of real tokens in `text` under `lang`'s lexer; nothing on a lexing error.
std::optional<std::size_t> count_tokens(const Language& lang, std::string_view text) {
    std::size_t n = 0;
    for (const auto& t : lang.lexer().lex_all(text)) {
        if (t.type == kErrorToken) return std::nullopt;
        if (!lang.is_whitespace(t.type)) ++n;
    }
    return n;
}

// Recogniser runs from `leaf` for every inner language a box of which can
// be shifted on `states`.
void probe(const Document& d, std::size_t tree, NodeId leaf, const std::vector<int>& states, Source src,
           const Config& cfg, Stats* stats, std::vector<Candidate>& out) {
    const Tree& host = d.tree(tree);
    std::size_t idx = host.leaf_index(leaf);
    if (idx == kNoLeaf || host.kind(leaf) != NodeKind::token || host.is_trivia(leaf)) return;
    std::size_t from = host.leaf_start(idx);
    std::size_t limit = host.next_box_start(from);
    const auto& tables = host.language().tables();
    for (const auto& [sym, lang] : d.composition().inner_of(host.language())) {
        if (!tables.can_shift_lbox(states, sym)) continue;
        auto r = recognise(host.text(), from, limit, *lang, hint_for(d.composition(), lang->id()), cfg.recogniser_cap);
        if (r.cap_hit && stats) ++stats->cap_hits;
        if (r.start != from) continue;
        for (std::size_t e : r.ends) out.push_back(Candidate{tree, from, e, lang->id(), src, states});
    }
}

Version view_version(const Tree& t, NodeId n) {
    Version v = t.preparse_version();
    return t.exists_at(n, v) ? v : t.version();
}

NodeId first_real_leaf(const Tree& t, NodeId n, Version v) {
    NodeId last = t.last_leaf(n, v);
    for (NodeId l = t.first_leaf(n, v); l != kNoNode; l = t.next_terminal(l, v)) {
        if (t.kind(l) == NodeKind::token && !t.is_trivia(l, v)) return l;
        if (l == last) break;
    }
    return kNoNode;
}

void dedupe(std::vector<Candidate>& cands) {
    std::vector<Candidate> out;
    for (auto& c : cands) {
        bool seen = std::any_of(out.begin(), out.end(), [&](const Candidate& o) { return o.same_box(c); });
        if (!seen) out.push_back(std::move(c));
    }
    cands = std::move(out);
}

}  // namespace

std::vector<Candidate> cnds_parse_tree(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                                       Stats* stats) {
    std::vector<Candidate> out;
    const Tree& host = d.tree(tree);
    if (!host.language().has_lboxes()) return out;
    Version v = view_version(host, trigger);
    NodeId probed = kNoNode;
    for (NodeId n = trigger; n != kNoNode && n != host.root(); n = host.parent(n, v)) {
        NodeId first = first_real_leaf(host, n, v);
        // Ancestors sharing a first leaf share the stack before it too.
        if (first == kNoNode || first == probed) continue;
        probed = first;
        auto st = recreate_stack(host, n, v);
        if (!st) continue;
        probe(d, tree, first, states_of(*st), Source::parse_tree, cfg, stats, out);
    }
    return out;
}

std::vector<Candidate> cnds_stack(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                                  Stats* stats) {
    std::vector<Candidate> out;
    const Tree& host = d.tree(tree);
    if (!host.language().has_lboxes()) return out;
    std::optional<std::vector<StackEntry>> own;
    const std::vector<StackEntry>* es = host.error_stack(trigger);
    if (!es) {
        // The error was isolated by an earlier parse; rebuild its stack.
        own = recreate_stack(host, trigger, host.version());
        if (!own) return out;
        es = &*own;
    }
    std::vector<int> states = states_of(*es);
    auto leaves = host.leaves();
    for (std::size_t i = es->size(); i-- > 0;) {
        std::size_t j = (*es)[i].end_leaf;
        while (j + 1 < leaves.size() && host.is_trivia(leaves[j])) ++j;
        if (j + 1 >= leaves.size()) continue;
        std::vector<int> prefix(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(i + 1));
        probe(d, tree, leaves[j], prefix, Source::stack, cfg, stats, out);
    }
    return out;
}

std::vector<Candidate> cnds_line(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg,
                                 Stats* stats) {
    std::vector<Candidate> out;
    const Tree& host = d.tree(tree);
    if (!host.language().has_lboxes()) return out;
    Version v = view_version(host, trigger);
    Symbol newline = host.language().newline();
    for (NodeId n = trigger; n != kNoNode; n = host.prev_terminal(n, v)) {
        if (host.kind(n) == NodeKind::bos || host.type(n, v) == newline) break;
        if (host.kind(n) != NodeKind::token || host.is_trivia(n, v)) continue;
        auto st = recreate_stack(host, n, v);
        if (!st) continue;
        probe(d, tree, n, states_of(*st), Source::line, cfg, stats, out);
    }
    return out;
}

std::vector<Candidate> gather(const Document& d, std::size_t tree, NodeId trigger, const Config& cfg, Stats* stats) {
    std::vector<Candidate> out;
    auto add = [&](std::vector<Candidate> more) {
        for (auto& c : more) out.push_back(std::move(c));
    };
    if (cfg.heuristics & kParseTree) add(cnds_parse_tree(d, tree, trigger, cfg, stats));
    if (cfg.heuristics & kStack) add(cnds_stack(d, tree, trigger, cfg, stats));
    if (cfg.heuristics & kLine) add(cnds_line(d, tree, trigger, cfg, stats));
    dedupe(out);
    return out;
}

std::vector<Candidate> combine_all(const Document& d, std::vector<Candidate> cands, const Config& cfg) {
    dedupe(cands);
    std::vector<Candidate> ok;
    for (auto& c : cands) {
        const Tree& h = d.tree(c.tree);
        Symbol sym = box_symbol(d.composition(), h.language(), c.lang);
        if (look_past_box(h, c.stack, sym, "", c.end, 1).follow_ok) ok.push_back(std::move(c));
    }
    if (ok.size() <= 1) return ok;

    auto best = std::min_element(ok.begin(), ok.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_tuple(b.end, a.start, a.lang) < std::make_tuple(a.end, b.start, b.lang);
    });
    const Tree& bh = d.tree(best->tree);
    std::size_t mpp = look_past_box(bh, best->stack, box_symbol(d.composition(), bh.language(), best->lang), "",
                                    best->end, cfg.lookahead_tokens)
                          .reach;
    std::vector<Candidate> out;
    for (auto& c : ok) {
        const Tree& h = d.tree(c.tree);
        Symbol sym = box_symbol(d.composition(), h.language(), c.lang);
        auto la = look_past_box(h, c.stack, sym, "", c.end, std::numeric_limits<std::size_t>::max(), mpp);
        if (&c == &*best || la.clean) out.push_back(std::move(c));
    }
    return out;
}

Decision decide(std::vector<Candidate> survivors, NodeId trigger) {
    Decision d;
    d.trigger = trigger;
    if (survivors.empty()) return d;
    std::sort(survivors.begin(), survivors.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.start, a.end, a.lang) < std::tie(b.start, b.end, b.lang);
    });
    d.kind = survivors.size() == 1 ? DecisionKind::insert : DecisionKind::present;
    d.candidates = std::move(survivors);
    return d;
}

bool valid_in_host(const Document& d, int id) {
    const Box& b = d.box(id);
    auto st = d.stack_before_box(id);
    if (!st) return false;
    return parses_in_context(d.tree(b.host).language(), *st, d.tree(b.inner).text());
}

int removal_rule(const Document& d, int id) {
    const Box& b = d.box(id);
    const Tree& h = d.tree(b.host);
    const Tree& in = d.tree(b.inner);
    if (!valid_in_host(d, id)) return 0;
    if (!in.error_nodes().empty()) return 1;
    for (NodeId n = b.leaf; n != kNoNode; n = h.parent(n)) {
        if (h.error(n)) return 2;
    }
    auto k = count_tokens(h.language(), in.text());
    if (!k) return 0;
    auto st = d.stack_before_box(id);
    auto la = look_past_box(h, *st, -1, in.text(), h.end(b.leaf), *k + 1);
    return la.clean ? 3 : 0;
}

std::vector<std::size_t> resize_targets(const Document& d, int id) {
    std::vector<std::size_t> out;
    const Box& b = d.box(id);
    const Tree& h = d.tree(b.host);
    const Tree& in = d.tree(b.inner);
    auto st = d.stack_before_box(id);
    if (!st) return out;
    Symbol sym = h.type(b.leaf);
    std::size_t s = h.start(b.leaf), e = h.end(b.leaf);
    const std::string& inner = in.text();
    if (in.error_nodes().empty()) {
        std::size_t barrier = std::max(e, h.next_box_start(e));
        std::string text = inner + h.text().substr(e, barrier - e);
        auto r = recognise(text, 0, text.size(), in.language(), nullptr);
        for (std::size_t end : r.ends) {
            if (end <= inner.size()) continue;
            if (look_past_box(h, *st, sym, "", s + end, 1).follow_ok) out.push_back(s + end);
        }
    } else {
        auto r = recognise(inner, 0, inner.size(), in.language(), nullptr);
        for (std::size_t end : r.ends) {
            if (end >= inner.size()) continue;
            std::string moved = inner.substr(end);
            auto k = count_tokens(h.language(), moved);
            if (!k) continue;
            if (look_past_box(h, *st, sym, moved, e, *k + 1).clean) out.push_back(s + end);
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, NodeId>> triggers(const Document& d,
                                                     const std::vector<std::vector<NodeId>>& errors_before,
                                                     const std::vector<Version>& versions_before,
                                                     std::size_t edit_pos) {
    std::string text = d.text();
    edit_pos = std::min(edit_pos, text.size());
    std::size_t line_start = edit_pos == 0 ? 0 : text.rfind('\n', edit_pos - 1);
    line_start = line_start == std::string::npos || edit_pos == 0 ? 0 : line_start + 1;
    std::size_t line_end = text.find('\n', edit_pos);
    if (line_end == std::string::npos) line_end = text.size();

    std::vector<std::tuple<std::size_t, std::size_t, NodeId>> found;
    for (std::size_t t : d.live_trees()) {
        const Tree& tr = d.tree(t);
        if (t < versions_before.size() && tr.version() == versions_before[t]) continue;
        static const std::vector<NodeId> kNone;
        const auto& before = t < errors_before.size() ? errors_before[t] : kNone;
        for (NodeId n : tr.error_nodes()) {
            if (!tr.is_leaf(n) || tr.noinsert(n) || tr.leaf_index(n) == kNoLeaf) continue;
            std::size_t pos = d.tree_offset(t) + tr.start(n);
            bool fresh = !std::binary_search(before.begin(), before.end(), n);
            bool same_line = pos >= line_start && pos <= line_end;
            if (fresh || same_line) found.emplace_back(pos, t, n);
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<std::pair<std::size_t, NodeId>> out;
    for (const auto& [pos, t, n] : found) out.emplace_back(t, n);
    return out;
}

// ---------------------------------------------------------------------------

Session::Session(std::shared_ptr<const Composition> comp, std::string_view text, Config cfg)
    : doc_(std::move(comp), text), cfg_(cfg) {}

std::pair<std::size_t, std::size_t> Session::absolute(const Candidate& c) const {
    std::size_t base = doc_.tree_offset(c.tree);
    return {base + c.start, base + c.end};
}

void Session::push_unit(bool automatic_insert, std::size_t tree, NodeId trigger) {
    undo_.push_back(Unit{doc_.snapshot(), cursor_, automatic_insert, tree, trigger, last_, offered_});
}

void Session::key(std::string_view ch) {
    if (ch == "\b") {
        if (cursor_ == 0) return;
        apply_edit(cursor_ - 1, 1, "", cursor_ - 1);
    } else if (ch == "\x7f") {
        if (cursor_ >= doc_.size()) return;
        apply_edit(cursor_, 1, "", cursor_);
    } else if (!ch.empty()) {
        apply_edit(cursor_, 0, ch, cursor_ + ch.size());
    }
}

void Session::erase(std::size_t pos, std::size_t len) {
    if (pos > doc_.size() || len > doc_.size() - pos) throw std::out_of_range("erase outside document");
    if (len == 0) return;
    apply_edit(pos, len, "", pos);
}

void Session::apply_edit(std::size_t pos, std::size_t del, std::string_view ins, std::size_t new_cursor) {
    ++stats_.keypresses;
    std::vector<std::vector<NodeId>> errors_before;
    std::vector<Version> versions_before;
    for (std::size_t t = 0; t < doc_.tree_count(); ++t) {
        errors_before.push_back(doc_.tree(t).error_nodes());
        versions_before.push_back(doc_.tree(t).version());
    }
    push_unit();
    doc_.edit(pos, del, ins);
    cursor_ = new_cursor;
    pipeline(pos + ins.size(), errors_before, versions_before);
}

void Session::pipeline(std::size_t edit_pos, const std::vector<std::vector<NodeId>>& errors_before,
                       const std::vector<Version>& versions_before) {
    last_ = Decision{};
    offered_.clear();

    std::vector<int> ids;
    for (const auto& [id, b] : doc_.boxes()) ids.push_back(id);

    for (int id : ids) {
        if (!doc_.has_box(id) || doc_.box(id).state != BoxState::uncommitted) continue;
        if (removal_rule(doc_, id) == 0) continue;
        push_unit();
        doc_.remove_box(id);
        ++stats_.removals;
        last_ = Decision{DecisionKind::remove, {}, id, 0, kNoNode};
    }
    for (int id : ids) {
        if (!doc_.has_box(id) || doc_.box(id).state != BoxState::uncommitted) continue;
        auto ends = resize_targets(doc_, id);
        if (ends.empty()) continue;
        const Box& b = doc_.box(id);
        if (ends.size() == 1) {
            push_unit();
            doc_.resize_box(id, ends[0]);
            ++stats_.resizes;
            last_ = Decision{DecisionKind::resize, {}, id, ends[0], kNoNode};
            continue;
        }
        Decision dec{DecisionKind::present_resize, {}, id, 0, kNoNode};
        std::size_t start = doc_.tree(b.host).start(b.leaf);
        for (std::size_t e : ends) dec.candidates.push_back(Candidate{b.host, start, e, b.lang, Source::resize, {}});
        offered_ = dec.candidates;
        last_ = std::move(dec);
        ++stats_.presents;
    }

    for (const auto& [tree, trigger] : triggers(doc_, errors_before, versions_before, edit_pos)) {
        ++stats_.searches;
        auto survivors = combine_all(doc_, gather(doc_, tree, trigger, cfg_, &stats_), cfg_);
        Decision dec = decide(std::move(survivors), trigger);
        if (dec.kind == DecisionKind::none) continue;
        if (dec.kind == DecisionKind::insert) {
            const Candidate& c = dec.candidates[0];
            push_unit(true, tree, trigger);
            doc_.insert_box(c.tree, c.start, c.end, c.lang, Origin::automatic, trigger);
            ++stats_.inserts;
            offered_.clear();
        } else {
            offered_ = dec.candidates;
            ++stats_.presents;
        }
        last_ = std::move(dec);
        break;
    }
}

void Session::commit_on_exit(std::size_t old_cursor, std::size_t new_cursor) {
    for (const auto& [id, b] : doc_.boxes()) {
        if (b.state != BoxState::uncommitted) continue;
        std::size_t s = doc_.box_start(id), e = doc_.box_end(id);
        bool had = s <= old_cursor && old_cursor <= e;
        bool has = s <= new_cursor && new_cursor <= e;
        if (had && !has) doc_.box(id).state = BoxState::committed;
    }
}

void Session::move(std::size_t pos) {
    pos = std::min(pos, doc_.size());
    commit_on_exit(cursor_, pos);
    cursor_ = pos;
    // Offered candidates stay on display; anything else is history.
    if (offered_.empty()) last_ = Decision{};
}

bool Session::undo() {
    if (undo_.empty()) return false;
    Unit u = std::move(undo_.back());
    undo_.pop_back();
    doc_.restore(u.before);
    cursor_ = u.cursor;
    if (u.automatic_insert && u.trigger != kNoNode) {
        doc_.tree(u.tree).set_noinsert(u.trigger, true);
        u.decision = Decision{};
        u.offered.clear();
    }
    last_ = std::move(u.decision);
    offered_ = std::move(u.offered);
    return true;
}

bool Session::choose(int id) {
    if (id < 1 || static_cast<std::size_t>(id) > offered_.size()) return false;
    Candidate c = offered_[static_cast<std::size_t>(id - 1)];
    push_unit();
    if (c.source == Source::resize) {
        doc_.resize_box(last_.box, c.end);
        last_ = Decision{DecisionKind::resize, {}, last_.box, c.end, kNoNode};
    } else {
        NodeId trigger = last_.trigger;
        int box = doc_.insert_box(c.tree, c.start, c.end, c.lang, Origin::automatic, trigger);
        last_ = Decision{DecisionKind::insert, {c}, box, 0, trigger};
    }
    offered_.clear();
    return true;
}

bool Session::mark_uncommitted(int box) {
    if (!doc_.has_box(box)) return false;
    doc_.box(box).state = BoxState::uncommitted;
    return true;
}

}  // namespace autobox
