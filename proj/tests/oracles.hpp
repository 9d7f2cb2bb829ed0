#pragma once

// Independent reference implementations used only by tests.

#include "autobox/grammar.hpp"
#include "autobox/language.hpp"
#include "autobox/lr.hpp"
#include "autobox/tree.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace autobox::test {

/// Earley recogniser over token symbol ids. Shares nothing with the LR
/// builder apart from the symbol numbering.
class EarleyOracle {
public:
    EarleyOracle(const GrammarSpec& g, const SymbolTable& syms) : syms_(syms) {
        start_ = syms.id(g.start_symbol);
        for (const auto& p : g.productions) {
            Rule r{syms.id(p.lhs), {}};
            for (const auto& s : p.rhs) r.rhs.push_back(syms.id(s));
            rules_.push_back(std::move(r));
        }
    }

    bool accepts(const std::vector<Symbol>& input) const {
        using Item = std::tuple<int, std::size_t, std::size_t>;  // rule, dot, origin
        std::vector<std::set<Item>> sets(input.size() + 1);
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            if (rules_[r].lhs == start_) sets[0].insert({static_cast<int>(r), 0, 0});
        }
        for (std::size_t i = 0; i <= input.size(); ++i) {
            std::vector<Item> work(sets[i].begin(), sets[i].end());
            while (!work.empty()) {
                auto [r, dot, origin] = work.back();
                work.pop_back();
                const Rule& rule = rules_[static_cast<std::size_t>(r)];
                auto add = [&](std::size_t k, Item it) {
                    if (sets[k].insert(it).second && k == i) work.push_back(it);
                };
                if (dot < rule.rhs.size()) {
                    Symbol next = rule.rhs[dot];
                    if (syms_.is_terminal(next)) {
                        if (i < input.size() && input[i] == next) add(i + 1, {r, dot + 1, origin});
                    } else {
                        for (std::size_t q = 0; q < rules_.size(); ++q) {
                            if (rules_[q].lhs == next) add(i, {static_cast<int>(q), 0, i});
                        }
                        // Nullable completion already present in this set.
                        for (const auto& [r2, d2, o2] : std::vector<Item>(sets[i].begin(), sets[i].end())) {
                            const Rule& done = rules_[static_cast<std::size_t>(r2)];
                            if (o2 == i && d2 == done.rhs.size() && done.lhs == next) add(i, {r, dot + 1, origin});
                        }
                    }
                } else {
                    for (const auto& [r2, d2, o2] : std::vector<Item>(sets[origin].begin(), sets[origin].end())) {
                        const Rule& parent = rules_[static_cast<std::size_t>(r2)];
                        if (d2 < parent.rhs.size() && parent.rhs[d2] == rule.lhs) add(i, {r2, d2 + 1, o2});
                    }
                }
            }
        }
        for (const auto& [r, dot, origin] : sets[input.size()]) {
            const Rule& rule = rules_[static_cast<std::size_t>(r)];
            if (origin == 0 && rule.lhs == start_ && dot == rule.rhs.size()) return true;
        }
        return false;
    }

private:
    struct Rule {
        Symbol lhs;
        std::vector<Symbol> rhs;
    };
    const SymbolTable& syms_;
    Symbol start_;
    std::vector<Rule> rules_;
};

/// Tree shape with whitespace removed: nonterminal types and token text.
struct Shape {
    Symbol type = -1;
    std::string text;
    std::vector<Shape> kids;
    bool operator==(const Shape&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Shape& s) {
    if (s.kids.empty() && !s.text.empty()) return os << '\'' << s.text << '\'';
    os << '(' << s.type;
    for (const auto& k : s.kids) os << ' ' << k;
    return os << ')';
}

/// Plain batch LR parse over the whole text. Returns nothing when the text
/// does not lex or parse cleanly.
inline std::optional<Shape> batch_parse(const Language& lang, std::string_view text) {
    const auto& t = lang.tables();
    std::vector<Lexeme> toks;
    for (const auto& lx : lang.lexer().lex_all(text)) {
        if (lx.type == kErrorToken) return std::nullopt;
        if (!lang.is_whitespace(lx.type)) toks.push_back(lx);
    }
    std::vector<int> states{0};
    std::vector<Shape> values;
    std::size_t i = 0;
    while (true) {
        Symbol la = i < toks.size() ? toks[i].type : kEos;
        auto a = t.action(states.back(), la);
        switch (a.kind) {
            case LrTables::ActionKind::error: return std::nullopt;
            case LrTables::ActionKind::accept: return values.back();
            case LrTables::ActionKind::shift:
                states.push_back(a.target);
                values.push_back(Shape{la, std::string(text.substr(toks[i].start, toks[i].length)), {}});
                ++i;
                break;
            case LrTables::ActionKind::reduce: {
                const auto& p = t.productions()[static_cast<std::size_t>(a.target)];
                Shape n{p.lhs, {}, {}};
                n.kids.assign(values.end() - static_cast<std::ptrdiff_t>(p.rhs.size()), values.end());
                values.resize(values.size() - p.rhs.size());
                states.resize(states.size() - p.rhs.size());
                states.push_back(t.goto_state(states.back(), p.lhs));
                values.push_back(std::move(n));
                break;
            }
        }
    }
}

inline Shape shape_of(const Tree& tree, NodeId n, Version v) {
    if (tree.is_leaf(n)) return Shape{tree.type(n, v), tree.value(n, v), {}};
    Shape s{tree.type(n, v), {}, {}};
    for (NodeId c : tree.children(n, v)) {
        if (tree.is_leaf(c) && (tree.is_trivia(c, v) || tree.kind(c) == NodeKind::bos || tree.kind(c) == NodeKind::eos))
            continue;
        s.kids.push_back(shape_of(tree, c, v));
    }
    return s;
}

/// Shape of the start-symbol subtree, or nothing if the root does not hold
/// exactly one nonterminal.
inline std::optional<Shape> tree_shape(const Tree& tree) {
    Version v = tree.version();
    std::optional<Shape> out;
    for (NodeId c : tree.children(tree.root(), v)) {
        if (tree.is_leaf(c)) {
            if (tree.kind(c) == NodeKind::bos || tree.kind(c) == NodeKind::eos || tree.is_trivia(c, v)) continue;
            return std::nullopt;
        }
        if (out) return std::nullopt;
        out = shape_of(tree, c, v);
    }
    return out;
}

/// Concatenated leaf values in preorder at version v.
inline std::string frontier(const Tree& tree, Version v) {
    std::string out;
    std::vector<NodeId> todo{tree.root()};
    while (!todo.empty()) {
        NodeId n = todo.back();
        todo.pop_back();
        if (tree.is_leaf(n)) {
            out += tree.value(n, v);
            continue;
        }
        const auto& ch = tree.children(n, v);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) todo.push_back(*it);
    }
    return out;
}

}  // namespace autobox::test
