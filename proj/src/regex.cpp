#include "autobox/regex.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <set>

namespace autobox {

namespace {

using CharSet = std::bitset<256>;

struct NfaState {
    std::vector<int> eps;
    CharSet chars;
    int target = -1;  // transition on `chars`
    int accept = -1;
};

struct Fragment {
    int start;
    int end;
};

class NfaBuilder {
public:
    NfaBuilder(std::vector<NfaState>& states, std::string_view src, std::size_t rule)
        : states_(states), src_(src), rule_(rule) {}

    Fragment parse() {
        Fragment f = alternation();
        if (pos_ != src_.size()) fail("unexpected ')'");
        return f;
    }

private:
    int add() {
        states_.emplace_back();
        return static_cast<int>(states_.size()) - 1;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw RegexError(rule_, "pattern /" + std::string(src_) + "/: " + what +
                                    " at offset " + std::to_string(pos_));
    }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    Fragment empty() {
        int s = add();
        return {s, s};
    }

    Fragment alternation() {
        Fragment first = concatenation();
        if (at_end() || peek() != '|') return first;
        int s = add();
        int e = add();
        states_[s].eps.push_back(first.start);
        states_[first.end].eps.push_back(e);
        while (!at_end() && peek() == '|') {
            ++pos_;
            Fragment alt = concatenation();
            states_[s].eps.push_back(alt.start);
            states_[alt.end].eps.push_back(e);
        }
        return {s, e};
    }

    Fragment concatenation() {
        Fragment acc = empty();
        while (!at_end() && peek() != '|' && peek() != ')') {
            Fragment next = repetition();
            states_[acc.end].eps.push_back(next.start);
            acc.end = next.end;
        }
        return acc;
    }

    Fragment repetition() {
        Fragment f = atom();
        while (!at_end() && (peek() == '*' || peek() == '+' || peek() == '?')) {
            char op = src_[pos_++];
            int s = add();
            int e = add();
            states_[s].eps.push_back(f.start);
            states_[f.end].eps.push_back(e);
            if (op == '*' || op == '?') states_[s].eps.push_back(e);
            if (op == '*' || op == '+') states_[f.end].eps.push_back(f.start);
            f = {s, e};
        }
        return f;
    }

    Fragment chars(const CharSet& set) {
        int s = add();
        int e = add();
        states_[s].chars = set;
        states_[s].target = e;
        return {s, e};
    }

    CharSet escape_class(char c) {
        CharSet set;
        switch (c) {
            case 'd':
                for (int i = '0'; i <= '9'; ++i) set.set(i);
                return set;
            case 'w':
                for (int i = '0'; i <= '9'; ++i) set.set(i);
                for (int i = 'a'; i <= 'z'; ++i) set.set(i);
                for (int i = 'A'; i <= 'Z'; ++i) set.set(i);
                set.set('_');
                return set;
            case 's':
                for (char w : {' ', '\t', '\n', '\r', '\f', '\v'}) set.set(static_cast<unsigned char>(w));
                return set;
            case 'n': set.set('\n'); return set;
            case 't': set.set('\t'); return set;
            case 'r': set.set('\r'); return set;
            default: set.set(static_cast<unsigned char>(c)); return set;
        }
    }

    Fragment atom() {
        char c = src_[pos_++];
        switch (c) {
            case '(': {
                Fragment f = alternation();
                if (at_end() || peek() != ')') fail("missing ')'");
                ++pos_;
                return f;
            }
            case '[': return chars(char_class());
            case '.': {
                CharSet set;
                set.set();
                set.reset('\n');
                return chars(set);
            }
            case '\\': {
                if (at_end()) fail("dangling escape");
                return chars(escape_class(src_[pos_++]));
            }
            case '*':
            case '+':
            case '?': fail("quantifier without operand");
            default: {
                CharSet set;
                set.set(static_cast<unsigned char>(c));
                return chars(set);
            }
        }
    }

    CharSet char_class() {
        CharSet set;
        bool negate = false;
        if (!at_end() && peek() == '^') {
            negate = true;
            ++pos_;
        }
        bool first = true;
        while (true) {
            if (at_end()) fail("unterminated character class");
            char c = src_[pos_++];
            if (c == ']' && !first) break;
            first = false;
            CharSet item;
            unsigned char lo;
            if (c == '\\') {
                if (at_end()) fail("dangling escape");
                char e = src_[pos_++];
                item = escape_class(e);
                if (item.count() != 1) {
                    set |= item;
                    continue;
                }
                lo = 0;
                for (int i = 0; i < 256; ++i)
                    if (item.test(i)) lo = static_cast<unsigned char>(i);
            } else {
                lo = static_cast<unsigned char>(c);
            }
            if (pos_ + 1 < src_.size() && peek() == '-' && src_[pos_ + 1] != ']') {
                ++pos_;
                char h = src_[pos_++];
                if (h == '\\') {
                    if (at_end()) fail("dangling escape");
                    CharSet hs = escape_class(src_[pos_++]);
                    if (hs.count() != 1) fail("class escape as range bound");
                    for (int i = 0; i < 256; ++i)
                        if (hs.test(i)) h = static_cast<char>(i);
                }
                unsigned char hi = static_cast<unsigned char>(h);
                if (hi < lo) fail("reversed range");
                for (int i = lo; i <= hi; ++i) set.set(i);
            } else {
                set.set(lo);
            }
        }
        if (negate) set.flip();
        return set;
    }

    std::vector<NfaState>& states_;
    std::string_view src_;
    std::size_t rule_;
    std::size_t pos_ = 0;
};

void eps_closure(const std::vector<NfaState>& nfa, std::vector<int>& set) {
    std::vector<int> work(set.begin(), set.end());
    std::vector<bool> seen(nfa.size(), false);
    for (int s : set) seen[s] = true;
    while (!work.empty()) {
        int s = work.back();
        work.pop_back();
        for (int t : nfa[s].eps) {
            if (!seen[t]) {
                seen[t] = true;
                set.push_back(t);
                work.push_back(t);
            }
        }
    }
    std::sort(set.begin(), set.end());
}

}  // namespace

Dfa Dfa::compile(const std::vector<std::string>& patterns) {
    std::vector<NfaState> nfa;
    nfa.emplace_back();  // shared start
    for (std::size_t r = 0; r < patterns.size(); ++r) {
        NfaBuilder b(nfa, patterns[r], r);
        Fragment f = b.parse();
        nfa[0].eps.push_back(f.start);
        nfa[f.end].accept = static_cast<int>(r);
    }

    Dfa dfa;
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> sets;
    std::vector<int> init{0};
    eps_closure(nfa, init);
    ids.emplace(init, 0);
    sets.push_back(init);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::array<int, 256> row;
        row.fill(kDead);
        int acc = -1;
        for (int s : sets[i]) {
            if (nfa[s].accept >= 0 && (acc < 0 || nfa[s].accept < acc)) acc = nfa[s].accept;
        }
        for (int c = 0; c < 256; ++c) {
            std::vector<int> moved;
            for (int s : sets[i]) {
                if (nfa[s].target >= 0 && nfa[s].chars.test(c)) moved.push_back(nfa[s].target);
            }
            if (moved.empty()) continue;
            std::sort(moved.begin(), moved.end());
            moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
            eps_closure(nfa, moved);
            auto [it, fresh] = ids.emplace(moved, static_cast<int>(sets.size()));
            if (fresh) sets.push_back(moved);
            row[c] = it->second;
        }
        dfa.next_.push_back(row);
        dfa.accept_.push_back(acc);
    }
    return dfa;
}

int Dfa::match_whole(std::string_view s) const {
    int st = start();
    for (char c : s) {
        st = step(st, static_cast<unsigned char>(c));
        if (st == kDead) return -1;
    }
    return accept(st);
}

bool Dfa::accepts_something() const {
    return std::any_of(accept_.begin(), accept_.end(), [](int a) { return a >= 0; });
}

std::size_t Dfa::max_lookahead() const {
    const std::size_t n = accept_.size();
    // Live states can still reach an accepting state.
    std::vector<bool> live(n, false);
    for (std::size_t s = 0; s < n; ++s) live[s] = accept_[s] >= 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (live[s]) continue;
            for (int t : next_[s]) {
                if (t != kDead && live[t]) {
                    live[s] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    // Longest walk through non-accepting live states after an accept state.
    // depth[s] = longest such walk starting at s (in bytes), or unbounded.
    std::vector<int> mark(n, 0);  // 0 unvisited, 1 in progress, 2 done
    std::vector<std::size_t> depth(n, 0);
    auto visit = [&](auto&& self, int s) -> std::size_t {
        if (mark[s] == 2) return depth[s];
        if (mark[s] == 1) return kUnboundedLookahead;
        mark[s] = 1;
        std::size_t best = 0;
        for (int t : next_[s]) {
            if (t == kDead || !live[t] || accept_[t] >= 0) continue;
            std::size_t d = self(self, t);
            if (d == kUnboundedLookahead) {
                best = kUnboundedLookahead;
                break;
            }
            best = std::max(best, d + 1);
        }
        mark[s] = 2;
        depth[s] = best;
        return best;
    };
    std::size_t result = 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (accept_[s] < 0) continue;
        std::size_t d = visit(visit, static_cast<int>(s));
        if (d == kUnboundedLookahead) return kUnboundedLookahead;
        result = std::max(result, d + 1);
    }
    return result;
}

}  // namespace autobox
