#include "autobox/lr.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace autobox {

SymbolTable::SymbolTable(const GrammarSpec& g) {
    auto add = [&](const std::string& n) {
        ids_.emplace(n, static_cast<Symbol>(names_.size()));
        names_.push_back(n);
    };
    add("EOS");
    add("ERROR");
    for (const auto& r : g.token_rules) add(r.type);
    first_lbox_ = static_cast<Symbol>(names_.size());
    for (const auto& l : g.lbox_symbols) add(l);
    num_terminals_ = static_cast<int>(names_.size());
    for (const auto& p : g.productions) {
        if (!ids_.count(p.lhs)) add(p.lhs);
    }
    add(g.start_symbol + "'");
}

Symbol SymbolTable::id(const std::string& name) const {
    auto it = ids_.find(name);
    return it == ids_.end() ? -1 : it->second;
}

ConflictError::ConflictError(std::vector<Conflict> conflicts)
    : GrammarError([&] {
          std::string msg = std::to_string(conflicts.size()) + " LALR(1) conflict(s)";
          for (const auto& c : conflicts) msg += "\n" + c.description;
          return msg;
      }()),
      conflicts_(std::move(conflicts)) {}

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool merge(const Bits& o) {
        bool changed = false;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t nv = w_[i] | o.w_[i];
            changed |= nv != w_[i];
            w_[i] = nv;
        }
        return changed;
    }
    template <class F>
    void each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                int b = __builtin_ctzll(w);
                f(i * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> w_;
};

struct Item {
    int prod;
    int dot;
    auto operator<=>(const Item&) const = default;
};

class Builder {
public:
    Builder(const SymbolTable& syms, std::vector<LrProduction> prods)
        : syms_(syms), prods_(std::move(prods)), nt_(syms.num_symbols() - syms.num_terminals()),
          dummy_(static_cast<std::size_t>(syms.num_terminals())) {
        by_lhs_.resize(nt_);
        for (int i = 0; i < static_cast<int>(prods_.size()); ++i) by_lhs_[prods_[i].lhs - syms_.num_terminals()].push_back(i);
        compute_first();
    }

    void build_lr0() {
        std::vector<Item> k0{{0, 0}};
        ids_[k0] = 0;
        kernels_.push_back(k0);
        for (std::size_t s = 0; s < kernels_.size(); ++s) {
            std::vector<Item> cl = closure0(kernels_[s]);
            std::map<Symbol, std::vector<Item>> moves;
            for (const Item& it : cl) {
                const auto& rhs = prods_[it.prod].rhs;
                if (it.dot < static_cast<int>(rhs.size())) moves[rhs[it.dot]].push_back({it.prod, it.dot + 1});
            }
            for (auto& [sym, kernel] : moves) {
                std::sort(kernel.begin(), kernel.end());
                kernel.erase(std::unique(kernel.begin(), kernel.end()), kernel.end());
                auto [it, fresh] = ids_.emplace(kernel, static_cast<int>(kernels_.size()));
                if (fresh) kernels_.push_back(kernel);
                trans_[{static_cast<int>(s), sym}] = it->second;
            }
        }
    }

    void compute_lookaheads() {
        const std::size_t nla = dummy_ + 1;
        la_.resize(kernels_.size());
        for (std::size_t s = 0; s < kernels_.size(); ++s) la_[s].assign(kernels_[s].size(), Bits(nla));
        la_[0][0].set(kEos);
        // propagation edges: (state, kernel index) -> list of (state, kernel index)
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> prop;
        for (std::size_t s = 0; s < kernels_.size(); ++s) {
            for (std::size_t k = 0; k < kernels_[s].size(); ++k) {
                Bits seed(nla);
                seed.set(dummy_);
                auto cl = closure1({{kernels_[s][k], seed}});
                for (const auto& [it, la] : cl) {
                    const auto& rhs = prods_[it.prod].rhs;
                    if (it.dot >= static_cast<int>(rhs.size())) continue;
                    int target = trans_.at({static_cast<int>(s), rhs[it.dot]});
                    int tk = kernel_index(target, {it.prod, it.dot + 1});
                    la.each([&](std::size_t a) {
                        if (a == dummy_) {
                            prop[{static_cast<int>(s), static_cast<int>(k)}].push_back({target, tk});
                        } else {
                            la_[target][tk].set(a);
                        }
                    });
                }
            }
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& [from, tos] : prop) {
                for (const auto& to : tos) changed |= la_[to.first][to.second].merge(la_[from.first][from.second]);
            }
        }
    }

    struct Data {
        std::vector<LrTables::Action> actions_;
        std::vector<int> gotos_;
        std::size_t num_states_ = 0;
        int num_nonterminals_ = 0;
        std::vector<LrProduction> productions_;
    };

    Data fill() {
        Data t;
        const int nterm = syms_.num_terminals();
        t.num_states_ = kernels_.size();
        t.num_nonterminals_ = nt_;
        t.actions_.assign(t.num_states_ * nterm, {});
        t.gotos_.assign(t.num_states_ * nt_, -1);
        std::vector<Conflict> conflicts;
        for (std::size_t s = 0; s < kernels_.size(); ++s) {
            std::vector<std::pair<Item, Bits>> seed;
            for (std::size_t k = 0; k < kernels_[s].size(); ++k) seed.push_back({kernels_[s][k], la_[s][k]});
            auto cl = closure1(seed);
            std::map<Symbol, std::vector<std::string>> reasons;
            auto set_action = [&](Symbol a, LrTables::Action act, const Item& why) {
                auto& slot = t.actions_[s * nterm + a];
                reasons[a].push_back(describe(why));
                if (slot.kind == LrTables::ActionKind::error) {
                    slot = act;
                } else if (slot.kind != act.kind || slot.target != act.target) {
                    bool rr = slot.kind == LrTables::ActionKind::reduce && act.kind == LrTables::ActionKind::reduce;
                    std::ostringstream msg;
                    msg << "state " << s << ", lookahead " << syms_.name(a) << ": "
                        << (rr ? "reduce/reduce" : "shift/reduce") << " conflict between";
                    for (const auto& r : reasons[a]) msg << "\n    " << r;
                    conflicts.push_back({static_cast<int>(s), a, msg.str()});
                }
            };
            for (const auto& [it, la] : cl) {
                const auto& rhs = prods_[it.prod].rhs;
                if (it.dot < static_cast<int>(rhs.size())) {
                    Symbol x = rhs[it.dot];
                    int target = trans_.at({static_cast<int>(s), x});
                    if (syms_.is_terminal(x)) {
                        set_action(x, {LrTables::ActionKind::shift, target}, it);
                    } else {
                        t.gotos_[s * nt_ + (x - nterm)] = target;
                    }
                } else if (it.prod == 0) {
                    set_action(kEos, {LrTables::ActionKind::accept, 0}, it);
                } else {
                    la.each([&](std::size_t a) {
                        if (a != dummy_) set_action(static_cast<Symbol>(a), {LrTables::ActionKind::reduce, it.prod}, it);
                    });
                }
            }
        }
        if (!conflicts.empty()) throw ConflictError(std::move(conflicts));
        t.productions_ = prods_;
        return t;
    }

private:
    void compute_first() {
        const std::size_t nla = dummy_ + 1;
        first_.assign(nt_, Bits(nla));
        nullable_.assign(nt_, false);
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& p : prods_) {
                int l = p.lhs - syms_.num_terminals();
                bool all_nullable = true;
                for (Symbol x : p.rhs) {
                    if (syms_.is_terminal(x)) {
                        if (!first_[l].test(x)) {
                            first_[l].set(x);
                            changed = true;
                        }
                        all_nullable = false;
                        break;
                    }
                    int xi = x - syms_.num_terminals();
                    changed |= first_[l].merge(first_[xi]);
                    if (!nullable_[xi]) {
                        all_nullable = false;
                        break;
                    }
                }
                if (all_nullable && !nullable_[l]) {
                    nullable_[l] = true;
                    changed = true;
                }
            }
        }
    }

    std::vector<Item> closure0(const std::vector<Item>& kernel) const {
        std::vector<Item> out = kernel;
        std::set<Item> seen(kernel.begin(), kernel.end());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& rhs = prods_[out[i].prod].rhs;
            if (out[i].dot >= static_cast<int>(rhs.size()) || syms_.is_terminal(rhs[out[i].dot])) continue;
            for (int p : by_lhs_[rhs[out[i].dot] - syms_.num_terminals()]) {
                if (seen.insert({p, 0}).second) out.push_back({p, 0});
            }
        }
        return out;
    }

    std::vector<std::pair<Item, Bits>> closure1(const std::vector<std::pair<Item, Bits>>& seed) const {
        std::map<Item, Bits> items;
        std::vector<Item> work;
        for (const auto& [it, la] : seed) {
            auto [pos, fresh] = items.emplace(it, la);
            if (!fresh) pos->second.merge(la);
            work.push_back(it);
        }
        while (!work.empty()) {
            Item it = work.back();
            work.pop_back();
            const auto& rhs = prods_[it.prod].rhs;
            if (it.dot >= static_cast<int>(rhs.size()) || syms_.is_terminal(rhs[it.dot])) continue;
            Bits la(dummy_ + 1);
            bool rest_nullable = true;
            for (std::size_t j = static_cast<std::size_t>(it.dot) + 1; j < rhs.size(); ++j) {
                Symbol y = rhs[j];
                if (syms_.is_terminal(y)) {
                    la.set(y);
                    rest_nullable = false;
                    break;
                }
                la.merge(first_[y - syms_.num_terminals()]);
                if (!nullable_[y - syms_.num_terminals()]) {
                    rest_nullable = false;
                    break;
                }
            }
            if (rest_nullable) la.merge(items.at(it));
            for (int p : by_lhs_[rhs[it.dot] - syms_.num_terminals()]) {
                Item n{p, 0};
                auto [pos, fresh] = items.emplace(n, la);
                if (fresh || pos->second.merge(la)) work.push_back(n);
            }
        }
        return {items.begin(), items.end()};
    }

    int kernel_index(int state, const Item& it) const {
        const auto& k = kernels_[state];
        return static_cast<int>(std::lower_bound(k.begin(), k.end(), it) - k.begin());
    }

    std::string describe(const Item& it) const {
        const auto& p = prods_[it.prod];
        std::string s = syms_.name(p.lhs) + " :";
        for (int i = 0; i <= static_cast<int>(p.rhs.size()); ++i) {
            if (i == it.dot) s += " .";
            if (i < static_cast<int>(p.rhs.size())) s += " " + syms_.name(p.rhs[i]);
        }
        return s;
    }

    const SymbolTable& syms_;
    std::vector<LrProduction> prods_;
    int nt_;
    std::size_t dummy_;
    std::vector<std::vector<int>> by_lhs_;
    std::vector<Bits> first_;
    std::vector<bool> nullable_;
    std::vector<std::vector<Item>> kernels_;
    std::map<std::vector<Item>, int> ids_;
    std::map<std::pair<int, Symbol>, int> trans_;
    std::vector<std::vector<Bits>> la_;
};

}  // namespace

LrTables build_lr_tables(const GrammarSpec& g) {
    SymbolTable syms(g);
    std::vector<LrProduction> prods;
    prods.push_back({syms.num_symbols() - 1, {syms.id(g.start_symbol)}});
    for (const auto& p : g.productions) {
        LrProduction lp{syms.id(p.lhs), {}};
        for (const auto& s : p.rhs) {
            Symbol id = syms.id(s);
            if (id < 0) throw GrammarError("undeclared symbol '" + s + "'");
            lp.rhs.push_back(id);
        }
        prods.push_back(std::move(lp));
    }
    Builder b(syms, prods);
    b.build_lr0();
    b.compute_lookaheads();
    auto data = b.fill();
    LrTables t(std::move(syms));
    t.actions_ = std::move(data.actions_);
    t.gotos_ = std::move(data.gotos_);
    t.num_states_ = data.num_states_;
    t.num_nonterminals_ = data.num_nonterminals_;
    t.productions_ = std::move(data.productions_);
    return t;
}

bool LrTables::can_shift_lbox(int state, Symbol sym) const {
    if (state < 0 || static_cast<std::size_t>(state) >= num_states_ || !symbols_.is_terminal(sym)) return false;
    auto k = action(state, sym).kind;
    return k == ActionKind::shift || k == ActionKind::reduce;
}

bool LrTables::can_shift_lbox(std::span<const int> states, Symbol sym) const {
    if (states.empty() || !symbols_.is_terminal(sym) || sym < 0) return false;
    std::vector<int> copy(states.begin(), states.end());
    return lr_feed(*this, copy, sym);
}

bool lr_feed(const LrTables& t, std::vector<int>& st, Symbol terminal) {
    while (true) {
        auto a = t.action(st.back(), terminal);
        switch (a.kind) {
            case LrTables::ActionKind::shift:
                st.push_back(a.target);
                return true;
            case LrTables::ActionKind::accept:
                return true;
            case LrTables::ActionKind::error:
                return false;
            case LrTables::ActionKind::reduce: {
                const auto& p = t.productions()[a.target];
                st.resize(st.size() - p.rhs.size());
                int g = t.goto_state(st.back(), p.lhs);
                if (g < 0) return false;
                st.push_back(g);
                break;
            }
        }
    }
}

}  // namespace autobox
