#pragma once

#include "autobox/grammar.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace autobox {

using Symbol = int;

/// Reserved terminals present in every language.
inline constexpr Symbol kEos = 0;
inline constexpr Symbol kErrorToken = 1;

/// Dense numbering of a grammar's symbols. Terminals come first: EOS, the
/// error token, every token type in rule order, then the lbox symbols.
/// Nonterminals follow, with the augmented start symbol last.
class SymbolTable {
public:
    explicit SymbolTable(const GrammarSpec& g);

    Symbol id(const std::string& name) const;  // -1 when absent
    const std::string& name(Symbol s) const { return names_[s]; }
    int num_terminals() const { return num_terminals_; }
    int num_symbols() const { return static_cast<int>(names_.size()); }
    bool is_terminal(Symbol s) const { return s >= 0 && s < num_terminals_; }
    bool is_lbox(Symbol s) const { return s >= first_lbox_ && s < num_terminals_; }
    Symbol first_token_type() const { return 2; }
    Symbol first_lbox() const { return first_lbox_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Symbol> ids_;
    int num_terminals_ = 0;
    Symbol first_lbox_ = 0;
};

struct LrProduction {
    Symbol lhs;
    std::vector<Symbol> rhs;
};

struct Conflict {
    int state;
    Symbol lookahead;
    std::string description;
};

class ConflictError : public GrammarError {
public:
    explicit ConflictError(std::vector<Conflict> conflicts);
    const std::vector<Conflict>& conflicts() const { return conflicts_; }

private:
    std::vector<Conflict> conflicts_;
};

class LrTables {
public:
    enum class ActionKind : std::uint8_t { error, shift, reduce, accept };
    struct Action {
        ActionKind kind = ActionKind::error;
        std::int32_t target = 0;  // state for shift, production for reduce
    };

    const SymbolTable& symbols() const { return symbols_; }
    std::size_t num_states() const { return num_states_; }
    const std::vector<LrProduction>& productions() const { return productions_; }

    Action action(int state, Symbol terminal) const {
        return actions_[static_cast<std::size_t>(state) * symbols_.num_terminals() + terminal];
    }
    /// Successor state after a nonterminal, or -1.
    int goto_state(int state, Symbol nonterminal) const {
        return gotos_[static_cast<std::size_t>(state) * num_nonterminals_ +
                      (nonterminal - symbols_.num_terminals())];
    }

    /// Shiftability with only a state at hand: the action on `sym` is a
    /// shift, or a reduce (the state's lookahead admits `sym`, so the
    /// reduction chain is driven by already recognised context).
    bool can_shift_lbox(int state, Symbol sym) const;

    /// Exact shiftability on a full state stack: reductions are simulated
    /// on a copy until `sym` is shifted or rejected.
    bool can_shift_lbox(std::span<const int> states, Symbol sym) const;

    /// Conflicts are always empty for tables returned by build_lr_tables.
    const std::vector<Conflict>& conflicts() const { return conflicts_; }

private:
    friend LrTables build_lr_tables(const GrammarSpec& g);
    explicit LrTables(SymbolTable symbols) : symbols_(std::move(symbols)) {}

    SymbolTable symbols_;
    std::vector<LrProduction> productions_;
    std::vector<Action> actions_;
    std::vector<int> gotos_;
    std::size_t num_states_ = 0;
    int num_nonterminals_ = 0;
    std::vector<Conflict> conflicts_;
};

/// LALR(1) construction. Throws ConflictError listing every conflict.
LrTables build_lr_tables(const GrammarSpec& g);

/// Runs the LR automaton on `state_stack` for one terminal: applies all
/// reductions, then shifts. Returns false (stack unspecified) on error and
/// true on shift or accept.
bool lr_feed(const LrTables& t, std::vector<int>& state_stack, Symbol terminal);

}  // namespace autobox
