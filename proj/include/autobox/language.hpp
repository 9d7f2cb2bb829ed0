#pragma once

#include "autobox/grammar.hpp"
#include "autobox/lr.hpp"
#include "autobox/regex.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace autobox {

struct Lexeme {
    Symbol type;
    std::size_t start;
    std::size_t length;
    /// Bytes examined past the end of the lexeme, counting the byte (or end
    /// of input) that stopped the automaton. Always >= 1.
    std::size_t lookahead;
};

/// Longest-match lexer; ties go to the earliest declared rule. Input the
/// automaton cannot start on becomes a one-byte kErrorToken lexeme.
class Lexer {
public:
    Lexer(const GrammarSpec& g, const SymbolTable& symbols);

    Lexeme next(std::string_view text, std::size_t pos) const;
    std::vector<Lexeme> lex_all(std::string_view text) const;

    /// Static per-rule bound on lookahead, indexed by token Symbol.
    std::size_t rule_max_lookahead(Symbol type) const;

private:
    Dfa dfa_;
    std::vector<Symbol> rule_symbol_;
    std::vector<std::size_t> max_lookahead_;  // by symbol
};

/// Immutable bundle of everything needed to lex and parse one language.
class Language {
public:
    explicit Language(GrammarSpec spec);

    const std::string& id() const { return spec_.name; }
    const GrammarSpec& spec() const { return spec_; }
    const LrTables& tables() const { return tables_; }
    const SymbolTable& symbols() const { return tables_.symbols(); }
    const Lexer& lexer() const { return lexer_; }

    bool is_whitespace(Symbol s) const { return s >= 0 && s < static_cast<Symbol>(ws_.size()) && ws_[s]; }
    Symbol newline() const { return newline_; }
    bool has_lboxes() const { return !spec_.lbox_symbols.empty(); }

private:
    GrammarSpec spec_;
    LrTables tables_;
    Lexer lexer_;
    std::vector<bool> ws_;
    Symbol newline_ = -1;
};

/// A composition with its languages resolved and compiled.
class Composition {
public:
    /// Languages are looked up as `<id>.grammar` next to the composition
    /// file, then in `search_dirs`.
    static std::shared_ptr<const Composition> load(const std::filesystem::path& file,
                                                   const std::vector<std::filesystem::path>& search_dirs = {});
    Composition(CompositionSpec spec, std::map<std::string, std::shared_ptr<const Language>> langs);

    const CompositionSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    const Language& outer() const { return *langs_.at(spec_.outer); }
    const Language& language(const std::string& id) const { return *langs_.at(id); }
    bool has_language(const std::string& id) const { return langs_.count(id) > 0; }

    /// (lbox symbol, inner language) pairs available inside `host`.
    std::vector<std::pair<Symbol, const Language*>> inner_of(const Language& host) const;

private:
    CompositionSpec spec_;
    std::map<std::string, std::shared_ptr<const Language>> langs_;
};

}  // namespace autobox
