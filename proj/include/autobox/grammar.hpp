#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autobox {

/// Raised for malformed grammar or composition files. Line and column are
/// 1-based; both are 0 when the problem is not tied to a location.
class GrammarError : public std::runtime_error {
public:
    GrammarError(const std::string& msg, int line = 0, int column = 0);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct TokenRule {
    std::string type;
    std::string pattern;
};

struct Production {
    std::string lhs;
    std::vector<std::string> rhs;
};

struct GrammarSpec {
    std::string name;
    std::vector<TokenRule> token_rules;  // order is the lexer tie-break order
    std::set<std::string> whitespace_types;
    std::vector<Production> productions;
    std::string start_symbol;
    std::set<std::string> lbox_symbols;  // written `<Name>` in productions
    std::string newline_type = "NEWLINE";

    bool is_token(std::string_view s) const;
    bool is_nonterminal(std::string_view s) const;
};

/// Parses the grammar file format:
///
///     %name MiniSQL
///     %whitespace WS NEWLINE
///     %start query
///     %include "shared.inc"
///     token SELECT /SELECT|select/;
///     query: SELECT items | "(" query ")";
///
/// Quoted literals in productions declare an implicit token rule ahead of
/// the explicit ones. `%include` is resolved relative to `base_dir`.
GrammarSpec parse_grammar_spec(std::string_view text,
                               const std::filesystem::path& base_dir = {});
GrammarSpec load_grammar_spec(const std::filesystem::path& file);

/// Token types allowed (or denied) at the first token of a box.
struct StartHint {
    enum class Kind { allow, deny };
    Kind kind = Kind::allow;
    std::set<std::string> types;
};

struct CompositionSpec {
    std::string name;                              // file stem
    std::string outer;                             // outer language id
    std::map<std::string, std::string> members;    // lbox symbol -> inner language id
    std::map<std::string, StartHint> hints;        // inner language id -> hint
};

/// `outer <id>; inner <Sym> = <id> [allow T,... | deny T,...];`
CompositionSpec parse_composition_spec(std::string_view text, std::string name = {});
CompositionSpec load_composition_spec(const std::filesystem::path& file);

/// True iff no hint exists for `lang`, the allow-list contains the type, or
/// the deny-list does not.
bool hint_allows(const CompositionSpec& c, const std::string& lang,
                 const std::string& first_token_type);

}  // namespace autobox
