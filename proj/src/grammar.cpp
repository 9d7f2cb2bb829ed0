#include "autobox/grammar.hpp"

#include "autobox/regex.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace autobox {

GrammarError::GrammarError(const std::string& msg, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg
                                  : msg),
      line_(line),
      column_(column) {}

bool GrammarSpec::is_token(std::string_view s) const {
    return std::any_of(token_rules.begin(), token_rules.end(),
                       [&](const TokenRule& r) { return r.type == s; });
}

bool GrammarSpec::is_nonterminal(std::string_view s) const {
    return std::any_of(productions.begin(), productions.end(),
                       [&](const Production& p) { return p.lhs == s; });
}

namespace {

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw GrammarError("cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Tok {
    enum Kind { ident, directive, lbox, literal, regex, punct, end } kind;
    std::string text;
    int line;
    int col;
};

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    Tok next() {
        skip();
        Tok t{Tok::end, {}, line_, col_};
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::ident;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                t.text += bump();
        } else if (c == '%') {
            bump();
            t.kind = Tok::directive;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) t.text += bump();
        } else if (c == '<') {
            bump();
            t.kind = Tok::lbox;
            while (pos_ < src_.size() && src_[pos_] != '>' && src_[pos_] != '\n') t.text += bump();
            if (pos_ >= src_.size() || src_[pos_] != '>') throw GrammarError("unterminated '<'", t.line, t.col);
            bump();
            if (t.text.empty()) throw GrammarError("empty language box symbol", t.line, t.col);
        } else if (c == '"') {
            bump();
            t.kind = Tok::literal;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) bump();
                t.text += bump();
            }
            if (pos_ >= src_.size() || src_[pos_] != '"') throw GrammarError("unterminated string", t.line, t.col);
            bump();
            if (t.text.empty()) throw GrammarError("empty literal", t.line, t.col);
        } else if (c == '/') {
            bump();
            t.kind = Tok::regex;
            while (pos_ < src_.size() && src_[pos_] != '/' && src_[pos_] != '\n') {
                if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                    bump();
                    t.text += bump();
                    continue;
                }
                if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) t.text += bump();
                t.text += bump();
            }
            if (pos_ >= src_.size() || src_[pos_] != '/') throw GrammarError("unterminated regex", t.line, t.col);
            bump();
        } else if (c == ':' || c == '|' || c == ';' || c == '=' || c == ',') {
            t.kind = Tok::punct;
            t.text = std::string(1, bump());
        } else {
            throw GrammarError(std::string("unexpected character '") + c + "'", t.line, t.col);
        }
        return t;
    }

    // Rest of the current line, for directives taking a word list.
    std::vector<Tok> line_words() {
        std::vector<Tok> out;
        while (true) {
            while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r')) bump();
            if (pos_ >= src_.size() || src_[pos_] == '\n' || src_[pos_] == '#') return out;
            out.push_back(next());
        }
    }

private:
    char bump() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

std::string escape_literal(const std::string& lit) {
    std::string out;
    for (char c : lit) {
        if (std::string_view("\\/|*+?.()[]^-").find(c) != std::string_view::npos) out += '\\';
        out += c;
    }
    return out;
}

struct Use {
    std::string symbol;
    int line;
    int col;
};

class SpecParser {
public:
    SpecParser(GrammarSpec& spec, std::filesystem::path base_dir)
        : spec_(spec), base_dir_(std::move(base_dir)) {}

    void parse(std::string_view text, int depth = 0) {
        if (depth > 8) throw GrammarError("%include nested too deeply");
        Scanner sc(text);
        while (true) {
            Tok t = sc.next();
            if (t.kind == Tok::end) return;
            if (t.kind == Tok::directive) {
                directive(sc, t, depth);
            } else if (t.kind == Tok::ident && t.text == "token") {
                token_rule(sc);
            } else if (t.kind == Tok::ident) {
                production(sc, t);
            } else {
                throw GrammarError("expected declaration, found '" + t.text + "'", t.line, t.col);
            }
        }
    }

    void finish() {
        std::vector<TokenRule> rules = implicit_;
        rules.insert(rules.end(), spec_.token_rules.begin(), spec_.token_rules.end());
        spec_.token_rules = std::move(rules);
        if (spec_.productions.empty()) throw GrammarError("grammar has no productions");
        if (spec_.start_symbol.empty()) spec_.start_symbol = spec_.productions.front().lhs;
        if (spec_.name.empty()) throw GrammarError("missing %name");

        for (const Use& u : uses_) {
            if (!spec_.is_token(u.symbol) && !spec_.is_nonterminal(u.symbol))
                throw GrammarError("undeclared symbol '" + u.symbol + "'", u.line, u.col);
        }
        if (!spec_.is_nonterminal(spec_.start_symbol))
            throw GrammarError("undeclared symbol '" + spec_.start_symbol + "' used as start symbol");
        for (const auto& w : spec_.whitespace_types) {
            if (!spec_.is_token(w)) throw GrammarError("whitespace type '" + w + "' has no token rule");
        }
        for (const auto& p : spec_.productions) {
            if (spec_.is_token(p.lhs)) throw GrammarError("'" + p.lhs + "' is both a token type and a nonterminal");
        }
        check_productive();
    }

private:
    void directive(Scanner& sc, const Tok& d, int depth) {
        auto words = sc.line_words();
        if (d.text == "name" || d.text == "start" || d.text == "newline") {
            if (words.size() != 1 || words[0].kind != Tok::ident)
                throw GrammarError("%" + d.text + " takes one identifier", d.line, d.col);
            if (d.text == "name") spec_.name = words[0].text;
            if (d.text == "start") spec_.start_symbol = words[0].text;
            if (d.text == "newline") spec_.newline_type = words[0].text;
        } else if (d.text == "whitespace") {
            for (const Tok& w : words) {
                if (w.kind != Tok::ident) throw GrammarError("%whitespace takes identifiers", w.line, w.col);
                spec_.whitespace_types.insert(w.text);
            }
        } else if (d.text == "include") {
            if (words.size() != 1 || words[0].kind != Tok::literal)
                throw GrammarError("%include takes a quoted path", d.line, d.col);
            parse(read_file(base_dir_ / words[0].text), depth + 1);
        } else {
            throw GrammarError("unknown directive %" + d.text, d.line, d.col);
        }
    }

    void token_rule(Scanner& sc) {
        Tok name = sc.next();
        if (name.kind != Tok::ident) throw GrammarError("expected token type name", name.line, name.col);
        Tok re = sc.next();
        if (re.kind != Tok::regex) throw GrammarError("expected /pattern/", re.line, re.col);
        Tok semi = sc.next();
        if (semi.kind != Tok::punct || semi.text != ";") throw GrammarError("expected ';'", semi.line, semi.col);
        if (spec_.is_token(name.text)) throw GrammarError("duplicate token type '" + name.text + "'", name.line, name.col);
        try {
            Dfa::compile({re.text});
        } catch (const RegexError& e) {
            throw GrammarError(e.what(), re.line, re.col);
        }
        spec_.token_rules.push_back({name.text, re.text});
    }

    void production(Scanner& sc, const Tok& lhs) {
        Tok colon = sc.next();
        if (colon.kind != Tok::punct || colon.text != ":")
            throw GrammarError("expected ':' after '" + lhs.text + "'", colon.line, colon.col);
        Production cur{lhs.text, {}};
        while (true) {
            Tok t = sc.next();
            if (t.kind == Tok::punct && (t.text == "|" || t.text == ";")) {
                spec_.productions.push_back(cur);
                cur.rhs.clear();
                if (t.text == ";") return;
                continue;
            }
            switch (t.kind) {
                case Tok::ident:
                    cur.rhs.push_back(t.text);
                    uses_.push_back({t.text, t.line, t.col});
                    break;
                case Tok::lbox:
                    cur.rhs.push_back("<" + t.text + ">");
                    spec_.lbox_symbols.insert("<" + t.text + ">");
                    break;
                case Tok::literal: {
                    std::string type = "\"" + t.text + "\"";
                    if (std::none_of(implicit_.begin(), implicit_.end(),
                                     [&](const TokenRule& r) { return r.type == type; }))
                        implicit_.push_back({type, escape_literal(t.text)});
                    cur.rhs.push_back(type);
                    break;
                }
                case Tok::end: throw GrammarError("unterminated production for '" + lhs.text + "'", t.line, t.col);
                default: throw GrammarError("unexpected '" + t.text + "' in production", t.line, t.col);
            }
        }
    }

    bool is_token_or_lit(const std::string& s) const {
        return spec_.is_token(s) || spec_.lbox_symbols.count(s) > 0;
    }

    void check_productive() {
        std::set<std::string> productive;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& p : spec_.productions) {
                if (productive.count(p.lhs)) continue;
                bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const std::string& s) {
                    return is_token_or_lit(s) || productive.count(s) > 0;
                });
                if (ok) {
                    productive.insert(p.lhs);
                    changed = true;
                }
            }
        }
        if (!productive.count(spec_.start_symbol))
            throw GrammarError("start symbol '" + spec_.start_symbol + "' derives no sentence");
    }

    GrammarSpec& spec_;
    std::filesystem::path base_dir_;
    std::vector<TokenRule> implicit_;
    std::vector<Use> uses_;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

}  // namespace

GrammarSpec parse_grammar_spec(std::string_view text, const std::filesystem::path& base_dir) {
    GrammarSpec spec;
    SpecParser p(spec, base_dir);
    p.parse(text);
    p.finish();
    return spec;
}

GrammarSpec load_grammar_spec(const std::filesystem::path& file) {
    return parse_grammar_spec(read_file(file), file.parent_path());
}

CompositionSpec parse_composition_spec(std::string_view text, std::string name) {
    CompositionSpec c;
    c.name = std::move(name);
    int line = 1;
    std::string stmt;
    int stmt_line = 1;
    auto flush = [&]() {
        std::istringstream in(stmt);
        std::string kw;
        if (!(in >> kw)) return;
        if (kw == "outer") {
            if (!(in >> c.outer)) throw GrammarError("outer needs a language id", stmt_line, 1);
        } else if (kw == "inner") {
            std::string sym, eq, lang;
            if (!(in >> sym >> eq >> lang) || eq != "=")
                throw GrammarError("expected 'inner <Sym> = <id>'", stmt_line, 1);
            if (sym.front() != '<') sym = "<" + sym + ">";
            if (c.members.count(sym)) throw GrammarError("duplicate member " + sym, stmt_line, 1);
            c.members[sym] = lang;
            std::string mode;
            if (in >> mode) {
                std::string rest;
                std::getline(in, rest);
                StartHint h;
                if (mode == "allow") {
                    h.kind = StartHint::Kind::allow;
                } else if (mode == "deny") {
                    h.kind = StartHint::Kind::deny;
                } else {
                    throw GrammarError("expected allow or deny, found '" + mode + "'", stmt_line, 1);
                }
                for (auto& t : split_list(rest)) {
                    if (t == "allow" || t == "deny" || t == "|")
                        throw GrammarError("a hint is either an allow-list or a deny-list", stmt_line, 1);
                    h.types.insert(t);
                }
                if (h.types.empty()) throw GrammarError("empty hint list", stmt_line, 1);
                if (c.hints.count(lang)) throw GrammarError("second hint for " + lang, stmt_line, 1);
                c.hints[lang] = h;
            }
        } else {
            throw GrammarError("unknown composition statement '" + kw + "'", stmt_line, 1);
        }
    };
    bool comment = false;
    for (char ch : text) {
        if (ch == '\n') {
            ++line;
            comment = false;
            stmt += ' ';
            continue;
        }
        if (comment) continue;
        if (ch == '#') {
            comment = true;
            continue;
        }
        if (ch == ';') {
            flush();
            stmt.clear();
            stmt_line = line;
            continue;
        }
        if (stmt.find_first_not_of(' ') == std::string::npos && !std::isspace(static_cast<unsigned char>(ch)))
            stmt_line = line;
        stmt += ch;
    }
    if (stmt.find_first_not_of(" \t\r") != std::string::npos)
        throw GrammarError("missing ';' at end of composition", stmt_line, 1);
    if (c.outer.empty()) throw GrammarError("composition has no outer language");
    return c;
}

CompositionSpec load_composition_spec(const std::filesystem::path& file) {
    return parse_composition_spec(read_file(file), file.stem().string());
}

bool hint_allows(const CompositionSpec& c, const std::string& lang, const std::string& first_token_type) {
    auto it = c.hints.find(lang);
    if (it == c.hints.end()) return true;
    bool listed = it->second.types.count(first_token_type) > 0;
    return it->second.kind == StartHint::Kind::allow ? listed : !listed;
}

}  // namespace autobox
