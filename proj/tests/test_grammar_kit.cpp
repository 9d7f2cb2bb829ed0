#include "autobox/grammar.hpp"
#include "autobox/language.hpp"
#include "autobox/lr.hpp"
#include "autobox/regex.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <set>

using namespace autobox;

namespace {

bool lr_accepts(const LrTables& t, const std::vector<Symbol>& input) {
    std::vector<int> st{0};
    for (Symbol s : input) {
        if (!lr_feed(t, st, s)) return false;
    }
    return lr_feed(t, st, kEos);
}

// Every string over `alphabet` of length <= n.
void for_each_string(const std::vector<Symbol>& alphabet, std::size_t n,
                     const std::function<void(const std::vector<Symbol>&)>& fn) {
    std::vector<Symbol> cur;
    std::function<void()> rec = [&] {
        fn(cur);
        if (cur.size() == n) return;
        for (Symbol a : alphabet) {
            cur.push_back(a);
            rec();
            cur.pop_back();
        }
    };
    rec();
}

}  // namespace

TEST_CASE("regex longest match and rule order") {
    auto d = Dfa::compile({"if", "[a-z]+", "[0-9]+"});
    CHECK(d.match_whole("if") == 0);
    CHECK(d.match_whole("iff") == 1);
    CHECK(d.match_whole("42") == 2);
    CHECK(d.match_whole("4a") == -1);
    CHECK(d.match_whole("") == -1);
}

TEST_CASE("regex classes, escapes and operators") {
    auto d = Dfa::compile({"\"[^\"\\n]*\"", "//[^\\n]*", "\\d+(\\.\\d+)?", "a|b?c", "\\w\\s"});
    CHECK(d.match_whole("\"hi there\"") == 0);
    CHECK(d.match_whole("\"unterminated") == -1);
    CHECK(d.match_whole("// comment") == 1);
    CHECK(d.match_whole("3.14") == 2);
    CHECK(d.match_whole("3.") == -1);
    CHECK(d.match_whole("c") == 3);
    CHECK(d.match_whole("bc") == 3);
    CHECK(d.match_whole("x ") == 4);
    CHECK_THROWS_AS(Dfa::compile({"(ab"}), RegexError);
    CHECK_THROWS_AS(Dfa::compile({"[a-"}), RegexError);
}

TEST_CASE("regex max lookahead") {
    CHECK(Dfa::compile({"abc"}).max_lookahead() == 1);
    // After "1", "." may follow before a digit decides the match.
    CHECK(Dfa::compile({"\\d+(\\.\\d+)?"}).max_lookahead() == 2);
    CHECK(Dfa::compile({"a(bcd)?"}).max_lookahead() == 3);
    CHECK(Dfa::compile({"a(b*c)?"}).max_lookahead() == kUnboundedLookahead);
}

TEST_CASE("minimal grammar") {
    auto g = parse_grammar_spec("%name Min\nS: \"a\";\n");
    CHECK(g.name == "Min");
    CHECK(g.productions.size() == 1);
    CHECK(g.token_rules.size() == 1);
    CHECK(g.start_symbol == "S");
    auto t = build_lr_tables(g);
    CHECK(t.num_states() == 3);
    Symbol a = t.symbols().id("\"a\"");
    CHECK(lr_accepts(t, {a}));
    CHECK_FALSE(lr_accepts(t, {}));
    CHECK_FALSE(lr_accepts(t, {a, a}));
}

TEST_CASE("grammar errors") {
    SUBCASE("undeclared symbol names it") {
        try {
            parse_grammar_spec("%name E\nS: X \"a\";\n");
            FAIL("expected error");
        } catch (const GrammarError& e) {
            CHECK(std::string(e.what()).find("'X'") != std::string::npos);
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("duplicate token type") {
        CHECK_THROWS_AS(parse_grammar_spec("%name E\ntoken A /a/;\ntoken A /b/;\nS: A;\n"), GrammarError);
    }
    SUBCASE("syntax error carries a location") {
        try {
            parse_grammar_spec("%name E\nS: \"a\"\nT \"b\";\n");
            FAIL("expected error");
        } catch (const GrammarError& e) {
            CHECK(e.line() > 0);
            CHECK(e.column() > 0);
        }
    }
    SUBCASE("unproductive start") {
        CHECK_THROWS_AS(parse_grammar_spec("%name E\nS: \"a\" S;\n"), GrammarError);
    }
    SUBCASE("bad regex") {
        CHECK_THROWS_AS(parse_grammar_spec("%name E\ntoken A /(a/;\nS: A;\n"), GrammarError);
    }
    SUBCASE("undeclared whitespace type") {
        CHECK_THROWS_AS(parse_grammar_spec("%name E\n%whitespace WS\nS: \"a\";\n"), GrammarError);
    }
}

TEST_CASE("conflicts are reported with their items") {
    auto g = parse_grammar_spec("%name Amb\nS: S S | \"a\";\n");
    try {
        build_lr_tables(g);
        FAIL("expected conflict");
    } catch (const ConflictError& e) {
        REQUIRE_FALSE(e.conflicts().empty());
        CHECK(e.conflicts().front().description.find("S") != std::string::npos);
    }
}

TEST_CASE("right recursion a S | a is LALR(1)") {
    auto g = parse_grammar_spec("%name R\nS: \"a\" S | \"a\";\n");
    auto t = build_lr_tables(g);
    Symbol a = t.symbols().id("\"a\"");
    CHECK(lr_accepts(t, {a, a, a}));
    CHECK_FALSE(lr_accepts(t, {}));
}

TEST_CASE("balanced parens against derivability oracle") {
    auto g = parse_grammar_spec("%name Parens\nS: \"(\" S \")\" S | ;\n");
    auto t = build_lr_tables(g);
    Symbol open = t.symbols().id("\"(\""), close = t.symbols().id("\")\"");
    test::EarleyOracle oracle(g, t.symbols());
    std::size_t n = 0;
    for_each_string({open, close}, 8, [&](const std::vector<Symbol>& s) {
        CHECK(lr_accepts(t, s) == oracle.accepts(s));
        ++n;
    });
    CHECK(n == 511);
    CHECK(lr_accepts(t, {open, open, close, open, close, close}));
}

TEST_CASE("expression grammar against derivability oracle") {
    auto g = parse_grammar_spec(R"g(%name Expr
e: e "+" t | t;
t: t "*" f | f;
f: "(" e ")" | "x";
)g");
    auto t = build_lr_tables(g);
    std::vector<Symbol> alpha;
    for (const char* s : {"\"+\"", "\"*\"", "\"(\"", "\")\"", "\"x\""}) alpha.push_back(t.symbols().id(s));
    test::EarleyOracle oracle(g, t.symbols());
    int accepted = 0;
    for_each_string(alpha, 6, [&](const std::vector<Symbol>& s) {
        bool a = lr_accepts(t, s);
        CHECK(a == oracle.accepts(s));
        accepted += a;
    });
    CHECK(accepted > 10);
}

TEST_CASE("can_shift_lbox") {
    auto g = parse_grammar_spec(R"g(%name Host
%whitespace WS
token ID /[a-z]+/;
token WS / +/;
s: ID "=" e ";" | ID "(" args ")" ";";
args: ID | args "," ID;
e: ID | <Inner>;
)g");
    auto t = build_lr_tables(g);
    const auto& sy = t.symbols();
    Symbol box = sy.id("<Inner>");
    REQUIRE(sy.is_lbox(box));
    std::vector<int> st{0};
    REQUIRE(lr_feed(t, st, sy.id("ID")));
    REQUIRE(lr_feed(t, st, sy.id("\"=\"")));
    CHECK(t.can_shift_lbox(st.back(), box));
    CHECK(t.can_shift_lbox(std::span<const int>(st), box));

    std::vector<int> st2{0};
    REQUIRE(lr_feed(t, st2, sy.id("ID")));
    REQUIRE(lr_feed(t, st2, sy.id("\"(\"")));
    REQUIRE(lr_feed(t, st2, sy.id("ID")));
    CHECK_FALSE(t.can_shift_lbox(st2.back(), box));
    CHECK_FALSE(t.can_shift_lbox(std::span<const int>(st2), box));

    CHECK_FALSE(t.can_shift_lbox(0, -1));
    for (std::size_t s = 0; s < t.num_states(); ++s) {
        CHECK(t.can_shift_lbox(static_cast<int>(s), box) == t.can_shift_lbox(static_cast<int>(s), box));
    }
}

TEST_CASE("lbox symbol absent from grammar is never shiftable") {
    auto g = parse_grammar_spec("%name Parens\nS: \"(\" S \")\" S | ;\n");
    auto t = build_lr_tables(g);
    CHECK(t.symbols().id("<MiniSQL>") == -1);
    CHECK_FALSE(t.can_shift_lbox(0, t.symbols().id("<MiniSQL>")));
}

TEST_CASE("composition spec and hints") {
    auto c = parse_composition_spec("outer MiniHTML;\ninner <MiniJava> = MiniJava;\ninner <MiniSQL> = MiniSQL allow TAG_OPEN;\n",
                                    "html");
    CHECK(c.outer == "MiniHTML");
    CHECK(c.members.at("<MiniSQL>") == "MiniSQL");
    CHECK(hint_allows(c, "MiniSQL", "TAG_OPEN"));
    CHECK_FALSE(hint_allows(c, "MiniSQL", "IDENT"));
    CHECK(hint_allows(c, "MiniJava", "IDENT"));

    auto d = parse_composition_spec("outer A; inner <B> = B deny X, Y;", "d");
    CHECK_FALSE(hint_allows(d, "B", "X"));
    CHECK_FALSE(hint_allows(d, "B", "Y"));
    CHECK(hint_allows(d, "B", "Z"));
    CHECK_THROWS_AS(parse_composition_spec("outer A; inner <B> = B allow X deny Y;", "e"), GrammarError);
}

TEST_CASE("allow-list hint accepts exactly its types") {
    auto c = parse_composition_spec("outer A; inner <B> = B allow K1, K3;", "c");
    std::set<std::string> accepted;
    for (const char* ty : {"K0", "K1", "K2", "K3", "K4", "ERROR"}) {
        if (hint_allows(c, "B", ty)) accepted.insert(ty);
    }
    CHECK(accepted == std::set<std::string>{"K1", "K3"});
}

TEST_CASE("lexer lookahead and error tokens") {
    Language lang(parse_grammar_spec(R"g(%name L
%whitespace WS
token NUM /\d+(\.\d+)?/;
token ID /[a-z]+/;
token WS / +/;
s: s item | item;
item: NUM | ID;
)g"));
    const auto& lx = lang.lexer();
    auto toks = lx.lex_all("ab 1.x#");
    REQUIRE(toks.size() == 6);
    CHECK(lang.symbols().name(toks[0].type) == "ID");
    CHECK(toks[0].lookahead == 1);
    CHECK(lang.symbols().name(toks[2].type) == "NUM");
    CHECK(toks[2].length == 1);
    CHECK(toks[2].lookahead == 2);
    CHECK(toks[3].type == kErrorToken);
    CHECK(toks[3].length == 1);
    CHECK(toks[5].type == kErrorToken);
    CHECK(lx.rule_max_lookahead(lang.symbols().id("NUM")) == 2);
}
