#include "autobox/tree.hpp"
#include "checks.hpp"
#include "fixtures.hpp"
#include "gen.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace autobox;
using autobox::test::batch_parse;
using autobox::test::tree_shape;

namespace {

std::vector<std::tuple<Symbol, std::size_t, std::size_t>> tree_tokens(const Tree& t) {
    std::vector<std::tuple<Symbol, std::size_t, std::size_t>> out;
    auto leaves = t.leaves();
    for (std::size_t i = 1; i + 1 < leaves.size(); ++i)
        out.emplace_back(t.type(leaves[i]), t.leaf_start(i), t.leaf_start(i + 1) - t.leaf_start(i));
    return out;
}

std::vector<std::tuple<Symbol, std::size_t, std::size_t>> batch_tokens(const Language& l, std::string_view s) {
    std::vector<std::tuple<Symbol, std::size_t, std::size_t>> out;
    for (const auto& lx : l.lexer().lex_all(s)) out.emplace_back(lx.type, lx.start, lx.length);
    return out;
}

void check_against_batch(Tree& t, const std::string& shadow) {
    REQUIRE(t.text() == shadow);
    REQUIRE(test::frontier(t, t.version()) == shadow);
    REQUIRE(tree_tokens(t) == batch_tokens(t.language(), shadow));
    auto out = t.parse();
    REQUIRE(test::frontier(t, t.version()) == shadow);
    auto expect = batch_parse(t.language(), shadow);
    REQUIRE(out.accepted == expect.has_value());
    if (expect) {
        auto got = tree_shape(t);
        REQUIRE(got.has_value());
        REQUIRE(*got == *expect);
    }
}

Symbol sym(const Language& l, const char* name) { return l.symbols().id(name); }

}  // namespace

TEST_CASE("bundled grammars build without conflicts") {
    for (const char* c : {"java_sql", "lua_sql", "java_lua", "java_html"}) {
        auto comp = test::composition(c);
        CHECK(comp->outer().has_lboxes());
        CHECK(comp->inner_of(comp->outer()).size() == 1);
    }
}

TEST_CASE("host grammar exposes its box symbol") {
    const Language& j = test::java();
    Symbol box = sym(j, "<MiniSQL>");
    CHECK(j.symbols().is_lbox(box));

    // After `int x =` a box is acceptable; right after `(` of a parameter list it is not.
    Tree t(j, "class A { int x = ");
    auto st = t.last_outcome().stack;
    std::vector<int> states;
    for (const auto& e : st) states.push_back(e.state);
    CHECK(j.tables().can_shift_lbox(std::span<const int>(states), box));

    Tree u(j, "class A { int f( ");
    states.clear();
    for (const auto& e : u.last_outcome().stack) states.push_back(e.state);
    CHECK_FALSE(j.tables().can_shift_lbox(std::span<const int>(states), box));
}

TEST_CASE("apply_edit produces the expected frontier") {
    Tree t(test::java(), "class A { int x = 1; }");
    CHECK(t.last_outcome().accepted);
    Version v0 = t.version();
    t.apply_edit(18, 1, "42");
    CHECK(t.text() == "class A { int x = 42; }");
    t.parse();
    CHECK(t.last_outcome().accepted);
    CHECK(test::frontier(t, v0) == "class A { int x = 1; }");
    CHECK_THROWS_AS(t.apply_edit(100, 0, "x"), std::out_of_range);
    CHECK_THROWS_AS(t.apply_edit(20, 5, ""), std::out_of_range);
}

TEST_CASE("relexing merges and splits tokens like a batch lexer") {
    const Language& j = test::java();
    Tree t(j, "class A { int x = 1 / 2; }");
    std::string s = t.text();
    SUBCASE("comment swallows the rest of the line") {
        auto p = s.find("/ 2");
        t.apply_edit(p + 1, 0, "/");
        s.insert(p + 1, "/");
        check_against_batch(t, s);
        CHECK_FALSE(t.last_outcome().accepted);
    }
    SUBCASE("unterminated string") {
        auto p = s.find('1');
        t.apply_edit(p, 1, "\"abc");
        s.replace(p, 1, "\"abc");
        check_against_batch(t, s);
        t.apply_edit(p + 4, 0, "\"");
        s.insert(p + 4, "\"");
        check_against_batch(t, s);
        CHECK(t.last_outcome().accepted);
    }
    SUBCASE("identifier grows across a space") {
        auto p = s.find("int x");
        t.apply_edit(p + 3, 1, "");
        s.erase(p + 3, 1);
        check_against_batch(t, s);
        CHECK(t.type(t.leaves()[t.leaf_at(p)]) == sym(j, "ID"));
    }
}

TEST_CASE("an unedited token keeps its node across edits") {
    Tree t(test::java(), "class A { int count = 1; }");
    NodeId id = t.leaves()[t.leaf_at(14)];
    REQUIRE(t.value(id) == "count");
    t.apply_edit(t.text().find('1'), 1, "2");
    t.parse();
    CHECK(t.leaves()[t.leaf_at(14)] == id);
    // Typing at the end of a token extends the same node.
    t.apply_edit(19, 0, "s");
    CHECK(t.value(id) == "counts");
}

TEST_CASE("missing expression is isolated in its statement") {
    const Language& j = test::java();
    Tree t(j, "class A {\n    void f() {\n        int y = 2;\n        int x = 1;\n    }\n}\n");
    REQUIRE(t.last_outcome().accepted);
    auto p = t.text().find("1;");
    t.apply_edit(p, 1, "");
    auto out = t.parse();
    CHECK_FALSE(out.accepted);
    REQUIRE(out.error_nodes.size() >= 1);
    // The erroneous `;` and an enclosing statement-level node are marked; the
    // preceding statement is untouched.
    NodeId semi = t.leaves()[t.leaf_at(p)];
    CHECK(t.value(semi) == ";");
    CHECK(t.error(semi));
    bool isolated = false;
    for (NodeId n : out.error_nodes) isolated |= !t.is_leaf(n);
    CHECK(isolated);
    NodeId y = t.leaves()[t.leaf_at(t.text().find("y = 2"))];
    for (NodeId a = t.parent(y); a != t.root(); a = t.parent(a)) CHECK_FALSE(t.error(a));
    CHECK(test::frontier(t, t.version()) == t.text());
    const auto* st = t.error_stack(semi);
    REQUIRE(st != nullptr);
    CHECK(st->back().node == t.leaves()[t.leaf_at(p - 2)]);  // the `=` token
    CHECK(out.new_errors == out.error_nodes);

    // Repairing the hole clears every mark.
    t.apply_edit(p, 0, "7");
    out = t.parse();
    CHECK(out.accepted);
    CHECK(out.error_nodes.empty());
}

TEST_CASE("errors persist until fixed and are only new once") {
    Tree t(test::java(), "class A { int x = ; }");
    auto first = t.last_outcome();
    REQUIRE_FALSE(first.accepted);
    CHECK_FALSE(first.new_errors.empty());
    t.apply_edit(t.text().size() - 1, 0, " ");
    auto second = t.parse();
    CHECK_FALSE(second.accepted);
    CHECK(second.new_errors.empty());
}

TEST_CASE("parse without edits is a no-op") {
    Tree t(test::java(), "class A { }");
    auto n = t.node_count();
    auto out = t.parse();
    CHECK_FALSE(out.reparsed);
    CHECK(out.accepted);
    CHECK(t.node_count() == n);
}

TEST_CASE("traversal") {
    const Language& j = test::java();
    Tree t(j, "class A { int x; }");
    Version v = t.version();
    NodeId cls = t.leaves()[1];
    CHECK(t.value(cls) == "class");
    CHECK(t.prev_terminal(cls, v) == t.bos());
    NodeId ws = t.next_terminal(cls, v);
    CHECK(t.is_trivia(ws));
    NodeId a = t.next_terminal(ws, v);
    CHECK(t.value(a) == "A");
    CHECK(t.next_terminal(t.leaves()[t.leaves().size() - 2], v) == t.eos());
    CHECK(t.next_terminal(t.eos(), v) == kNoNode);
    // Preorder successor of the root is its first child.
    CHECK(t.next_lookahead(t.root(), v) == t.bos());
    NodeId prog = t.children(t.root())[1];
    CHECK(t.next_lookahead(prog, v) == t.children(prog)[0]);
    CHECK(t.first_leaf(prog, v) == cls);
}

TEST_CASE("revert restores an earlier version exactly") {
    Tree t(test::java(), "class A { int x = 1; }");
    Version v0 = t.version();
    auto shape0 = tree_shape(t);
    auto errs0 = t.error_nodes();
    t.apply_edit(18, 1, "");
    t.parse();
    REQUIRE_FALSE(t.last_outcome().accepted);
    t.revert_to(v0);
    CHECK(t.text() == "class A { int x = 1; }");
    CHECK(tree_shape(t) == shape0);
    CHECK(t.error_nodes() == errs0);
    CHECK_FALSE(t.needs_parse());
    // Editing after a revert keeps working incrementally.
    t.apply_edit(18, 1, "5");
    check_against_batch(t, "class A { int x = 5; }");
}

TEST_CASE("old versions are unaffected by later edits") {
    test::JavaGen g(7);
    std::string s = g.program(4);
    Tree t(test::java(), s);
    std::vector<std::pair<Version, std::string>> seen{{t.version(), s}};
    for (int i = 0; i < 30; ++i) {
        std::size_t p = static_cast<std::size_t>(g.pick(static_cast<int>(s.size())));
        if (g.pick(2)) {
            t.apply_edit(p, 0, "x");
            s.insert(p, "x");
        } else {
            t.apply_edit(p, 1, "");
            s.erase(p, 1);
        }
        t.parse();
        seen.emplace_back(t.version(), s);
    }
    for (const auto& [v, text] : seen) CHECK(test::frontier(t, v) == text);
}

TEST_CASE("small edits reuse the unchanged structure") {
    test::JavaGen g(11);
    std::string s = g.program(120);
    Tree t(test::java(), s);
    REQUIRE(t.last_outcome().accepted);
    auto p = s.rfind("}\n    ");  // last method or member boundary
    t.apply_edit(p, 0, " ");
    auto out = t.parse();
    CHECK(out.accepted);
    CHECK(out.nodes_created < 60);
}

TEST_CASE("incremental parse matches batch parse on random edit scripts") {
    for (auto which : {check::ScriptLanguage::java, check::ScriptLanguage::sql}) {
        auto r = check::batch_equivalence(which, 150, which == check::ScriptLanguage::java ? 1234 : 99);
        INFO(r.first_failure);
        CHECK(r.cases == 150);
        CHECK(r.failures == 0);
    }
}
