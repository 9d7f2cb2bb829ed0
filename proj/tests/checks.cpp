#include "checks.hpp"

#include "autobox/lbox.hpp"
#include "fixtures.hpp"
#include "gen.hpp"
#include "oracles.hpp"

#include <random>
#include <sstream>

namespace autobox::check {

namespace {

using Tokens = std::vector<std::tuple<Symbol, std::size_t, std::size_t>>;

Tokens tree_tokens(const Tree& t) {
    Tokens out;
    auto leaves = t.leaves();
    for (std::size_t i = 1; i + 1 < leaves.size(); ++i)
        out.emplace_back(t.type(leaves[i]), t.leaf_start(i), t.leaf_start(i + 1) - t.leaf_start(i));
    return out;
}

Tokens batch_tokens(const Language& l, std::string_view s) {
    Tokens out;
    for (const auto& lx : l.lexer().lex_all(s)) out.emplace_back(lx.type, lx.start, lx.length);
    return out;
}

// Parses and compares; returns a description of the first mismatch.
std::string compare(Tree& t, const std::string& shadow, bool shapes) {
    if (t.text() != shadow) return "text differs from the shadow buffer";
    auto out = t.parse();
    if (test::frontier(t, t.version()) != shadow) return "frontier differs from the shadow buffer";
    if (tree_tokens(t) != batch_tokens(t.language(), shadow)) return "tokens differ from the batch lexer";
    if (!shapes) return {};
    auto expect = test::batch_parse(t.language(), shadow);
    if (out.accepted != expect.has_value()) return "acceptance differs from the batch parser";
    if (expect) {
        auto got = test::tree_shape(t);
        if (!got || !(*got == *expect)) return "tree differs from the batch parse";
    }
    return {};
}

const char* const kJavaBits[] = {"a", "1", " ", "\n", ";", "(", ")", "{", "}", "=", "+", "\"", "/", ",", "int ",
                                 "return ", "x = 2;", "//", "if (a) { }", "String s = f(1, b);"};
const char* const kSqlBits[] = {"a", "1", " ", ",", "(", ")", "*", "'", "FROM ", "SELECT ", "WHERE ", "+", "=",
                                "AS ", "min(x)", "'q'", "\n", "from"};

template <typename Gen, std::size_t N>
Result scripts(const Language& lang, int count, std::uint64_t seed, const char* const (&bits)[N],
               std::string (*make)(Gen&)) {
    Result r;
    Gen g(seed);
    for (int script = 0; script < count; ++script) {
        ++r.cases;
        std::string s = make(g);
        Tree t(lang, s);
        std::string where = "script " + std::to_string(script) + ": ";
        if (!t.last_outcome().accepted) {
            r.fail(where + "generated document rejected");
            continue;
        }
        struct Undo {
            std::size_t pos, len;
            std::string text;
        };
        std::vector<Undo> undo;
        std::string bad;
        int edits = 1 + g.pick(200);
        for (int e = 0; e < edits && bad.empty(); ++e) {
            std::size_t p = static_cast<std::size_t>(g.pick(static_cast<int>(s.size()) + 1));
            if (g.pick(3) || s.empty()) {
                std::string ins = bits[g.pick(static_cast<int>(N))];
                t.apply_edit(p, 0, ins);
                s.insert(p, ins);
                undo.push_back({p, ins.size(), ""});
            } else {
                std::size_t len = std::min<std::size_t>(s.size() - std::min(p, s.size()), 1 + g.pick(6));
                if (p == s.size()) p = s.size() - 1, len = 1;
                std::string gone = s.substr(p, len);
                t.apply_edit(p, len, "");
                s.erase(p, len);
                undo.push_back({p, 0, gone});
            }
            bad = compare(t, s, true);
        }
        for (auto it = undo.rbegin(); it != undo.rend() && bad.empty(); ++it) {
            t.apply_edit(it->pos, it->len, it->text);
            s.replace(it->pos, it->len, it->text);
            bad = compare(t, s, g.pick(3) == 0);
        }
        if (bad.empty()) bad = compare(t, s, true);
        if (bad.empty() && !t.last_outcome().accepted) bad = "undone document rejected";
        if (!bad.empty()) r.fail(where + bad);
    }
    return r;
}

std::string inner_fragment(const std::string& lang, std::uint64_t seed) {
    if (lang == "MiniSQL") return test::SqlGen(seed).query();
    if (lang == "MiniLua") {
        test::LuaGen g(seed);
        return g.chunk(1 + g.pick(3));
    }
    return test::HtmlGen(seed).element(2);
}

std::string host_fragment(const std::string& comp, std::uint64_t seed) {
    if (comp == "lua_sql") return test::LuaGen(seed).stat(1);
    test::JavaGen g(seed);
    return g.stmt(1, 0);
}

// Typo-like damage so some fragments stop early.
std::string damage(std::string s, std::mt19937_64& rng) {
    static const std::string kChars = "(),;+*<>=\"'{}x1 \n";
    if (s.empty()) return s;
    std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
    std::size_t p = pos(rng);
    if (rng() % 2) s.erase(p, 1);
    else s.insert(p, 1, kChars[rng() % kChars.size()]);
    return s;
}

// Every accepted prefix of the first 60 inner tokens, by batch parsing the prefix text.
std::vector<std::size_t> prefix_oracle(const Language& lang, std::string_view view, std::size_t from,
                                       const StartHint* hint, std::size_t& first, std::size_t& horizon) {
    std::vector<std::size_t> ends;
    std::vector<Lexeme> toks;
    for (auto lx : lang.lexer().lex_all(view.substr(from))) {
        lx.start += from;
        if (!lang.is_whitespace(lx.type)) toks.push_back(lx);
    }
    first = toks.empty() ? from : toks[0].start;
    horizon = toks.size() > 60 ? toks[59].start + toks[59].length : view.size();
    if (toks.empty()) return ends;
    if (hint && toks[0].type != kErrorToken) {
        bool listed = hint->types.count(lang.symbols().name(toks[0].type)) > 0;
        if (listed != (hint->kind == StartHint::Kind::allow)) return ends;
    }
    for (std::size_t k = 0; k < toks.size() && k < 60; ++k) {
        std::size_t end = toks[k].start + toks[k].length;
        if (test::batch_parse(lang, view.substr(first, end - first))) ends.push_back(end);
    }
    return ends;
}

}  // namespace

std::vector<int> scratch_stack(const Tree& t, std::size_t leaf_idx) {
    const auto& tb = t.language().tables();
    std::vector<int> st{0};
    for (std::size_t i = 1; i < leaf_idx; ++i) {
        NodeId l = t.leaves()[i];
        if (t.is_trivia(l)) continue;
        if (!lr_feed(tb, st, t.type(l))) return {};
    }
    NodeId target = t.leaves()[leaf_idx];
    Symbol la = t.kind(target) == NodeKind::eos ? kEos : t.type(target);
    while (true) {
        auto a = tb.action(st.back(), la);
        if (a.kind != LrTables::ActionKind::reduce) break;
        const auto& p = tb.productions()[static_cast<std::size_t>(a.target)];
        st.resize(st.size() - p.rhs.size());
        st.push_back(tb.goto_state(st.back(), p.lhs));
    }
    return st;
}

namespace {

void sample_stacks(const Tree& t, std::mt19937_64& rng, int samples, const std::string& where, Result& r) {
    auto leaves = t.leaves();
    for (int s = 0; s < samples; ++s) {
        std::size_t i = 1 + rng() % (leaves.size() - 1);
        if (t.is_trivia(leaves[i])) continue;
        ++r.cases;
        auto got = recreate_stack(t, leaves[i], t.version());
        if (!got) {
            r.fail(where + ": no stack at leaf " + std::to_string(i));
        } else if (states_of(*got) != scratch_stack(t, i)) {
            r.fail(where + ": stack differs at leaf " + std::to_string(i));
        }
    }
}

}  // namespace

Result batch_equivalence(ScriptLanguage which, int count, std::uint64_t seed) {
    if (which == ScriptLanguage::java)
        return scripts<test::JavaGen>(test::java(), count, seed, kJavaBits,
                                      [](test::JavaGen& g) { return g.program(1 + g.pick(4)); });
    return scripts<test::SqlGen>(test::sql(), count, seed, kSqlBits, [](test::SqlGen& g) { return g.query(); });
}

Result recogniser_oracle(const std::string& composition, const std::string& inner, int triples) {
    Result r;
    auto comp = test::composition(composition);
    const Language& lang = comp->language(inner);
    auto h = comp->spec().hints.find(inner);
    const StartHint* hint = h == comp->spec().hints.end() ? nullptr : &h->second;
    std::mt19937_64 rng(std::hash<std::string>{}(composition));
    for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(triples); ++seed) {
        std::string lead = host_fragment(composition, seed) + " x = ";
        std::string frag = inner_fragment(inner, seed * 7 + 1);
        if (seed % 3 == 0) frag = damage(frag, rng);
        std::string text = lead + frag + (seed % 2 ? ";\n" : " ") + host_fragment(composition, seed + 9000);
        std::size_t from = seed % 5 == 0 ? rng() % text.size() : lead.size();
        std::size_t limit = seed % 4 == 0 ? from + rng() % (text.size() - from + 1) : text.size();
        std::string_view view = std::string_view(text).substr(0, limit);
        std::size_t first = 0, horizon = 0;
        auto expect = prefix_oracle(lang, view, from, hint, first, horizon);
        auto got = recognise(text, from, limit, lang, hint);
        std::vector<std::size_t> ends;
        for (std::size_t e : got.ends) {
            if (e <= horizon) ends.push_back(e);
        }
        ++r.cases;
        if (got.start != first || ends != expect || got.cap_hit) {
            std::ostringstream os;
            os << composition << " seed " << seed << " from " << from << " limit " << limit;
            r.fail(os.str());
        }
    }
    return r;
}

Result stack_oracle(int positions, std::uint64_t seed) {
    Result r;
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; static_cast<int>(r.cases) < positions; ++s) {
        if (s % 3 == 2) {
            test::LuaGen g(seed + s);
            Tree t(test::composition("lua_sql")->outer(), g.chunk(3));
            if (!t.parse().accepted) r.fail("lua chunk rejected");
            sample_stacks(t, rng, 5, "lua " + std::to_string(s), r);
            continue;
        }
        test::JavaGen g(seed + s);
        std::string text = g.program(2 + g.pick(4));
        Tree t(test::java(), text);
        if (!t.parse().accepted) r.fail("java program rejected");
        sample_stacks(t, rng, 4, "java " + std::to_string(s), r);

        // Same after an incremental edit so reused subtrees are involved.
        std::size_t at = text.find("{\n") + 2;
        t.apply_edit(at, 0, g.member());
        if (!t.parse().accepted) r.fail("edited java program rejected");
        sample_stacks(t, rng, 4, "edited java " + std::to_string(s), r);
    }
    return r;
}

}  // namespace autobox::check
