#include "autobox/language.hpp"

namespace autobox {

Lexer::Lexer(const GrammarSpec& g, const SymbolTable& symbols) {
    std::vector<std::string> patterns;
    for (const auto& r : g.token_rules) {
        patterns.push_back(r.pattern);
        rule_symbol_.push_back(symbols.id(r.type));
    }
    dfa_ = Dfa::compile(patterns);
    max_lookahead_.assign(static_cast<std::size_t>(symbols.num_terminals()), 1);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        max_lookahead_[static_cast<std::size_t>(rule_symbol_[i])] = Dfa::compile({patterns[i]}).max_lookahead();
    }
}

Lexeme Lexer::next(std::string_view text, std::size_t pos) const {
    int state = dfa_.start();
    std::size_t best_end = pos;
    int best_rule = -1;
    std::size_t p = pos;
    while (p < text.size()) {
        state = dfa_.step(state, static_cast<unsigned char>(text[p]));
        if (state == Dfa::kDead) break;
        ++p;
        if (dfa_.accept(state) >= 0) {
            best_rule = dfa_.accept(state);
            best_end = p;
        }
    }
    // p is the first byte not consumed (or text.size()).
    if (best_rule < 0 || best_end == pos) {
        return {kErrorToken, pos, 1, p > pos ? p - pos : 1};
    }
    return {rule_symbol_[static_cast<std::size_t>(best_rule)], pos, best_end - pos, p - best_end + 1};
}

std::vector<Lexeme> Lexer::lex_all(std::string_view text) const {
    std::vector<Lexeme> out;
    for (std::size_t pos = 0; pos < text.size();) {
        out.push_back(next(text, pos));
        pos += out.back().length;
    }
    return out;
}

std::size_t Lexer::rule_max_lookahead(Symbol type) const {
    if (type < 0 || static_cast<std::size_t>(type) >= max_lookahead_.size()) return 1;
    return max_lookahead_[static_cast<std::size_t>(type)];
}

Language::Language(GrammarSpec spec)
    : spec_(std::move(spec)), tables_(build_lr_tables(spec_)), lexer_(spec_, tables_.symbols()) {
    ws_.assign(static_cast<std::size_t>(symbols().num_terminals()), false);
    for (const auto& w : spec_.whitespace_types) ws_[static_cast<std::size_t>(symbols().id(w))] = true;
    newline_ = symbols().id(spec_.newline_type);
}

Composition::Composition(CompositionSpec spec, std::map<std::string, std::shared_ptr<const Language>> langs)
    : spec_(std::move(spec)), langs_(std::move(langs)) {
    if (!langs_.count(spec_.outer)) throw GrammarError("composition lacks outer language " + spec_.outer);
    for (const auto& sym : outer().spec().lbox_symbols) {
        if (!spec_.members.count(sym))
            throw GrammarError("lbox symbol " + sym + " of " + spec_.outer + " has no member entry");
    }
    for (const auto& [sym, lang] : spec_.members) {
        if (!langs_.count(lang)) throw GrammarError("unknown inner language " + lang);
        auto hint = spec_.hints.find(lang);
        if (hint == spec_.hints.end()) continue;
        for (const auto& t : hint->second.types) {
            if (!langs_.at(lang)->spec().is_token(t))
                throw GrammarError("hint names unknown token type " + t + " of " + lang);
        }
    }
}

std::shared_ptr<const Composition> Composition::load(const std::filesystem::path& file,
                                                     const std::vector<std::filesystem::path>& search_dirs) {
    CompositionSpec spec = load_composition_spec(file);
    std::vector<std::filesystem::path> dirs{file.parent_path()};
    dirs.insert(dirs.end(), search_dirs.begin(), search_dirs.end());
    auto find = [&](const std::string& id) {
        for (const auto& d : dirs) {
            auto p = d / (id + ".grammar");
            if (std::filesystem::exists(p)) return p;
            p = d.parent_path() / "grammars" / (id + ".grammar");
            if (std::filesystem::exists(p)) return p;
        }
        throw GrammarError("no grammar file for language " + id);
    };
    std::map<std::string, std::shared_ptr<const Language>> langs;
    auto load_lang = [&](const std::string& id) {
        if (langs.count(id)) return;
        auto g = load_grammar_spec(find(id));
        if (g.name != id) throw GrammarError("grammar file for " + id + " declares %name " + g.name);
        langs.emplace(id, std::make_shared<const Language>(std::move(g)));
    };
    load_lang(spec.outer);
    for (const auto& [sym, id] : spec.members) load_lang(id);
    return std::make_shared<const Composition>(std::move(spec), std::move(langs));
}

std::vector<std::pair<Symbol, const Language*>> Composition::inner_of(const Language& host) const {
    std::vector<std::pair<Symbol, const Language*>> out;
    for (const auto& sym : host.spec().lbox_symbols) {
        auto m = spec_.members.find(sym);
        if (m == spec_.members.end()) continue;
        out.emplace_back(host.symbols().id(sym), langs_.at(m->second).get());
    }
    return out;
}

}  // namespace autobox
