#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autobox {

class RegexError : public std::runtime_error {
public:
    RegexError(std::size_t rule, const std::string& msg)
        : std::runtime_error(msg), rule_(rule) {}
    std::size_t rule() const { return rule_; }

private:
    std::size_t rule_;
};

/// Unbounded lookahead marker returned by Dfa::max_lookahead.
inline constexpr std::size_t kUnboundedLookahead = std::numeric_limits<std::size_t>::max();

/// Deterministic byte automaton recognising the union of several token
/// patterns. Each accepting state records the lowest-numbered rule that
/// accepts there, which implements declaration-order tie breaking.
class Dfa {
public:
    static constexpr int kDead = -1;

    /// Compiles `patterns` into a single automaton. Throws RegexError naming
    /// the offending rule index on malformed syntax.
    static Dfa compile(const std::vector<std::string>& patterns);

    int start() const { return 0; }
    int step(int state, unsigned char c) const { return next_[state][c]; }
    int accept(int state) const { return accept_[state]; }
    std::size_t size() const { return accept_.size(); }

    /// Longest number of bytes the automaton may read past an accepting
    /// state before dying, counting the byte that kills it. Returns
    /// kUnboundedLookahead when a live cycle follows an accept state.
    std::size_t max_lookahead() const;

    /// True when some input is accepted.
    bool accepts_something() const;

    /// Full-match test of a whole string (used by tests and validation).
    int match_whole(std::string_view s) const;

private:
    std::vector<std::array<int, 256>> next_;
    std::vector<int> accept_;
};

}  // namespace autobox
