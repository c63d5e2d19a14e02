// core.hpp -- letters, words, substitutions: data model, .sub parsing,
// and the memoized expansion engine for sigma^n(a).
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subst {

// A letter is a single printable character; words are plain strings, so
// concatenation, factor search and slicing are ordinary string operations.
using Letter = char;
using Word = std::string;

// Sorted strings of distinct characters double as letter sets.
using LetterSet = std::string;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct UnknownLetter : ParseError {
    using ParseError::ParseError;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct NotASubstitution : Error {
    using Error::Error;
};
struct NotTame : Error {
    using Error::Error;
};
struct NotIsolated : Error {
    using Error::Error;
};
struct PreconditionFailed : Error {
    using Error::Error;
};
// Internal assertion: a pad iteration outgrew its sound bound on a tame
// input. A bug in the analysis, never a user error.
struct PadDivergence : std::logic_error {
    using std::logic_error::logic_error;
};

// Letters must be printable and must not collide with the .sub syntax.
inline bool valid_letter(char c) {
    return c > 0x20 && c < 0x7f && c != '#' && c != '-' && c != '>';
}

inline LetterSet make_letter_set(std::string_view s) {
    LetterSet out(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool set_contains(const LetterSet& s, Letter a) {
    return std::binary_search(s.begin(), s.end(), a);
}

inline LetterSet set_union(const LetterSet& x, const LetterSet& y) {
    LetterSet out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

inline LetterSet set_intersection(const LetterSet& x, const LetterSet& y) {
    LetterSet out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

// x subset of y
inline bool is_subset(const LetterSet& x, const LetterSet& y) {
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

/// Lett(w): the set of letters occurring in w.
inline LetterSet letters_of(const Word& w) {
    return make_letter_set(w);
}

/// |v|_u: number of occurrences of u in v, overlapping ones included.
inline std::size_t occurrences(const Word& v, const Word& u) {
    if (u.empty())
        throw std::invalid_argument("occurrences: pattern must be nonempty");
    std::size_t n = 0;
    for (std::size_t pos = v.find(u); pos != Word::npos; pos = v.find(u, pos + 1))
        ++n;
    return n;
}

/// u < v (factor relation); the empty word is a factor of everything.
inline bool is_factor(const Word& u, const Word& v) {
    return u.empty() || v.find(u) != Word::npos;
}

/*
 * sigma : A -> A+. Immutable once built. Images are validated to be
 * nonempty and closed over the alphabet: every letter occurring on a
 * right-hand side must have a rule of its own. The alphabet is exactly
 * the set of rule left-hand sides.
 */
class Substitution {
public:
    static Substitution from_rules(std::map<Letter, Word> rules) {
        if (rules.empty())
            throw ParseError("substitution needs at least one rule");
        Substitution s;
        for (const auto& [a, w] : rules) {
            if (!valid_letter(a))
                throw ParseError(std::string("invalid letter '") + a + "'");
            if (w.empty())
                throw ParseError(std::string("empty image for letter '") + a + "'");
            s.alphabet_.push_back(a);
        }
        for (const auto& [a, w] : rules)
            for (char c : w) {
                if (!valid_letter(c))
                    throw ParseError(std::string("invalid letter '") + c + "' in image of '" + a + "'");
                if (rules.find(c) == rules.end())
                    throw UnknownLetter(std::string("image of '") + a + "' uses letter '" + c +
                                        "' which has no rule");
            }
        s.rules_ = std::move(rules);
        return s;
    }

    /// Sorted string of all letters.
    const std::string& alphabet() const { return alphabet_; }
    std::size_t size() const { return alphabet_.size(); }
    bool in_alphabet(Letter a) const { return set_contains(alphabet_, a); }

    const Word& image(Letter a) const {
        auto it = rules_.find(a);
        if (it == rules_.end())
            throw UnknownLetter(std::string("no rule for letter '") + a + "'");
        return it->second;
    }

    const std::map<Letter, Word>& rules() const { return rules_; }

    /// One application of sigma, extended to words by concatenation.
    Word apply(const Word& w) const {
        std::size_t total = 0;
        for (char c : w)
            total += image(c).size();
        Word out;
        out.reserve(total);
        for (char c : w)
            out += image(c);
        return out;
    }

    /// Canonical .sub text; parse(serialize()) is the identity.
    std::string serialize() const {
        std::string out;
        for (const auto& [a, w] : rules_) {
            out += a;
            out += " -> ";
            out += w;
            out += '\n';
        }
        return out;
    }

private:
    Substitution() = default;
    std::map<Letter, Word> rules_;
    std::string alphabet_;
};

/*
 * Parses the .sub format: one rule per line, `<letter> -> <word>`, where the
 * word is a run of letters with no separators. Spaces around the arrow are
 * optional, `#` starts a comment, blank lines are ignored.
 *
 * Letters occurring in images without a rule of their own raise
 * UnknownLetter. Letters with a rule that occur in no image are legal; a
 * warning is recorded for each when `warnings` is given.
 */
inline Substitution parse_substitution(std::string_view text,
                                       std::vector<std::string>* warnings = nullptr) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    };

    std::map<Letter, Word> rules;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        auto fail = [&](const std::string& msg) -> void {
            throw ParseError("line " + std::to_string(line_no) + ": " + msg);
        };

        std::size_t arrow = line.find("->");
        if (arrow == std::string_view::npos)
            fail("expected '<letter> -> <word>'");
        std::string_view lhs = trim(line.substr(0, arrow));
        std::string_view rhs = trim(line.substr(arrow + 2));
        if (lhs.size() != 1 || !valid_letter(lhs[0]))
            fail("left-hand side must be a single letter");
        if (rhs.empty())
            fail(std::string("empty image for letter '") + lhs[0] + "'");
        for (char c : rhs)
            if (!valid_letter(c))
                fail(std::string("invalid letter '") + c + "' in image");
        if (!rules.emplace(lhs[0], Word(rhs)).second)
            fail(std::string("duplicate rule for letter '") + lhs[0] + "'");
    }
    if (rules.empty())
        throw ParseError("no rules found");

    Substitution sub = Substitution::from_rules(std::move(rules));
    if (warnings) {
        LetterSet used;
        for (const auto& [a, w] : sub.rules())
            used = set_union(used, letters_of(w));
        for (Letter a : sub.alphabet())
            if (!set_contains(used, a))
                warnings->push_back(std::string("letter '") + a + "' does not occur in any image");
    }
    return sub;
}

/*
 * Work limits for expansions. Results longer than max_length, or powers
 * beyond max_power, raise BudgetExceeded; words are never truncated, since a
 * truncated word would corrupt every factor set derived from it.
 */
struct ExpansionBudget {
    std::size_t max_length = 1'000'000;
    int max_power = 64;
};

/*
 * Memoized computation of sigma^n(a), keyed by (letter, power). Lengths are
 * computed arithmetically (with saturation) before any word is materialized,
 * so an over-budget request fails cheaply. One Expander per analysis
 * session; instances are not synchronized.
 */
class Expander {
public:
    explicit Expander(const Substitution& sub) : sub_(&sub) {}

    static constexpr std::uint64_t length_saturation = std::uint64_t(1) << 62;

    /// |sigma^n(a)|, saturating at length_saturation.
    std::uint64_t length(Letter a, int n) {
        if (n < 0)
            throw std::invalid_argument("power must be >= 0");
        if (n == 0)
            return 1;
        auto key = std::make_pair(a, n);
        if (auto it = lengths_.find(key); it != lengths_.end())
            return it->second;
        std::uint64_t total = 0;
        for (char c : sub_->image(a)) {
            std::uint64_t x = length(c, n - 1);
            total = (total > length_saturation - x) ? length_saturation : total + x;
        }
        if (total > length_saturation)
            total = length_saturation;
        lengths_.emplace(key, total);
        return total;
    }

    std::uint64_t word_length(const Word& w, int n) {
        std::uint64_t total = 0;
        for (char c : w) {
            std::uint64_t x = length(c, n);
            total = (total > length_saturation - x) ? length_saturation : total + x;
        }
        return total;
    }

    /// sigma^n(a); sigma^0(a) = a.
    const Word& power(Letter a, int n, const ExpansionBudget& budget = {}) {
        check(n, length(a, n), budget);
        return build(a, n);
    }

    /// sigma^n(w), letterwise.
    Word word_power(const Word& w, int n, const ExpansionBudget& budget = {}) {
        check(n, word_length(w, n), budget);
        Word out;
        out.reserve(static_cast<std::size_t>(word_length(w, n)));
        for (char c : w)
            out += build(c, n);
        return out;
    }

    const Substitution& substitution() const { return *sub_; }

private:
    void check(int n, std::uint64_t len, const ExpansionBudget& budget) const {
        if (budget.max_length == 0 || budget.max_power <= 0)
            throw std::invalid_argument("budget bounds must be positive");
        if (n < 0)
            throw std::invalid_argument("power must be >= 0");
        if (n > budget.max_power)
            throw BudgetExceeded("power " + std::to_string(n) + " exceeds budget max_power " +
                                 std::to_string(budget.max_power));
        if (len > budget.max_length)
            throw BudgetExceeded("expansion of length " + std::to_string(len) +
                                 " exceeds budget max_length " + std::to_string(budget.max_length));
    }

    const Word& build(Letter a, int n) {
        auto key = std::make_pair(a, n);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Word w;
        if (n == 0) {
            w.assign(1, a);
        } else {
            for (char c : sub_->image(a))
                w += build(c, n - 1);
        }
        return memo_.emplace(key, std::move(w)).first->second;
    }

    const Substitution* sub_;
    std::map<std::pair<Letter, int>, Word> memo_;
    std::map<std::pair<Letter, int>, std::uint64_t> lengths_;
};

/// One-shot sigma^n(a) without a shared memo.
inline Word expand(const Substitution& sub, Letter a, int n, const ExpansionBudget& budget = {}) {
    Expander e(sub);
    return e.power(a, n, budget);
}

/*
 * Reachability matrix of the one-step letter graph (edge c -> d iff d occurs
 * in sigma(c)), closed transitively over paths of length >= 1. Indices
 * follow the alphabet order. r[i][i] is true only for letters on a genuine
 * cycle, never by reflexivity.
 */
inline std::vector<std::vector<bool>> letter_reachability(const Substitution& sub) {
    const std::string& a = sub.alphabet();
    const std::size_t n = a.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (char c : sub.image(a[i]))
            r[i][a.find(c)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j])
                        r[i][j] = true;
    return r;
}

} // namespace subst
