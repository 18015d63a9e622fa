#pragma once

// Noncommutative polynomials over Scalar, presentations by rewrite rules,
// normal forms, overlap (diamond-lemma) confluence checks and counting of
// normal words.

#include "qub/scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qub {

enum class GenKind : std::uint8_t {
    rad = 0,   // r_a
    rinv = 1,  // r_a^{-1}
    xinv = 2,  // (x^i)^{-1}, e.g. (x^0)^{-1} for odd N
    x = 3,     // coordinate x^{alpha,i}
    d = 4,     // derivative d_{alpha,i}
};

struct Generator {
    int copy = 1;
    GenKind kind = GenKind::x;
    int index = 0;  // tensor index for x/d/xinv, radius level for rad/rinv

    bool operator==(const Generator&) const = default;
};

using GenId = std::uint32_t;

GenId encode(const Generator& g);
Generator decode(GenId id);
/// Plain-text token: x[a,i], d[a,i], r[a,k], rinv[a,k], xinv[a,i]
std::string token(const Generator& g);

using Word = std::vector<GenId>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Finite linear combination of words. Zero coefficients are never stored.
class NCPoly {
public:
    using Terms = std::map<Word, Scalar>;

    NCPoly() = default;
    static NCPoly constant(const Scalar& c);
    static NCPoly gen(const Generator& g, const Scalar& c = Scalar(1L));
    static NCPoly word(Word w, const Scalar& c = Scalar(1L));

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }
    /// Coefficient of the empty word.
    Scalar constant_term() const;
    Scalar coeff(const Word& w) const;
    std::size_t max_length() const;

    void add_term(const Word& w, const Scalar& c);
    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    NCPoly operator-() const;
    /// Concatenation product (no rewriting).
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
    NCPoly scaled(const Scalar& s) const;
    NCPoly map_coeffs(const std::function<Scalar(const Scalar&)>& fn) const;

    bool operator==(const NCPoly& o) const = default;

private:
    Terms terms_;
};

struct Rule {
    Word lhs;
    NCPoly rhs;
};

/// Free-form description attached to a presentation.
struct PresentationInfo {
    std::string label;
    int copies = 1;
    /// Copy M is the lowest level instead of copy 1 (mirror order, used
    /// with the + braiding).
    bool reversed_levels = false;
};

/// Ordered generators plus inter-reduced rewrite rules.
///
/// Word order: generators carry a level (their copy) and a rank (position
/// within the copy's block of the generator list). Words over one level are
/// compared degree-lexicographically. Words over several levels compare the
/// number of top-level letters first, then the lower-level segments between
/// top-level letters from right to left, then the top-level letters
/// lexicographically. This is a reduction order in which moving
/// lower-copy letters to the left of higher-copy letters always decreases,
/// whatever the lower-copy material produced.
class AlgebraPresentation {
public:
    AlgebraPresentation() = default;
    AlgebraPresentation(std::vector<Generator> generators, PresentationInfo info);

    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const PresentationInfo& info() const { return info_; }
    PresentationInfo& info() { return info_; }
    bool has_generator(const Generator& g) const;
    bool has_generator(GenId id) const { return key_.count(id) != 0; }

    /// -1, 0, +1
    int compare(std::span<const GenId> a, std::span<const GenId> b) const;
    /// Largest word of p under the order.
    Word leading_word(const NCPoly& p) const;

    /// Registers u and u_inv as mutually inverse letters (used by monomial
    /// inversion); the rules u u_inv -> 1, u_inv u -> 1 must be supplied
    /// separately.
    void declare_inverse(const Generator& u, const Generator& u_inv);
    std::optional<GenId> inverse_of(GenId g) const;

    /// Appends already-directed rules; each rhs word must be smaller than
    /// the lhs (throws ConsistencyError otherwise).
    void add_rules(const std::vector<Rule>& rules);
    /// Replaces the rule set. Used by the builders after inter-reduction.
    void set_rules(std::vector<Rule> rules);
    std::optional<std::size_t> find_rule(const Word& lhs) const;

    /// Sorted copy of p's terms by the presentation order, largest first.
    std::vector<std::pair<Word, Scalar>> sorted_terms(const NCPoly& p) const;

private:
    std::vector<Generator> gens_;
    std::unordered_map<GenId, std::pair<int, int>> key_;  // level, rank
    std::vector<Rule> rules_;
    std::map<GenId, GenId> inverse_;
    PresentationInfo info_;

    int compare_level(std::span<const GenId> a, std::span<const GenId> b, int level) const;
};

/// Default rewrite budget (number of rule applications per normal_form
/// call); overridden by the QUB_STEP_BUDGET environment variable.
std::size_t default_step_budget();

/// Normal-form engine for one presentation. Keeps a memo of reduced
/// products; not thread-safe, create one per thread.
class Reducer {
public:
    explicit Reducer(const AlgebraPresentation& a, std::size_t budget = default_step_budget());

    NCPoly normal_form(const NCPoly& p);
    NCPoly normal_form(const Word& w);
    /// nf(nf(a) * nf(b))
    NCPoly multiply(const NCPoly& a, const NCPoly& b);
    /// [a, b]_x = ab - x ba, normalized.
    NCPoly commutator(const NCPoly& a, const NCPoly& b, const Scalar& x = Scalar(1L));
    bool is_normal(const Word& w) const;
    const AlgebraPresentation& presentation() const { return a_; }

private:
    // nf(a * w) for a letter a and a normal word w.
    const NCPoly& prepend(GenId a, const Word& w);
    // nf(u * v) for an arbitrary word u and a normal polynomial v.
    NCPoly prepend_word(std::span<const GenId> u, const NCPoly& v);
    void tick(const Word& w);

    const AlgebraPresentation& a_;
    std::size_t budget_;
    std::size_t steps_ = 0;
    std::unordered_map<GenId, std::size_t> rule1_;
    std::unordered_map<std::uint64_t, std::size_t> rule2_;
    std::unordered_map<Word, NCPoly, WordHash> memo_;
};

using PolyMatrix = std::vector<std::vector<NCPoly>>;

/// Inverse of c * w for an invertible monomial: c^{-1} times the reversed
/// word of inverse letters. Throws DegenerateError otherwise.
NCPoly monomial_inverse(const NCPoly& m, const AlgebraPresentation& a);

enum class Triangularity { diagonal, lower, upper };
std::string to_string(Triangularity t);

struct TriangularInverse {
    PolyMatrix inverse;
    Triangularity shape = Triangularity::diagonal;
};

/// Two-sided inverse of a triangular matrix over the algebra whose diagonal
/// entries are invertible monomials, by back-substitution. Row/column
/// positions are the matrix positions. Throws DegenerateError when the
/// matrix is not triangular, a diagonal entry is not invertible, or the
/// result fails the two-sided check.
TriangularInverse triangular_inverse(const PolyMatrix& t, Reducer& red);

/// Convenience one-shot normal form.
NCPoly normal_form(const NCPoly& p, const AlgebraPresentation& a);

/// Row-reduces `relations` (each meaning "= 0") together with the rules of
/// `base` and returns `base` with the resulting inter-reduced rule set.
/// Throws DegenerateError when the relations force 1 = 0 or express a
/// generator through smaller terms.
AlgebraPresentation derive_rewrite_rules(const std::vector<NCPoly>& relations, const AlgebraPresentation& base);

struct OverlapResidual {
    Word overlap;
    std::size_t rule_a = 0;
    std::size_t rule_b = 0;
    NCPoly residual;
};

struct ConfluenceReport {
    std::size_t ambiguities = 0;
    std::vector<OverlapResidual> residuals;
    bool pass() const { return residuals.empty(); }
};

/// Resolves every overlap/inclusion ambiguity among rule leading words of
/// total length <= max_degree in both orders and collects the nonzero
/// differences. Ambiguities are processed on `threads` workers and merged
/// in a fixed order.
ConfluenceReport overlap_confluence_check(const AlgebraPresentation& a, int max_degree, unsigned threads = 0);

/// Number of normal words of length d (optionally only over `alphabet`).
std::uint64_t hilbert_count(const AlgebraPresentation& a, int d, const std::vector<Generator>* alphabet = nullptr);

} // namespace qub
