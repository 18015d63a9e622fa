#pragma once

// Builders for the covariant algebras: quantum Euclidean spaces and spheres
// (optionally extended by radii and (x^0)^{-1}), deformed Heisenberg
// algebras, and braided tensor products of M copies of them.

#include "qub/ncalg.hpp"
#include "qub/rmatrix.hpp"

#include <optional>
#include <vector>

namespace qub {

enum class AlgebraKind { quantum_space, heisenberg, free };

struct SpaceSpec {
    Family family = Family::so;
    int n = 3;
    int copies = 1;
    Sign sign = Sign::minus;
    int epsilon = 1;  // Heisenberg only
    AlgebraKind kind = AlgebraKind::quantum_space;
    bool extended = false;
    bool sphere = false;
    RLayout layout = RLayout::first_factor_outer;

    /// Throws UsageError when the combination is invalid.
    void validate() const;
};

/// q-commutation exponent: u t = q^e t u, with e = s_exponent / (2N).
struct QCommExponent {
    int s_exponent = 0;
    int s_per_q = 1;
    Rational e() const;
};

/// A built algebra together with the data it was built from.
struct Space {
    SpaceSpec spec;
    QContext ctx{3};
    IndexScheme scheme;
    TensorOperator rhat;
    TensorOperator rhat_inv;
    Projectors proj;
    std::optional<Metric> metric;
    AlgebraPresentation algebra;
    /// Every defining relation fed to the rule derivation ("= 0").
    std::vector<NCPoly> relations;
    /// Copy carrying r_a, r_a^{-1}, (x^0)^{-1} (extended builds).
    int extended_copy = 0;

    NCPoly x(int copy, int i) const;
    NCPoly d(int copy, int i) const;
    NCPoly r(int copy, int a) const;
    NCPoly rinv(int copy, int a) const;
    NCPoly x0inv(int copy) const;
    /// r_a^2 = sum_{|h|<=a} g_{h,-h} x^h x^{-h} in the given copy.
    NCPoly radius_square(int copy, int a) const;
    /// Generators of one copy, in presentation order.
    std::vector<Generator> copy_generators(int copy) const;
    /// Coordinate generators of every copy.
    std::vector<Generator> coordinate_generators() const;
};

/// Order of the tensor indices inside a copy. For so this is
/// 0, -1, 1, -2, 2, ... (by absolute value, negative first), which keeps
/// the invertible letters (x^0, radii) out of multi-term leading words.
std::vector<int> index_order(const IndexScheme& scheme);

Space build_quantum_space(const SpaceSpec& spec);
Space build_heisenberg(const SpaceSpec& spec);
/// Dispatches on spec.kind (free: generators only, no relations).
Space build_space(const SpaceSpec& spec);

/// Normal-orders square * target and target * square; returns e with
/// square * target = q^{2e} target * square. Throws ConsistencyError when
/// the two are not proportional by a power of q.
QCommExponent derive_qcomm_exponent(const AlgebraPresentation& a, const QContext& ctx, const NCPoly& square,
                                    const NCPoly& target);

/// Sets r_n = r_n^{-1} = 1 in an extended quantum space and re-derives the
/// rules. Throws UsageError if r_n is not central.
Space sphere_quotient(const Space& extended);

/// P_a^{ij}_{hk} x^{c,h} x^{c,k} for every (i,j), nonzero ones only.
std::vector<NCPoly> antisymmetrizer_relations(const Space& s, const std::vector<NCPoly>& v);

} // namespace qub
