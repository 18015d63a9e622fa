#pragma once

// Rendering of polynomials: parseable text, LaTeX and exact JSON strings.

#include "qub/ncalg.hpp"
#include "qub/rmatrix.hpp"

#include <string>

namespace qub {

/// Text that parse_expression reads back: terms "(coef)*x[1,0]*r[1,1]".
std::string format_text(const NCPoly& p, const AlgebraPresentation& a, const QContext& ctx);
/// Same layout with exact s-exponents (used in JSON documents).
std::string format_exact(const NCPoly& p, const AlgebraPresentation& a);
/// LaTeX: x^{\alpha,i} with so(3) indices shown as -, 0, +; r_a^{-1} and
/// (x^0)^{-1} rendered as fractions when they lead a term.
std::string format_latex(const NCPoly& p, const AlgebraPresentation& a, const QContext& ctx, const IndexScheme& scheme);
std::string latex_generator(const Generator& g, const IndexScheme& scheme);

} // namespace qub
