#pragma once

#include <string>
#include <vector>

#include "quatlat/quaternion.hpp"

namespace quatlat {

/* Generator matrix of the twisted embedding at a fixed precision: entry
 * enclosures are certified, row order matches z_basis, columns run
 * coordinate-major (x,y,z,t blocks) with the n embeddings inside each block. */
struct FloatGenerator {
    std::vector<std::vector<Interval>> rows;
    mpfr_prec_t precision_bits = 0;
};

/* Diagnostics for one twist candidate examined on the quartic branch. */
struct TwistCandidateDiag {
    int c = 0;            // numerator scaling: alpha0 = c / (s * f'(r))
    int s_den = 0;        // denominator of the s-form: s = (r^3 - m r^2 - 5 r + m)/s_den
    mpq_class norm_alpha; // exact Nm(alpha)
    bool unit_found = false;
    int unit_a = 0, unit_b = 0, unit_sign = 0;  // alpha = sign * r^a * sigma(r)^b * alpha0
    bool integral = false, even = false;
    mpq_class gram_det;   // set when a totally positive adjustment exists
    bool selected = false;
};

struct TwistedLattice {
    FieldPtr F;
    QuaternionOrder order;
    FieldElement alpha;
    std::vector<QuaternionElement> z_basis;
    MatQ gram;
    std::string expected_class;                  // E8 | E8xE8 | BarnesWall16
    std::vector<TwistCandidateDiag> selection_log;  // quartic branch only
};

/* The 4n products a_r * g_s: order generator s outer, integral-basis element
 * r inner. */
std::vector<QuaternionElement> z_basis(const QuaternionOrder& O);

/* Entry (u,v) = Tr_{F/Q}(alpha * Tr_B(b_u * conj(b_v))), exact. */
MatQ exact_gram(const QuaternionOrder& O, const FieldElement& alpha);

FloatGenerator generator_matrix(const QuaternionOrder& O, const FieldElement& alpha,
                                mpfr_prec_t precision_bits);

/* Certified upper bound on max |(M M^T - G)_{uv}| / max |G_{uv}|. */
double generator_deviation(const FloatGenerator& M, const MatQ& G);

/* Determinant of the Gram matrix of the lattice (O, alpha) predicted from
 * field data alone: (Nm(alpha)^2 * d_F^2 * Nm(D_O))^2, with the ideal-norm
 * factor 1 since I = O. Requires O maximal so that D_O = D_B is known. */
mpq_class det_via_formula(const QuaternionOrder& O, const FieldElement& alpha);

/* Twist for quadratic fields: alpha = 1/(eps * t) with eps the fundamental
 * solution of x^2 - D y^2 = -1 and t = sqrt(D) (D = 1 mod 4) or 2 sqrt(D);
 * totally positive with Nm(alpha) = 1/d_F. */
FieldElement twist_E8(const FieldPtr& F);

struct QuarticTwist {
    FieldElement alpha;
    std::string expected_class;  // E8xE8 | BarnesWall16
    std::vector<TwistCandidateDiag> log;
};

/* Twist for simplest quartic fields, v2(m) in {1,2}; candidates are validated
 * by exact integrality/evenness/determinant, never trusted. */
QuarticTwist twist_quartic(const FieldPtr& F);

/* Full pipeline: field, explicit maximal order, twist, Z-basis, exact Gram,
 * with the Gram validated (integral, even, det equal to det_via_formula). */
TwistedLattice construct_quadratic(long D);
TwistedLattice construct_quartic(long m);

} // namespace quatlat
