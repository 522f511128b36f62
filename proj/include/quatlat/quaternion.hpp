#pragma once

#include <array>
#include <optional>
#include <string>

#include "quatlat/field.hpp"

namespace quatlat {

/* Element of B = (-1,-1 / F): coordinates over {1, i, j, k} with
 * i^2 = j^2 = -1 and ij = -ji = k. */
struct QuaternionElement {
    FieldElement x, y, z, t;
};

QuaternionElement quat(const FieldElement& x, const FieldElement& y,
                       const FieldElement& z, const FieldElement& t);
QuaternionElement quat_one(const FieldPtr& F);

QuaternionElement quat_add(const QuaternionElement& a, const QuaternionElement& b);
QuaternionElement quat_mul(const QuaternionElement& a, const QuaternionElement& b);
QuaternionElement quat_scale(const FieldElement& s, const QuaternionElement& a);
bool quat_eq(const QuaternionElement& a, const QuaternionElement& b);

QuaternionElement conj(const QuaternionElement& q);
FieldElement reduced_trace(const QuaternionElement& q);   // 2x
FieldElement reduced_norm(const QuaternionElement& q);    // x^2+y^2+z^2+t^2

/* Absolute norm of an ideal of Z_F; every discriminant ideal arising here is
 * Z_F (norm 1) or 2 Z_F (norm 2^n). */
struct IdealNormDescriptor {
    mpz_class value;
};

struct QuaternionOrder {
    FieldPtr F;
    std::array<QuaternionElement, 4> generators;  // Z_F-basis
    std::string provenance;                       // which construction produced it
};

/* Norm of D_B for B = (-1,-1/F), by the case analysis on the field degree:
 * n = 2: 2 Z_F iff d_F = 1 (mod 8), else Z_F; n a power of two: Z_F;
 * n odd: 2 Z_F; n = 2^k * m' with odd m' > 1: 2 Z_F iff the caller-supplied
 * local degree n2 at 2 is odd. */
IdealNormDescriptor algebra_disc_norm_cases(long degree, const mpz_class& d_F,
                                            std::optional<long> n2);
IdealNormDescriptor algebra_discriminant(const FieldPtr& F,
                                         std::optional<long> n2 = std::nullopt);

/* Positive integer square root of |Nm(det(Tr_B(g_i g_j)))|. */
IdealNormDescriptor order_disc_norm(const QuaternionOrder& O);

/* True iff 1 lies in the Z_F-span of the basis, all pairwise products have
 * algebraic-integer coordinates over the basis, and the generators have
 * integral reduced trace and norm. Dependent generators are rejected. */
bool is_order(const FieldPtr& F, const std::array<QuaternionElement, 4>& basis);

/* The explicit maximal-order basis for the field's case, verified by
 * is_order and is_maximal before returning. */
QuaternionOrder maximal_order(const FieldPtr& F);

bool is_maximal(const QuaternionOrder& O);

} // namespace quatlat
