#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quatlat/error.hpp"
#include "quatlat/exactlin.hpp"
#include "quatlat/interval.hpp"

namespace quatlat {

enum class FieldKind { quadratic, simplest_quartic };

struct RealField;
using FieldPtr = std::shared_ptr<const RealField>;

/* Exact element of a RealField: rational coordinates over the power basis
 * {1, beta, ..., beta^{n-1}} of the field's generator. */
struct FieldElement {
    FieldPtr F;
    VecQ c;

    bool is_zero() const {
        for (const auto& q : c)
            if (q != 0) return false;
        return true;
    }
};

/* All real embeddings of an element, as certified enclosures sharing one
 * reported absolute error radius. */
struct EmbeddingVector {
    std::vector<Interval> sigma;
    double radius = 0.0;
};

struct PellSolution {
    mpz_class D, x, y;
};

/* Totally real field descriptor: Q(sqrt(D)) with generator sqrt(D), or
 * omega = (1+sqrt(D))/2 when D = 1 (mod 4); or the simplest quartic field
 * F_m = Q[x]/(x^4 - m x^3 - 6 x^2 + m x + 1). Immutable after construction. */
struct RealField : std::enable_shared_from_this<RealField> {
    FieldKind kind;
    long parameter = 0;                   // D or m
    int n = 0;                            // degree
    std::vector<mpz_class> min_poly;      // monic, coefficient of x^i at [i], size n+1
    mpz_class d_F;
    mpz_class index;                      // [Z_F : Z[beta]]
    mpz_class delta;                      // quartic: m^2 + 16; quadratic: D
    MatQ integral_basis;                  // rows = basis elements over the power basis
    MatQ power_from_integral;             // inverse change of basis (cached)
    std::vector<VecQ> beta_pow;           // beta^n .. beta^(2n-2) reduced (cached)

    /* Certified enclosures of the n real roots of min_poly, refined until
     * each has width below 2^-(prec/2) and they are pairwise disjoint. */
    std::vector<Interval> root_enclosures(mpfr_prec_t prec) const;

    std::string describe() const;
};

FieldPtr make_quadratic(long D);
FieldPtr make_simplest_quartic(long m);

FieldElement fe(const FieldPtr& F, VecQ coords);
FieldElement fe_rat(const FieldPtr& F, const mpq_class& v);
FieldElement fe_generator(const FieldPtr& F);

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const mpq_class& s, const FieldElement& a);
bool operator==(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

mpq_class trace(const FieldElement& a);
mpq_class norm(const FieldElement& a);

EmbeddingVector embeddings(const FieldElement& a, mpfr_prec_t precision_bits);
bool is_totally_positive(const FieldElement& a);

/* f'(beta) for the field's monic minimal polynomial f; |norm| = index^2 * d_F. */
FieldElement different_generator(const FieldPtr& F);

/* Coordinates of a over the integral basis; integral entries iff a is an
 * algebraic integer of the field. */
VecQ integral_coords(const FieldElement& a);
bool is_algebraic_integer(const FieldElement& a);

/* Fundamental solution of x^2 - D y^2 = -1 via the continued fraction of
 * sqrt(D); nullopt when the period length is even. */
std::optional<PellSolution> negative_pell(const mpz_class& D);

struct SquarefreeReport {
    bool is_squarefree = false;
    mpz_class odd_part;
};
SquarefreeReport squarefree_and_odd_part(const mpz_class& v);

} // namespace quatlat
