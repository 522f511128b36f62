#include "quatlat/quaternion.hpp"

#include <algorithm>
#include <numeric>

namespace quatlat {

namespace {

int permutation_sign(const std::array<int, 4>& p) {
    int inv = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (p[a] > p[b]) ++inv;
    return inv % 2 ? -1 : 1;
}

FieldElement det4(const FieldPtr& F,
                  const std::array<std::array<FieldElement, 4>, 4>& M) {
    FieldElement det = fe_rat(F, 0);
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        FieldElement term = fe_rat(F, permutation_sign(p));
        for (int r = 0; r < 4; ++r) term = term * M[r][p[r]];
        det = det + term;
    } while (std::next_permutation(p.begin(), p.end()));
    return det;
}

bool is_power_of_two(long n) {
    return n > 0 && (n & (n - 1)) == 0;
}

} // namespace

QuaternionElement quat(const FieldElement& x, const FieldElement& y,
                       const FieldElement& z, const FieldElement& t) {
    return QuaternionElement{x, y, z, t};
}

QuaternionElement quat_one(const FieldPtr& F) {
    return {fe_rat(F, 1), fe_rat(F, 0), fe_rat(F, 0), fe_rat(F, 0)};
}

QuaternionElement quat_add(const QuaternionElement& a, const QuaternionElement& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z, a.t + b.t};
}

QuaternionElement quat_mul(const QuaternionElement& a, const QuaternionElement& b) {
    return {a.x * b.x - a.y * b.y - a.z * b.z - a.t * b.t,
            a.x * b.y + a.y * b.x + a.z * b.t - a.t * b.z,
            a.x * b.z - a.y * b.t + a.z * b.x + a.t * b.y,
            a.x * b.t + a.y * b.z - a.z * b.y + a.t * b.x};
}

QuaternionElement quat_scale(const FieldElement& s, const QuaternionElement& a) {
    return {s * a.x, s * a.y, s * a.z, s * a.t};
}

bool quat_eq(const QuaternionElement& a, const QuaternionElement& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z && a.t == b.t;
}

QuaternionElement conj(const QuaternionElement& q) {
    return {q.x, -q.y, -q.z, -q.t};
}

FieldElement reduced_trace(const QuaternionElement& q) {
    return mpq_class(2) * q.x;
}

FieldElement reduced_norm(const QuaternionElement& q) {
    return q.x * q.x + q.y * q.y + q.z * q.z + q.t * q.t;
}

IdealNormDescriptor algebra_disc_norm_cases(long degree, const mpz_class& d_F,
                                            std::optional<long> n2) {
    bool ramified_at_two;
    if (degree == 2)
        ramified_at_two = mpz_class(d_F % 8) == 1;
    else if (degree % 2 == 1)
        ramified_at_two = true;
    else if (is_power_of_two(degree))
        ramified_at_two = false;
    else {
        if (!n2)
            throw precondition_error(
                "mixed-degree field: the local degree n2 at 2 is required");
        ramified_at_two = (*n2 % 2) != 0;
    }
    mpz_class v = 1;
    if (ramified_at_two) mpz_ui_pow_ui(v.get_mpz_t(), 2, (unsigned long)degree);
    return {v};
}

IdealNormDescriptor algebra_discriminant(const FieldPtr& F, std::optional<long> n2) {
    return algebra_disc_norm_cases(F->n, F->d_F, n2);
}

IdealNormDescriptor order_disc_norm(const QuaternionOrder& O) {
    std::array<std::array<FieldElement, 4>, 4> T{{
        {fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0)},
        {fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0)},
        {fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0)},
        {fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0), fe_rat(O.F, 0)},
    }};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            T[i][j] = reduced_trace(quat_mul(O.generators[i], O.generators[j]));
    FieldElement det = det4(O.F, T);
    mpq_class nm = norm(det);
    mpq_class anm = abs(nm);
    if (anm.get_den() != 1)
        throw validation_error("order discriminant has non-integral norm");
    mpz_class n = anm.get_num();
    mpz_class s = sqrt(n);
    if (s * s != n)
        throw validation_error("order discriminant norm is not a perfect square");
    return {s};
}

bool is_order(const FieldPtr& F, const std::array<QuaternionElement, 4>& basis) {
    const int n = F->n;
    const int dim = 4 * n;

    std::array<std::array<FieldElement, 4>, 4> C{{
        {basis[0].x, basis[0].y, basis[0].z, basis[0].t},
        {basis[1].x, basis[1].y, basis[1].z, basis[1].t},
        {basis[2].x, basis[2].y, basis[2].z, basis[2].t},
        {basis[3].x, basis[3].y, basis[3].z, basis[3].t},
    }};
    if (det4(F, C).is_zero()) throw precondition_error("dependent generators");

    // Column (s, d) = coordinates of beta^d * g_s; solving expresses a target
    // quaternion with F-coefficients over the basis.
    MatQ A(dim, VecQ(dim, 0));
    for (int s = 0; s < 4; ++s) {
        FieldElement pw = fe_rat(F, 1);
        for (int d = 0; d < n; ++d) {
            QuaternionElement q = quat_scale(pw, basis[s]);
            const FieldElement* comps[4] = {&q.x, &q.y, &q.z, &q.t};
            for (int comp = 0; comp < 4; ++comp)
                for (int deg = 0; deg < n; ++deg)
                    A[comp * n + deg][s * n + d] = comps[comp]->c[deg];
            if (d + 1 < n) pw = pw * fe_generator(F);
        }
    }

    auto span_coeffs_integral = [&](const QuaternionElement& q) -> bool {
        VecQ rhs(dim, 0);
        const FieldElement* comps[4] = {&q.x, &q.y, &q.z, &q.t};
        for (int comp = 0; comp < 4; ++comp)
            for (int deg = 0; deg < n; ++deg) rhs[comp * n + deg] = comps[comp]->c[deg];
        auto sol = solve_square(A, rhs);
        if (!sol) throw validation_error("span system unexpectedly singular");
        for (int s = 0; s < 4; ++s) {
            VecQ coeff(sol->begin() + s * n, sol->begin() + (s + 1) * n);
            if (!is_algebraic_integer(fe(F, coeff))) return false;
        }
        return true;
    };

    if (!span_coeffs_integral(quat_one(F))) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!span_coeffs_integral(quat_mul(basis[i], basis[j]))) return false;
    for (int i = 0; i < 4; ++i) {
        if (!is_algebraic_integer(reduced_trace(basis[i]))) return false;
        if (!is_algebraic_integer(reduced_norm(basis[i]))) return false;
    }
    return true;
}

QuaternionOrder maximal_order(const FieldPtr& F) {
    FieldElement zero = fe_rat(F, 0);
    FieldElement one = fe_rat(F, 1);
    FieldElement half = fe_rat(F, mpq_class(1, 2));
    QuaternionOrder O;
    O.F = F;

    if (F->kind == FieldKind::quadratic) {
        long D = F->parameter;
        FieldElement sqrtD = (D % 4 == 1) ? fe(F, {-1, 2}) : fe(F, {0, 1});
        if (D == 2) {
            FieldElement s2h = mpq_class(1, 2) * sqrtD;  // 1/sqrt2 = sqrt2/2
            O.generators = {quat_one(F),
                            quat(s2h, s2h, zero, zero),
                            quat(s2h, zero, s2h, zero),
                            quat(half, half, half, half)};
            O.provenance = "quadratic_sqrt2";
        } else if (D % 4 == 3) {
            O.generators = {quat_one(F),
                            quat(zero, one, zero, zero),
                            quat(zero, mpq_class(1, 2) * sqrtD, half, zero),
                            quat(mpq_class(1, 2) * sqrtD, zero, zero, half)};
            O.provenance = "quadratic_3mod4";
        } else if (D % 8 == 1) {
            O.generators = {quat_one(F),
                            quat(zero, one, zero, zero),
                            quat(zero, zero, one, zero),
                            quat(half, half, half, half)};
            O.provenance = "quadratic_1mod8";
        } else if (D % 8 == 5) {
            mpq_class q(1, 4);
            FieldElement a1 = q * (sqrtD + one);
            FieldElement a3 = q * (sqrtD + fe_rat(F, 3));
            O.generators = {quat_one(F),
                            quat(zero, one, zero, zero),
                            quat(a1, a3, half, zero),
                            quat(a3, a1, zero, half)};
            O.provenance = "quadratic_5mod8";
        } else {
            throw precondition_error("no maximal-order basis known for D = " +
                                     std::to_string(D) + " (D = 2 mod 4, D > 2)");
        }
    } else {
        long m = F->parameter;
        if (m % 2 != 0)
            throw precondition_error(
                "no maximal-order basis known for odd m in the quartic family");
        FieldElement c1 = mpq_class(1, 2) * (one + fe_generator(F));  // (1+r)/2
        O.generators = {quat_one(F),
                        quat(c1, c1, zero, zero),
                        quat(c1, zero, c1, zero),
                        quat(half, half, half, half)};
        O.provenance = "quartic_even";
    }

    if (!is_order(F, O.generators))
        throw validation_error("constructed basis failed the order check for " +
                               F->describe());
    if (!is_maximal(O))
        throw validation_error("constructed order is not maximal for " + F->describe());
    return O;
}

bool is_maximal(const QuaternionOrder& O) {
    return order_disc_norm(O).value == algebra_discriminant(O.F).value;
}

} // namespace quatlat
