#include "quatlat/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quatlat {

namespace {

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.F || !b.F || a.F->kind != b.F->kind || a.F->parameter != b.F->parameter)
        throw precondition_error("field mismatch between operands");
}

/* Smallest prime p with p^2 | v, if any (v >= 1, 64-bit range). */
std::optional<unsigned long> square_factor(const mpz_class& v) {
    if (!v.fits_ulong_p())
        throw precondition_error("squarefree test limited to 64-bit inputs");
    unsigned long n = v.get_ui();
    for (unsigned long p = 2; p <= n / p; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return p;
    }
    return std::nullopt;
}

VecQ reduce_poly(const RealField& F, const std::vector<mpq_class>& conv) {
    const int n = F.n;
    VecQ r(n, 0);
    for (int d = 0; d < n && d < (int)conv.size(); ++d) r[d] = conv[d];
    for (int k = n; k < (int)conv.size(); ++k) {
        if (conv[k] == 0) continue;
        const VecQ& pw = F.beta_pow[k - n];
        for (int d = 0; d < n; ++d) r[d] += conv[k] * pw[d];
    }
    return r;
}

VecQ mul_coords(const RealField& F, const VecQ& a, const VecQ& b) {
    const int n = F.n;
    std::vector<mpq_class> conv(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) conv[i + j] += a[i] * b[j];
    }
    return reduce_poly(F, conv);
}

/* Columns = coordinates of a * beta^i. */
MatQ mul_matrix(const FieldElement& a) {
    const int n = a.F->n;
    MatQ M(n, VecQ(n, 0));
    VecQ cur = a.c;
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < n; ++d) M[d][i] = cur[d];
        if (i + 1 < n) {
            VecQ shifted(n + 1, 0);
            for (int d = 0; d < n; ++d) shifted[d + 1] = cur[d];
            cur = reduce_poly(*a.F, shifted);
        }
    }
    return M;
}

Interval eval_poly(const std::vector<mpz_class>& coeffs, const Interval& at,
                   mpfr_prec_t prec) {
    Interval v = Interval::from_mpz(coeffs.back(), prec);
    for (int i = (int)coeffs.size() - 2; i >= 0; --i)
        v = v * at + Interval::from_mpz(coeffs[i], prec);
    return v;
}

/* A strict sign change of f across the enclosure certifies a root inside. */
bool certified_root(const std::vector<mpz_class>& f, const Interval& I,
                    mpfr_prec_t prec) {
    int slo = eval_poly(f, I.lo_point(), prec).sign();
    int shi = eval_poly(f, I.hi_point(), prec).sign();
    return slo * shi == -1;
}

} // namespace

std::string RealField::describe() const {
    std::ostringstream os;
    if (kind == FieldKind::quadratic)
        os << "quadratic D=" << parameter;
    else
        os << "simplest_quartic m=" << parameter;
    return os.str();
}

std::vector<Interval> RealField::root_enclosures(mpfr_prec_t prec) const {
    if (kind == FieldKind::quadratic) {
        Interval sq = Interval::from_mpz(mpz_class(parameter), prec).sqrt();
        Interval one = Interval::from_long(1, prec);
        Interval two = Interval::from_long(2, prec);
        if (parameter % 4 == 1)  // generator (1+sqrt D)/2
            return {(one + sq) / two, (one - sq) / two};
        return {sq, -sq};
    }
    const long m = parameter;
    for (mpfr_prec_t p = prec; p <= 16 * prec + 4096; p *= 2) {
        Interval mm = Interval::from_long(m, p);
        Interval two = Interval::from_long(2, p);
        Interval dlt = Interval::from_long(m, p) * mm + Interval::from_long(16, p);
        Interval sd = dlt.sqrt();
        Interval r = ((mm + sd) / two + ((dlt + mm * sd) / two).sqrt()) / two;
        Interval one = Interval::from_long(1, p);
        std::vector<Interval> roots{
            r,
            (r - one) / (r + one),
            -(one / r),
            -((r + one) / (r - one)),
        };
        // Pad so the endpoints sit a decidable distance from the root: the raw
        // enclosure ends within rounding error of it, where f's sign enclosure
        // straddles zero.
        for (auto& I : roots) I = I.widened(static_cast<long>(prec) / 2 + 3);
        bool ok = true;
        for (const auto& I : roots)
            if (!certified_root(min_poly, I, p) ||
                I.width() > std::ldexp(1.0, -(int)(prec / 2))) {
                ok = false;
                break;
            }
        for (size_t a = 0; ok && a + 1 < roots.size(); ++a)
            for (size_t b = a + 1; ok && b < roots.size(); ++b)
                if (!roots[a].strictly_below(roots[b]) &&
                    !roots[b].strictly_below(roots[a]))
                    ok = false;
        if (ok) return roots;
    }
    throw validation_error("could not certify quartic root enclosures");
}

FieldPtr make_quadratic(long D) {
    if (D <= 1)
        throw precondition_error("D must be a squarefree integer > 1, got " +
                                 std::to_string(D));
    if (auto p = square_factor(D))
        throw precondition_error("D=" + std::to_string(D) +
                                 " is not squarefree: divisible by " +
                                 std::to_string(*p * *p));
    auto F = std::make_shared<RealField>();
    F->kind = FieldKind::quadratic;
    F->parameter = D;
    F->n = 2;
    F->delta = D;
    F->index = 1;
    if (D % 4 == 1) {
        F->min_poly = {mpz_class(-(D - 1) / 4), mpz_class(-1), mpz_class(1)};
        F->d_F = D;
    } else {
        F->min_poly = {mpz_class(-D), mpz_class(0), mpz_class(1)};
        F->d_F = 4 * mpz_class(D);
    }
    F->integral_basis = {{1, 0}, {0, 1}};
    F->power_from_integral = {{1, 0}, {0, 1}};
    F->beta_pow = {{mpq_class(-F->min_poly[0]), mpq_class(-F->min_poly[1])}};
    return F;
}

FieldPtr make_simplest_quartic(long m) {
    if (m < 1)
        throw precondition_error("m must be a natural number, got " + std::to_string(m));
    if (m == 3)
        throw precondition_error("m=3 is excluded: x^4-3x^3-6x^2+3x+1 is reducible");
    mpz_class delta = mpz_class(m) * m + 16;
    auto sq = squarefree_and_odd_part(delta);
    if (auto p = square_factor(sq.odd_part))
        throw precondition_error("odd part of m^2+16 = " + sq.odd_part.get_str() +
                                 " is not squarefree: divisible by " +
                                 std::to_string(*p * *p));
    int v2 = 0;
    for (long mm = m; mm % 2 == 0; mm /= 2) ++v2;

    auto F = std::make_shared<RealField>();
    F->kind = FieldKind::simplest_quartic;
    F->parameter = m;
    F->n = 4;
    F->delta = delta;
    F->min_poly = {mpz_class(1), mpz_class(m), mpz_class(-6), mpz_class(-m), mpz_class(1)};
    mpq_class h(1, 2), q(1, 4);
    if (v2 == 0) {
        F->index = 2;
        F->integral_basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {h, 0, 0, h}};
    } else if (v2 == 1) {
        F->index = 4;
        F->integral_basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {h, 0, h, 0}, {0, h, 0, h}};
    } else if (v2 == 2) {
        F->index = 8;
        F->integral_basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {h, 0, h, 0}, {q, q, q, q}};
    } else {
        F->index = 16;
        F->integral_basis = {{1, 0, 0, 0}, {0, 1, 0, 0}, {q, 2 * q, -q, 0}, {q, q, q, q}};
    }
    mpz_class disc_f = 4 * delta * delta * delta;
    mpz_class idx2 = F->index * F->index;
    if (disc_f % idx2 != 0)
        throw validation_error("disc(f)/index^2 is not an integer for m=" +
                               std::to_string(m));
    F->d_F = disc_f / idx2;

    // beta_pow: r^4, r^5, r^6 over the power basis
    VecQ r4{-1, mpq_class(-m), 6, mpq_class(m)};
    F->beta_pow.push_back(r4);
    for (int k = 1; k <= 2; ++k) {
        const VecQ& prev = F->beta_pow.back();
        std::vector<mpq_class> shifted(5, 0);
        for (int d = 0; d < 4; ++d) shifted[d + 1] = prev[d];
        F->beta_pow.push_back(reduce_poly(*F, shifted));
    }

    // invert the integral-basis matrix (columns of the inverse solve A^T x = e_i)
    MatQ inv(4, VecQ(4, 0));
    for (int i = 0; i < 4; ++i) {
        MatQ A(4, VecQ(4));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) A[r][c] = F->integral_basis[c][r];
        VecQ e(4, 0);
        e[i] = 1;
        auto sol = solve_square(A, e);
        if (!sol) throw validation_error("integral basis is singular");
        for (int r = 0; r < 4; ++r) inv[r][i] = (*sol)[r];
    }
    F->power_from_integral = inv;
    return F;
}

FieldElement fe(const FieldPtr& F, VecQ coords) {
    if ((int)coords.size() != F->n)
        throw precondition_error("coordinate length does not match field degree");
    return FieldElement{F, std::move(coords)};
}

FieldElement fe_rat(const FieldPtr& F, const mpq_class& v) {
    VecQ c(F->n, 0);
    c[0] = v;
    return FieldElement{F, std::move(c)};
}

FieldElement fe_generator(const FieldPtr& F) {
    VecQ c(F->n, 0);
    c[1] = 1;
    return FieldElement{F, std::move(c)};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    VecQ c(a.c);
    for (int i = 0; i < a.F->n; ++i) c[i] += b.c[i];
    return FieldElement{a.F, std::move(c)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    VecQ c(a.c);
    for (int i = 0; i < a.F->n; ++i) c[i] -= b.c[i];
    return FieldElement{a.F, std::move(c)};
}

FieldElement operator-(const FieldElement& a) {
    VecQ c(a.c);
    for (auto& v : c) v = -v;
    return FieldElement{a.F, std::move(c)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    return FieldElement{a.F, mul_coords(*a.F, a.c, b.c)};
}

FieldElement operator*(const mpq_class& s, const FieldElement& a) {
    VecQ c(a.c);
    for (auto& v : c) v *= s;
    return FieldElement{a.F, std::move(c)};
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!a.F || !b.F || a.F->kind != b.F->kind || a.F->parameter != b.F->parameter)
        return false;
    return a.c == b.c;
}

FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw precondition_error("inversion of zero");
    MatQ M = mul_matrix(a);
    VecQ e(a.F->n, 0);
    e[0] = 1;
    auto sol = solve_square(M, e);
    if (!sol) throw validation_error("element is a zero divisor (min_poly not irreducible?)");
    return FieldElement{a.F, *sol};
}

mpq_class trace(const FieldElement& a) {
    MatQ M = mul_matrix(a);
    mpq_class t = 0;
    for (int i = 0; i < a.F->n; ++i) t += M[i][i];
    return t;
}

mpq_class norm(const FieldElement& a) {
    return exact_det(mul_matrix(a));
}

EmbeddingVector embeddings(const FieldElement& a, mpfr_prec_t precision_bits) {
    if (precision_bits < 64)
        throw precondition_error("embedding precision below the 64-bit minimum");
    auto roots = a.F->root_enclosures(precision_bits);
    EmbeddingVector out;
    for (const auto& r : roots) {
        Interval v = Interval::from_mpq(a.c.back(), precision_bits);
        for (int i = a.F->n - 2; i >= 0; --i)
            v = v * r + Interval::from_mpq(a.c[i], precision_bits);
        out.sigma.push_back(v);
    }
    double rad = std::ldexp(1.0, -(int)std::min<mpfr_prec_t>(precision_bits, 1000));
    for (const auto& s : out.sigma) rad = std::max(rad, s.width() / 2);
    out.radius = rad;
    return out;
}

bool is_totally_positive(const FieldElement& a) {
    if (a.is_zero()) throw precondition_error("total positivity is undefined for zero");
    if (a.F->kind == FieldKind::quadratic) {
        // a = A + B sqrt(D); positive at both embeddings iff A > 0 and A^2 > B^2 D
        mpq_class A, B;
        if (a.F->parameter % 4 == 1) {  // generator (1+sqrt D)/2
            A = a.c[0] + a.c[1] / 2;
            B = a.c[1] / 2;
        } else {
            A = a.c[0];
            B = a.c[1];
        }
        return A > 0 && A * A > B * B * a.F->parameter;
    }
    for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
        auto emb = embeddings(a, prec);
        bool undecided = false;
        for (const auto& s : emb.sigma) {
            int sg = s.sign();
            if (sg < 0) return false;
            if (sg == 0) { undecided = true; break; }
        }
        if (!undecided) return true;
    }
    throw validation_error("total positivity undecided at 4096 bits");
}

FieldElement different_generator(const FieldPtr& F) {
    VecQ c(F->n, 0);
    for (int i = 0; i < F->n; ++i)
        c[i] = mpq_class((i + 1) * F->min_poly[i + 1]);
    return FieldElement{F, std::move(c)};
}

VecQ integral_coords(const FieldElement& a) {
    const int n = a.F->n;
    VecQ out(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += a.F->power_from_integral[i][j] * a.c[j];
    return out;
}

bool is_algebraic_integer(const FieldElement& a) {
    return is_integer_vec(integral_coords(a));
}

std::optional<PellSolution> negative_pell(const mpz_class& D) {
    if (D <= 1) throw precondition_error("negative Pell requires D > 1");
    mpz_class a0 = sqrt(D);
    if (a0 * a0 == D) throw precondition_error("negative Pell requires non-square D");
    mpz_class m = 0, d = 1, a = a0;
    mpz_class h0 = 1, h1 = a0, k0 = 0, k1 = 1;
    long period = 0;
    while (true) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        ++period;
        if (a == 2 * a0) break;
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1; h1 = h2;
        k0 = k1; k1 = k2;
        if (period > 100000000)
            throw validation_error("continued fraction period overflow");
    }
    if (period % 2 == 0) return std::nullopt;
    PellSolution s{D, h1, k1};
    if (s.x * s.x - D * s.y * s.y != -1)
        throw validation_error("continued-fraction Pell solution failed verification");
    return s;
}

SquarefreeReport squarefree_and_odd_part(const mpz_class& v) {
    if (v < 1) throw precondition_error("squarefree_and_odd_part requires n >= 1");
    if (!v.fits_ulong_p())
        throw precondition_error("squarefree test limited to 64-bit inputs");
    unsigned long n = v.get_ui();
    int v2 = 0;
    while (n % 2 == 0) { n /= 2; ++v2; }
    SquarefreeReport rep;
    rep.odd_part = mpz_class((unsigned long)n);
    rep.is_squarefree = v2 <= 1;
    if (rep.is_squarefree)
        for (unsigned long p = 3; p <= n / p; p += 2) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) { rep.is_squarefree = false; break; }
        }
    return rep;
}

} // namespace quatlat
