#include "quatlat/lattice.hpp"

#include <sstream>

#include "quatlat/analyze.hpp"

namespace quatlat {

namespace {

mpq_class trace_pairing(const FieldElement& alpha, const QuaternionElement& a,
                        const QuaternionElement& b) {
    QuaternionElement p = quat_mul(a, conj(b));
    return trace(alpha * (mpq_class(2) * p.x));
}

void validate_even_integral(const MatQ& G, const std::string& what) {
    if (!is_integral(G))
        throw validation_error(what + ": Gram matrix is not integral");
    if (!is_even(G))
        throw validation_error(what + ": Gram matrix is not even");
}

FieldElement twist_E8_impl(const FieldPtr& F, const QuaternionOrder& O) {
    if (F->kind != FieldKind::quadratic)
        throw precondition_error("twist_E8 requires a quadratic field");
    long D = F->parameter;
    if (F->d_F % 8 == 1)
        throw precondition_error(
            "d_F = 1 (mod 8): the algebra ramifies at 2 (discriminant 2Z_F), so no "
            "unimodular twist exists for D=" + std::to_string(D));
    auto pell = negative_pell(mpz_class(D));
    if (!pell)
        throw precondition_error("x^2 - " + std::to_string(D) +
                                 " y^2 = -1 has no solution (even continued-fraction "
                                 "period); no norm -1 unit is available");
    FieldElement sqrtD = (D % 4 == 1) ? fe(F, {-1, 2}) : fe(F, {0, 1});
    FieldElement eps = fe_rat(F, mpq_class(pell->x)) + mpq_class(pell->y) * sqrtD;
    FieldElement t = (D % 4 == 1) ? sqrtD : mpq_class(2) * sqrtD;
    FieldElement alpha = inv(eps * t);
    if (!is_totally_positive(alpha)) alpha = -alpha;
    if (!is_totally_positive(alpha))
        throw validation_error("twist is not totally positive for D=" +
                               std::to_string(D));
    mpq_class nm = norm(alpha) * mpq_class(F->d_F);
    if (nm != 1 && nm != -1)
        throw validation_error("twist norm times d_F is not a unit for D=" +
                               std::to_string(D));
    for (const auto& b : z_basis(O)) {
        mpq_class v = trace(alpha * reduced_norm(b));
        if (v.get_den() != 1)
            throw validation_error("Tr(alpha Nm_B(x)) is non-integral on the Z-basis");
    }
    return alpha;
}

struct QuarticTwistImpl {
    QuarticTwist tw;
    MatQ gram;
};

QuarticTwistImpl twist_quartic_impl(const FieldPtr& F, const QuaternionOrder& O) {
    if (F->kind != FieldKind::simplest_quartic)
        throw precondition_error("twist_quartic requires a simplest quartic field");
    long m = F->parameter;
    if (m % 2 != 0)
        throw precondition_error("twist_quartic requires even m");
    int v2 = 0;
    for (long mm = m; mm % 2 == 0; mm /= 2) ++v2;
    if (v2 != 1 && v2 != 2)
        throw precondition_error("twist_quartic covers v2(m) in {1,2}, got v2=" +
                                 std::to_string(v2));

    FieldElement r = fe_generator(F);
    FieldElement one = fe_rat(F, 1);
    FieldElement fp = different_generator(F);
    // s = (r^3 - m r^2 - 5 r + m) / 2 and its half
    FieldElement s2 = mpq_class(1, 2) *
        fe(F, {mpq_class(m), mpq_class(-5), mpq_class(-m), mpq_class(1)});
    FieldElement s4 = mpq_class(1, 2) * s2;
    FieldElement sigma = (r - one) * inv(r + one);
    FieldElement sigma_inv = inv(sigma);
    FieldElement r_inv = inv(r);

    std::vector<std::pair<int, int>> shapes;  // (c, s_den)
    if (v2 == 1)
        shapes = {{2, 2}};
    else
        shapes = {{1, 2}, {1, 4}, {2, 2}, {2, 4}, {4, 2}, {4, 4}};

    mpq_class target_det = (v2 == 1) ? mpq_class(1) : mpq_class(256);
    QuarticTwistImpl out;
    out.tw.expected_class = (v2 == 1) ? "E8xE8" : "BarnesWall16";
    bool have_selected = false;
    FieldElement selected = one;

    for (auto [c, s_den] : shapes) {
        TwistCandidateDiag diag;
        diag.c = c;
        diag.s_den = s_den;
        const FieldElement& s_form = (s_den == 2) ? s2 : s4;
        FieldElement base = mpq_class(c) * inv(s_form * fp);
        diag.norm_alpha = norm(base);

        // unit adjustment: first totally positive sign * r^a * sigma(r)^b
        FieldElement cand = one;
        for (int a = -3; a <= 3 && !diag.unit_found; ++a)
            for (int b = -3; b <= 3 && !diag.unit_found; ++b) {
                FieldElement u = one;
                for (int k = 0; k < std::abs(a); ++k) u = u * (a >= 0 ? r : r_inv);
                for (int k = 0; k < std::abs(b); ++k) u = u * (b >= 0 ? sigma : sigma_inv);
                for (int sgn : {1, -1}) {
                    FieldElement trial = mpq_class(sgn) * (base * u);
                    if (is_totally_positive(trial)) {
                        diag.unit_found = true;
                        diag.unit_a = a;
                        diag.unit_b = b;
                        diag.unit_sign = sgn;
                        cand = trial;
                        break;
                    }
                }
            }
        if (!diag.unit_found) {
            out.tw.log.push_back(diag);
            continue;
        }

        MatQ G = exact_gram(O, cand);
        diag.integral = is_integral(G);
        diag.even = is_even(G);
        diag.gram_det = exact_det(G);
        bool valid = diag.integral && diag.even && diag.gram_det == target_det;
        if (v2 == 1) {
            mpq_class nm = diag.norm_alpha * mpq_class(F->d_F);
            valid = valid && (nm == 1 || nm == -1);
        }
        if (valid) {
            if (!have_selected) {
                diag.selected = true;
                have_selected = true;
                selected = cand;
                out.tw.alpha = cand;
                out.gram = G;
            } else if (!(cand == selected)) {
                throw validation_error(
                    "twist selection is ambiguous: two distinct candidates validate");
            }
        }
        out.tw.log.push_back(diag);
    }

    if (!have_selected) {
        std::ostringstream os;
        os << "no twist candidate validated for m=" << m << ";";
        for (const auto& d : out.tw.log) {
            os << " [c=" << d.c << " s_den=" << d.s_den;
            if (d.unit_found)
                os << " integral=" << d.integral << " even=" << d.even << " det="
                   << d.gram_det.get_str();
            else
                os << " no totally positive adjustment";
            os << "]";
        }
        throw validation_error(os.str());
    }
    return out;
}

} // namespace

std::vector<QuaternionElement> z_basis(const QuaternionOrder& O) {
    std::vector<QuaternionElement> out;
    out.reserve(4 * O.F->n);
    for (const auto& g : O.generators)
        for (const auto& row : O.F->integral_basis)
            out.push_back(quat_scale(fe(O.F, row), g));
    return out;
}

MatQ exact_gram(const QuaternionOrder& O, const FieldElement& alpha) {
    if (!is_totally_positive(alpha))
        throw precondition_error("exact_gram requires a totally positive twist");
    auto zb = z_basis(O);
    const size_t dim = zb.size();
    MatQ G(dim, VecQ(dim, 0));
    for (size_t u = 0; u < dim; ++u)
        for (size_t v = u; v < dim; ++v) {
            mpq_class val = trace_pairing(alpha, zb[u], zb[v]);
            G[u][v] = val;
            G[v][u] = val;
        }
    return G;
}

FloatGenerator generator_matrix(const QuaternionOrder& O, const FieldElement& alpha,
                                mpfr_prec_t precision_bits) {
    if (precision_bits < 64)
        throw precondition_error("generator matrix precision below the 64-bit minimum");
    if (!is_totally_positive(alpha))
        throw precondition_error("generator matrix requires a totally positive twist");
    const int n = O.F->n;

    mpfr_prec_t ap = precision_bits;
    EmbeddingVector ea = embeddings(alpha, ap);
    auto all_positive = [&]() {
        for (const auto& s : ea.sigma)
            if (s.sign() != 1) return false;
        return true;
    };
    while (!all_positive()) {
        ap *= 2;
        if (ap > 1 << 20)
            throw validation_error("cannot certify positivity of the twist embeddings");
        ea = embeddings(alpha, ap);
    }
    std::vector<Interval> scale;
    for (int i = 0; i < n; ++i)
        scale.push_back((Interval::from_long(2, precision_bits) * ea.sigma[i]).sqrt());

    auto zb = z_basis(O);
    FloatGenerator M;
    M.precision_bits = precision_bits;
    for (const auto& q : zb) {
        const FieldElement* comps[4] = {&q.x, &q.y, &q.z, &q.t};
        std::vector<Interval> row;
        row.reserve(4 * n);
        for (int comp = 0; comp < 4; ++comp) {
            EmbeddingVector e = embeddings(*comps[comp], precision_bits);
            for (int i = 0; i < n; ++i) row.push_back(scale[i] * e.sigma[i]);
        }
        M.rows.push_back(std::move(row));
    }
    return M;
}

double generator_deviation(const FloatGenerator& M, const MatQ& G) {
    const size_t dim = M.rows.size();
    mpq_class gmax = 0;
    for (const auto& row : G)
        for (const auto& v : row)
            if (abs(v) > gmax) gmax = abs(v);
    double dev = 0.0;
    for (size_t u = 0; u < dim; ++u)
        for (size_t v = u; v < dim; ++v) {
            Interval s = Interval::from_long(0, M.precision_bits);
            for (size_t k = 0; k < M.rows[u].size(); ++k)
                s = s + M.rows[u][k] * M.rows[v][k];
            Interval err = s - Interval::from_mpq(G[u][v], M.precision_bits);
            dev = std::max(dev, err.abs().upper());
        }
    return dev / gmax.get_d();
}

mpq_class det_via_formula(const QuaternionOrder& O, const FieldElement& alpha) {
    if (!is_maximal(O))
        throw precondition_error("determinant formula requires a maximal order");
    mpq_class nm = norm(alpha);
    mpz_class d2 = O.F->d_F * O.F->d_F;
    mpq_class covol = nm * nm * mpq_class(d2) * mpq_class(algebra_discriminant(O.F).value);
    return covol * covol;
}

FieldElement twist_E8(const FieldPtr& F) {
    return twist_E8_impl(F, maximal_order(F));
}

QuarticTwist twist_quartic(const FieldPtr& F) {
    return twist_quartic_impl(F, maximal_order(F)).tw;
}

TwistedLattice construct_quadratic(long D) {
    TwistedLattice L;
    L.F = make_quadratic(D);
    L.order = maximal_order(L.F);
    L.alpha = twist_E8_impl(L.F, L.order);
    L.z_basis = z_basis(L.order);
    L.gram = exact_gram(L.order, L.alpha);
    L.expected_class = "E8";
    validate_even_integral(L.gram, "quadratic D=" + std::to_string(D));
    if (exact_det(L.gram) != det_via_formula(L.order, L.alpha))
        throw validation_error("Gram determinant disagrees with the formula for D=" +
                               std::to_string(D));
    return L;
}

TwistedLattice construct_quartic(long m) {
    TwistedLattice L;
    L.F = make_simplest_quartic(m);
    L.order = maximal_order(L.F);
    auto impl = twist_quartic_impl(L.F, L.order);
    L.alpha = impl.tw.alpha;
    L.selection_log = impl.tw.log;
    L.expected_class = impl.tw.expected_class;
    L.z_basis = z_basis(L.order);
    L.gram = std::move(impl.gram);
    validate_even_integral(L.gram, "quartic m=" + std::to_string(m));
    if (exact_det(L.gram) != det_via_formula(L.order, L.alpha))
        throw validation_error("Gram determinant disagrees with the formula for m=" +
                               std::to_string(m));
    return L;
}

} // namespace quatlat
