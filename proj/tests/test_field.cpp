#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "quatlat/field.hpp"

using namespace quatlat;

namespace {

FieldElement random_element(const FieldPtr& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<int> den_pick(0, 2);
    const long dens[3] = {1, 2, 4};
    VecQ c(static_cast<size_t>(F->n));
    for (auto& q : c) {
        q = mpq_class(num(rng), dens[den_pick(rng)]);
        q.canonicalize();
    }
    return fe(F, c);
}

MatQ trace_form(const FieldPtr& F) {
    const size_t n = static_cast<size_t>(F->n);
    std::vector<FieldElement> basis;
    for (size_t i = 0; i < n; ++i) basis.push_back(fe(F, F->integral_basis[i]));
    MatQ T(n, VecQ(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) T[i][j] = trace(basis[i] * basis[j]);
    return T;
}

} // namespace

TEST_CASE("quadratic field constructors") {
    auto F5 = make_quadratic(5);
    CHECK(F5->n == 2);
    CHECK(F5->d_F == 5);
    CHECK(F5->index == 1);
    // generator is omega = (1+sqrt(5))/2 with x^2 - x - 1
    CHECK(F5->min_poly == std::vector<mpz_class>{-1, -1, 1});

    auto F2 = make_quadratic(2);
    CHECK(F2->d_F == 8);
    CHECK(F2->min_poly == std::vector<mpz_class>{-2, 0, 1});

    auto F13 = make_quadratic(13);
    CHECK(F13->d_F == 13);

    auto F3 = make_quadratic(3);
    CHECK(F3->d_F == 12);

    CHECK_THROWS_AS(make_quadratic(12), precondition_error); // 4 | 12
    CHECK_THROWS_AS(make_quadratic(9), precondition_error);
    CHECK_THROWS_AS(make_quadratic(1), precondition_error);
    CHECK_THROWS_AS(make_quadratic(0), precondition_error);
    CHECK_THROWS_AS(make_quadratic(-5), precondition_error);
    CHECK_THROWS_AS(make_quadratic(45), precondition_error); // 9 | 45
}

TEST_CASE("simplest quartic field constructors") {
    struct Row {
        long m;
        long index;
        long d_F;
    };
    // d_F = 4 (m^2+16)^3 / index^2 with index determined by v_2(m)
    const Row rows[] = {
        {1, 2, 4913},     {2, 4, 2000},      {4, 8, 2048},
        {5, 2, 68921},    {6, 4, 35152},     {12, 8, 256000},
        {16, 16, 314432}, {20, 8, 4499456},
    };
    for (const auto& r : rows) {
        CAPTURE(r.m);
        auto F = make_simplest_quartic(r.m);
        CHECK(F->n == 4);
        CHECK(F->index == r.index);
        CHECK(F->d_F == r.d_F);
        CHECK(F->delta == mpz_class(r.m) * r.m + 16);
        CHECK(F->min_poly ==
              std::vector<mpz_class>{1, r.m, -6, -r.m, 1});
    }

    CHECK_THROWS_AS(make_simplest_quartic(3), precondition_error);  // excluded
    CHECK_THROWS_AS(make_simplest_quartic(0), precondition_error);
    CHECK_THROWS_AS(make_simplest_quartic(-2), precondition_error);
    CHECK_THROWS_AS(make_simplest_quartic(22), precondition_error); // odd part 125
    CHECK_THROWS_AS(make_simplest_quartic(28), precondition_error); // odd part 25
}

TEST_CASE("odd m quartic fields are covered when the odd part is squarefree") {
    // m = 7: delta = 65 = 5 * 13 squarefree and odd => v2(m) = 0 case
    auto F7 = make_simplest_quartic(7);
    CHECK(F7->index == 2);
    CHECK(F7->d_F == mpz_class(65) * 65 * 65);
}

TEST_CASE("field arithmetic axioms") {
    std::mt19937_64 rng(12345);
    for (long tag : {5L, 2L, -6L}) {
        FieldPtr F = tag > 0 ? make_quadratic(tag) : make_simplest_quartic(-tag);
        for (int iter = 0; iter < 200; ++iter) {
            auto a = random_element(F, rng);
            auto b = random_element(F, rng);
            auto c = random_element(F, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
            CHECK(a - a == fe_rat(F, 0));
            if (!a.is_zero()) {
                CHECK(inv(a) * a == fe_rat(F, 1));
            }
        }
    }
}

TEST_CASE("trace and norm agree with certified embeddings") {
    std::mt19937_64 rng(777);
    for (long tag : {5L, -6L}) {
        FieldPtr F = tag > 0 ? make_quadratic(tag) : make_simplest_quartic(-tag);
        for (int iter = 0; iter < 50; ++iter) {
            auto a = random_element(F, rng);
            auto emb = embeddings(a, 128);
            REQUIRE(emb.sigma.size() == static_cast<size_t>(F->n));
            Interval sum = emb.sigma[0];
            Interval prod = emb.sigma[0];
            for (size_t i = 1; i < emb.sigma.size(); ++i) {
                sum = sum + emb.sigma[i];
                prod = prod * emb.sigma[i];
            }
            const double tr = mpq_class(trace(a)).get_d();
            const double nm = mpq_class(norm(a)).get_d();
            CHECK(sum.lower() <= tr + 1e-12);
            CHECK(tr - 1e-12 <= sum.upper());
            CHECK(prod.lower() <= nm + 1e-9);
            CHECK(nm - 1e-9 <= prod.upper());
        }
    }
}

TEST_CASE("trace form determinant equals the field discriminant") {
    for (long D : {2L, 3L, 5L, 13L, 17L, 29L}) {
        CAPTURE(D);
        auto F = make_quadratic(D);
        CHECK(exact_det(trace_form(F)) == mpq_class(F->d_F));
    }
    for (long m : {1L, 2L, 4L, 5L, 6L, 12L, 16L, 20L}) {
        CAPTURE(m);
        auto F = make_simplest_quartic(m);
        CHECK(exact_det(trace_form(F)) == mpq_class(F->d_F));
    }
}

TEST_CASE("different generator norm is index^2 * d_F in absolute value") {
    for (long tag : {5L, 2L, 13L, -2L, -6L, -20L}) {
        FieldPtr F = tag > 0 ? make_quadratic(tag) : make_simplest_quartic(-tag);
        mpq_class nm = norm(different_generator(F));
        mpq_class expect = mpq_class(F->index * F->index * F->d_F);
        CHECK((nm == expect || nm == -expect));
    }
}

TEST_CASE("integral coordinates and algebraic integer test") {
    auto F5 = make_quadratic(5);
    auto omega = fe_generator(F5);
    CHECK(is_algebraic_integer(omega));
    CHECK(!is_algebraic_integer(mpq_class(1, 2) * omega));
    CHECK(is_algebraic_integer(fe_rat(F5, 3)));
    CHECK(!is_algebraic_integer(fe_rat(F5, mpq_class(1, 3))));

    auto F6 = make_simplest_quartic(6);
    for (int i = 0; i < 4; ++i) {
        auto e = fe(F6, F6->integral_basis[static_cast<size_t>(i)]);
        CHECK(is_algebraic_integer(e));
        auto coords = integral_coords(e);
        for (int j = 0; j < 4; ++j)
            CHECK(coords[static_cast<size_t>(j)] == (i == j ? 1 : 0));
    }
    auto r = fe_generator(F6);
    CHECK(is_algebraic_integer(r));
    CHECK(!is_algebraic_integer(mpq_class(1, 2) * r));
}

TEST_CASE("total positivity") {
    auto F5 = make_quadratic(5);
    auto omega = fe_generator(F5);
    CHECK(!is_totally_positive(omega));            // conjugate is negative
    CHECK(is_totally_positive(omega * omega));
    CHECK(is_totally_positive(fe_rat(F5, 2)));
    CHECK(!is_totally_positive(fe_rat(F5, -1)));
    CHECK_THROWS_AS(is_totally_positive(fe_rat(F5, 0)), precondition_error);

    auto F6 = make_simplest_quartic(6);
    auto r = fe_generator(F6);
    CHECK(!is_totally_positive(r));
    CHECK(is_totally_positive(r * r));
}

TEST_CASE("total positivity agrees with embedding signs at 256 bits") {
    std::mt19937_64 rng(31415);
    for (long tag : {5L, -6L}) {
        FieldPtr F = tag > 0 ? make_quadratic(tag) : make_simplest_quartic(-tag);
        int done = 0;
        while (done < 100) {
            auto a = random_element(F, rng);
            if (a.is_zero()) continue;
            ++done;
            auto emb = embeddings(a, 256);
            bool all_positive = true;
            bool decided = true;
            for (const auto& I : emb.sigma) {
                int s = I.sign();
                if (s == 0) decided = false;
                if (s <= 0) all_positive = false;
            }
            REQUIRE(decided); // 256 bits decides the sign of every conjugate
            CHECK(is_totally_positive(a) == all_positive);
        }
    }
}

TEST_CASE("negative Pell fundamental solutions") {
    struct Row {
        long D, x, y;
    };
    const Row table[] = {
        {2, 1, 1},           {5, 2, 1},         {10, 3, 1},
        {13, 18, 5},         {26, 5, 1},        {29, 70, 13},
        {61, 29718, 3805},   {109, 8890182, 851525},
        {157, 4832118, 385645},
        {193, 1764132, 126985},
    };
    for (const auto& row : table) {
        CAPTURE(row.D);
        auto sol = negative_pell(row.D);
        REQUIRE(sol.has_value());
        CHECK(sol->x == row.x);
        CHECK(sol->y == row.y);
        CHECK(sol->x * sol->x - mpz_class(row.D) * sol->y * sol->y == -1);
    }
    auto big = negative_pell(181);
    REQUIRE(big.has_value());
    CHECK(big->x == mpz_class("1111225770"));
    CHECK(big->y == mpz_class("82596761"));

    for (long D : {3L, 7L, 8L, 12L, 34L, 199L}) {
        CAPTURE(D);
        CHECK(!negative_pell(D).has_value());
    }
}

TEST_CASE("negative Pell versus bounded brute force for D <= 200") {
    // Brute force: smallest y <= 10^4 with D y^2 - 1 a perfect square.
    for (long D = 2; D <= 200; ++D) {
        mpz_class rt;
        mpz_sqrt(rt.get_mpz_t(), mpz_class(D).get_mpz_t());
        if (rt * rt == D) continue; // skip perfect squares
        CAPTURE(D);
        std::optional<PellSolution> brute;
        for (long y = 1; y <= 10000; ++y) {
            mpz_class v = mpz_class(D) * y * y - 1;
            mpz_class x;
            mpz_sqrt(x.get_mpz_t(), v.get_mpz_t());
            if (x * x == v) {
                brute = PellSolution{D, x, y};
                break;
            }
        }
        auto cf = negative_pell(D);
        if (!cf.has_value()) {
            CHECK(!brute.has_value());
        } else if (cf->y <= 10000) {
            REQUIRE(brute.has_value());
            CHECK(cf->x == brute->x);
            CHECK(cf->y == brute->y);
        } else {
            CHECK(!brute.has_value());
        }
    }
}

TEST_CASE("squarefree report") {
    auto r = squarefree_and_odd_part(30);
    CHECK(r.is_squarefree);
    CHECK(r.odd_part == 15);

    r = squarefree_and_odd_part(12); // 4 * 3
    CHECK(!r.is_squarefree);
    CHECK(r.odd_part == 3);

    r = squarefree_and_odd_part(98); // 2 * 49
    CHECK(!r.is_squarefree);
    CHECK(r.odd_part == 49);

    r = squarefree_and_odd_part(1);
    CHECK(r.is_squarefree);
    CHECK(r.odd_part == 1);

    r = squarefree_and_odd_part(500); // 4 * 125
    CHECK(!r.is_squarefree);
    CHECK(r.odd_part == 125);

    CHECK_THROWS_AS(squarefree_and_odd_part(0), precondition_error);
    CHECK_THROWS_AS(squarefree_and_odd_part(-4), precondition_error);
}

TEST_CASE("root enclosures are certified and pairwise disjoint") {
    for (long tag : {5L, 2L, -1L, -2L, -6L, -12L, -20L}) {
        FieldPtr F = tag > 0 ? make_quadratic(tag) : make_simplest_quartic(-tag);
        CAPTURE(tag);
        auto roots = F->root_enclosures(128);
        REQUIRE(roots.size() == static_cast<size_t>(F->n));
        for (const auto& I : roots) CHECK(I.width() <= std::ldexp(1.0, -64));
        for (size_t a = 0; a < roots.size(); ++a)
            for (size_t b = a + 1; b < roots.size(); ++b)
                CHECK((roots[a].strictly_below(roots[b]) ||
                       roots[b].strictly_below(roots[a])));
    }
}

TEST_CASE("embedding precision floor") {
    auto F = make_quadratic(5);
    CHECK_THROWS_AS(embeddings(fe_generator(F), 32), precondition_error);
}
