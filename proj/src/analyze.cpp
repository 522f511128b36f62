#include "quatlat/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

namespace quatlat {

namespace {

struct Gso {
    std::vector<mpq_class> B;       // squared lengths of the GS vectors
    std::vector<std::vector<mpq_class>> mu;
};

Gso gso_from_gram(const MatZ& a) {
    const size_t n = a.size();
    Gso g;
    g.B.assign(n, 0);
    g.mu.assign(n, std::vector<mpq_class>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < i; ++j) {
            mpq_class s = mpq_class(a[i][j]);
            for (size_t k = 0; k < j; ++k) s -= g.mu[i][k] * g.mu[j][k] * g.B[k];
            g.mu[i][j] = s / g.B[j];
        }
        mpq_class b = mpq_class(a[i][i]);
        for (size_t k = 0; k < i; ++k) b -= g.mu[i][k] * g.mu[i][k] * g.B[k];
        if (b <= 0) throw precondition_error("Gram matrix is not positive definite");
        g.B[i] = b;
    }
    return g;
}

mpz_class round_nearest(const mpq_class& x) {
    // floor(x + 1/2)
    mpq_class y = x + mpq_class(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
    return q;
}

void row_combine(MatZ& a, MatZ& u, size_t k, size_t j, const mpz_class& q) {
    const size_t n = a.size();
    for (size_t t = 0; t < n; ++t) {
        a[k][t] -= q * a[j][t];
        u[k][t] -= q * u[j][t];
    }
    for (size_t t = 0; t < n; ++t) a[t][k] -= q * a[t][j];
}

void row_swap(MatZ& a, MatZ& u, size_t k) {
    const size_t n = a.size();
    std::swap(a[k], a[k - 1]);
    std::swap(u[k], u[k - 1]);
    for (size_t t = 0; t < n; ++t) std::swap(a[t][k], a[t][k - 1]);
}

MatZ to_integer_gram(const MatQ& G, const char* who) {
    if (!is_integral(G))
        throw precondition_error(std::string(who) + " requires an integral Gram matrix");
    MatZ a(G.size());
    for (size_t i = 0; i < G.size(); ++i) {
        if (G[i].size() != G.size())
            throw precondition_error(std::string(who) + ": matrix not square");
        for (const auto& v : G[i]) a[i].push_back(v.get_num());
    }
    return a;
}

/* Enumerate one representative of each pair {v,-v} of nonzero vectors with
 * v^T A v <= bound, for A positive definite over Z.  Float LDL pruning with a
 * half-unit margin, exact integer norms maintained incrementally. */
void enumerate_half(const MatZ& a, long bound,
                    const std::function<void(const std::vector<long>&, long)>& fn) {
    const int n = static_cast<int>(a.size());
    if (bound < 0) return;

    std::vector<std::vector<double>> ad(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ad[i][j] = a[i][j].get_d();

    // LDL^T: q(x) = sum_i D[i] (x_i + sum_{j>i} L[j][i] x_j)^2
    std::vector<double> D(n);
    std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        double d = ad[i][i];
        for (int k = 0; k < i; ++k) d -= L[i][k] * L[i][k] * D[k];
        if (d <= 0) throw precondition_error("Gram matrix is not positive definite");
        D[i] = d;
        for (int j = i + 1; j < n; ++j) {
            double s = ad[j][i];
            for (int k = 0; k < i; ++k) s -= L[j][k] * L[i][k] * D[k];
            L[j][i] = s / d;
        }
    }

    std::vector<std::int64_t> az(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!mpz_fits_slong_p(a[i][j].get_mpz_t()))
                throw precondition_error("Gram entries exceed the native integer range");
            az[i * n + j] = a[i][j].get_si();
        }

    const double budget = static_cast<double>(bound) + 0.5;
    std::vector<long> x(n, 0);
    std::vector<double> center(n, 0.0), used(n + 1, 0.0);
    std::vector<std::int64_t> exact(n + 1, 0);

    // levels from n-1 down to 0; "leading" marks all-zero coordinates above
    std::function<void(int, bool)> walk = [&](int i, bool leading) {
        if (i < 0) {
            if (!leading && exact[0] <= bound) fn(x, static_cast<long>(exact[0]));
            return;
        }
        double c = 0.0;
        for (int j = i + 1; j < n; ++j) c += L[j][i] * x[j];
        double room = budget - used[i + 1];
        if (room < 0) return;
        double half = std::sqrt(room / D[i]);
        long lo = static_cast<long>(std::ceil(-c - half - 1e-9));
        long hi = static_cast<long>(std::floor(-c + half + 1e-9));
        if (leading) lo = std::max(lo, 0L);
        std::int64_t dot = 0;
        for (int j = i + 1; j < n; ++j) dot += az[i * n + j] * x[j];
        for (long v = lo; v <= hi; ++v) {
            double t = v + c;
            double q = D[i] * t * t;
            if (used[i + 1] + q > budget) continue;
            x[i] = v;
            used[i] = used[i + 1] + q;
            exact[i] = exact[i + 1] + az[i * n + i] * v * v + 2 * dot * v;
            walk(i - 1, leading && v == 0);
        }
        x[i] = 0;
    };
    walk(n - 1, true);
}

int rank_of_rows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return 0;
    MatQ m(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (long v : rows[i]) m[i].push_back(mpq_class(v));
    const size_t nr = m.size(), nc = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < nc && rank < nr; ++col) {
        size_t piv = rank;
        while (piv < nr && m[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[piv], m[rank]);
        mpq_class inv = 1 / m[rank][col];
        for (size_t j = col; j < nc; ++j) m[rank][j] *= inv;
        for (size_t i = 0; i < nr; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            mpq_class f = m[i][col];
            for (size_t j = col; j < nc; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

} // namespace

bool is_integral(const MatQ& G) {
    for (const auto& row : G)
        for (const auto& v : row)
            if (v.get_den() != 1) return false;
    return true;
}

bool is_even(const MatQ& G) {
    if (!is_integral(G)) return false;
    for (size_t i = 0; i < G.size(); ++i)
        if (mpz_class(G[i][i].get_num() % 2) != 0) return false;
    return true;
}

ReducedGram lll_gram(const MatZ& G) {
    const size_t n = G.size();
    MatZ a = G;
    MatZ u(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    if (n <= 1) {
        gso_from_gram(a);
        return {a, u};
    }

    const mpq_class delta(99, 100);
    size_t k = 1;
    Gso g = gso_from_gram(a);
    while (k < n) {
        for (size_t j = k; j-- > 0;) {
            mpz_class q = round_nearest(g.mu[k][j]);
            if (q != 0) {
                row_combine(a, u, k, j, q);
                g = gso_from_gram(a);
            }
        }
        if (g.B[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
            ++k;
        } else {
            row_swap(a, u, k);
            g = gso_from_gram(a);
            k = std::max<size_t>(k - 1, 1);
        }
    }
    return {a, u};
}

std::pair<long, long> minimum_and_kissing(const MatQ& G) {
    MatZ a = to_integer_gram(G, "minimum_and_kissing");
    ReducedGram r = lll_gram(a);
    long bound = 0;
    for (size_t i = 0; i < r.gram.size(); ++i) {
        long d = r.gram[i][i].get_si();
        if (i == 0 || d < bound) bound = d;
    }
    long best = bound;
    long count = 0;
    enumerate_half(r.gram, bound, [&](const std::vector<long>&, long norm) {
        if (norm < best) {
            best = norm;
            count = 1;
        } else if (norm == best) {
            ++count;
        }
    });
    return {best, 2 * count};
}

std::vector<std::pair<long, long>> theta_coeffs(const MatQ& G, long bound) {
    if (bound < 0 || bound > 12)
        throw precondition_error("theta bound must lie in [0, 12]");
    MatZ a = to_integer_gram(G, "theta_coeffs");
    ReducedGram r = lll_gram(a);
    std::vector<long> counts(bound + 1, 0);
    enumerate_half(r.gram, bound, [&](const std::vector<long>&, long norm) {
        counts[norm] += 2;
    });
    std::vector<std::pair<long, long>> out;
    out.emplace_back(0, 1);
    for (long q = 2; q <= bound; q += 2) out.emplace_back(q, counts[q]);
    return out;
}

std::vector<std::pair<int, long>> root_components(const MatQ& G) {
    MatZ a = to_integer_gram(G, "root_components");
    ReducedGram r = lll_gram(a);
    const int n = static_cast<int>(r.gram.size());
    std::vector<std::vector<long>> roots;
    enumerate_half(r.gram, 2, [&](const std::vector<long>& x, long norm) {
        if (norm == 2) roots.push_back(x);
    });
    if (roots.empty()) return {};

    std::vector<std::int64_t> az(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) az[i * n + j] = r.gram[i][j].get_si();
    auto pairing = [&](const std::vector<long>& p, const std::vector<long>& q) {
        std::int64_t s = 0;
        for (int i = 0; i < n; ++i) {
            if (p[i] == 0) continue;
            std::int64_t row = 0;
            for (int j = 0; j < n; ++j) row += az[i * n + j] * q[j];
            s += p[i] * row;
        }
        return s;
    };

    std::vector<size_t> parent(roots.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (pairing(roots[i], roots[j]) != 0) parent[find(i)] = find(j);

    std::vector<std::pair<int, long>> out;
    std::vector<size_t> reps;
    for (size_t i = 0; i < roots.size(); ++i)
        if (find(i) == i) reps.push_back(i);
    for (size_t rep : reps) {
        std::vector<std::vector<long>> members;
        for (size_t i = 0; i < roots.size(); ++i)
            if (find(i) == rep) members.push_back(roots[i]);
        out.emplace_back(rank_of_rows(members), 2 * static_cast<long>(members.size()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

long brute_force_min(const MatQ& G, int box) {
    if (box < 1) throw precondition_error("search box must be positive");
    MatZ a = to_integer_gram(G, "brute_force_min");
    const int n = static_cast<int>(a.size());
    if (n > 8 && box > 2)
        throw precondition_error("exhaustive search limited to dimension 8 or box 2");

    std::vector<std::int64_t> az(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!mpz_fits_slong_p(a[i][j].get_mpz_t()))
                throw precondition_error("Gram entries exceed the native integer range");
            az[i * n + j] = a[i][j].get_si();
        }

    std::vector<long> x(n, 0);
    std::int64_t best = -1;
    std::vector<std::int64_t> partial(n + 1, 0);
    std::function<void(int, bool)> walk = [&](int i, bool leading) {
        if (i < 0) {
            if (!leading && (best < 0 || partial[0] < best)) best = partial[0];
            return;
        }
        std::int64_t dot = 0;
        for (int j = i + 1; j < n; ++j) dot += az[i * n + j] * x[j];
        for (long v = leading ? 0 : -box; v <= box; ++v) {
            x[i] = v;
            partial[i] = partial[i + 1] + az[i * n + i] * v * v + 2 * dot * v;
            walk(i - 1, leading && v == 0);
        }
        x[i] = 0;
    };
    walk(n - 1, true);
    return static_cast<long>(best);
}

long extremal_bound(int dimension) { return 2 + 2 * (dimension / 24); }

LatticeReport classify(const MatQ& G, long theta_bound) {
    LatticeReport rep;
    rep.dimension = static_cast<int>(G.size());
    rep.det = exact_det(G);
    rep.integral = is_integral(G);
    rep.even = is_even(G);
    if (!rep.integral)
        throw precondition_error("classification requires an integral Gram matrix");
    if (rep.det <= 0)
        throw precondition_error("Gram matrix is not positive definite");

    auto [mn, kiss] = minimum_and_kissing(G);
    rep.min_norm = mn;
    rep.kissing = kiss;
    rep.theta = theta_coeffs(G, theta_bound);

    if (rep.even && rep.det == 1) {
        if (rep.dimension % 8 != 0)
            throw validation_error("even unimodular Gram in dimension not divisible by 8");
        if (rep.dimension == 8) {
            if (mn != 2)
                throw validation_error("even unimodular dimension 8 must have minimum 2");
            rep.classification = "E8";
        } else if (rep.dimension == 16 && mn == 2) {
            auto comps = root_components(G);
            if (comps == std::vector<std::pair<int, long>>{{8, 240}, {8, 240}})
                rep.classification = "E8xE8";
            else if (comps == std::vector<std::pair<int, long>>{{16, 480}})
                rep.classification = "D16plus";
            else
                rep.classification = "EvenUnimodularOther";
        } else {
            rep.classification = "EvenUnimodularOther";
        }
    } else if (rep.even && rep.det == 256 && rep.dimension == 16 && mn == 4) {
        rep.classification = "BarnesWall16";
    } else {
        rep.classification = "Other";
    }

    rep.extremal = rep.even && rep.det == 1 && mn == extremal_bound(rep.dimension);

    // center density: delta = min^{n/2} / (2^n sqrt(det))
    const int n = rep.dimension;
    mpz_class num = rep.det.get_num(), den = rep.det.get_den();
    bool sq = n % 2 == 0 && mpz_perfect_square_p(num.get_mpz_t()) &&
              mpz_perfect_square_p(den.get_mpz_t());
    if (sq) {
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        mpz_class mins;
        mpz_ui_pow_ui(mins.get_mpz_t(), static_cast<unsigned long>(mn),
                      static_cast<unsigned long>(n / 2));
        mpz_class two_n;
        mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
        rep.delta_exact = true;
        rep.delta = mpq_class(mins * sd, two_n * sn);
        rep.delta.canonicalize();
        rep.delta_approx = rep.delta.get_d();
    } else {
        rep.delta_exact = false;
        rep.delta = 0;
        rep.delta_approx = std::pow(static_cast<double>(mn), n / 2.0) /
                           (std::ldexp(1.0, n) * std::sqrt(rep.det.get_d()));
    }
    return rep;
}

} // namespace quatlat
