#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quatlat/exactlin.hpp"

namespace quatlat {

struct LatticeReport {
    int dimension = 0;
    mpq_class det;
    bool integral = false;
    bool even = false;
    long min_norm = 0;
    long kissing = 0;
    std::vector<std::pair<long, long>> theta;  // (norm, count), norm even, from 0
    bool delta_exact = false;
    mpq_class delta;        // center density when sqrt(det) is rational
    double delta_approx = 0.0;
    std::string classification;  // E8 | E8xE8 | D16plus | BarnesWall16 | EvenUnimodularOther | Other
    bool extremal = false;
};

bool is_integral(const MatQ& G);
bool is_even(const MatQ& G);

/* LLL reduction (delta = 99/100) of an integral Gram matrix with exact
 * rational Gram-Schmidt data; returns G' = U G U^T and certifies positive
 * definiteness along the way. */
struct ReducedGram {
    MatZ gram;
    MatZ transform;
};
ReducedGram lll_gram(const MatZ& G);

/* Exact minimum and count of minimal vectors (v and -v both counted), by
 * bounded enumeration on the reduced Gram with exact integer recheck. */
std::pair<long, long> minimum_and_kissing(const MatQ& G);

/* Counts N(q) = #{v != 0 : v^T G v = q} for even q <= bound, preceded by
 * (0, 1) for the zero vector. */
std::vector<std::pair<long, long>> theta_coeffs(const MatQ& G, long bound);

/* Connected components of the norm-2 vectors under non-orthogonality:
 * (rank of span, number of roots), sorted. */
std::vector<std::pair<int, long>> root_components(const MatQ& G);

/* Exhaustive minimum over coefficient vectors in [-box, box]^dim. */
long brute_force_min(const MatQ& G, int box);

long extremal_bound(int dimension);  // 2 + 2*floor(n/24)

LatticeReport classify(const MatQ& G, long theta_bound = 8);

} // namespace quatlat
