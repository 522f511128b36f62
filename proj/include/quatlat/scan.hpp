#pragma once

#include <string>
#include <vector>

#include "quatlat/analyze.hpp"
#include "quatlat/lattice.hpp"

namespace quatlat {

struct CatalogEntry {
    std::string family;   // E8_quadratic | dim16_quartic
    long s = 0;           // generating parameter of the family (0 when n/a)
    long parameter = 0;   // D or m
    mpz_class d_F;
    VecQ alpha_coords;
    mpq_class det;
    bool even = false;
    long min_norm = 0;
    long kissing = 0;
    std::string classification;
    double build_seconds = 0.0;
};

struct SkipRecord {
    long parameter = 0;
    std::string reason;   // machine-readable: not_squarefree | wrong_congruence | ...
};

struct ScanResult {
    std::vector<CatalogEntry> entries;
    std::vector<SkipRecord> skipped;
};

/* D = s^2 + 4 for odd s <= s_max (and D = s^2 + 1 behind the flag); builds and
 * fully verifies each lattice; deterministic parameter-ordered output for any
 * job count. */
ScanResult scan_quadratic(long s_max, bool with_s2plus1 = false, int jobs = 1);

/* m = 2k (k odd, k^2+4 squarefree) -> E8^2 entries; m = 4k (k odd, k^2+1
 * squarefree) -> Barnes-Wall entries; skips recorded with reasons. */
ScanResult scan_quartic(long m_max, int jobs = 1);

struct CensusReport {
    long X = 0;
    long count_d2 = 0;      // fundamental discriminants with no prime factor = 3 (mod 4)
    long count_even = 0;    // members divisible by 8
    long count_odd = 0;     // odd members
    long even_pell_solvable = 0;
    double fraction_even_solvable = 0.0;
    double reference_curve = 0.0;  // c1 * X / sqrt(log X), truncated Euler product
    std::string note;
};
CensusReport pell_census(long X);

struct DensityConstants {
    double c1_truncated = 0.0;
    double tau = 0.0;
    double beta = 0.0;
    long P = 0;
};
DensityConstants constants(long P);

} // namespace quatlat
