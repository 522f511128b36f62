#include "quatlat/scan.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <variant>

namespace quatlat {

namespace {

struct WorkItem {
    std::string family;
    long s = 0;
    long parameter = 0;
};

using ItemResult = std::variant<CatalogEntry, SkipRecord>;

CatalogEntry finish_entry(const WorkItem& it, const TwistedLattice& L, double seconds) {
    LatticeReport rep = classify(L.gram, 4);
    if (rep.classification != L.expected_class)
        throw validation_error("classification " + rep.classification +
                               " does not match the expected " + L.expected_class);
    CatalogEntry e;
    e.family = it.family;
    e.s = it.s;
    e.parameter = it.parameter;
    e.d_F = L.F->d_F;
    e.alpha_coords = L.alpha.c;
    e.det = rep.det;
    e.even = rep.even;
    e.min_norm = rep.min_norm;
    e.kissing = rep.kissing;
    e.classification = rep.classification;
    e.build_seconds = seconds;
    return e;
}

ItemResult run_quadratic_item(const WorkItem& it) {
    long D = it.parameter;
    if (!squarefree_and_odd_part(mpz_class(D)).is_squarefree)
        return SkipRecord{D, "not_squarefree"};
    if (D % 8 == 1)
        return SkipRecord{D, "wrong_congruence"};
    try {
        auto t0 = std::chrono::steady_clock::now();
        TwistedLattice L = construct_quadratic(D);
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
        return finish_entry(it, L, secs);
    } catch (const precondition_error& e) {
        return SkipRecord{D, std::string("twist_search_failure: ") + e.what()};
    } catch (const validation_error& e) {
        return SkipRecord{D, std::string("twist_search_failure: ") + e.what()};
    }
}

ItemResult run_quartic_item(const WorkItem& it) {
    long m = it.parameter;
    if (m == 3) return SkipRecord{m, "excluded_by_definition"};
    int v2 = 0;
    for (long mm = m; mm > 0 && mm % 2 == 0; mm /= 2) ++v2;
    if (v2 != 1 && v2 != 2) return SkipRecord{m, "wrong_congruence"};
    mpz_class odd = squarefree_and_odd_part(mpz_class(m) * m + 16).odd_part;
    if (!squarefree_and_odd_part(odd).is_squarefree)
        return SkipRecord{m, "not_squarefree"};
    try {
        auto t0 = std::chrono::steady_clock::now();
        TwistedLattice L = construct_quartic(m);
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
        return finish_entry(it, L, secs);
    } catch (const precondition_error& e) {
        return SkipRecord{m, std::string("twist_search_failure: ") + e.what()};
    } catch (const validation_error& e) {
        return SkipRecord{m, std::string("twist_search_failure: ") + e.what()};
    }
}

ScanResult run_items(const std::vector<WorkItem>& items,
                     ItemResult (*run)(const WorkItem&), int jobs) {
    std::vector<ItemResult> results(items.size(), SkipRecord{});
    if (jobs < 1) jobs = 1;
    if (static_cast<size_t>(jobs) > items.size()) jobs = static_cast<int>(items.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < items.size(); ++i) results[i] = run(items[i]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= items.size()) return;
                    try {
                        results[i] = run(items[i]);
                    } catch (const std::exception& e) {
                        results[i] = SkipRecord{items[i].parameter,
                                                std::string("internal_error: ") + e.what()};
                    }
                }
            });
        for (auto& th : pool) th.join();
    }
    ScanResult out;
    for (auto& r : results) {
        if (std::holds_alternative<CatalogEntry>(r))
            out.entries.push_back(std::get<CatalogEntry>(std::move(r)));
        else
            out.skipped.push_back(std::get<SkipRecord>(std::move(r)));
    }
    return out;
}

std::vector<long> primes_up_to(long P) {
    std::vector<bool> comp(P + 1, false);
    std::vector<long> ps;
    for (long n = 2; n <= P; ++n) {
        if (comp[n]) continue;
        ps.push_back(n);
        for (long q = n * n; q <= P; q += n) comp[q] = true;
    }
    return ps;
}

} // namespace

ScanResult scan_quadratic(long s_max, bool with_s2plus1, int jobs) {
    if (s_max < 1) throw precondition_error("scan requires s_max >= 1");
    std::vector<WorkItem> items;
    for (long s = 1; s <= s_max; s += 2) {
        items.push_back({"E8_quadratic", s, s * s + 4});
        if (with_s2plus1) items.push_back({"E8_quadratic", s, s * s + 1});
    }
    return run_items(items, run_quadratic_item, jobs);
}

ScanResult scan_quartic(long m_max, int jobs) {
    if (m_max < 2) throw precondition_error("scan requires m_max >= 2");
    std::vector<WorkItem> items;
    for (long m = 2; m <= m_max; ++m) {
        long k = (m % 4 == 0) ? m / 4 : m / 2;
        items.push_back({"dim16_quartic", k, m});
    }
    return run_items(items, run_quartic_item, jobs);
}

CensusReport pell_census(long X) {
    if (X < 8) throw precondition_error("census bound too small");
    if (X > 10000000) throw precondition_error("census bound above the 10^7 guard");

    // smallest prime factor sieve
    std::vector<int32_t> spf(X + 1, 0);
    for (long n = 2; n <= X; ++n) {
        if (spf[n]) continue;
        for (long q = n; q <= X; q += n)
            if (!spf[q]) spf[q] = static_cast<int32_t>(n);
    }
    auto factor_ok = [&](long n, bool& squarefree, bool& all_1mod4) {
        squarefree = true;
        all_1mod4 = true;
        while (n > 1) {
            long p = spf[n];
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            if (e > 1) squarefree = false;
            if (p % 4 == 3) all_1mod4 = false;
        }
    };

    CensusReport rep;
    rep.X = X;
    for (long d = 5; d <= X; ++d) {
        bool sf, ok;
        if (d % 4 == 1) {
            factor_ok(d, sf, ok);
            if (sf && ok) {
                ++rep.count_d2;
                ++rep.count_odd;
            }
        } else if (d % 8 == 0) {
            long dp = d / 4;  // = 2 * odd for a fundamental discriminant
            if (dp % 4 != 2) continue;
            factor_ok(dp / 2, sf, ok);
            if (sf && ok) {
                ++rep.count_d2;
                ++rep.count_even;
                if (negative_pell(mpz_class(dp))) ++rep.even_pell_solvable;
            }
        }
    }
    rep.fraction_even_solvable =
        rep.count_even ? static_cast<double>(rep.even_pell_solvable) / rep.count_even : 0.0;
    rep.reference_curve =
        constants(100000).c1_truncated * X / std::sqrt(std::log(static_cast<double>(X)));
    rep.note = "negative Pell solvability is decided for the integral equation "
               "x^2 - D y^2 = -1 on the radicand D = d/4; for the even "
               "discriminants censused here the ring of integers is Z[sqrt(D)], "
               "so the integral equation coincides with the unit-norm equation";
    return rep;
}

DensityConstants constants(long P) {
    if (P < 100) throw precondition_error("truncation bound must be at least 100");
    DensityConstants c;
    c.P = P;
    double prod = 1.0;
    for (int j = 1, taken = 0; taken < 60; j += 2, ++taken)
        prod *= 1.0 - std::ldexp(1.0, -j);
    c.beta = prod;
    c.tau = prod / 9.0;
    double cp = 1.0;
    for (long p : primes_up_to(P))
        if (p % 4 == 1) cp *= std::sqrt(1.0 - 1.0 / (static_cast<double>(p) * p));
    c.c1_truncated = 9.0 / (8.0 * std::acos(-1.0)) * cp;
    return c;
}

} // namespace quatlat
