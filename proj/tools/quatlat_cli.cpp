#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "quatlat/analyze.hpp"
#include "quatlat/lattice.hpp"
#include "quatlat/scan.hpp"

using json = nlohmann::ordered_json;
using namespace quatlat;

namespace {

struct Options {
    std::string format = "json";
    bool no_timing = false;
    long precision_bits = 128;
    long theta_bound = 8;
};

json rational(const mpq_class& q) { return q.get_str(); }

json field_record(const FieldPtr& F) {
    json j;
    j["kind"] = F->kind == FieldKind::quadratic ? "quadratic" : "simplest_quartic";
    j["parameter"] = F->parameter;
    j["degree"] = F->n;
    j["discriminant"] = F->d_F.get_str();
    j["index"] = F->index.get_str();
    json poly = json::array();
    for (const auto& c : F->min_poly) poly.push_back(c.get_str());
    j["min_poly"] = poly;
    return j;
}

json element_coords(const FieldElement& a) {
    json j = json::array();
    for (const auto& c : a.c) j.push_back(rational(c));
    return j;
}

json order_record(const QuaternionOrder& O) {
    json j;
    j["provenance"] = O.provenance;
    json gens = json::array();
    for (const auto& g : O.generators)
        gens.push_back(json::array({element_coords(g.x), element_coords(g.y),
                                    element_coords(g.z), element_coords(g.t)}));
    j["generators"] = gens;
    return j;
}

json gram_record(const MatQ& G) {
    json rows = json::array();
    for (const auto& row : G) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.get_num().get_si());
        rows.push_back(r);
    }
    return rows;
}

json report_record(const LatticeReport& r) {
    json j;
    j["dimension"] = r.dimension;
    j["det"] = rational(r.det);
    j["integral"] = r.integral;
    j["even"] = r.even;
    j["min_norm"] = r.min_norm;
    j["kissing"] = r.kissing;
    json th = json::array();
    for (auto [q, n] : r.theta) th.push_back(json::array({q, n}));
    j["theta"] = th;
    j["delta_exact"] = r.delta_exact;
    if (r.delta_exact) j["delta"] = rational(r.delta);
    j["delta_approx"] = r.delta_approx;
    j["classification"] = r.classification;
    j["extremal"] = r.extremal;
    return j;
}

json selection_record(const std::vector<TwistCandidateDiag>& log) {
    json arr = json::array();
    for (const auto& d : log) {
        json c;
        c["c"] = d.c;
        c["s_den"] = d.s_den;
        c["norm_alpha"] = rational(d.norm_alpha);
        c["unit_found"] = d.unit_found;
        if (d.unit_found) {
            c["unit"] = json::array({d.unit_a, d.unit_b, d.unit_sign});
            c["integral"] = d.integral;
            c["even"] = d.even;
            c["gram_det"] = rational(d.gram_det);
        }
        c["selected"] = d.selected;
        arr.push_back(c);
    }
    return arr;
}

void emit(const json& j, const Options& opt) {
    if (opt.format == "json") {
        std::cout << j.dump() << "\n";
        return;
    }
    // text rendering: scalar lines; matrices as integer rows
    std::function<void(const std::string&, const json&)> walk =
        [&](const std::string& key, const json& v) {
            if (key == "gram") {
                std::cout << "gram:\n";
                for (const auto& row : v) {
                    for (size_t i = 0; i < row.size(); ++i)
                        std::cout << (i ? " " : "") << row[i].get<long>();
                    std::cout << "\n";
                }
                return;
            }
            std::cout << key << ": " << v.dump() << "\n";
        };
    for (auto it = j.begin(); it != j.end(); ++it) walk(it.key(), it.value());
    std::cout << "\n";
}

json construct_record(const std::string& family, long parameter, const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    TwistedLattice L = family == "quadratic" ? construct_quadratic(parameter)
                                             : construct_quartic(parameter);
    LatticeReport rep = classify(L.gram, opt.theta_bound);
    FloatGenerator M = generator_matrix(L.order, L.alpha, opt.precision_bits);
    double dev = generator_deviation(M, L.gram);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json j;
    j["command"] = "construct";
    j["family"] = family;
    j["parameter"] = parameter;
    j["field"] = field_record(L.F);
    j["order"] = order_record(L.order);
    j["alpha"] = element_coords(L.alpha);
    if (!L.selection_log.empty()) j["selection_log"] = selection_record(L.selection_log);
    j["gram"] = gram_record(L.gram);
    j["report"] = report_record(rep);
    j["det_via_formula"] = rational(det_via_formula(L.order, L.alpha));
    j["deviation_bits"] = opt.precision_bits;
    j["deviation"] = dev;
    if (!opt.no_timing) j["timing_seconds"] = secs;
    return j;
}

MatQ read_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open " + path);
    long dim = 0;
    if (!(in >> dim) || dim < 1 || dim > 64)
        throw precondition_error("bad dimension header in " + path);
    MatQ G(dim, VecQ(dim));
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            std::string tok;
            if (!(in >> tok)) throw precondition_error("truncated matrix in " + path);
            try {
                G[i][j] = mpq_class(mpz_class(tok));
            } catch (const std::invalid_argument&) {
                throw precondition_error("bad integer '" + tok + "' in " + path);
            }
        }
    return G;
}

json analyze_record(const std::string& path, const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    MatQ G = read_gram_file(path);
    LatticeReport rep = classify(G, opt.theta_bound);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json j;
    j["command"] = "analyze";
    j["file"] = path;
    j["report"] = report_record(rep);
    if (!opt.no_timing) j["timing_seconds"] = secs;
    return j;
}

void emit_scan(const ScanResult& res, const std::string& family_cmd, const Options& opt) {
    for (const auto& e : res.entries) {
        json j;
        j["command"] = "scan";
        j["family"] = e.family;
        j["s"] = e.s;
        j["parameter"] = e.parameter;
        j["d_F"] = e.d_F.get_str();
        json ac = json::array();
        for (const auto& c : e.alpha_coords) ac.push_back(rational(c));
        j["alpha"] = ac;
        j["det"] = rational(e.det);
        j["even"] = e.even;
        j["min_norm"] = e.min_norm;
        j["kissing"] = e.kissing;
        j["classification"] = e.classification;
        if (!opt.no_timing) j["build_seconds"] = e.build_seconds;
        emit(j, opt);
    }
    for (const auto& s : res.skipped) {
        json j;
        j["command"] = "scan";
        j["family"] = family_cmd;
        j["parameter"] = s.parameter;
        j["skipped"] = s.reason;
        emit(j, opt);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattices from maximal orders in definite quaternion algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    if (const char* env = std::getenv("QUATLAT_PREC_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 64) opt.precision_bits = v;
    }
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--no-timing", opt.no_timing, "suppress timing fields");
    app.add_option("--precision-bits", opt.precision_bits,
                   "interval precision for the embedding matrix (env QUATLAT_PREC_BITS)")
        ->capture_default_str();
    app.add_option("--theta-bound", opt.theta_bound, "largest norm in the theta table")
        ->capture_default_str();

    auto* c_construct = app.add_subcommand("construct", "build and classify a lattice");
    std::string family;
    long parameter = 0;
    c_construct->add_option("family", family, "quadratic | quartic")
        ->required()
        ->check(CLI::IsMember({"quadratic", "quartic"}));
    c_construct->add_option("parameter", parameter, "D (quadratic) or m (quartic)")
        ->required();

    auto* c_analyze = app.add_subcommand("analyze", "classify a Gram matrix file");
    std::string gram_path;
    c_analyze->add_option("gram_file", gram_path, "dimension line, then integer rows")
        ->required();

    auto* c_scan = app.add_subcommand("scan", "sweep a parameter family");
    std::string scan_family;
    long smax = 0, mmax = 0;
    int jobs = 1;
    bool with_s2plus1 = false;
    c_scan->add_option("family", scan_family, "quadratic | quartic")
        ->required()
        ->check(CLI::IsMember({"quadratic", "quartic"}));
    c_scan->add_option("--smax", smax, "largest odd s for D = s^2+4");
    c_scan->add_option("--mmax", mmax, "largest quartic parameter m");
    c_scan->add_option("--jobs", jobs, "parallel workers")->capture_default_str();
    c_scan->add_flag("--with-s2plus1", with_s2plus1, "include the D = s^2+1 variant");

    auto* c_census = app.add_subcommand("census", "fundamental discriminant census");
    long X = 100000;
    c_census->add_option("--X", X, "upper bound on the discriminants")
        ->capture_default_str();

    auto* c_constants = app.add_subcommand("constants", "density constants");
    long P = 100000;
    c_constants->add_option("--P", P, "Euler product truncation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        if (*c_construct) {
            emit(construct_record(family, parameter, opt), opt);
        } else if (*c_analyze) {
            emit(analyze_record(gram_path, opt), opt);
        } else if (*c_scan) {
            if (scan_family == "quadratic") {
                if (smax < 1) throw precondition_error("scan quadratic requires --smax >= 1");
                emit_scan(scan_quadratic(smax, with_s2plus1, jobs), "E8_quadratic", opt);
            } else {
                if (mmax < 2) throw precondition_error("scan quartic requires --mmax >= 2");
                emit_scan(scan_quartic(mmax, jobs), "dim16_quartic", opt);
            }
        } else if (*c_census) {
            CensusReport rep = pell_census(X);
            json j;
            j["command"] = "census";
            j["X"] = rep.X;
            j["count_d2"] = rep.count_d2;
            j["count_even"] = rep.count_even;
            j["count_odd"] = rep.count_odd;
            j["even_pell_solvable"] = rep.even_pell_solvable;
            j["fraction_even_solvable"] = rep.fraction_even_solvable;
            j["reference_curve"] = rep.reference_curve;
            j["note"] = rep.note;
            emit(j, opt);
        } else if (*c_constants) {
            DensityConstants c = constants(P);
            json j;
            j["command"] = "constants";
            j["P"] = c.P;
            j["tau"] = c.tau;
            j["beta"] = c.beta;
            j["c1_truncated"] = c.c1_truncated;
            emit(j, opt);
        }
    } catch (const precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        std::cerr << "validation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
