#include "latcode/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "latcode/counting.hpp"
#include "latcode/css.hpp"
#include "latcode/json_io.hpp"
#include "latcode/rng.hpp"
#include "latcode/wedge.hpp"

namespace latcode {

namespace {

int default_threads() {
    if (const char* env = std::getenv("LATCODE_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// every file-producing run leaves a manifest next to its outputs
void write_manifest(const std::string& out_path, const std::vector<std::string>& args,
                    const std::vector<std::string>& outputs, double wall_ms) {
    Json m;
    m["tool"] = "latcode";
    m["version"] = artifact_version;
    m["rng"] = std::string(SplitRng::version);
    Json argv = Json::array();
    for (const auto& a : args) argv.push_back(a);
    m["argv"] = std::move(argv);
    Json outs = Json::array();
    for (const auto& o : outputs) outs.push_back(o);
    m["outputs"] = std::move(outs);
    m["wall_ms"] = wall_ms;
    write_file(out_path + ".manifest.json", stable_dump(m));
}

void emit(const std::string& out, const std::string& payload, const std::vector<std::string>& args,
          double wall_ms, std::vector<std::string> extra_outputs = {}) {
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    write_file(out, payload);
    extra_outputs.insert(extra_outputs.begin(), out);
    write_manifest(out, args, extra_outputs, wall_ms);
}

Rat parse_rat_or_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return rat_from_string(s);
    // decimal literal -> exact rational
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    int frac = static_cast<int>(s.size() - dot - 1);
    bool neg = !digits.empty() && digits[0] == '-';
    Rat num = rat_from_string(digits);
    Int den = 1;
    for (int i = 0; i < frac; ++i) den *= 10;
    Rat r = num / Rat(den);
    r.canonicalize();
    (void)neg;
    return r;
}

struct AnalysisOptions {
    bool distance = false;
    std::string method = "auto"; // exact | cycle | auto
    bool soundness = false;
    int wmax = 4;
    std::string mode = "exhaustive";
    std::uint64_t seed = 0;
    std::uint64_t samples = 200;
    std::uint64_t budget = 1u << 26;
};

Json analyze_code(const CssCode& code, const AnalysisOptions& opt) {
    Json rep;
    rep["N"] = code.nqubits;
    rep["d"] = code.d;
    rep["z_stabilizers"] = code.z_stabilizers();
    rep["x_stabilizers"] = code.x_stabilizers();
    rep["K"] = logical_count(code);
    rep["W"] = weight_w(code);
    if (opt.distance) {
        auto one_side = [&](Side side) -> Json {
            Json r;
            if (opt.method == "cycle" || opt.method == "auto") {
                try {
                    r["value"] = distance_cycle_q1(code, side);
                    r["method"] = "cycle";
                    return r;
                } catch (const std::invalid_argument&) {
                    if (opt.method == "cycle") throw;
                }
            }
            auto d = distance_exact(code, side, opt.budget);
            if (d)
                r["value"] = *d;
            else
                r["value"] = "infinity";
            r["method"] = "exact";
            return r;
        };
        rep["D_Z"] = one_side(Side::Z);
        rep["D_X"] = one_side(Side::X);
    }
    if (opt.soundness) {
        SoundnessMode mode =
            opt.mode == "sampled" ? SoundnessMode::Sampled : SoundnessMode::Exhaustive;
        SoundnessProfile prof =
            soundness_profile(code, opt.wmax, mode, opt.seed, opt.samples, opt.budget);
        auto dump_side = [&](const std::vector<SoundnessEntry>& side) {
            Json arr = Json::array();
            for (int w = 1; w <= prof.w_max; ++w) {
                Json e;
                e["w"] = w;
                if (side[w].vacuous) {
                    e["epsilon"] = "vacuous";
                } else {
                    e["epsilon"] = fmt17(side[w].value);
                    e["num"] = side[w].num;
                    e["den"] = side[w].den;
                }
                e["samples"] = side[w].samples;
                arr.push_back(std::move(e));
            }
            return arr;
        };
        Json s;
        s["exhaustive"] = prof.exhaustive;
        s["epsilon_z"] = dump_side(prof.z);
        s["epsilon_x"] = dump_side(prof.x);
        rep["soundness"] = std::move(s);
    }
    return rep;
}

} // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"lattice-built CSS code toolkit"};
    app.require_subcommand(1);
    auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    // ------------------------------------------------------------ gen-lda
    auto* gen = app.add_subcommand("gen-lda", "sample an LDA lattice from the random code ensemble");
    int g_n = 4, g_k = 2;
    std::uint32_t g_p = 3;
    std::uint64_t g_seed = 0;
    std::string g_out;
    gen->add_option("--n", g_n)->required();
    gen->add_option("--k", g_k)->required();
    gen->add_option("--p", g_p)->required();
    gen->add_option("--seed", g_seed)->required();
    gen->add_option("--out", g_out);

    // ------------------------------------------------------------ rankin
    auto* rk = app.add_subcommand("rankin", "Rankin invariant of a lattice");
    std::string rk_lattice, rk_out, rk_radius2;
    int rk_m = 1;
    bool rk_exact = false;
    std::uint64_t rk_budget = 1u << 24;
    rk->add_option("--lattice", rk_lattice)->required();
    rk->add_option("--m", rk_m)->required();
    rk->add_option("--radius2", rk_radius2);
    rk->add_flag("--exact", rk_exact, "certify through the complete sublattice search");
    rk->add_option("--budget", rk_budget);
    rk->add_option("--out", rk_out);

    // ------------------------------------------------------ min-sublattice
    auto* ms = app.add_subcommand("min-sublattice", "minimum-volume constrained sublattice");
    int ms_n = 4, ms_m = 2;
    std::string ms_code, ms_cap = "16", ms_out;
    std::uint32_t ms_subp = 0;
    bool ms_always = false;
    std::uint64_t ms_budget = 1u << 26;
    ms->add_option("--n", ms_n)->required();
    ms->add_option("--m", ms_m)->required();
    ms->add_option("--cap", ms_cap, "volume cap H (not squared)");
    ms->add_option("--code", ms_code, "lda json: consistency with its generator");
    ms->add_option("--sub-p", ms_subp, "predicate: inside p Z^n");
    ms->add_flag("--always", ms_always, "predicate: always true");
    ms->add_option("--budget", ms_budget);
    ms->add_option("--out", ms_out);

    // ---------------------------------------------------------- build-code
    auto* bc = app.add_subcommand("build-code", "build a CSS code from a cellulation");
    std::string bc_kind, bc_lattice, bc_out;
    int bc_n = 2, bc_ell = 2, bc_p = 1, bc_q = 1;
    std::uint32_t bc_d = 2;
    std::uint64_t bc_budget = 1u << 24;
    bc->add_option("kind", bc_kind, "torus | simplex | product")->required();
    bc->add_option("--n", bc_n);
    bc->add_option("--ell", bc_ell, "cubic torus side");
    bc->add_option("--lattice", bc_lattice, "torus from a lattice json");
    bc->add_option("--p", bc_p, "product sphere side");
    bc->add_option("--q", bc_q)->required();
    bc->add_option("--d", bc_d, "qudit dimension (prime)");
    bc->add_option("--budget", bc_budget);
    bc->add_option("--out", bc_out);

    // ------------------------------------------------------------- analyze
    auto* an = app.add_subcommand("analyze", "parameters of a CSS code");
    std::string an_code, an_out;
    AnalysisOptions an_opt;
    an->add_option("--code", an_code)->required();
    an->add_flag("--distance", an_opt.distance);
    an->add_option("--distance-method", an_opt.method)->check(CLI::IsMember({"auto", "exact", "cycle"}));
    an->add_flag("--soundness", an_opt.soundness);
    an->add_option("--wmax", an_opt.wmax);
    an->add_option("--mode", an_opt.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    an->add_option("--seed", an_opt.seed);
    an->add_option("--samples", an_opt.samples);
    an->add_option("--budget", an_opt.budget);
    an->add_option("--out", an_out);

    // ----------------------------------------------------------- soundness
    auto* so = app.add_subcommand("soundness", "soundness profile of a CSS code");
    std::string so_code, so_out;
    AnalysisOptions so_opt;
    so_opt.soundness = true;
    so->add_option("--code", so_code)->required();
    so->add_option("--wmax", so_opt.wmax)->required();
    so->add_option("--mode", so_opt.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    so->add_option("--seed", so_opt.seed);
    so->add_option("--samples", so_opt.samples);
    so->add_option("--budget", so_opt.budget);
    so->add_option("--out", so_out);

    // ---------------------------------------------------------- wedge-report
    auto* wr = app.add_subcommand("wedge-report", "shortest vector of an exterior power");
    std::string wr_lattice, wr_out, wr_radius2;
    int wr_m = 2;
    std::uint64_t wr_budget = 1u << 24;
    wr->add_option("--lattice", wr_lattice)->required();
    wr->add_option("--m", wr_m)->required();
    wr->add_option("--radius2", wr_radius2);
    wr->add_option("--budget", wr_budget);
    wr->add_option("--out", wr_out);

    // ------------------------------------------------------------ experiment
    auto* ex = app.add_subcommand("experiment", "randomized experiments");
    std::string ex_kind, ex_c = "0.2", ex_out;
    int ex_n = 6, ex_k = 3, ex_m = 2, ex_trials = 100, ex_threads = default_threads();
    std::uint32_t ex_p = 2;
    double ex_x = 4.5;
    std::uint64_t ex_seed = 0, ex_budget = 1u << 26;
    ex->add_option("kind", ex_kind, "first-moment")->required();
    ex->add_option("--n", ex_n)->required();
    ex->add_option("--k", ex_k)->required();
    ex->add_option("--p", ex_p)->required();
    ex->add_option("--m", ex_m)->required();
    ex->add_option("--c", ex_c);
    ex->add_option("--x", ex_x);
    ex->add_option("--trials", ex_trials)->required();
    ex->add_option("--seed", ex_seed)->required();
    ex->add_option("--threads", ex_threads);
    ex->add_option("--budget", ex_budget);
    ex->add_option("--out", ex_out)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) {
            LdaLattice l = build_lda(g_n, g_k, g_p, g_seed);
            emit(g_out, stable_dump(lda_to_json(l, g_seed)), args, wall_ms());
        } else if (rk->parsed()) {
            Lattice l = lattice_from_json(Json::parse(read_file(rk_lattice)));
            RankinResult r;
            if (rk_exact)
                r = rankin_exact(l, rk_m, rk_budget);
            else if (!rk_radius2.empty())
                r = rankin(l, rk_m, parse_rat_or_decimal(rk_radius2), rk_budget);
            else
                r = rankin(l, rk_m, std::nullopt, rk_budget);
            Json j;
            j["n"] = r.n;
            j["m"] = r.m;
            j["value"] = fmt17(r.value);
            j["min_vol2"] = rat_to_string(r.min_vol2);
            j["vol2"] = rat_to_string(r.vol2);
            j["certified"] = r.certified;
            j["radius2"] = rat_to_string(r.radius2);
            emit(rk_out, stable_dump(j), args, wall_ms());
        } else if (ms->parsed()) {
            ColumnPredicate pred;
            std::string pname;
            if (!ms_code.empty()) {
                Json cj = Json::parse(read_file(ms_code));
                int n = cj.at("n").get<int>(), k = cj.at("k").get<int>();
                std::uint32_t p = cj.at("p").get<std::uint32_t>();
                std::vector<std::uint32_t> e;
                for (const auto& row : cj.at("generator"))
                    for (const auto& v : row) e.push_back(v.get<std::uint32_t>());
                pred = code_consistency_predicate(FpMatrix(n, k, p, std::move(e)));
                pname = "code-consistency";
            } else if (ms_subp > 0) {
                pred = multiple_of_predicate(Int(ms_subp));
                pname = "multiple-of-" + std::to_string(ms_subp);
            } else if (ms_always) {
                pred = always_true_predicate();
                pname = "always-true";
            } else {
                throw CLI::ValidationError("min-sublattice", "choose --code, --sub-p or --always");
            }
            Rat cap = parse_rat_or_decimal(ms_cap);
            MinVolResult r = min_volume_sublattice(ms_n, ms_m, pred, cap * cap, ms_budget);
            Json j;
            j["n"] = ms_n;
            j["m"] = ms_m;
            j["predicate"] = pname;
            j["cap"] = rat_to_string(cap);
            j["found"] = r.found;
            j["nodes"] = r.nodes;
            if (r.found) {
                j["vol2"] = rat_to_string(r.vol2);
                j["volume"] = fmt17(sqrt_to_double(r.vol2));
                Json cols = Json::array();
                for (int c = 0; c < r.witness.m.cols; ++c) {
                    Json col = Json::array();
                    for (int i = 0; i < r.witness.m.rows; ++i) col.push_back(r.witness.m(i, c).get_str());
                    cols.push_back(std::move(col));
                }
                j["basis_columns"] = std::move(cols);
            }
            emit(ms_out, stable_dump(j), args, wall_ms());
        } else if (bc->parsed()) {
            CssCode code;
            if (bc_kind == "torus") {
                std::shared_ptr<const TorusComplex> t;
                if (!bc_lattice.empty()) {
                    Lattice l = lattice_from_json(Json::parse(read_file(bc_lattice)));
                    t = std::make_shared<TorusComplex>(torus_from_lattice(l, bc_d, bc_budget));
                } else {
                    ZMat b = ZMat::identity(bc_n);
                    for (int i = 0; i < bc_n; ++i) b(i, i) = bc_ell;
                    t = std::make_shared<TorusComplex>(
                        torus_from_lattice(Lattice::from_integer_basis(b), bc_d, bc_budget));
                }
                code = css_from_torus(t, bc_q);
            } else if (bc_kind == "simplex") {
                code = css_from_simplex(
                    std::make_shared<SimplexSphere>(simplex_sphere(bc_n, bc_d, bc_budget)), bc_q);
            } else if (bc_kind == "product") {
                code = css_from_sphere_product(
                    std::make_shared<SphereProduct>(sphere_product(bc_n, bc_p, bc_d, bc_budget)),
                    bc_q);
            } else {
                throw CLI::ValidationError("build-code", "kind must be torus, simplex or product");
            }
            emit(bc_out, stable_dump(code_to_json(code)), args, wall_ms());
            if (!bc_out.empty()) {
                write_file(bc_out + ".z.alist", alist_export_z(code));
                write_file(bc_out + ".x.alist", alist_export_x(code));
            }
        } else if (an->parsed()) {
            CssCode code = code_from_json(Json::parse(read_file(an_code)));
            emit(an_out, stable_dump(analyze_code(code, an_opt)), args, wall_ms());
        } else if (so->parsed()) {
            CssCode code = code_from_json(Json::parse(read_file(so_code)));
            AnalysisOptions opt = so_opt;
            opt.distance = false;
            emit(so_out, stable_dump(analyze_code(code, opt)), args, wall_ms());
        } else if (wr->parsed()) {
            Lattice l = lattice_from_json(Json::parse(read_file(wr_lattice)));
            std::optional<Rat> r2;
            if (!wr_radius2.empty()) r2 = parse_rat_or_decimal(wr_radius2);
            ShortestWedgeReport rep = shortest_wedge_report(l, wr_m, r2, wr_budget);
            Json j;
            j["n"] = rep.n;
            j["m"] = rep.m;
            j["wedge_rank"] = rep.wedge_rank;
            j["shortest_norm"] = fmt17(rep.shortest_norm);
            j["shortest_norm2"] = rat_to_string(rep.shortest_norm2);
            j["bound"] = fmt17(rep.norm_bound);
            j["decomposable"] = rep.decomposable;
            j["rankin_value"] = fmt17(rep.rankin_value);
            j["rankin_certified"] = rep.rankin_certified;
            j["hermite_wedge_rank"] = fmt17(rep.hermite_of_wedge_rank);
            j["criterion_applies"] =
                rep.criterion > 0 ? "yes" : (rep.criterion < 0 ? "no" : "inconclusive");
            j["improved_ratio"] = fmt17(rep.improved_ratio);
            emit(wr_out, stable_dump(j), args, wall_ms());
        } else if (ex->parsed()) {
            if (ex_kind != "first-moment")
                throw CLI::ValidationError("experiment", "kind must be first-moment");
            FirstMomentReport rep = first_moment_experiment(
                ex_n, ex_k, ex_p, ex_m, parse_rat_or_decimal(ex_c), ex_x, ex_trials, ex_seed,
                ex_threads, ex_budget);
            std::ostringstream csv;
            csv << "trial,found,min_vol,bound,runtime_ms\n";
            for (const auto& row : rep.rows) {
                csv << row.index << "," << (row.found ? 1 : 0) << ",";
                csv << (row.found ? fmt17(sqrt_to_double(row.min_vol2)) : "");
                csv << "," << fmt17(rep.theorem_bound) << "," << fmt17(row.runtime_ms) << "\n";
            }
            write_file(ex_out, csv.str());
            Json j;
            j["n"] = rep.n;
            j["k"] = rep.k;
            j["p"] = rep.p;
            j["m"] = rep.m;
            j["m_effective"] = rep.m_effective;
            j["clamped"] = rep.clamped;
            j["c"] = rat_to_string(rep.c);
            j["x"] = fmt17(rep.x);
            j["seed"] = rep.seed;
            j["trials"] = rep.trials;
            j["volume_cap"] = rat_to_string(rep.volume_cap);
            j["found_count"] = rep.found_count;
            j["p_hat"] = fmt17(rep.p_hat);
            j["wilson_low"] = fmt17(rep.wilson_lo);
            j["wilson_high"] = fmt17(rep.wilson_hi);
            j["theorem_bound"] = fmt17(rep.theorem_bound);
            j["complete"] = rep.complete;
            j["note"] = rep.note;
            write_file(ex_out + ".summary.json", stable_dump(j));
            write_manifest(ex_out, args, {ex_out, ex_out + ".summary.json"}, wall_ms());
            std::cout << "p_hat=" << rep.p_hat << " wilson=[" << rep.wilson_lo << ","
                      << rep.wilson_hi << "] bound=" << rep.theorem_bound << "\n";
        }
        return 0;
    } catch (const resource_error& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace latcode
