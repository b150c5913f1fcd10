// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

// pheig command-line front end: generate, solve, oracle, verify, bench.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pheig/error.hpp"
#include "pheig/hamgen.hpp"
#include "pheig/io.hpp"
#include "pheig/log.hpp"
#include "pheig/oracle.hpp"
#include "pheig/solver.hpp"
#include "pheig/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pheig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

constexpr const char* kManifestName = "manifest.json";

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Where a Hamiltonian comes from: A/B Matrix Market files, a PCHB file, or the generator.
struct InputOptions {
    std::string a_path;
    std::string b_path;
    std::string pchb_path;
    GeneratorSpec gen;
    std::string mode = "definite";

    void add_to(CLI::App* app, bool allow_generator) {
        app->add_option("--a", a_path, "Matrix Market file with the A block");
        app->add_option("--b", b_path, "Matrix Market file with the B block");
        app->add_option("--input", pchb_path, "PCHB binary file with A and B");
        if (allow_generator) add_generator_flags(app, false);
    }

    void add_generator_flags(CLI::App* app, bool m_required) {
        auto* m = app->add_option("--m", gen.m, "half-dimension m (n = 2m)");
        if (m_required) m->required();
        app->add_option("--seed", gen.seed, "random seed");
        app->add_option("--coupling-ratio", gen.coupling_ratio, "||B||_2 / lambda_min(A)");
        app->add_option("--alpha", gen.alpha, "shift ensuring lambda_min(A) >= alpha");
        app->add_option("--mode", mode, "definite or indefinite")->check(CLI::IsMember({"definite", "indefinite"}));
    }

    void finalize_generator() {
        gen.mode = mode == "definite" ? GeneratorMode::definite : GeneratorMode::indefinite;
    }

    std::string describe() const {
        if (!pchb_path.empty()) return "pchb:" + pchb_path;
        if (!a_path.empty()) return "mtx:" + a_path + "," + b_path;
        return "generated";
    }

    BseHamiltonian load(const CLI::App* app, bool allow_generator) {
        const bool have_mtx = !a_path.empty() || !b_path.empty();
        const bool have_pchb = !pchb_path.empty();
        if (have_mtx && have_pchb) throw ValidationError("give either --a/--b or --input, not both");
        if (have_mtx) {
            if (a_path.empty() || b_path.empty()) throw ValidationError("--a and --b must be given together");
            return BseHamiltonian(io::read_matrix_market(a_path), io::read_matrix_market(b_path));
        }
        if (have_pchb) return io::read_pchb(pchb_path);
        if (allow_generator && app->count("--m") > 0) {
            finalize_generator();
            return generate(gen);
        }
        throw ValidationError("no input: give --a/--b, --input" + std::string(allow_generator ? " or --m" : ""));
    }
};

json generator_json(const GeneratorSpec& g) {
    return json{{"m", g.m},
                {"seed", g.seed},
                {"alpha", g.alpha},
                {"coupling_ratio", g.coupling_ratio},
                {"mode", g.mode == GeneratorMode::definite ? "definite" : "indefinite"}};
}

struct Manifest {
    json doc;
    Manifest(const std::string& command, std::uint64_t seed) {
        doc["command"] = command;
        doc["version"] = PHEIG_VERSION;
        doc["seed"] = seed;
        doc["timestamps"] = json{{"start", utc_now()}};
    }
    void write(const fs::path& dir, const std::vector<std::string>& outputs) {
        doc["outputs"] = outputs;
        doc["timestamps"]["end"] = utc_now();
        io::write_file(dir / kManifestName, doc.dump(2) + "\n");
    }
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::vector<std::pair<std::string, std::string>> base_meta(const std::string& command) {
    return {{"pheig", command}, {"manifest", kManifestName}};
}

// ---------------------------------------------------------------- generate

struct GenerateCmd {
    InputOptions in;
    std::string out_dir = ".";
    std::string format = "mtx";

    void setup(CLI::App* app) {
        in.add_generator_flags(app, true);
        app->add_option("--out-dir", out_dir, "output directory");
        app->add_option("--format", format, "mtx, pchb or both")->check(CLI::IsMember({"mtx", "pchb", "both"}));
    }

    int run() {
        in.finalize_generator();
        Manifest man("generate", in.gen.seed);
        man.doc["config"] = generator_json(in.gen);
        const BseHamiltonian h = generate(in.gen);
        const fs::path dir(out_dir);
        ensure_dir(dir);
        std::vector<std::string> outputs;
        const std::string note = std::string("manifest: ") + kManifestName;
        if (format != "pchb") {
            io::write_matrix_market(dir / "A.mtx", h.A(), note);
            io::write_matrix_market(dir / "B.mtx", h.B(), note);
            outputs.insert(outputs.end(), {"A.mtx", "B.mtx"});
        }
        if (format != "mtx") {
            io::write_pchb(dir / "H.pchb", h);
            outputs.emplace_back("H.pchb");
        }
        man.doc["input_digest"] = io::hex64(io::hamiltonian_digest(h));
        man.doc["definiteness"] = to_string(is_definite(h));
        man.write(dir, outputs);
        std::cout << "generated m=" << h.half_dim() << " (" << to_string(is_definite(h)) << "), digest "
                  << io::hex64(io::hamiltonian_digest(h)) << "\n";
        return kExitOk;
    }
};

// ---------------------------------------------------------------- solve / bench

struct SolveFlags {
    size_t nev = 0;
    std::optional<size_t> nex;
    int deg = kDefaultDegree;
    double tol = 1e-8;
    int maxiter = 25;
    std::string rr = "auto";
    std::uint64_t seed = 0;
    int lanczos_steps = kDefaultLanczosSteps;
    bool rel_res = false;
    bool reproducible = false;
    bool plain_filter = false;

    // Commands that also generate input share the generator's --seed.
    void add_to(CLI::App* app, bool own_seed) {
        app->add_option("--nev", nev, "number of eigenpairs")->required();
        app->add_option("--nex", nex, "extra search directions (default nev)");
        app->add_option("--deg", deg, "Chebyshev degree, rounded up to even");
        app->add_option("--tol", tol, "residual tolerance");
        app->add_option("--maxiter", maxiter, "iteration cap");
        app->add_option("--rr", rr, "auto, hermitian or backup")->check(CLI::IsMember({"auto", "hermitian", "backup"}));
        if (own_seed) app->add_option("--seed", seed, "seed for the start block and Lanczos");
        app->add_option("--lanczos-steps", lanczos_steps, "Lanczos steps (even)");
        app->add_flag("--rel-res", rel_res, "residuals relative to |mu_1|");
        app->add_flag("--reproducible", reproducible, "single-threaded BLAS for bitwise repeatability");
        app->add_flag("--plain-filter", plain_filter, "plain kernel on every filter step");
    }

    SolverConfig config() {
        if (round_degree_to_even(deg))
            log_warning("filter degree must be even; using " + std::to_string(deg));
        SolverConfig c;
        c.nev = nev;
        c.nex = nex;
        c.deg = deg;
        c.tol = tol;
        c.maxiter = maxiter;
        c.rr = rr_policy_from_string(rr);
        c.seed = seed;
        c.lanczos_steps = lanczos_steps;
        c.rel_res = rel_res;
        c.reproducible = reproducible;
        c.plain_filter = plain_filter;
        return c;
    }
};

json solver_json(const SolverConfig& c) {
    return json{{"nev", c.nev},     {"nex", c.nex_value()},       {"deg", c.deg},
                {"tol", c.tol},     {"maxiter", c.maxiter},       {"rr", to_string(c.rr)},
                {"seed", c.seed},   {"lanczos_steps", c.lanczos_steps}, {"rel_res", c.rel_res},
                {"reproducible", c.reproducible}, {"plain_filter", c.plain_filter}};
}

std::string bounds_text(const SpectralBounds& b) {
    return "mu_1=" + io::fmt17(b.mu_1) + " mu_nevex=" + io::fmt17(b.mu_nevex) + " mu_n=" + io::fmt17(b.mu_n);
}

struct SolveCmd {
    InputOptions in;
    SolveFlags flags;
    std::string out_dir = ".";
    bool largest = false;

    void setup(CLI::App* app) {
        in.add_to(app, false);
        flags.add_to(app, true);
        app->add_option("--out-dir", out_dir, "output directory");
        app->add_flag("--largest", largest, "report the nev largest eigenpairs instead");
    }

    int run(const CLI::App* app) {
        const BseHamiltonian h = in.load(app, false);
        SolverConfig cfg = flags.config();
        Manifest man("solve", cfg.seed);
        man.doc["config"] = solver_json(cfg);
        man.doc["config"]["largest"] = largest;
        man.doc["input"] = in.describe();
        man.doc["input_digest"] = io::hex64(io::hamiltonian_digest(h));

        const SolveResult r = solve(h, cfg);
        std::cout << "n=" << h.dim() << " nev=" << cfg.nev << " nex=" << cfg.nex_value() << " deg=" << cfg.deg
                  << " tol=" << cfg.tol << "\nbounds: " << bounds_text(r.bounds) << "\n"
                  << (r.converged ? "converged" : "NOT converged") << " after " << r.iterations << " iterations ("
                  << r.backup_events << " backup reductions)\n";

        std::vector<double> lambdas = r.lambdas, resid = r.residual_norms;
        Matrix vecs = r.V;
        if (largest) {
            // Partners (-lambda, K conj(v)) of the smallest pairs, largest first.
            vecs = apply_K(r.V.conj());
            for (auto& x : lambdas) x = -x;
            for (size_t j = 0; j < resid.size(); ++j) resid[j] = eigen_residual(h, lambdas[j], vecs.cols_range(j, 1));
        }

        const fs::path dir(out_dir);
        ensure_dir(dir);
        io::EigenvalueCsv csv;
        csv.meta = base_meta("solve");
        csv.meta.insert(csv.meta.end(), {{"input_digest", io::hex64(io::hamiltonian_digest(h))},
                                         {"n", std::to_string(h.dim())},
                                         {"nev", std::to_string(cfg.nev)},
                                         {"nex", std::to_string(cfg.nex_value())},
                                         {"deg", std::to_string(cfg.deg)},
                                         {"tol", io::fmt17(cfg.tol)},
                                         {"seed", std::to_string(cfg.seed)},
                                         {"order", largest ? "largest" : "smallest"},
                                         {"converged", r.converged ? "true" : "false"},
                                         {"iterations", std::to_string(r.iterations)},
                                         {"bounds", bounds_text(r.bounds)}});
        csv.lambdas = lambdas;
        csv.residuals = resid;
        io::write_file(dir / "eigenvalues.csv", io::format_eigenvalue_csv(csv));
        io::write_vectors(dir / "eigenvectors.bin", lambdas, vecs);
        auto tmeta = base_meta("solve");
        tmeta.emplace_back("bounds", bounds_text(r.bounds));
        io::write_file(dir / "trace.csv", io::format_trace_csv(r.trace, tmeta));

        man.doc["result"] = json{{"converged", r.converged},
                                 {"iterations", r.iterations},
                                 {"backup_events", r.backup_events},
                                 {"bounds", {{"mu_1", r.bounds.mu_1}, {"mu_nevex", r.bounds.mu_nevex}, {"mu_n", r.bounds.mu_n}}}};
        man.write(dir, {"eigenvalues.csv", "eigenvectors.bin", "trace.csv"});
        return kExitOk;
    }
};

struct BenchCmd {
    InputOptions in;
    SolveFlags flags;
    std::string out_dir = ".";
    int reps = 3;

    void setup(CLI::App* app) {
        in.add_to(app, true);
        flags.add_to(app, false);
        app->add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
        app->add_option("--out-dir", out_dir, "output directory");
    }

    int run(const CLI::App* app) {
        const BseHamiltonian h = in.load(app, true);
        flags.seed = in.gen.seed;
        SolverConfig cfg = flags.config();
        Manifest man("bench", cfg.seed);
        man.doc["config"] = solver_json(cfg);
        man.doc["config"]["reps"] = reps;
        man.doc["input"] = in.describe();
        if (in.describe() == "generated") man.doc["generator"] = generator_json(in.gen);
        man.doc["input_digest"] = io::hex64(io::hamiltonian_digest(h));

        const char* phases[] = {"lanczos", "filter", "ortho", "rr", "residuals"};
        auto pick = [](const PhaseStats& p, int i) {
            const double v[] = {p.lanczos, p.filter, p.ortho, p.rr, p.residuals};
            return v[i];
        };
        std::string out = "# pheig: bench\n# manifest: " + std::string(kManifestName) + "\n# n: " +
                          std::to_string(h.dim()) + "\nrow,iterations";
        for (auto* p : phases) out += std::string(",") + p + "_s";
        out += ",total_s";
        for (auto* p : phases) out += std::string(",") + p + "_flops";
        out += ",total_flops,gflops_per_s,filter_flop_share\n";

        std::vector<std::vector<double>> rows;
        for (int rep = 0; rep < reps; ++rep) {
            const SolveResult r = solve(h, cfg);
            std::vector<double> row{static_cast<double>(r.iterations)};
            for (int i = 0; i < 5; ++i) row.push_back(pick(r.seconds, i));
            row.push_back(r.seconds.total());
            for (int i = 0; i < 5; ++i) row.push_back(pick(r.flops, i));
            row.push_back(r.flops.total());
            row.push_back(r.seconds.total() > 0 ? r.flops.total() / r.seconds.total() * 1e-9 : 0.0);
            row.push_back(r.flops.total() > 0 ? r.flops.filter / r.flops.total() : 0.0);
            rows.push_back(row);
        }
        auto emit = [&](const std::string& label, const std::vector<double>& row) {
            out += label;
            for (double x : row) out += "," + io::fmt17(x);
            out += "\n";
        };
        for (size_t i = 0; i < rows.size(); ++i) emit(std::to_string(i), rows[i]);
        const size_t cols = rows.front().size();
        std::vector<double> mn(cols), mx(cols), avg(cols);
        for (size_t c = 0; c < cols; ++c) {
            mn[c] = mx[c] = rows[0][c];
            for (const auto& r : rows) {
                mn[c] = std::min(mn[c], r[c]);
                mx[c] = std::max(mx[c], r[c]);
                avg[c] += r[c] / static_cast<double>(rows.size());
            }
        }
        emit("min", mn);
        emit("avg", avg);
        emit("max", mx);

        const fs::path dir(out_dir);
        ensure_dir(dir);
        io::write_file(dir / "bench.csv", out);
        man.write(dir, {"bench.csv"});
        std::printf("%d reps: total time min %.3f avg %.3f max %.3f s, %.2f GFLOP/s avg, filter share %.1f%% of FLOPs\n",
                    reps, mn[6], avg[6], mx[6], avg[cols - 2], 100.0 * avg[cols - 1]);
        return kExitOk;
    }
};

// ---------------------------------------------------------------- oracle

struct OracleCmd {
    InputOptions in;
    std::string out_dir = ".";
    size_t cap = 4096;
    bool vectors = false;

    void setup(CLI::App* app) {
        in.add_to(app, false);
        app->add_option("--cap", cap, "largest n accepted");
        app->add_flag("--vectors", vectors, "also write eigenvectors.bin");
        app->add_option("--out-dir", out_dir, "output directory");
    }

    int run(const CLI::App* app) {
        const BseHamiltonian h = in.load(app, false);
        if (h.dim() > cap)
            throw ValidationError("n = " + std::to_string(h.dim()) + " exceeds the oracle cap " + std::to_string(cap));
        Manifest man("oracle", 0);
        man.doc["config"] = json{{"cap", cap}, {"vectors", vectors}};
        man.doc["input"] = in.describe();
        man.doc["input_digest"] = io::hex64(io::hamiltonian_digest(h));
        const auto eig = direct_solve_definite(h);
        io::EigenvalueCsv csv;
        csv.meta = base_meta("oracle");
        csv.meta.insert(csv.meta.end(), {{"input_digest", io::hex64(io::hamiltonian_digest(h))},
                                         {"n", std::to_string(h.dim())}});
        csv.lambdas = eig.lambdas;
        Matrix r = apply_H(h, eig.V);
        for (size_t j = 0; j < eig.lambdas.size(); ++j) {
            auto rc = r.col(j);
            auto vc = eig.V.col(j);
            for (size_t i = 0; i < rc.size(); ++i) rc[i] -= eig.lambdas[j] * vc[i];
            csv.residuals.push_back(norm2(rc));
        }
        const fs::path dir(out_dir);
        ensure_dir(dir);
        io::write_file(dir / "eigenvalues.csv", io::format_eigenvalue_csv(csv));
        std::vector<std::string> outputs{"eigenvalues.csv"};
        if (vectors) {
            io::write_vectors(dir / "eigenvectors.bin", eig.lambdas, eig.V);
            outputs.emplace_back("eigenvectors.bin");
        }
        man.write(dir, outputs);
        std::cout << "oracle: " << eig.lambdas.size() << " eigenvalues in [" << io::fmt17(eig.lambdas.front()) << ", "
                  << io::fmt17(eig.lambdas.back()) << "]\n";
        return kExitOk;
    }
};

// ---------------------------------------------------------------- verify

struct VerifyCmd {
    InputOptions in;
    verify::Options opt;
    std::string solution_dir;
    double tol = 1e-8;

    void setup(CLI::App* app) {
        in.add_to(app, true);
        app->add_option("--subspace-seed", opt.seed, "seed for random test subspaces");
        app->add_option("--k", opt.k, "width of random test subspaces");
        app->add_option("--solution", solution_dir, "directory of a solve run to check against the oracle");
        app->add_option("--tol", tol, "tolerance the solution was computed with");
    }

    int run(const CLI::App* app) {
        verify::Report rep;
        std::optional<BseHamiltonian> h;
        if (!in.a_path.empty() || !in.b_path.empty()) {
            // Raw blocks go through the structure check before any symmetrization.
            if (in.a_path.empty() || in.b_path.empty()) throw ValidationError("--a and --b must be given together");
            const Matrix a = io::read_matrix_market(in.a_path), b = io::read_matrix_market(in.b_path);
            rep = verify::run_suite(a, b, opt);
            if (rep.checks.front().passed) h.emplace(a, b);
        } else {
            const BseHamiltonian loaded = in.load(app, true);
            rep = verify::run_suite(loaded.A(), loaded.B(), opt);
            h.emplace(loaded);
        }
        if (h && !solution_dir.empty()) add_solution_checks(*h, rep);
        std::cout << rep.format();
        return kExitOk;
    }

    void add_solution_checks(const BseHamiltonian& h, verify::Report& rep) const {
        std::vector<double> lambdas;
        Matrix v;
        io::read_vectors(fs::path(solution_dir) / "eigenvectors.bin", lambdas, v);
        if (v.rows() != h.dim()) throw ValidationError("solution vectors do not match the Hamiltonian dimension");
        double worst_res = 0.0;
        for (size_t j = 0; j < lambdas.size(); ++j)
            worst_res = std::max(worst_res, eigen_residual(h, lambdas[j], v.cols_range(j, 1)));
        verify::CheckResult r;
        r.name = "solution residuals <= tol";
        r.measured = worst_res;
        r.threshold = tol;
        r.passed = worst_res <= tol;
        rep.checks.push_back(r);

        if (is_definite(h) != Definiteness::definite) return;
        const auto eig = direct_solve_definite(h, false);
        double worst = 0.0;
        for (double x : lambdas) {
            double best = INFINITY;
            for (double y : eig.lambdas) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        verify::CheckResult c;
        c.name = "solution vs oracle: |dlambda| <= 10 tol ||H||_2";
        c.measured = worst;
        c.threshold = 10.0 * tol * norm2_H(h);
        c.passed = worst <= c.threshold;
        rep.checks.push_back(c);
    }
};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const IndefiniteError*>(&e) ||
        dynamic_cast<const DimensionError*>(&e))
        return kExitValidation;
    return kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pheig: eigenpairs of pseudo-hermitian BSE Hamiltonians"};
    app.set_version_flag("--version", PHEIG_VERSION);
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1);

    GenerateCmd gen;
    SolveCmd slv;
    OracleCmd orc;
    VerifyCmd ver;
    BenchCmd bch;
    auto* g = app.add_subcommand("generate", "write a synthetic Hamiltonian");
    gen.setup(g);
    auto* s = app.add_subcommand("solve", "compute the nev smallest eigenpairs");
    slv.setup(s);
    auto* o = app.add_subcommand("oracle", "dense direct solve of a definite Hamiltonian");
    orc.setup(o);
    auto* v = app.add_subcommand("verify", "run the structural property suite");
    ver.setup(v);
    auto* b = app.add_subcommand("bench", "time the solver phases");
    bch.setup(b);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (g->parsed()) return gen.run();
        if (s->parsed()) return slv.run(s);
        if (o->parsed()) return orc.run(o);
        if (v->parsed()) return ver.run(v);
        if (b->parsed()) return bch.run(b);
    } catch (const SolveAbort& e) {
        std::cerr << "pheig: numerical abort: " << e.what() << " (" << e.trace().size() << " iterations traced)\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "pheig: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}
