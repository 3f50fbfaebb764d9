#include "aldc/constructions.hpp"
#include "aldc/core.hpp"
#include "aldc/io.hpp"
#include "aldc/partition.hpp"
#include "aldc/qquery.hpp"
#include "aldc/reduction.hpp"
#include "aldc/rng.hpp"
#include "aldc/spectral.hpp"
#include "aldc/tiling.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertificateFailure = 2;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void emit(const aldc::io::json& report) { std::cout << report.dump(2) << "\n"; }

struct GenArgs {
    std::string kind;
    int d = 4;
    int n = 32;
    int q = 2;
    double alpha = 0.0;
    double sigma = 0.05;
    std::uint64_t seed = 1;
    std::string output;
};

int run_gen(const GenArgs& args) {
    aldc::CodeConfig code;
    if (args.kind == "hypercube") {
        code = aldc::hypercube(args.d);
    } else if (args.kind == "perturbed") {
        code = aldc::perturbed_hypercube(args.d, args.sigma, args.seed);
    } else if (args.kind == "basis") {
        code = aldc::basis_code(args.d);
    } else if (args.kind == "random") {
        code = aldc::random_code(args.d, args.n, args.q, args.alpha, args.seed);
    } else {
        std::cerr << "unknown generator '" << args.kind
                  << "' (choose hypercube|perturbed|basis|random)\n";
        return kExitUsage;
    }
    if (args.output.empty()) {
        std::cout << aldc::io::render(code);
    } else {
        aldc::io::save(code, args.output);
        std::cout << args.kind << ": n=" << code.n() << " d=" << code.d << " q=" << code.q
                  << " density=" << fmt(code.density()) << " -> " << args.output << "\n";
    }
    return kExitOk;
}

int run_verify(const std::string& path, double alpha, bool as_json) {
    const aldc::CodeConfig code = aldc::io::load(path);
    const aldc::VerificationReport report = aldc::verify(code, alpha);
    if (as_json) {
        aldc::io::json doc;
        doc["command"] = "verify";
        doc["input"] = path;
        doc["report"] = aldc::io::to_json(report);
        emit(doc);
    } else {
        std::cout << "verified: " << (report.verified() ? "yes" : "no") << "\n"
                  << "achieved_alpha: " << fmt(report.achieved_alpha) << "\n"
                  << "density: " << fmt(report.density) << "\n";
        if (code.q == 2) {
            std::cout << "simple: " << (report.simple ? "yes" : "no") << "\n";
            if (report.has_pair_lengths) {
                std::cout << "pair_lengths: [" << fmt(report.length_min) << ", "
                          << fmt(report.length_max) << "]\n";
            }
        }
        std::cout << "flagged_tuples: " << report.flagged.size() << "\n";
    }
    return report.verified() ? kExitOk : kExitCertificateFailure;
}

int run_reduce(const std::string& path, double alpha, std::optional<int> k, bool two_bounded,
               const std::string& output, bool as_json) {
    const aldc::CodeConfig code = aldc::io::load(path);
    auto [reduced, trace] = aldc::reduce_to_simple(code, alpha, k);
    aldc::io::json doc;
    doc["command"] = "reduce";
    doc["input"] = path;
    doc["trace"] = aldc::io::to_json(trace);
    if (two_bounded) {
        auto [bucketed, bucket] = aldc::bucket_to_2bounded(reduced);
        reduced = std::move(bucketed);
        doc["bucket"] = aldc::io::to_json(bucket);
    }
    if (!output.empty()) aldc::io::save(reduced, output);
    if (as_json) {
        emit(doc);
    } else {
        std::cout << "alpha_out: " << fmt(trace.alpha_out) << "\n"
                  << "delta_out: " << fmt(reduced.density()) << "\n"
                  << "n_out: " << reduced.n() << "\n"
                  << "pairs_removed_step1: " << trace.pairs_removed_step1 << "\n";
        if (!trace.warning.empty()) std::cout << "warning: " << trace.warning << "\n";
        if (!output.empty()) std::cout << "written: " << output << "\n";
    }
    return kExitOk;
}

int run_certify_cut(const std::string& path, std::size_t budget, std::uint64_t seed,
                    bool as_json) {
    const aldc::CodeConfig code = aldc::io::load(path);
    const aldc::CutCertificate cert = aldc::recursive_cut_certificate(code, budget, seed);
    if (as_json) {
        aldc::io::json doc;
        doc["command"] = "certify-cut";
        doc["input"] = path;
        doc["seed"] = seed;
        doc["report"] = aldc::io::to_json(cert);
        emit(doc);
    } else {
        std::cout << "verified: " << (cert.verified ? "yes" : "no") << "\n"
                  << "total_edges: " << cert.total_edges << "\n"
                  << "edge_budget: " << fmt(cert.edge_budget) << "\n"
                  << "c_param: " << fmt(cert.c_param) << "\n"
                  << "nodes: " << cert.nodes.size() << "\n";
        if (!cert.failure.empty()) std::cout << "failure: " << cert.failure << "\n";
    }
    return cert.verified ? kExitOk : kExitCertificateFailure;
}

int run_certify_tiling(const std::string& path, double eps, int t, int retries,
                       std::uint64_t seed, double kappa, bool as_json) {
    const aldc::CodeConfig code = aldc::io::load(path);
    const aldc::TilingCertificate cert =
        aldc::large_alpha_certificate(code, eps, t, retries, seed, kappa);
    if (as_json) {
        aldc::io::json doc;
        doc["command"] = "certify-tiling";
        doc["input"] = path;
        doc["seed"] = seed;
        doc["report"] = aldc::io::to_json(cert);
        emit(doc);
    } else {
        std::cout << "verified: " << (cert.verified ? "yes" : "no") << "\n"
                  << "p_bound: " << fmt(cert.p_bound) << "\n"
                  << "good_fraction: " << fmt(cert.good_fraction) << "\n"
                  << "edges_good: " << cert.edges_good << "\n"
                  << "delta_chain: " << fmt(cert.delta_in) << " -> " << fmt(cert.delta_bucket)
                  << " -> " << fmt(cert.delta_good) << "\n"
                  << "implied_bound: " << fmt(cert.implied_bound) << "\n";
        if (!cert.failure.empty()) std::cout << "failure: " << cert.failure << "\n";
    }
    return cert.verified ? kExitOk : kExitCertificateFailure;
}

int run_spectral(const std::string& path, std::optional<double> alpha, std::size_t samples,
                 std::uint64_t seed, bool as_json) {
    const aldc::CodeConfig code = aldc::io::load(path);
    aldc::io::json doc;
    doc["command"] = "spectral";
    doc["input"] = path;
    bool ok = true;
    if (code.q == 1) {
        const double a = alpha.value_or(aldc::verify(code, 0.0).achieved_alpha);
        const aldc::OneQueryBound bound = aldc::one_query_bound_check(code, a);
        doc["one_query"] = aldc::io::to_json(bound);
        ok = bound.holds;
        if (!as_json) {
            std::cout << "one_query_bound: " << fmt(bound.bound) << "\n"
                      << "holds: " << (bound.holds ? "yes" : "no") << "\n";
        }
    } else {
        const aldc::SpectralReport report = aldc::trace_inequality_check(code);
        doc["trace_inequality"] = aldc::io::to_json(report);
        ok = report.holds;
        aldc::io::json witnesses = aldc::io::json::array();
        std::string witness_skip;
        try {
            for (int i = 0; i < code.d; ++i) {
                const aldc::WitnessBound bound = aldc::matching_witness_bound(code, i);
                ok = ok && bound.certified;
                witnesses.push_back(aldc::io::to_json(bound));
            }
        } catch (const aldc::PreconditionError& e) {
            witness_skip = e.what();
            witnesses = aldc::io::json::array();
        }
        if (witness_skip.empty()) {
            doc["witness_bounds"] = std::move(witnesses);
        } else {
            doc["witness_bounds"] = nullptr;
            doc["witness_skip"] = witness_skip;
        }
        std::string khintchine_line;
        if (samples > 0) {
            // Khintchine Monte Carlo on the code's own coefficient family
            std::vector<aldc::ComplexMatrix> family;
            for (int i = 0; i < code.d; ++i) family.push_back(aldc::fourier_matrix(code, i));
            const aldc::NckResult nck = aldc::nck_montecarlo(family, samples, seed);
            doc["khintchine"] = aldc::io::to_json(nck);
            ok = ok && nck.holds;
            khintchine_line = "khintchine: estimate " + fmt(nck.estimate) + " <= bound " +
                              fmt(nck.bound) + (nck.holds ? " (holds)" : " (VIOLATED)");
        }
        if (!as_json) {
            std::cout << "trace_inequality: " << (report.holds ? "holds" : "VIOLATED") << "\n"
                      << "lhs: " << fmt(report.lhs) << "\n"
                      << "rhs: " << fmt(report.rhs) << "\n"
                      << "implied_bound: " << fmt(report.implied_bound) << "\n";
            if (!witness_skip.empty()) std::cout << "witness_bounds skipped: " << witness_skip
                                                 << "\n";
            if (!khintchine_line.empty()) std::cout << khintchine_line << "\n";
        }
    }
    if (as_json) emit(doc);
    return ok ? kExitOk : kExitCertificateFailure;
}

int run_qquery(const std::string& path, std::size_t samples, int trials, std::uint64_t seed,
               bool as_json) {
    const aldc::CodeConfig code = aldc::io::load(path);
    const std::size_t m = samples == 0 ? aldc::default_subset_size(code) : samples;
    const double achieved = aldc::verify(code, 0.0).achieved_alpha;

    aldc::io::json counts = aldc::io::json::array();
    bool ok = true;
    aldc::io::json rank_doc = nullptr;
    for (int trial = 0; trial < trials; ++trial) {
        const auto subset =
            aldc::sample_subset(code.n(), m, aldc::rng::derive(seed, trial));
        const std::size_t covered = aldc::covered_direction_count(code, subset);
        counts.push_back(covered);
        if (covered == 0) continue;
        const aldc::WitnessMatrix witness = aldc::witness_matrix(code, subset, achieved);
        const aldc::RankCheck check = aldc::rank_bound_check(witness, achieved);
        // Lemma-style consequence: the subset is at least alpha^2 * k large
        ok = ok && check.holds &&
             static_cast<double>(subset.size()) >=
                 achieved * achieved * static_cast<double>(witness.k()) - 1e-9;
        if (rank_doc.is_null()) rank_doc = aldc::io::to_json(check);
    }

    const double bound = code.q >= 2
                             ? aldc::qquery_bound(std::max(achieved, 1e-12),
                                                  std::max(code.density(), 1e-12), code.d,
                                                  code.q)
                             : 0.0;
    if (as_json) {
        aldc::io::json doc;
        doc["command"] = "qquery";
        doc["input"] = path;
        doc["seed"] = seed;
        doc["subset_size"] = m;
        doc["alpha"] = achieved;
        doc["covered_directions"] = counts;
        doc["first_rank_check"] = rank_doc;
        if (code.q >= 2) doc["qquery_bound"] = bound;
        doc["holds"] = ok;
        emit(doc);
    } else {
        std::cout << "subset_size: " << m << "\n"
                  << "covered_directions:";
        for (const auto& c : counts) std::cout << " " << c;
        std::cout << "\n";
        if (code.q >= 2) std::cout << "qquery_bound: " << fmt(bound) << "\n";
        std::cout << "rank_lemma_holds: " << (ok ? "yes" : "no") << "\n";
    }
    return ok ? kExitOk : kExitCertificateFailure;
}

struct BoundArgs {
    std::string theorem;
    double alpha = 1.0;
    double delta = 1.0;
    int d = 1;
    double c = 1.0;
    int q = 2;
    double eps = 0.01;
    int t = 500;
    double kappa = kTwoPi;
    bool not_simple = false;
};

int run_bound(const BoundArgs& args, bool as_json) {
    aldc::io::json doc;
    doc["command"] = "bound";
    doc["theorem"] = args.theorem;
    double value = 0.0;
    if (args.theorem == "general") {
        value = aldc::general_bound(args.alpha, args.delta, args.d, !args.not_simple);
        doc["alpha"] = args.alpha;
        doc["delta"] = args.delta;
        doc["d"] = args.d;
        doc["simple_input"] = !args.not_simple;
        doc["chain"] = "n >= 2^(alpha*delta*sqrt(d))" +
                       std::string(args.not_simple ? " after alpha/sqrt(2), delta/2 losses" : "");
    } else if (args.theorem == "bounded") {
        const aldc::BoundedCodeBound bound =
            aldc::bounded_code_bound(args.alpha, args.delta, args.c, args.d);
        value = bound.value;
        doc["detail"] = aldc::io::to_json(bound);
        doc["chain"] = "delta' = delta/ceil(log2 c); n >= exp(alpha^2 delta'^2 d / (2e^2))/(2e)";
    } else if (args.theorem == "qquery") {
        value = aldc::qquery_bound(args.alpha, args.delta, args.d, args.q);
        doc["q"] = args.q;
        doc["chain"] = "n >= (alpha^2 delta^(1/q) d)^(q/(q-1))";
    } else if (args.theorem == "one-query") {
        value = 2.718281828459045235 / (args.alpha * args.alpha * args.delta);
        doc["chain"] = "d <= e/(alpha^2 delta)";
    } else if (args.theorem == "good-edge") {
        value = aldc::good_edge_probability_bound(args.alpha, args.eps, args.t, args.kappa);
        doc["eps"] = args.eps;
        doc["t"] = args.t;
        doc["kappa"] = args.kappa;
        doc["chain"] = "1 - (kappa sqrt(1-alpha^2+(alpha eps/(2+eps))^2) + "
                       "2 kappa alpha (1+eps)/((2+eps)((1+eps)^t-1)))";
    } else {
        std::cerr << "unknown theorem '" << args.theorem
                  << "' (choose general|bounded|qquery|one-query|good-edge)\n";
        return kExitUsage;
    }
    doc["value"] = value;
    if (as_json) {
        emit(doc);
    } else {
        std::cout << fmt(value) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate-LDC configurations: generation, verification, reduction, "
                 "and certification"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a code configuration");
    gen->add_option("kind", gen_args.kind, "hypercube|perturbed|basis|random")->required();
    gen->add_option("--d", gen_args.d, "dimension");
    gen->add_option("--n", gen_args.n, "number of points (random)");
    gen->add_option("--q", gen_args.q, "query count (random)");
    gen->add_option("--alpha", gen_args.alpha, "target alpha (random)");
    gen->add_option("--sigma", gen_args.sigma, "noise std-dev (perturbed)");
    gen->add_option("--seed", gen_args.seed, "random seed");
    gen->add_option("-o,--output", gen_args.output, "output file");

    std::string in_path;
    double alpha = 1.0;
    bool as_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "verify the approximate-LDC property");
    verify_cmd->add_option("file", in_path, "code file")->required();
    verify_cmd->add_option("--alpha", alpha, "claimed alpha")->required();
    verify_cmd->add_flag("--json", as_json, "machine-readable report");

    std::string reduce_path, reduce_out;
    double reduce_alpha = 0.5;
    int reduce_k = 0;
    bool reduce_bucket = false;
    bool reduce_json = false;
    auto* reduce_cmd = app.add_subcommand("reduce", "reduce to a simple code");
    reduce_cmd->add_option("file", reduce_path, "code file")->required();
    reduce_cmd->add_option("--alpha", reduce_alpha, "alpha at which the input verifies")
        ->required();
    reduce_cmd->add_option("--k", reduce_k, "removal parameter (default ceil(2/alpha^2))");
    reduce_cmd->add_flag("--two-bounded", reduce_bucket, "also bucket to a 2-bounded code");
    reduce_cmd->add_option("-o,--output", reduce_out, "output file");
    reduce_cmd->add_flag("--json", reduce_json, "machine-readable report");

    std::string cut_path;
    std::size_t cut_budget = 0;
    std::uint64_t cut_seed = 1;
    bool cut_json = false;
    auto* cut_cmd = app.add_subcommand("certify-cut", "recursive random-cut certificate");
    cut_cmd->add_option("file", cut_path, "code file")->required();
    cut_cmd->add_option("--budget", cut_budget, "samples per node (0 = default)");
    cut_cmd->add_option("--seed", cut_seed, "random seed");
    cut_cmd->add_flag("--json", cut_json, "machine-readable report");

    std::string til_path;
    double til_eps = 0.01;
    int til_t = 10;
    int til_retries = 16;
    std::uint64_t til_seed = 1;
    double til_kappa = -1.0;
    bool til_json = false;
    auto* til_cmd = app.add_subcommand("certify-tiling", "tiled-cut certificate");
    til_cmd->add_option("file", til_path, "code file")->required();
    til_cmd->add_option("--eps", til_eps, "level parameter epsilon")->required();
    til_cmd->add_option("--t", til_t, "residue count t")->required();
    til_cmd->add_option("--retries", til_retries, "tiling resampling rounds");
    til_cmd->add_option("--seed", til_seed, "random seed");
    til_cmd->add_option("--kappa", til_kappa, "tiling constant (<=0: sqrt(d))");
    til_cmd->add_flag("--json", til_json, "machine-readable report");

    std::string spec_path;
    double spec_alpha = -1.0;
    std::size_t spec_samples = 0;
    std::uint64_t spec_seed = 1;
    bool spec_json = false;
    auto* spec_cmd = app.add_subcommand("spectral", "trace-norm certificates");
    spec_cmd->add_option("file", spec_path, "code file")->required();
    spec_cmd->add_option("--alpha", spec_alpha, "alpha for q=1 (default: achieved)");
    spec_cmd->add_option("--samples", spec_samples,
                         "Khintchine Monte Carlo samples over the coefficient family (0 = off)");
    spec_cmd->add_option("--seed", spec_seed, "random seed");
    spec_cmd->add_flag("--json", spec_json, "machine-readable report");

    std::string qq_path;
    std::size_t qq_samples = 0;
    int qq_trials = 8;
    std::uint64_t qq_seed = 1;
    bool qq_json = false;
    auto* qq_cmd = app.add_subcommand("qquery", "subset-direction sampling experiment");
    qq_cmd->add_option("file", qq_path, "code file")->required();
    qq_cmd->add_option("--samples", qq_samples, "subset size (0 = default)");
    qq_cmd->add_option("--trials", qq_trials, "number of sampled subsets");
    qq_cmd->add_option("--seed", qq_seed, "random seed");
    qq_cmd->add_flag("--json", qq_json, "machine-readable report");

    BoundArgs bound_args;
    bool bound_json = false;
    auto* bound_cmd = app.add_subcommand("bound", "evaluate a bound formula");
    bound_cmd->add_option("--theorem", bound_args.theorem,
                          "general|bounded|qquery|one-query|good-edge")
        ->required();
    bound_cmd->add_option("--alpha", bound_args.alpha, "alpha");
    bound_cmd->add_option("--delta", bound_args.delta, "delta");
    bound_cmd->add_option("--d", bound_args.d, "dimension");
    bound_cmd->add_option("--c", bound_args.c, "boundedness parameter");
    bound_cmd->add_option("--q", bound_args.q, "query count");
    bound_cmd->add_option("--eps", bound_args.eps, "level parameter epsilon");
    bound_cmd->add_option("--t", bound_args.t, "residue count t");
    bound_cmd->add_option("--kappa", bound_args.kappa, "tiling constant");
    bound_cmd->add_flag("--not-simple", bound_args.not_simple,
                        "apply the general->simple losses first");
    bound_cmd->add_flag("--json", bound_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (verify_cmd->parsed()) return run_verify(in_path, alpha, as_json);
        if (reduce_cmd->parsed()) {
            return run_reduce(reduce_path, reduce_alpha,
                              reduce_k > 0 ? std::optional<int>(reduce_k) : std::nullopt,
                              reduce_bucket, reduce_out, reduce_json);
        }
        if (cut_cmd->parsed()) return run_certify_cut(cut_path, cut_budget, cut_seed, cut_json);
        if (til_cmd->parsed()) {
            return run_certify_tiling(til_path, til_eps, til_t, til_retries, til_seed,
                                      til_kappa, til_json);
        }
        if (spec_cmd->parsed()) {
            return run_spectral(spec_path,
                                spec_alpha >= 0.0 ? std::optional<double>(spec_alpha)
                                                  : std::nullopt,
                                spec_samples, spec_seed, spec_json);
        }
        if (qq_cmd->parsed()) {
            return run_qquery(qq_path, qq_samples, qq_trials, qq_seed, qq_json);
        }
        if (bound_cmd->parsed()) return run_bound(bound_args, bound_json);
    } catch (const aldc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
