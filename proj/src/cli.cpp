#include "rmt/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rmt/experiment.hpp"
#include "rmt/recipes.hpp"

namespace rmt {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("range must be <lo>:<hi>, got " + text);
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

struct RunOptions {
    std::string ensemble, pdf, stat = "nlm", scaling, fit_csv, range, out, ref;
    int n = 100, N = 1000, bins = 0, threads = 1;
    double pdf_scale = 1.0;
    std::uint64_t seed = 1;
    bool allow_large_n = false;
};

int do_run(const RunOptions& opt) {
    ExperimentConfig cfg;
    cfg.ensemble.family = family_from_token(opt.ensemble);
    cfg.ensemble.n = opt.n;
    cfg.ensemble.replicas = opt.N;
    cfg.ensemble.pdf = PdfSpec{pdf_family_from_token(opt.pdf), opt.pdf_scale};
    cfg.ensemble.seed = opt.seed;
    cfg.stat = statistic_from_token(opt.stat);
    cfg.bins = opt.bins;
    cfg.threads = opt.threads;
    cfg.out_dir = opt.out;
    cfg.reference_curve = opt.ref;
    if (!opt.range.empty()) cfg.range = parse_range(opt.range);

    if (!opt.scaling.empty()) {
        if (cfg.stat == Statistic::Density) {
            if (opt.scaling == "mean_positive")
                cfg.density_scaling = DensityScaling::MeanPositive;
            else if (opt.scaling == "max_abs")
                cfg.density_scaling = DensityScaling::MaxAbs;
            else
                throw ConfigError("density scaling must be mean_positive or max_abs");
        } else {
            if (opt.scaling == "per_matrix")
                cfg.spacing_scaling = Scaling::PerMatrixMean;
            else if (opt.scaling == "per_matrix_global")
                cfg.spacing_scaling = Scaling::PerMatrixThenGlobal;
            else
                throw ConfigError("spacing scaling must be per_matrix or per_matrix_global");
        }
    }
    for (const std::string& tok : split_list(opt.fit_csv))
        cfg.fits.push_back(model_from_token(tok));

    const bool dense_general = !family_symmetric(cfg.ensemble.family) &&
                               !family_tridiagonal(cfg.ensemble.family) &&
                               cfg.ensemble.family != Family::Tprime;
    if (dense_general && cfg.ensemble.n > 200 && !opt.allow_large_n)
        throw ConfigError(
            "non-symmetric families above n=200 need --allow-large-n (O(n^3) solver)");

    const RunOutcome out = run(cfg);
    std::printf("wrote %zu files to %s (%zu values, %zu matrices skipped)\n",
                out.files.size() + 1, cfg.out_dir.c_str(), out.n_values, out.skipped);
    for (const FitResult& fr : out.fits) {
        std::printf("fit %s:", model_token(fr.model));
        for (std::size_t i = 0; i < fr.params.size(); ++i)
            std::printf(" %s=%.6g", fr.param_names[i].c_str(), fr.params[i]);
        std::printf(" (sup_norm=%.4g, converged=%s)\n", fr.sup_norm,
                    fr.converged ? "yes" : "no");
    }
    return kExitOk;
}

struct AnalyticOptions {
    std::string matrix, pdf, out;
    int grid = 200, mc_bins = 50;
    std::size_t mc = 0;
    double pdf_scale = 1.0;
    std::uint64_t seed = 1;
};

int do_analytic(const AnalyticOptions& opt) {
    Analytic2x2Config cfg;
    if (opt.matrix == "r1")
        cfg.family = TwoByTwo::R1;
    else if (opt.matrix == "r2")
        cfg.family = TwoByTwo::R2;
    else
        throw ConfigError("matrix must be r1 or r2");
    cfg.pdf = pdf_family_from_token(opt.pdf);
    cfg.pdf_scale = opt.pdf_scale;
    cfg.grid = opt.grid;
    cfg.mc_count = opt.mc;
    cfg.mc_bins = opt.mc_bins;
    cfg.seed = opt.seed;
    cfg.out_dir = opt.out;
    const Analytic2x2Outcome out = run_analytic2x2(cfg);
    if (out.curve_written)
        std::printf("curve written; alpha=%.4g (%s)\n", out.slope.alpha,
                    out.slope.kind == models::SlopeResult::Kind::Linear ? "linear"
                    : out.slope.kind == models::SlopeResult::Kind::SuperLinear
                        ? "super-linear"
                        : "sub-linear");
    else
        std::printf("no analytic curve for this pair; Monte Carlo histogram written\n");
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"random-matrix spectral statistics toolkit"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "generate an ensemble and analyse one statistic");
    run_cmd->add_option("--ensemble", run_opt.ensemble, "family token")->required();
    run_cmd->add_option("--n", run_opt.n, "matrix order");
    run_cmd->add_option("--N", run_opt.N, "replica count");
    run_cmd->add_option("--pdf", run_opt.pdf, "element distribution token")->required();
    run_cmd->add_option("--pdf-scale", run_opt.pdf_scale, "element width parameter");
    run_cmd->add_option("--stat", run_opt.stat, "statistic token");
    run_cmd->add_option("--bins", run_opt.bins, "histogram bins (0 = default)");
    run_cmd->add_option("--range", run_opt.range, "histogram range lo:hi");
    run_cmd->add_option("--seed", run_opt.seed, "master seed");
    run_cmd->add_option("--scaling", run_opt.scaling,
                        "per_matrix|per_matrix_global or mean_positive|max_abs");
    run_cmd->add_option("--fit", run_opt.fit_csv, "comma list of fit models");
    run_cmd->add_option("--ref", run_opt.ref, "reference curve to export");
    run_cmd->add_option("--out", run_opt.out, "existing output directory")->required();
    run_cmd->add_option("--threads", run_opt.threads, "worker threads");
    run_cmd->add_flag("--allow-large-n", run_opt.allow_large_n,
                      "lift the n<=200 cap for non-symmetric families");

    AnalyticOptions an_opt;
    CLI::App* an_cmd =
        app.add_subcommand("analytic2x2", "2x2 spacing curve, slope, and optional MC overlay");
    an_cmd->add_option("--matrix", an_opt.matrix, "r1 or r2")->required();
    an_cmd->add_option("--pdf", an_opt.pdf, "element distribution token")->required();
    an_cmd->add_option("--pdf-scale", an_opt.pdf_scale, "element width parameter");
    an_cmd->add_option("--grid", an_opt.grid, "curve grid points");
    an_cmd->add_option("--mc", an_opt.mc, "Monte Carlo matrix count (0 = none)");
    an_cmd->add_option("--mc-bins", an_opt.mc_bins, "MC histogram bins");
    an_cmd->add_option("--seed", an_opt.seed, "master seed");
    an_cmd->add_option("--out", an_opt.out, "existing output directory")->required();

    CLI::App* rec_cmd = app.add_subcommand("recipes", "preset experiment bundles");
    CLI::App* rec_list = rec_cmd->add_subcommand("list", "enumerate recipes and their jobs");
    std::string recipe_name, recipe_out;
    int recipe_threads = 1;
    std::uint64_t recipe_seed = 0;
    bool recipe_seed_set = false;
    CLI::App* rec_run = rec_cmd->add_subcommand("run", "run one recipe");
    rec_run->add_option("name", recipe_name, "recipe name")->required();
    rec_run->add_option("--out", recipe_out, "existing output directory")->required();
    rec_run->add_option("--threads", recipe_threads, "worker threads");
    rec_run->add_option("--seed", recipe_seed, "base seed override")
        ->each([&recipe_seed_set](const std::string&) { recipe_seed_set = true; });
    rec_cmd->require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("rmtstat");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_opt);
        if (an_cmd->parsed()) return do_analytic(an_opt);
        if (rec_cmd->parsed()) {
            if (rec_list->parsed()) {
                for (const RecipeInfo& r : recipe_list()) {
                    std::printf("%-8s %s\n", r.name.c_str(), r.description.c_str());
                    std::printf("         jobs:");
                    for (const auto& j : r.jobs) std::printf(" %s", j.c_str());
                    std::printf("\n");
                }
                return kExitOk;
            }
            if (rec_run->parsed()) {
                std::optional<std::uint64_t> seed;
                if (recipe_seed_set) seed = recipe_seed;
                const auto dirs = run_recipe(recipe_name, recipe_out, recipe_threads, seed);
                std::printf("recipe %s: %zu jobs written under %s\n", recipe_name.c_str(),
                            dirs.size(), recipe_out.c_str());
                return kExitOk;
            }
        }
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace rmt
