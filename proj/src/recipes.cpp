#include "rmt/recipes.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "rmt/experiment.hpp"

namespace fs = std::filesystem;

namespace rmt {

namespace {

struct Job {
    enum class Kind { Run, Analytic, Density2x2 };
    Kind kind = Kind::Run;
    std::string name;
    ExperimentConfig run_cfg;          // Kind::Run
    Analytic2x2Config analytic_cfg;    // Kind::Analytic
    // Kind::Density2x2
    TwoByTwo d_family = TwoByTwo::R1;
    std::size_t d_count = 80000;
    int d_bins = 60;
};

struct RecipeDef {
    std::string name;
    std::string description;
    std::vector<Job> jobs;
};

ExperimentConfig base_run(Family fam, PdfFamily pdf, int n, int N, Statistic stat,
                          std::uint64_t seed) {
    ExperimentConfig c;
    c.ensemble.family = fam;
    c.ensemble.n = n;
    c.ensemble.replicas = N;
    c.ensemble.pdf = PdfSpec{pdf, 1.0};
    c.ensemble.seed = seed;
    c.stat = stat;
    return c;
}

std::string job_name(Family fam, PdfFamily pdf, Statistic stat) {
    std::string s = family_token(fam);
    s += "_";
    s += pdf_token(pdf);
    s += "_";
    s += statistic_token(stat);
    return s;
}

// Deterministic per-job seed from the recipe base seed.
std::uint64_t job_seed(std::uint64_t base, std::size_t index) {
    return base + 1000003ULL * (index + 1);
}

const PdfFamily kSymmetricPdfs[] = {
    PdfFamily::Gaussian,  PdfFamily::Uniform,   PdfFamily::Exponential,
    PdfFamily::Triangular, PdfFamily::Parabolic, PdfFamily::SemiCircle,
    PdfFamily::SuperGaussian,
};

const PdfFamily kAsymmetricPdfs[] = {
    PdfFamily::HalfGaussian,      PdfFamily::HalfUniform, PdfFamily::HalfExponential,
    PdfFamily::HalfSuperGaussian, PdfFamily::HalfTriangular,
    PdfFamily::P2,                PdfFamily::P3,
};

RecipeDef make_table1(std::uint64_t seed) {
    RecipeDef r{"table1",
                "spacing fits A s exp(-B s^2) for the two fully random symmetric "
                "families under six symmetric element distributions (n=100, N=1000, "
                "within-matrix spacings)",
                {}};
    const PdfFamily pdfs[] = {PdfFamily::Gaussian,   PdfFamily::Uniform,
                              PdfFamily::Exponential, PdfFamily::SuperGaussian,
                              PdfFamily::Triangular,  PdfFamily::Parabolic};
    std::size_t idx = 0;
    for (Family fam : {Family::Rsym, Family::RsymDirect})
        for (PdfFamily pdf : pdfs) {
            Job j;
            j.name = job_name(fam, pdf, Statistic::NLM);
            j.run_cfg = base_run(fam, pdf, 100, 1000, Statistic::NLM, job_seed(seed, idx++));
            j.run_cfg.fits = {FitModel::PAB};
            j.run_cfg.reference_curve = "wigner";
            r.jobs.push_back(std::move(j));
        }
    return r;
}

RecipeDef make_table2(std::uint64_t seed) {
    RecipeDef r{"table2",
                "spacing fits A s exp(-B s^2) under asymmetric element distributions "
                "(half families, p2, p3); same ensembles as table1",
                {}};
    std::size_t idx = 0;
    for (Family fam : {Family::Rsym, Family::RsymDirect})
        for (PdfFamily pdf : kAsymmetricPdfs) {
            Job j;
            j.name = job_name(fam, pdf, Statistic::NLM);
            j.run_cfg = base_run(fam, pdf, 100, 1000, Statistic::NLM, job_seed(seed, idx++));
            j.run_cfg.fits = {FitModel::PAB};
            // asymmetric elements squeeze the spacings well under s=4
            j.run_cfg.range = {0.0, 3.0};
            j.run_cfg.bins = 60;
            r.jobs.push_back(std::move(j));
        }
    return r;
}

RecipeDef make_table3(std::uint64_t seed) {
    RecipeDef r{"table3",
                "Poisson fits mu exp(-mu s): pooled-ensemble spacings for the fully "
                "random symmetric families, within-matrix spacings for the structured "
                "ones (cyclic, products, tridiagonal, Toeplitz)",
                {}};
    std::size_t idx = 0;
    struct Row {
        Family fam;
        Statistic stat;
    };
    const Row rows[] = {
        {Family::Rsym, Statistic::NLE},    {Family::RsymDirect, Statistic::NLE},
        {Family::Q, Statistic::NLM},       {Family::Csym, Statistic::NLM},
        {Family::Tsym, Statistic::NLM},    {Family::Tprime, Statistic::NLM},
        {Family::Toeplitz, Statistic::NLM},
    };
    for (const Row& row : rows)
        for (PdfFamily pdf : kSymmetricPdfs) {
            Job j;
            j.name = job_name(row.fam, pdf, row.stat);
            j.run_cfg = base_run(row.fam, pdf, 100, 1000, row.stat, job_seed(seed, idx++));
            j.run_cfg.fits = {FitModel::Poisson};
            r.jobs.push_back(std::move(j));
        }
    return r;
}

RecipeDef make_table4(std::uint64_t seed) {
    RecipeDef r{"table4",
                "Poisson fits of spacings built from the real part, imaginary part "
                "and modulus of the complex eigenvalues of the non-symmetric families "
                "(jobs sharing an ensemble reuse its spectra)",
                {}};
    std::size_t idx = 0;
    for (Family fam : {Family::R, Family::C, Family::T})
        for (PdfFamily pdf : kSymmetricPdfs) {
            const std::uint64_t s = job_seed(seed, idx++);
            for (Statistic stat :
                 {Statistic::RealPart, Statistic::ImagPart, Statistic::Modulus}) {
                Job j;
                j.name = job_name(fam, pdf, stat);
                j.run_cfg = base_run(fam, pdf, 100, 1000, stat, s);
                j.run_cfg.fits = {FitModel::Poisson};
                r.jobs.push_back(std::move(j));
            }
        }
    return r;
}

Job analytic_job(TwoByTwo fam, PdfFamily pdf, std::uint64_t seed) {
    Job j;
    j.kind = Job::Kind::Analytic;
    j.name = std::string(fam == TwoByTwo::R1 ? "r1_" : "r2_") + pdf_token(pdf);
    j.analytic_cfg.family = fam;
    j.analytic_cfg.pdf = pdf;
    j.analytic_cfg.grid = 400;
    j.analytic_cfg.mc_count = 100000;
    j.analytic_cfg.seed = seed;
    return j;
}

RecipeDef make_fig_2x2(const std::string& name, PdfFamily pdf, std::uint64_t seed,
                       const std::string& what) {
    RecipeDef r{name, "2x2 spacing curves vs Monte Carlo histograms, " + what, {}};
    r.jobs.push_back(analytic_job(TwoByTwo::R1, pdf, job_seed(seed, 0)));
    r.jobs.push_back(analytic_job(TwoByTwo::R2, pdf, job_seed(seed, 1)));
    return r;
}

RecipeDef make_fig4(std::uint64_t seed) {
    RecipeDef r{"fig4",
                "2x2 eigenvalue densities for Gaussian elements vs Monte Carlo "
                "histograms of 80000 matrices",
                {}};
    std::size_t idx = 0;
    for (TwoByTwo fam : {TwoByTwo::R1, TwoByTwo::R2}) {
        Job j;
        j.kind = Job::Kind::Density2x2;
        j.name = (fam == TwoByTwo::R1) ? "r1_gaussian_density" : "r2_gaussian_density";
        j.d_family = fam;
        j.d_count = 80000;
        j.d_bins = 60;
        j.analytic_cfg.seed = job_seed(seed, idx++);
        r.jobs.push_back(std::move(j));
    }
    return r;
}

RecipeDef make_fig5(std::uint64_t seed) {
    RecipeDef r{"fig5",
                "effect of element-distribution asymmetry on the spacing fit: "
                "parabolic density and its two tilted variants",
                {}};
    std::size_t idx = 0;
    for (PdfFamily pdf : {PdfFamily::Parabolic, PdfFamily::P2, PdfFamily::P3}) {
        Job j;
        j.name = job_name(Family::Rsym, pdf, Statistic::NLM);
        j.run_cfg = base_run(Family::Rsym, pdf, 100, 1000, Statistic::NLM,
                             job_seed(seed, idx++));
        j.run_cfg.fits = {FitModel::PAB};
        j.run_cfg.reference_curve = "wigner";
        if (pdf != PdfFamily::Parabolic) {
            j.run_cfg.range = {0.0, 3.0};
            j.run_cfg.bins = 60;
        }
        r.jobs.push_back(std::move(j));
    }
    return r;
}

RecipeDef make_fig6(std::uint64_t seed) {
    RecipeDef r{"fig6",
                "typical Poisson fit: spacings of the real parts of tridiagonal "
                "complex eigenvalues, Gaussian elements",
                {}};
    Job j;
    j.name = job_name(Family::T, PdfFamily::Gaussian, Statistic::RealPart);
    j.run_cfg = base_run(Family::T, PdfFamily::Gaussian, 100, 1000, Statistic::RealPart,
                         job_seed(seed, 0));
    j.run_cfg.fits = {FitModel::Poisson};
    r.jobs.push_back(std::move(j));
    return r;
}

RecipeDef make_fig7(std::uint64_t seed) {
    RecipeDef r{"fig7",
                "the two real eigenvalues of the non-symmetric cyclic family: "
                "first-adjacent spacing vs the half-Gaussian, and their scaled "
                "density (reduced run n=200, N=2000)",
                {}};
    Job a;
    a.name = "c_uniform_fals_rr";
    a.run_cfg = base_run(Family::C, PdfFamily::Uniform, 200, 2000, Statistic::FalsRR,
                         job_seed(seed, 0));
    a.run_cfg.fits = {FitModel::HalfGaussian};
    a.run_cfg.reference_curve = "half_gaussian";
    r.jobs.push_back(std::move(a));

    Job b;
    b.name = "c_uniform_real_density";
    b.run_cfg = base_run(Family::C, PdfFamily::Uniform, 200, 2000, Statistic::Density,
                         job_seed(seed, 0));
    b.run_cfg.density_scaling = DensityScaling::MaxAbs;
    b.run_cfg.fits = {FitModel::GaussianDensity};
    b.run_cfg.bins = 50;
    r.jobs.push_back(std::move(b));
    return r;
}

RecipeDef make_fig8(std::uint64_t seed) {
    RecipeDef r{"fig8",
                "sub-exponential spacing statistics of the product families "
                "C C^t and T T^t",
                {}};
    std::size_t idx = 0;
    struct Row {
        Family fam;
        PdfFamily pdf;
    };
    for (const Row& row : {Row{Family::D, PdfFamily::Gaussian}, Row{Family::S, PdfFamily::Uniform}}) {
        Job j;
        j.name = job_name(row.fam, row.pdf, Statistic::NLM);
        j.run_cfg = base_run(row.fam, row.pdf, 100, 1000, Statistic::NLM,
                             job_seed(seed, idx++));
        j.run_cfg.fits = {FitModel::SubExp};
        j.run_cfg.range = {0.0, 10.0};
        j.run_cfg.bins = 60;
        r.jobs.push_back(std::move(j));
    }
    return r;
}

RecipeDef make_fig9(std::uint64_t seed) {
    RecipeDef r{"fig9",
                "spacings of complex eigenvalues ordered by real part for the "
                "non-symmetric families",
                {}};
    std::size_t idx = 0;
    for (Family fam : {Family::C, Family::T, Family::R}) {
        Job j;
        j.name = job_name(fam, PdfFamily::Uniform, Statistic::ComplexOrdered);
        j.run_cfg = base_run(fam, PdfFamily::Uniform, 100, 1000, Statistic::ComplexOrdered,
                             job_seed(seed, idx++));
        j.run_cfg.fits = {FitModel::ShiftedGaussianLinear, FitModel::PowerStretched};
        r.jobs.push_back(std::move(j));
    }
    return r;
}

RecipeDef make_fig10(std::uint64_t seed) {
    RecipeDef r{"fig10",
                "upper-half-plane spacing statistics of the non-symmetric families "
                "with stretched-exponential fits",
                {}};
    std::size_t idx = 0;
    for (Family fam : {Family::C, Family::T, Family::R}) {
        Job j;
        j.name = job_name(fam, PdfFamily::Gaussian, Statistic::UpperHalfPlane);
        j.run_cfg = base_run(fam, PdfFamily::Gaussian, 100, 1000, Statistic::UpperHalfPlane,
                             job_seed(seed, idx++));
        j.run_cfg.fits = {FitModel::PowerStretched};
        j.run_cfg.reference_curve = "wigner";
        r.jobs.push_back(std::move(j));
    }
    return r;
}

RecipeDef make_fig11(std::uint64_t seed) {
    RecipeDef r{"fig11",
                "large-order eigenvalue densities: semicircle, cyclic, Toeplitz, "
                "tridiagonal (quartic), and the exponential product family "
                "(orders reduced from 10^4 where the dense solver would not be "
                "desk scale; the tridiagonal panels keep n=10^4 via the banded path)",
                {}};
    auto density_job = [&](const char* name, Family fam, int n, int N, int bins,
                           std::size_t idx) {
        Job j;
        j.name = name;
        j.run_cfg = base_run(fam, PdfFamily::Gaussian, n, N, Statistic::Density,
                             job_seed(seed, idx));
        j.run_cfg.density_scaling = DensityScaling::MaxAbs;
        j.run_cfg.bins = bins;
        return j;
    };
    Job a = density_job("a_rsym_semicircle", Family::Rsym, 2000, 20, 24, 0);
    a.run_cfg.reference_curve = "semicircle";
    r.jobs.push_back(std::move(a));

    Job b = density_job("b_csym", Family::Csym, 1000, 10, 40, 1);
    b.run_cfg.fits = {FitModel::BoseMitra};
    r.jobs.push_back(std::move(b));

    Job c = density_job("c_toeplitz", Family::Toeplitz, 2000, 10, 40, 2);
    c.run_cfg.fits = {FitModel::GaussianDensity};
    r.jobs.push_back(std::move(c));

    Job d = density_job("d_tsym", Family::Tsym, 10000, 20, 60, 3);
    d.run_cfg.fits = {FitModel::SuperGaussianQuartic};
    r.jobs.push_back(std::move(d));

    Job e = density_job("e_tprime", Family::Tprime, 10000, 20, 60, 4);
    e.run_cfg.fits = {FitModel::SuperGaussianQuartic};
    r.jobs.push_back(std::move(e));

    Job f = density_job("f_d_exponential", Family::D, 1000, 20, 50, 5);
    f.run_cfg.range = {0.0, 1.0};
    f.run_cfg.fits = {FitModel::ExponentialDensity};
    r.jobs.push_back(std::move(f));
    return r;
}

std::vector<RecipeDef> all_recipes(std::uint64_t seed) {
    std::vector<RecipeDef> defs;
    defs.push_back(make_table1(seed + 100));
    defs.push_back(make_table2(seed + 200));
    defs.push_back(make_table3(seed + 300));
    defs.push_back(make_table4(seed + 400));
    defs.push_back(make_fig_2x2("fig1", PdfFamily::Uniform, seed + 500, "uniform elements"));
    defs.push_back(make_fig_2x2("fig2", PdfFamily::Exponential, seed + 600,
                                "two-sided exponential elements"));
    defs.push_back(make_fig_2x2("fig3", PdfFamily::SuperGaussian, seed + 700,
                                "quartic-exponential elements"));
    defs.push_back(make_fig4(seed + 800));
    defs.push_back(make_fig5(seed + 900));
    defs.push_back(make_fig6(seed + 1000));
    defs.push_back(make_fig7(seed + 1100));
    defs.push_back(make_fig8(seed + 1200));
    defs.push_back(make_fig9(seed + 1300));
    defs.push_back(make_fig10(seed + 1400));
    defs.push_back(make_fig11(seed + 1500));
    return defs;
}

constexpr std::uint64_t kDefaultRecipeSeed = 20250901;

std::string ensemble_key(const EnsembleSpec& e) {
    std::string k = family_token(e.family);
    k += "/" + std::to_string(e.n) + "/" + std::to_string(e.replicas);
    k += "/";
    k += pdf_token(e.pdf.family);
    k += "/" + format_double(e.pdf.scale) + "/" + std::to_string(e.seed);
    return k;
}

// 2x2 density panel: analytic D(eps) plus a Monte Carlo histogram, both in
// the mean-positive-eigenvalue scaling.
void run_density2x2(const Job& job, const std::string& dir) {
    const models::ModelCurve curve = models::g2x2(job.d_family);
    write_curve_csv(dir + "/curve.csv", curve.pdf, -3.0, 3.0, 400);
    // paper convention for Gaussian elements: density ~ exp(-x^2)
    const PdfSpec pdf{PdfFamily::Gaussian, 1.0 / std::sqrt(2.0)};
    const auto spectra =
        models::mc_spectra_2x2(job.d_family, pdf, job.d_count, job.analytic_cfg.seed);
    const DensitySample ds = density_sample(spectra, DensityScaling::MeanPositive);
    const Histogram h = make_histogram(ds.values, job.d_bins, std::make_pair(-3.0, 3.0));
    write_histogram_csv(dir + "/mc_histogram.csv", h);
    std::string info;
    info += "family = " + std::string(job.d_family == TwoByTwo::R1 ? "r1" : "r2") + "\n";
    info += "e_bar_analytic = " + format_double(models::g2x2_mean_positive(job.d_family)) + "\n";
    info += "e_bar_mc = " + format_double(ds.scale) + "\n";
    info += "mc_samples = " + std::to_string(ds.values.size()) + "\n";
    write_text_file(dir + "/density.txt", info);
}

}  // namespace

std::vector<RecipeInfo> recipe_list() {
    std::vector<RecipeInfo> out;
    for (const RecipeDef& def : all_recipes(kDefaultRecipeSeed)) {
        RecipeInfo info{def.name, def.description, {}};
        for (const Job& j : def.jobs) info.jobs.push_back(j.name);
        out.push_back(std::move(info));
    }
    return out;
}

std::vector<std::string> run_recipe(const std::string& name, const std::string& out_dir,
                                    int threads,
                                    std::optional<std::uint64_t> seed_override) {
    if (!fs::is_directory(out_dir))
        throw ConfigError("output directory does not exist: " + out_dir);
    const std::uint64_t seed = seed_override.value_or(kDefaultRecipeSeed);
    RecipeDef def;
    bool found = false;
    for (RecipeDef& d : all_recipes(seed)) {
        if (d.name == name) {
            def = std::move(d);
            found = true;
            break;
        }
    }
    if (!found) throw ConfigError("unknown recipe: " + name);

    const fs::path root = fs::path(out_dir) / def.name;
    fs::create_directories(root);
    std::vector<std::string> dirs;
    std::string summary = "recipe = " + def.name + "\n";

    // one-slot spectra cache: adjacent jobs over the same ensemble reuse it
    std::string cached_key;
    std::vector<Spectrum> cached_spectra;

    for (Job& job : def.jobs) {
        const fs::path dir = root / job.name;
        fs::create_directories(dir);
        switch (job.kind) {
            case Job::Kind::Run: {
                job.run_cfg.out_dir = dir.string();
                job.run_cfg.threads = threads;
                job.run_cfg.recipe = def.name;
                const std::string key = ensemble_key(job.run_cfg.ensemble);
                if (key != cached_key) {
                    cached_spectra = run_ensemble(job.run_cfg.ensemble, threads);
                    cached_key = key;
                }
                const RunOutcome out = run_prepared(job.run_cfg, cached_spectra);
                summary += job.name + ": n_values=" + std::to_string(out.n_values);
                for (const FitResult& fr : out.fits) {
                    summary += std::string(" ") + model_token(fr.model) + "(";
                    for (std::size_t i = 0; i < fr.params.size(); ++i) {
                        if (i) summary += ",";
                        summary += fr.param_names[i] + "=" + format_double(fr.params[i]);
                    }
                    summary += ")";
                }
                summary += "\n";
                break;
            }
            case Job::Kind::Analytic: {
                job.analytic_cfg.out_dir = dir.string();
                const Analytic2x2Outcome out = run_analytic2x2(job.analytic_cfg);
                summary += job.name + ": alpha=" + format_double(out.slope.alpha) + "\n";
                break;
            }
            case Job::Kind::Density2x2: {
                run_density2x2(job, dir.string());
                summary += job.name + ": written\n";
                break;
            }
        }
        dirs.push_back(dir.string());
    }
    write_text_file((root / "summary.txt").string(), summary);
    return dirs;
}

}  // namespace rmt
