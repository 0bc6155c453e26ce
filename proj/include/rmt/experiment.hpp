#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/fitting.hpp"
#include "rmt/models.hpp"
#include "rmt/spacing.hpp"

namespace rmt {

enum class Statistic {
    NLM,
    NLE,
    ComplexOrdered,
    RealPart,
    ImagPart,
    Modulus,
    UpperHalfPlane,
    FalsRR,
    FalsRC,
    FalsCC,
    Density,
};

struct ExperimentConfig {
    EnsembleSpec ensemble;
    Statistic stat = Statistic::NLM;
    Scaling spacing_scaling = Scaling::PerMatrixThenGlobal;
    DensityScaling density_scaling = DensityScaling::MaxAbs;
    int bins = 0;  // 0 -> per-statistic default
    std::optional<std::pair<double, double>> range;
    std::vector<FitModel> fits;
    // optional fixed reference curve to export alongside the histogram:
    // "wigner", "semicircle", "half_gaussian", "poisson:<mu>",
    // "bose_mitra:<a>", "d_cyclic:<a>", "exponential_d:<a>", "sub_exp:<a>:<b>"
    std::string reference_curve;
    std::string out_dir;
    int threads = 1;
    std::string recipe;  // informational tag in the manifest
};

struct RunOutcome {
    Histogram hist;
    std::vector<FitResult> fits;
    std::size_t n_values = 0;
    std::size_t skipped = 0;
    double scale_used = 0.0;  // density scale (E_bar / E_max), 0 for spacings
    std::vector<std::string> files;
    double wall_seconds = 0.0;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Solves every replica of the ensemble; replicas are deterministic in
// (seed, index) so thread count never changes the result.
std::vector<Spectrum> run_ensemble(const EnsembleSpec& spec, int threads = 1);

// Statistic extraction without the file outputs.
SpacingSample extract_spacings(const std::vector<Spectrum>& spectra, Statistic stat,
                               Scaling scaling);

// Full pipeline: ensemble -> statistic -> histogram -> fits -> files in
// config.out_dir (histogram.csv, fit_*.txt, curve_*.csv, manifest.json).
RunOutcome run(const ExperimentConfig& config);

// Same, with the ensemble already solved (recipes reuse one ensemble for
// several statistics).
RunOutcome run_prepared(const ExperimentConfig& config,
                        const std::vector<Spectrum>& spectra);

// Evaluator for ExperimentConfig::reference_curve tokens.
std::function<double(double)> reference_curve_eval(const std::string& token);

// Rebuild the config recorded in a manifest (out_dir must be supplied anew).
ExperimentConfig config_from_manifest(const std::string& manifest_path,
                                      const std::string& new_out_dir);

// 2x2 analytic-curve job: curve.csv + alpha.txt (+ mc_histogram.csv).
struct Analytic2x2Config {
    TwoByTwo family = TwoByTwo::R1;
    PdfFamily pdf = PdfFamily::Uniform;
    double pdf_scale = 1.0;
    int grid = 200;
    std::size_t mc_count = 0;  // 0 -> no Monte Carlo overlay
    int mc_bins = 50;
    std::uint64_t seed = 1;
    std::string out_dir;
};

struct Analytic2x2Outcome {
    bool curve_written = false;
    models::SlopeResult slope;
    std::vector<std::string> files;
};

Analytic2x2Outcome run_analytic2x2(const Analytic2x2Config& config);

const char* statistic_token(Statistic s);
Statistic statistic_from_token(const std::string& token);
const char* scaling_token(Scaling s);
const char* density_scaling_token(DensityScaling s);

// Shared formatting helpers (byte-stable outputs).
std::string format_double(double v);
void write_text_file(const std::string& path, const std::string& content);
void write_histogram_csv(const std::string& path, const Histogram& h);
void write_curve_csv(const std::string& path,
                     const std::function<double(double)>& f, double lo, double hi,
                     int points);
void write_fit_txt(const std::string& path, const FitResult& fit);

}  // namespace rmt
