#include "rmt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace rmt {

namespace {

// Large symmetric/pseudo-symmetric tridiagonal matrices take the banded
// path; everything else is solved dense.
Spectrum solve_replica(const EnsembleSpec& spec, std::uint64_t index) {
    const Family f = spec.family;
    if (f == Family::Tsym || f == Family::Tprime) {
        const TridiagonalReal bands = build_tridiagonal(spec, index);
        std::vector<double> vals = (f == Family::Tsym)
                                       ? eig_symmetric_tridiagonal(bands.diag, bands.upper)
                                       : eig_tridiagonal_matched(bands);
        Spectrum s;
        s.family = f;
        s.order = spec.n;
        s.values.reserve(vals.size());
        for (double v : vals) s.values.emplace_back(v, 0.0);
        return s;
    }
    const RealMatrix m = build(spec, index);
    if (family_symmetric(f)) return eig_symmetric(m, f);
    return eig_general(m, f);
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["family"] = family_token(c.ensemble.family);
    j["n"] = c.ensemble.n;
    j["replicas"] = c.ensemble.replicas;
    j["pdf"] = pdf_token(c.ensemble.pdf.family);
    j["pdf_scale"] = c.ensemble.pdf.scale;
    j["seed"] = c.ensemble.seed;
    j["stat"] = statistic_token(c.stat);
    j["spacing_scaling"] = scaling_token(c.spacing_scaling);
    j["density_scaling"] = density_scaling_token(c.density_scaling);
    j["bins"] = c.bins;
    if (c.range)
        j["range"] = {c.range->first, c.range->second};
    else
        j["range"] = nullptr;
    json fits = json::array();
    for (FitModel m : c.fits) fits.push_back(model_token(m));
    j["fits"] = fits;
    j["reference_curve"] = c.reference_curve;
    if (!c.recipe.empty()) j["recipe"] = c.recipe;
    return j;
}

}  // namespace

std::vector<Spectrum> run_ensemble(const EnsembleSpec& spec, int threads) {
    if (spec.n < 1) throw ConfigError("ensemble: n must be >= 1");
    if (spec.replicas < 1) throw ConfigError("ensemble: replica count must be >= 1");
    const std::size_t count = static_cast<std::size_t>(spec.replicas);
    std::vector<Spectrum> spectra(count);

    // keep dense workspaces bounded: roughly 3 copies of n^2 per worker
    const double per_worker = 3.0 * 8.0 * double(spec.n) * double(spec.n);
    const int mem_cap = std::max(1, static_cast<int>(2.0e9 / std::max(per_worker, 1.0)));
    const int workers = std::clamp(threads, 1, std::min<int>(mem_cap, 16));

    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) spectra[i] = solve_replica(spec, i);
        return spectra;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                spectra[i] = solve_replica(spec, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return spectra;
}

SpacingSample extract_spacings(const std::vector<Spectrum>& spectra, Statistic stat,
                               Scaling scaling) {
    switch (stat) {
        case Statistic::NLM: return spacings_nlm(spectra, scaling);
        case Statistic::NLE: return spacings_nle(spectra);
        case Statistic::ComplexOrdered:
            return spacings_complex(spectra, Protocol::ComplexOrdered, scaling);
        case Statistic::RealPart:
            return spacings_complex(spectra, Protocol::RealPart, scaling);
        case Statistic::ImagPart:
            return spacings_complex(spectra, Protocol::ImagPart, scaling);
        case Statistic::Modulus:
            return spacings_complex(spectra, Protocol::Modulus, scaling);
        case Statistic::UpperHalfPlane:
            return spacings_complex(spectra, Protocol::UpperHalfPlane, scaling);
        case Statistic::FalsRR: return fals(spectra, FalsKind::RealReal);
        case Statistic::FalsRC: return fals(spectra, FalsKind::RealComplex);
        case Statistic::FalsCC: return fals(spectra, FalsKind::ComplexComplex);
        case Statistic::Density:
            throw ConfigError("extract_spacings: density is not a spacing statistic");
    }
    throw ConfigError("unknown statistic");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_histogram_csv(const std::string& path, const Histogram& h) {
    std::string s = "bin_left,bin_right,density,count\n";
    for (int i = 0; i < h.bins(); ++i) {
        s += format_double(h.bin_edges[i]);
        s += ',';
        s += format_double(h.bin_edges[i + 1]);
        s += ',';
        s += format_double(h.density[i]);
        s += ',';
        s += std::to_string(h.counts[i]);
        s += '\n';
    }
    write_text_file(path, s);
}

void write_curve_csv(const std::string& path,
                     const std::function<double(double)>& f, double lo, double hi,
                     int points) {
    std::string s = "s,p\n";
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        s += format_double(x);
        s += ',';
        s += format_double(f(x));
        s += '\n';
    }
    write_text_file(path, s);
}

void write_fit_txt(const std::string& path, const FitResult& fit) {
    std::string s;
    s += "model = ";
    s += model_token(fit.model);
    s += '\n';
    s += "converged = ";
    s += fit.converged ? "true" : "false";
    s += '\n';
    for (std::size_t i = 0; i < fit.params.size(); ++i) {
        s += fit.param_names[i];
        s += " = ";
        s += format_double(fit.params[i]);
        s += '\n';
    }
    s += "sse = " + format_double(fit.sse) + '\n';
    s += "sup_norm = " + format_double(fit.sup_norm) + '\n';
    s += "chi2 = " + format_double(fit.chi2) + '\n';
    s += "n_bins = " + std::to_string(fit.n_bins) + '\n';
    write_text_file(path, s);
}

RunOutcome run(const ExperimentConfig& config) {
    if (config.out_dir.empty() || !fs::is_directory(config.out_dir))
        throw ConfigError("output directory does not exist: " + config.out_dir);
    std::vector<Spectrum> spectra;
    try {
        spectra = run_ensemble(config.ensemble, config.threads);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        json manifest;
        manifest["kind"] = "run";
        manifest["config"] = config_to_json(config);
        manifest["status"] = "numerical_failure";
        manifest["message"] = e.what();
        manifest["files"] = json::array();
        write_text_file((fs::path(config.out_dir) / "manifest.json").string(),
                        manifest.dump(2) + "\n");
        throw;
    }
    return run_prepared(config, spectra);
}

RunOutcome run_prepared(const ExperimentConfig& config,
                        const std::vector<Spectrum>& spectra) {
    const auto start_time = std::chrono::steady_clock::now();
    if (config.out_dir.empty() || !fs::is_directory(config.out_dir))
        throw ConfigError("output directory does not exist: " + config.out_dir);

    RunOutcome out;
    json manifest;
    manifest["kind"] = "run";
    manifest["config"] = config_to_json(config);

    auto finish_manifest = [&](const std::string& status, const std::string& message) {
        manifest["status"] = status;
        if (!message.empty()) manifest["message"] = message;
        json files = json::array();
        for (const auto& f : out.files) files.push_back(f);
        manifest["files"] = files;
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
                .count();
        manifest["wall_seconds"] = wall;
        out.wall_seconds = wall;
        write_text_file((fs::path(config.out_dir) / "manifest.json").string(),
                        manifest.dump(2) + "\n");
    };

    try {
        std::vector<double> values;
        int default_bins = 50;
        std::pair<double, double> default_range{0.0, 4.0};
        if (config.stat == Statistic::Density) {
            const DensitySample ds = density_sample(spectra, config.density_scaling);
            values = ds.values;
            out.scale_used = ds.scale;
            default_bins = 60;
            default_range = (config.density_scaling == DensityScaling::MeanPositive)
                                ? std::pair<double, double>{-1.2, 1.2}
                                : std::pair<double, double>{-1.0, 1.0};
            manifest["results"]["density_scale"] = ds.scale;
        } else {
            const SpacingSample ss =
                extract_spacings(spectra, config.stat, config.spacing_scaling);
            values = ss.values;
            out.skipped = ss.skipped;
            manifest["results"]["skipped_matrices"] = ss.skipped;
        }
        out.n_values = values.size();
        manifest["results"]["n_values"] = values.size();

        const int bins = (config.bins > 0) ? config.bins : default_bins;
        const auto range = config.range ? *config.range : default_range;
        out.hist = make_histogram(values, bins, range);
        manifest["results"]["n_in_range"] = out.hist.n_samples;
        manifest["results"]["n_dropped"] = out.hist.n_dropped;

        const fs::path dir(config.out_dir);
        write_histogram_csv((dir / "histogram.csv").string(), out.hist);
        out.files.push_back("histogram.csv");

        for (FitModel m : config.fits) {
            const FitResult fr = fit(out.hist, m);
            const std::string tok = model_token(m);
            write_fit_txt((dir / ("fit_" + tok + ".txt")).string(), fr);
            out.files.push_back("fit_" + tok + ".txt");
            const auto params = fr.params;
            write_curve_csv((dir / ("curve_" + tok + ".csv")).string(),
                            [m, params](double s) { return eval_model(m, params, s); },
                            out.hist.bin_edges.front(), out.hist.bin_edges.back(), 201);
            out.files.push_back("curve_" + tok + ".csv");
            json jf;
            jf["model"] = tok;
            for (std::size_t i = 0; i < fr.params.size(); ++i)
                jf["params"][fr.param_names[i]] = fr.params[i];
            jf["sse"] = fr.sse;
            jf["sup_norm"] = fr.sup_norm;
            jf["chi2"] = fr.chi2;
            jf["converged"] = fr.converged;
            manifest["results"]["fits"].push_back(jf);
            out.fits.push_back(fr);
        }
        if (!config.reference_curve.empty()) {
            const auto ref = reference_curve_eval(config.reference_curve);
            std::string name = config.reference_curve;
            for (char& ch : name)
                if (ch == ':') ch = '_';
            write_curve_csv((dir / ("curve_ref_" + name + ".csv")).string(), ref,
                            out.hist.bin_edges.front(), out.hist.bin_edges.back(), 201);
            out.files.push_back("curve_ref_" + name + ".csv");
        }
        finish_manifest("ok", "");
    } catch (const ConfigError&) {
        throw;  // config problems leave no partial outputs
    } catch (const std::exception& e) {
        finish_manifest("numerical_failure", e.what());
        throw;
    }
    return out;
}

std::function<double(double)> reference_curve_eval(const std::string& token) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            const std::size_t next = s.find(':', pos);
            if (next == std::string::npos) {
                parts.push_back(s.substr(pos));
                break;
            }
            parts.push_back(s.substr(pos, next - pos));
            pos = next + 1;
        }
        return parts;
    };
    const auto parts = split(token);
    const std::string& name = parts[0];
    auto arg = [&](std::size_t i) {
        if (i >= parts.size()) throw ConfigError("reference curve " + name + ": missing parameter");
        return std::stod(parts[i]);
    };
    if (name == "wigner") return [](double s) { return models::p_wigner(std::fabs(s)); };
    if (name == "semicircle")
        return [](double e) { return std::fabs(e) <= 1.0 ? models::semicircle(e) : 0.0; };
    if (name == "half_gaussian")
        return [](double s) { return s >= 0.0 ? models::p_half_gaussian(s) : 0.0; };
    if (name == "poisson") {
        const double mu = arg(1);
        return [mu](double s) { return s >= 0.0 ? models::p_poisson(mu, s) : 0.0; };
    }
    if (name == "bose_mitra") return [](double e) { return models::bose_mitra(e); };
    if (name == "d_cyclic") {
        const double a = arg(1);
        return [a](double e) { return std::fabs(e) <= 1.0 ? models::d_cyclic(a, e) : 0.0; };
    }
    if (name == "exponential_d") {
        const double a = arg(1);
        return [a](double e) { return e >= 0.0 ? a * std::exp(-a * e) : 0.0; };
    }
    if (name == "sub_exp") {
        const double a = arg(1);
        const double b = arg(2);
        return [a, b](double s) { return s >= 0.0 ? models::p_sub_exp(a, b, s) : 0.0; };
    }
    throw ConfigError("unknown reference curve: " + token);
}

ExperimentConfig config_from_manifest(const std::string& manifest_path,
                                      const std::string& new_out_dir) {
    std::ifstream in(manifest_path);
    if (!in) throw ConfigError("cannot read manifest: " + manifest_path);
    json j;
    in >> j;
    if (!j.contains("config")) throw ConfigError("manifest has no config section");
    const json& c = j["config"];
    ExperimentConfig cfg;
    cfg.ensemble.family = family_from_token(c.at("family").get<std::string>());
    cfg.ensemble.n = c.at("n").get<int>();
    cfg.ensemble.replicas = c.at("replicas").get<int>();
    cfg.ensemble.pdf.family = pdf_family_from_token(c.at("pdf").get<std::string>());
    cfg.ensemble.pdf.scale = c.at("pdf_scale").get<double>();
    cfg.ensemble.seed = c.at("seed").get<std::uint64_t>();
    cfg.stat = statistic_from_token(c.at("stat").get<std::string>());
    const std::string sc = c.at("spacing_scaling").get<std::string>();
    cfg.spacing_scaling =
        (sc == "per_matrix") ? Scaling::PerMatrixMean : Scaling::PerMatrixThenGlobal;
    const std::string dsc = c.at("density_scaling").get<std::string>();
    cfg.density_scaling =
        (dsc == "mean_positive") ? DensityScaling::MeanPositive : DensityScaling::MaxAbs;
    cfg.bins = c.at("bins").get<int>();
    if (!c.at("range").is_null())
        cfg.range = std::make_pair(c["range"][0].get<double>(), c["range"][1].get<double>());
    for (const auto& m : c.at("fits")) cfg.fits.push_back(model_from_token(m.get<std::string>()));
    if (c.contains("reference_curve")) cfg.reference_curve = c["reference_curve"].get<std::string>();
    if (c.contains("recipe")) cfg.recipe = c["recipe"].get<std::string>();
    cfg.out_dir = new_out_dir;
    return cfg;
}

Analytic2x2Outcome run_analytic2x2(const Analytic2x2Config& config) {
    if (config.out_dir.empty() || !fs::is_directory(config.out_dir))
        throw ConfigError("output directory does not exist: " + config.out_dir);
    if (config.grid < 2) throw ConfigError("analytic2x2: grid must be >= 2");

    const bool gaussian_routing = (config.pdf == PdfFamily::Gaussian);
    const bool supported = models::p2x2_supported(config.family, config.pdf);
    if (!supported && !gaussian_routing && config.mc_count == 0)
        throw ConfigError("analytic2x2: no analytic curve for this (matrix, pdf) pair; "
                          "request a Monte Carlo histogram instead");

    Analytic2x2Outcome out;
    const fs::path dir(config.out_dir);
    json manifest;
    manifest["kind"] = "analytic2x2";
    manifest["config"]["matrix"] = (config.family == TwoByTwo::R1) ? "r1" : "r2";
    manifest["config"]["pdf"] = pdf_token(config.pdf);
    manifest["config"]["pdf_scale"] = config.pdf_scale;
    manifest["config"]["grid"] = config.grid;
    manifest["config"]["mc"] = config.mc_count;
    manifest["config"]["mc_bins"] = config.mc_bins;
    manifest["config"]["seed"] = config.seed;

    if (gaussian_routing) {
        // Gaussian elements give the closed reference law; export that.
        write_curve_csv((dir / "curve.csv").string(),
                        [](double s) { return models::p_wigner(s); }, 0.0, 4.0,
                        config.grid);
        out.files.push_back("curve.csv");
        out.curve_written = true;
        out.slope.alpha = 1.5707963267948966;
        out.slope.kind = models::SlopeResult::Kind::Linear;
        out.slope.loglog_exponent = 1.0;
        manifest["curve"] = "wigner_reference";
    } else if (supported) {
        const models::ModelCurve curve = models::p2x2(config.family, config.pdf);
        write_curve_csv((dir / "curve.csv").string(), curve.pdf, curve.lo, curve.hi,
                        config.grid);
        out.files.push_back("curve.csv");
        out.curve_written = true;
        out.slope = models::slope_at_zero(curve);
        manifest["curve"] = curve.label;
        manifest["support_hi"] = curve.hi;
    } else {
        manifest["curve"] = nullptr;
        manifest["note"] = "no analytic form for this pair; Monte Carlo only";
    }

    if (out.curve_written) {
        std::string alpha_txt;
        const char* kind = out.slope.kind == models::SlopeResult::Kind::Linear
                               ? "linear"
                               : (out.slope.kind == models::SlopeResult::Kind::SuperLinear
                                      ? "super_linear"
                                      : "sub_linear");
        alpha_txt += std::string("repulsion = ") + kind + "\n";
        alpha_txt += "alpha = " + format_double(out.slope.alpha) + "\n";
        alpha_txt += "loglog_exponent = " + format_double(out.slope.loglog_exponent) + "\n";
        write_text_file((dir / "alpha.txt").string(), alpha_txt);
        out.files.push_back("alpha.txt");
        manifest["alpha"] = out.slope.alpha;
        manifest["repulsion"] = kind;
    }

    if (config.mc_count > 0) {
        const PdfSpec pdf{config.pdf, config.pdf_scale};
        const std::vector<double> s =
            models::mc_spacings_2x2(config.family, pdf, config.mc_count, config.seed);
        double hi = 4.0;
        for (double v : s) hi = std::max(hi, v);
        const Histogram h = make_histogram(s, config.mc_bins, std::make_pair(0.0, hi));
        write_histogram_csv((dir / "mc_histogram.csv").string(), h);
        out.files.push_back("mc_histogram.csv");
        manifest["mc_samples"] = s.size();
    }

    json files = json::array();
    for (const auto& f : out.files) files.push_back(f);
    manifest["files"] = files;
    manifest["status"] = "ok";
    write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    return out;
}

const char* statistic_token(Statistic s) {
    switch (s) {
        case Statistic::NLM: return "nlm";
        case Statistic::NLE: return "nle";
        case Statistic::ComplexOrdered: return "complex";
        case Statistic::RealPart: return "re";
        case Statistic::ImagPart: return "im";
        case Statistic::Modulus: return "mod";
        case Statistic::UpperHalfPlane: return "upper";
        case Statistic::FalsRR: return "fals_rr";
        case Statistic::FalsRC: return "fals_rc";
        case Statistic::FalsCC: return "fals_cc";
        case Statistic::Density: return "density";
    }
    return "?";
}

Statistic statistic_from_token(const std::string& token) {
    for (int i = 0; i <= static_cast<int>(Statistic::Density); ++i) {
        const auto s = static_cast<Statistic>(i);
        if (token == statistic_token(s)) return s;
    }
    throw ConfigError("unknown statistic token: " + token);
}

const char* scaling_token(Scaling s) {
    return s == Scaling::PerMatrixMean ? "per_matrix" : "per_matrix_global";
}

const char* density_scaling_token(DensityScaling s) {
    return s == DensityScaling::MeanPositive ? "mean_positive" : "max_abs";
}

}  // namespace rmt
