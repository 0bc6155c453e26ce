#include "rmt/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rmt/special.hpp"

namespace rmt {

namespace {

enum class Transform { Log, Logit01, Identity };

struct ModelInfo {
    const char* token;
    std::vector<const char*> names;
    std::vector<Transform> transforms;
};

const ModelInfo& model_info(FitModel m) {
    static const ModelInfo pab{"pab", {"A", "B"}, {Transform::Log, Transform::Log}};
    static const ModelInfo poisson{"poisson", {"mu"}, {Transform::Log}};
    static const ModelInfo subexp{"subexp", {"a", "b"}, {Transform::Log, Transform::Logit01}};
    static const ModelInfo wigner_like{"wigner_like", {"a", "b"}, {Transform::Log, Transform::Log}};
    static const ModelInfo power{"power_stretched",
                                 {"a", "b", "c", "d"},
                                 {Transform::Log, Transform::Log, Transform::Log, Transform::Log}};
    static const ModelInfo sgl{"shifted_gaussian_linear",
                               {"a", "c", "d", "w"},
                               {Transform::Log, Transform::Log, Transform::Identity, Transform::Log}};
    static const ModelInfo gaussd{"gaussian_d", {"a", "b"}, {Transform::Log, Transform::Log}};
    static const ModelInfo sgq{"supergaussian_quartic", {"a", "b"}, {Transform::Log, Transform::Log}};
    static const ModelInfo expd{"exponential_d", {"a"}, {Transform::Log}};
    static const ModelInfo halfg{"half_gaussian", {"sigma"}, {Transform::Log}};
    static const ModelInfo bm{"bose_mitra", {"a"}, {Transform::Log}};
    switch (m) {
        case FitModel::PAB: return pab;
        case FitModel::Poisson: return poisson;
        case FitModel::SubExp: return subexp;
        case FitModel::WignerLike: return wigner_like;
        case FitModel::PowerStretched: return power;
        case FitModel::ShiftedGaussianLinear: return sgl;
        case FitModel::GaussianDensity: return gaussd;
        case FitModel::SuperGaussianQuartic: return sgq;
        case FitModel::ExponentialDensity: return expd;
        case FitModel::HalfGaussian: return halfg;
        case FitModel::BoseMitra: return bm;
    }
    throw std::invalid_argument("unknown fit model");
}

double to_internal(double p, Transform t) {
    switch (t) {
        case Transform::Log: return std::log(p);
        case Transform::Logit01: return std::log(p / (1.0 - p));
        case Transform::Identity: return p;
    }
    return p;
}

double from_internal(double t_val, Transform t) {
    switch (t) {
        case Transform::Log: return std::exp(t_val);
        case Transform::Logit01: return 1.0 / (1.0 + std::exp(-t_val));
        case Transform::Identity: return t_val;
    }
    return t_val;
}

std::vector<double> externalize(const std::vector<double>& t_params, FitModel model) {
    const auto& info = model_info(model);
    std::vector<double> p(t_params.size());
    for (std::size_t i = 0; i < t_params.size(); ++i)
        p[i] = from_internal(t_params[i], info.transforms[i]);
    return p;
}

// Histogram summary used by the starting-point heuristics.
struct HistMoments {
    double mean = 0.0;
    double var = 0.0;
    double mass = 0.0;
    double mode_center = 0.0;
    double mode_density = 0.0;
    int mode_index = 0;
    double half_point = 0.0;  // |center| where density first falls to half the mode
};

HistMoments summarize(const Histogram& h) {
    HistMoments m;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < h.bins(); ++i) {
        const double c = h.bin_center(i);
        const double w = h.bin_width(i);
        const double d = h.density[i];
        m.mass += d * w;
        m1 += c * d * w;
        m2 += c * c * d * w;
        if (d > m.mode_density) {
            m.mode_density = d;
            m.mode_center = c;
            m.mode_index = i;
        }
    }
    if (m.mass > 0.0) {
        m.mean = m1 / m.mass;
        m.var = std::max(m2 / m.mass - m.mean * m.mean, 1e-12);
    }
    m.half_point = 0.0;
    for (int i = m.mode_index; i < h.bins(); ++i) {
        if (h.density[i] <= 0.5 * m.mode_density) {
            m.half_point = std::fabs(h.bin_center(i));
            break;
        }
    }
    if (m.half_point == 0.0) m.half_point = std::fabs(h.bin_center(h.bins() - 1));
    return m;
}

// Amplitude that minimizes the weighted residual for a model linear in its
// first parameter: p(s) = a * shape(s).
double linear_amplitude(const Histogram& h, const std::function<double(double)>& shape) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < h.bins(); ++i) {
        const double w = static_cast<double>(h.counts[i]);
        const double f = shape(h.bin_center(i));
        num += w * f * h.density[i];
        den += w * f * f;
    }
    return (den > 0.0) ? std::max(num / den, 1e-8) : 1.0;
}

// ---- Levenberg-Marquardt on the transformed parameters -------------------

struct LMProblem {
    const Histogram& hist;
    FitModel model;

    double objective(const std::vector<double>& t_params) const {
        const auto p = externalize(t_params, model);
        double f = 0.0;
        for (int i = 0; i < hist.bins(); ++i) {
            const double w = static_cast<double>(hist.counts[i]);
            if (w == 0.0) continue;
            const double r = eval_model(model, p, hist.bin_center(i)) - hist.density[i];
            f += w * r * r;
        }
        return f;
    }

    void residuals(const std::vector<double>& t_params, std::vector<double>& r,
                   std::vector<double>& sqrt_w) const {
        const auto p = externalize(t_params, model);
        r.resize(hist.bins());
        sqrt_w.resize(hist.bins());
        for (int i = 0; i < hist.bins(); ++i) {
            sqrt_w[i] = std::sqrt(static_cast<double>(hist.counts[i]));
            r[i] = eval_model(model, p, hist.bin_center(i)) - hist.density[i];
        }
    }
};

// Solve the k x k system (small k) by Gaussian elimination with pivoting.
bool solve_small(std::vector<std::vector<double>> a, std::vector<double>& b) {
    const int k = static_cast<int>(b.size());
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < k; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c2 = col; c2 < k; ++c2) a[r][c2] -= f * a[col][c2];
            b[r] -= f * b[col];
        }
    }
    for (int col = k - 1; col >= 0; --col) {
        for (int r = col + 1; r < k; ++r) b[col] -= a[col][r] * b[r];
        b[col] /= a[col][col];
    }
    return true;
}

struct LMOutcome {
    std::vector<double> t_params;
    double objective = std::numeric_limits<double>::infinity();
    bool converged = false;
};

LMOutcome levenberg_marquardt(const LMProblem& prob, std::vector<double> t) {
    const int k = static_cast<int>(t.size());
    const int nb = prob.hist.bins();
    std::vector<double> r, sw;
    std::vector<std::vector<double>> jac(nb, std::vector<double>(k));

    double f = prob.objective(t);
    double lambda = 1e-3;
    bool converged = false;

    for (int iter = 0; iter < 200; ++iter) {
        // numerical Jacobian of the residuals, central differences
        prob.residuals(t, r, sw);
        for (int j = 0; j < k; ++j) {
            const double h = 1e-6 * (1.0 + std::fabs(t[j]));
            std::vector<double> tp = t, tm = t;
            tp[j] += h;
            tm[j] -= h;
            std::vector<double> rp, rm, dummy;
            prob.residuals(tp, rp, dummy);
            prob.residuals(tm, rm, dummy);
            for (int i = 0; i < nb; ++i) jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
        }
        // normal equations with weights
        std::vector<std::vector<double>> jtj(k, std::vector<double>(k, 0.0));
        std::vector<double> jtr(k, 0.0);
        for (int i = 0; i < nb; ++i) {
            const double w = sw[i] * sw[i];
            if (w == 0.0) continue;
            for (int a2 = 0; a2 < k; ++a2) {
                jtr[a2] += w * jac[i][a2] * r[i];
                for (int b2 = a2; b2 < k; ++b2) jtj[a2][b2] += w * jac[i][a2] * jac[i][b2];
            }
        }
        for (int a2 = 0; a2 < k; ++a2)
            for (int b2 = 0; b2 < a2; ++b2) jtj[a2][b2] = jtj[b2][a2];

        double grad_norm = 0.0;
        for (int j = 0; j < k; ++j) grad_norm += 4.0 * jtr[j] * jtr[j];
        grad_norm = std::sqrt(grad_norm);
        if (grad_norm <= 1e-8 * (1.0 + std::fabs(f))) {
            converged = true;
            break;
        }

        bool stepped = false;
        for (int tries = 0; tries < 12; ++tries) {
            auto lhs = jtj;
            for (int j = 0; j < k; ++j)
                lhs[j][j] += lambda * std::max(jtj[j][j], 1e-12);
            std::vector<double> step(k);
            for (int j = 0; j < k; ++j) step[j] = -jtr[j];
            if (!solve_small(lhs, step)) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> t_new(k);
            double step_norm = 0.0;
            for (int j = 0; j < k; ++j) {
                t_new[j] = t[j] + step[j];
                step_norm = std::max(step_norm, std::fabs(step[j]));
            }
            const double f_new = prob.objective(t_new);
            if (std::isfinite(f_new) && f_new < f) {
                t = std::move(t_new);
                f = f_new;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (step_norm < 1e-12) iter = 200;  // stalled at the optimum
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) break;  // no downhill step found
    }

    // final gradient check for the convergence flag
    {
        prob.residuals(t, r, sw);
        double grad_norm = 0.0;
        for (int j = 0; j < k; ++j) {
            const double h = 1e-6 * (1.0 + std::fabs(t[j]));
            std::vector<double> tp = t, tm = t;
            tp[j] += h;
            tm[j] -= h;
            const double g = (prob.objective(tp) - prob.objective(tm)) / (2.0 * h);
            grad_norm += g * g;
        }
        converged = std::sqrt(grad_norm) <= 1e-8 * (1.0 + std::fabs(f));
    }
    return {std::move(t), f, converged};
}

}  // namespace

double FitResult::param(const std::string& name) const {
    for (std::size_t i = 0; i < param_names.size(); ++i)
        if (param_names[i] == name) return params[i];
    throw std::invalid_argument("no such fit parameter: " + name);
}

double eval_model(FitModel model, std::span<const double> p, double s) {
    switch (model) {
        case FitModel::PAB:
        case FitModel::WignerLike:
            return p[0] * s * std::exp(-p[1] * s * s);
        case FitModel::Poisson:
            return p[0] * std::exp(-p[0] * s);
        case FitModel::SubExp: {
            const double norm = std::pow(p[0], 1.0 / p[1]) / special::gamma_fn(1.0 + 1.0 / p[1]);
            return norm * std::exp(-p[0] * std::pow(std::max(s, 0.0), p[1]));
        }
        case FitModel::PowerStretched:
            return p[0] * std::pow(std::max(s, 1e-300), p[1]) *
                   std::exp(-p[2] * std::pow(std::max(s, 0.0), p[3]));
        case FitModel::ShiftedGaussianLinear: {
            const double z = s - p[2];
            return p[0] * (s + p[1]) * std::exp(-z * z / p[3]);
        }
        case FitModel::GaussianDensity:
            return p[0] * std::exp(-p[1] * s * s);
        case FitModel::SuperGaussianQuartic:
            return p[0] * std::exp(-p[1] * s * s * s * s);
        case FitModel::ExponentialDensity:
            return p[0] * std::exp(-p[0] * s);
        case FitModel::HalfGaussian:
            return std::sqrt(2.0 / 3.14159265358979323846) / p[0] *
                   std::exp(-s * s / (2.0 * p[0] * p[0]));
        case FitModel::BoseMitra:
            return p[0] / (1.0 - std::exp(-p[0])) * std::fabs(s) * std::exp(-p[0] * s * s);
    }
    throw std::invalid_argument("unknown fit model");
}

int model_param_count(FitModel m) { return static_cast<int>(model_info(m).names.size()); }

const char* model_token(FitModel m) { return model_info(m).token; }

FitModel model_from_token(const std::string& token) {
    for (int i = 0; i <= static_cast<int>(FitModel::BoseMitra); ++i) {
        const auto m = static_cast<FitModel>(i);
        if (token == model_token(m)) return m;
    }
    throw std::invalid_argument("unknown fit model token: " + token);
}

std::vector<std::string> model_param_names(FitModel m) {
    const auto& info = model_info(m);
    return {info.names.begin(), info.names.end()};
}

std::vector<std::vector<double>> init_guess(const Histogram& hist, FitModel model) {
    const HistMoments m = summarize(hist);
    std::vector<std::vector<double>> starts;
    // a mode sitting on the first or last bin gives no usable peak position
    const bool flat_or_edge = (m.mode_index == 0 || m.mode_index == hist.bins() - 1);

    switch (model) {
        case FitModel::Poisson:
        case FitModel::ExponentialDensity: {
            const double mu0 = (m.mean > 0.0) ? 1.0 / m.mean : 1.0;
            starts.push_back({mu0});
            starts.push_back({0.5 * mu0});
            starts.push_back({2.0 * mu0});
            break;
        }
        case FitModel::PAB:
        case FitModel::WignerLike: {
            if (!flat_or_edge && m.mode_center > 0.0) {
                const double b0 = 1.0 / (2.0 * m.mode_center * m.mode_center);
                starts.push_back({2.0 * b0 * std::max(m.mass, 1e-6), b0});
            }
            for (double b : {0.3, 0.8, 1.5, 3.0, 8.0, 20.0})
                starts.push_back({2.0 * b * std::max(m.mass, 1e-6), b});
            break;
        }
        case FitModel::SubExp: {
            for (double b : {0.2, 0.3, 0.5, 0.7, 0.9})
                for (double a : {1.0, 2.0, 4.0, 8.0}) starts.push_back({a, b});
            break;
        }
        case FitModel::PowerStretched: {
            const double s_star = std::max(m.mode_center, 1e-3);
            for (double b : {0.5, 1.0, 2.0, 3.0})
                for (double d : {0.2, 0.35, 0.6, 1.0, 1.7, 3.0}) {
                    const double c = b / (d * std::pow(s_star, d));
                    auto shape = [b, c, d](double s) {
                        return std::pow(std::max(s, 1e-300), b) *
                               std::exp(-c * std::pow(std::max(s, 0.0), d));
                    };
                    starts.push_back({linear_amplitude(hist, shape), b, c, d});
                }
            break;
        }
        case FitModel::ShiftedGaussianLinear: {
            const double d0 = m.mode_center;
            const double w0 = std::max(2.0 * m.var, 1e-3);
            for (double c : {0.3, 1.0, 3.0, 8.0}) {
                auto shape = [c, d0, w0](double s) {
                    const double z = s - d0;
                    return (s + c) * std::exp(-z * z / w0);
                };
                starts.push_back({linear_amplitude(hist, shape), c, d0, w0});
            }
            break;
        }
        case FitModel::GaussianDensity: {
            const double b0 = std::log(2.0) / std::max(m.half_point * m.half_point, 1e-9);
            starts.push_back({std::max(m.mode_density, 1e-6), b0});
            starts.push_back({std::max(m.mode_density, 1e-6), 0.5 / std::max(m.var, 1e-9)});
            break;
        }
        case FitModel::SuperGaussianQuartic: {
            const double h4 = std::pow(m.half_point, 4);
            starts.push_back({std::max(m.mode_density, 1e-6), std::log(2.0) / std::max(h4, 1e-12)});
            starts.push_back({std::max(m.mode_density, 1e-6), 4.0});
            break;
        }
        case FitModel::HalfGaussian: {
            starts.push_back({std::max(m.mean, 1e-6) * std::sqrt(3.14159265358979323846 / 2.0)});
            starts.push_back({1.0});
            break;
        }
        case FitModel::BoseMitra: {
            for (double a : {3.0, 7.0, 12.0}) starts.push_back({a});
            const double m2 = m.var + m.mean * m.mean;
            if (m2 > 0.0) starts.push_back({1.0 / m2});
            break;
        }
    }
    if (starts.empty()) starts.push_back(std::vector<double>(model_param_count(model), 1.0));
    return starts;
}

FitResult fit(const Histogram& hist, FitModel model) {
    const auto& info = model_info(model);
    const int k = static_cast<int>(info.names.size());
    if (hist.bins() < k + 2)
        throw std::invalid_argument("fit: histogram needs at least params + 2 bins");
    for (double d : hist.density)
        if (!std::isfinite(d)) throw std::invalid_argument("fit: non-finite density");

    const LMProblem prob{hist, model};
    LMOutcome best;
    std::vector<double> best_external;

    for (const auto& start : init_guess(hist, model)) {
        std::vector<double> t(k);
        bool ok = true;
        for (int j = 0; j < k; ++j) {
            const double v = start[j];
            if (info.transforms[j] == Transform::Log && !(v > 0.0)) ok = false;
            if (info.transforms[j] == Transform::Logit01 && !(v > 0.0 && v < 1.0)) ok = false;
            if (!ok) break;
            t[j] = to_internal(v, info.transforms[j]);
        }
        if (!ok) continue;
        LMOutcome out = levenberg_marquardt(prob, std::move(t));
        const auto ext = externalize(out.t_params, model);
        const bool better =
            out.objective < best.objective ||
            (out.objective == best.objective && ext < best_external);
        if (better) {
            best = std::move(out);
            best_external = ext;
        }
    }

    FitResult res;
    res.model = model;
    res.param_names = model_param_names(model);
    res.params = best_external;
    res.sse = best.objective;
    res.n_bins = hist.bins();
    res.converged = best.converged;

    const auto params = res.params;
    Goodness g = goodness(hist, [model, params](double s) {
        return eval_model(model, params, s);
    });
    res.sup_norm = g.sup_norm;
    res.chi2 = g.chi2;
    return res;
}

Goodness goodness(const Histogram& hist, const std::function<double(double)>& curve) {
    Goodness g;
    std::vector<double> expected(hist.bins());
    for (int i = 0; i < hist.bins(); ++i) {
        const double f = curve(hist.bin_center(i));
        const double r = hist.density[i] - f;
        g.sse += r * r;
        g.sup_norm = std::max(g.sup_norm, std::fabs(r));
        expected[i] = std::max(f, 0.0) * hist.bin_width(i) * static_cast<double>(hist.n_samples);
    }
    // Pearson chi^2 with adjacent bins merged until each group expects >= 5
    double chi2 = 0.0;
    double obs_acc = 0.0, exp_acc = 0.0;
    double last_obs = 0.0, last_exp = 0.0;
    bool have_group = false;
    for (int i = 0; i < hist.bins(); ++i) {
        obs_acc += static_cast<double>(hist.counts[i]);
        exp_acc += expected[i];
        if (exp_acc >= 5.0) {
            chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
            last_obs = obs_acc;
            last_exp = exp_acc;
            have_group = true;
            obs_acc = exp_acc = 0.0;
        }
    }
    if (obs_acc > 0.0 || exp_acc > 0.0) {
        if (have_group) {
            // fold the short tail into the previous group
            chi2 -= (last_obs - last_exp) * (last_obs - last_exp) / last_exp;
            const double o = last_obs + obs_acc;
            const double e = last_exp + exp_acc;
            if (e > 0.0) chi2 += (o - e) * (o - e) / e;
        } else if (exp_acc > 0.0) {
            chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
        }
    }
    g.chi2 = chi2;
    return g;
}

}  // namespace rmt
