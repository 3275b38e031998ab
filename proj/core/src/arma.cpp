#include "cyclecast/arma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cyclecast/spectral.hpp"

namespace cyclecast {

namespace {

// GSL aborts on numerical errors by default; optimizer failures are handled
// through status codes here.
[[maybe_unused]] const gsl_error_handler_t* kGslHandlerOff =
    gsl_set_error_handler_off();

constexpr double kBadObjective = 1e10;

// ---- stationarity parameterization -----------------------------------
//
// Coefficients c of a stationary polynomial 1 - sum c_j z^j correspond
// one-to-one with partial autocorrelations in (-1, 1), which in turn map to
// unconstrained reals through tanh. The optimizer works in the unconstrained
// space, so every candidate model is stationary and invertible by
// construction.

std::vector<double> coef_from_pacf(std::span<const double> r) {
    std::size_t m = r.size();
    std::vector<double> c(m, 0.0), prev(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        c[k] = r[k];
        for (std::size_t j = 0; j < k; ++j) c[j] = prev[j] - r[k] * prev[k - 1 - j];
        std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k + 1), prev.begin());
    }
    return c;
}

std::optional<std::vector<double>> pacf_from_coef(std::span<const double> c) {
    std::vector<double> work(c.begin(), c.end());
    std::size_t m = c.size();
    std::vector<double> r(m, 0.0);
    for (std::size_t k = m; k-- > 0;) {
        double rk = work[k];
        if (!(std::abs(rk) < 1.0)) return std::nullopt;
        r[k] = rk;
        if (k == 0) break;
        std::vector<double> lower(k, 0.0);
        double d = 1.0 - rk * rk;
        for (std::size_t j = 0; j < k; ++j) lower[j] = (work[j] + rk * work[k - 1 - j]) / d;
        std::copy(lower.begin(), lower.end(), work.begin());
    }
    return r;
}

struct Coefs {
    std::vector<double> phi;
    std::vector<double> theta;
};

Coefs coefs_from_unconstrained(std::span<const double> z, std::size_t p, std::size_t q) {
    std::vector<double> r_ar(p), r_ma(q);
    for (std::size_t i = 0; i < p; ++i) r_ar[i] = std::tanh(z[i]);
    for (std::size_t i = 0; i < q; ++i) r_ma[i] = std::tanh(z[p + i]);
    Coefs c;
    c.phi = coef_from_pacf(r_ar);
    c.theta = coef_from_pacf(r_ma);
    for (double& t : c.theta) t = -t;  // 1 + sum theta z^j invertible
    return c;
}

std::optional<std::vector<double>> unconstrained_from_coefs(std::span<const double> phi,
                                                            std::span<const double> theta) {
    auto r_ar = pacf_from_coef(phi);
    std::vector<double> neg_theta(theta.begin(), theta.end());
    for (double& t : neg_theta) t = -t;
    auto r_ma = pacf_from_coef(neg_theta);
    if (!r_ar || !r_ma) return std::nullopt;
    std::vector<double> z;
    z.reserve(phi.size() + theta.size());
    for (double r : *r_ar) z.push_back(std::atanh(r));
    for (double r : *r_ma) z.push_back(std::atanh(r));
    return z;
}

// ---- state-space innovations filter -----------------------------------

struct KalmanState {
    Eigen::VectorXd a;
    Eigen::MatrixXd P;
};

struct ArmaFilter {
    Eigen::MatrixXd T;
    Eigen::VectorXd R;
    Eigen::MatrixXd RRt;
    std::size_t r = 0;

    ArmaFilter(std::span<const double> phi, std::span<const double> theta) {
        std::size_t p = phi.size(), q = theta.size();
        r = std::max(p, q + 1);
        T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        for (std::size_t i = 0; i < p; ++i) T(static_cast<Eigen::Index>(i), 0) = phi[i];
        for (std::size_t i = 0; i + 1 < r; ++i)
            T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
        R = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r));
        R(0) = 1.0;
        for (std::size_t i = 0; i < q; ++i) R(static_cast<Eigen::Index>(i + 1)) = theta[i];
        RRt = R * R.transpose();
    }

    // Stationary state covariance: P = T P T' + R R' (unit innovation
    // variance), solved by vectorization.
    KalmanState initial_state() const {
        Eigen::Index m = static_cast<Eigen::Index>(r);
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(m * m, m * m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                for (Eigen::Index k = 0; k < m; ++k)
                    for (Eigen::Index l = 0; l < m; ++l)
                        M(j * m + i, l * m + k) -= T(i, k) * T(j, l);
        Eigen::VectorXd rhs(m * m);
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < m; ++i) rhs(j * m + i) = RRt(i, j);
        Eigen::VectorXd v = M.partialPivLu().solve(rhs);
        KalmanState s;
        s.a = Eigen::VectorXd::Zero(m);
        s.P.resize(m, m);
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < m; ++i) s.P(i, j) = v(j * m + i);
        s.P = 0.5 * (s.P + s.P.transpose().eval());
        return s;
    }

    // One filter step: returns the one-step prediction (prior mean of x_t)
    // and advances the state past the observation. F is the prior variance
    // (unit-sigma2 scale). Returns false on a non-positive prior variance.
    bool step(KalmanState& s, double x, double& pred, double& F) const {
        pred = s.a(0);
        F = s.P(0, 0);
        if (!(F > 0) || !std::isfinite(F)) return false;
        double v = x - pred;
        Eigen::VectorXd K = s.P.col(0) / F;
        Eigen::VectorXd a_upd = s.a + K * v;
        Eigen::MatrixXd P_upd = s.P - K * s.P.row(0);
        s.a = T * a_upd;
        s.P = T * P_upd * T.transpose() + RRt;
        s.P = 0.5 * (s.P + s.P.transpose().eval());
        return true;
    }

    // Advance one step with no observation (pure prediction).
    void predict_only(KalmanState& s) const {
        s.a = T * s.a;
        s.P = T * s.P * T.transpose() + RRt;
    }
};

struct FilterRun {
    double loglik = -std::numeric_limits<double>::infinity();
    double sigma2 = 0;
    bool ok = false;
    std::vector<double> predictions;  // unconditional-scale one-step predictions
    KalmanState final_state;          // prior state for t = n+1
    ArmaFilter filter{std::span<const double>{}, std::span<const double>{}};
};

FilterRun run_filter(std::span<const double> x, std::span<const double> phi,
                     std::span<const double> theta, bool keep_predictions) {
    FilterRun out;
    out.filter = ArmaFilter(phi, theta);
    KalmanState s = out.filter.initial_state();
    if (!s.P.allFinite()) return out;
    std::size_t n = x.size();
    double ssq = 0, sumlogF = 0;
    if (keep_predictions) out.predictions.reserve(n);

    // Once the prior variance F converges the gain is constant and the
    // covariance recursion can be frozen; only the state mean needs
    // propagating, which makes long-series likelihoods cheap.
    bool steady = false;
    double steady_F = 0, steady_logF = 0;
    Eigen::VectorXd steady_K;
    Eigen::MatrixXd steady_P;
    double prev_F = -1;
    for (std::size_t t = 0; t < n; ++t) {
        double pred = 0, F = 0;
        if (steady) {
            pred = s.a(0);
            F = steady_F;
            double v = x[t] - pred;
            s.a = out.filter.T * (s.a + steady_K * v);
            ssq += v * v / F;
            sumlogF += steady_logF;
        } else {
            double F_prior = s.P(0, 0);
            Eigen::VectorXd K_prior = s.P.col(0) / F_prior;
            Eigen::MatrixXd P_prior = s.P;
            if (!out.filter.step(s, x[t], pred, F)) return out;
            double v = x[t] - pred;
            ssq += v * v / F;
            sumlogF += std::log(F);
            if (prev_F >= 0 && std::abs(F - prev_F) < 1e-12 * F) {
                steady = true;
                steady_F = F;
                steady_logF = std::log(F);
                steady_K = K_prior;
                steady_P = P_prior;
            }
            prev_F = F;
        }
        if (keep_predictions) out.predictions.push_back(pred);
    }
    if (steady) s.P = steady_P;  // prior covariance for t = n+1
    double nn = static_cast<double>(n);
    out.sigma2 = ssq / nn;
    if (!(out.sigma2 > 0) || !std::isfinite(out.sigma2)) return out;
    out.loglik = -0.5 * nn * (std::log(2.0 * std::numbers::pi) + 1.0 + std::log(out.sigma2)) -
                 0.5 * sumlogF;
    out.final_state = std::move(s);
    out.ok = std::isfinite(out.loglik);
    return out;
}

// ---- objective + GSL glue ----------------------------------------------

// Conditional sum of squares: innovations recursed with zero pre-sample
// values. Much cheaper than the exact likelihood; used as an optimizer warm
// start only.
double css_negloglik(std::span<const double> x, std::span<const double> phi,
                     std::span<const double> theta) {
    std::size_t n = x.size();
    std::vector<double> eps(n, 0.0);
    double ssq = 0;
    for (std::size_t t = 0; t < n; ++t) {
        double pred = 0;
        for (std::size_t i = 0; i < phi.size() && i < t; ++i) pred += phi[i] * x[t - 1 - i];
        for (std::size_t j = 0; j < theta.size() && j < t; ++j) pred += theta[j] * eps[t - 1 - j];
        eps[t] = x[t] - pred;
        ssq += eps[t] * eps[t];
    }
    double sigma2 = ssq / static_cast<double>(n);
    if (!(sigma2 > 0) || !std::isfinite(sigma2)) return kBadObjective;
    return 0.5 * static_cast<double>(n) *
           (std::log(2.0 * std::numbers::pi) + 1.0 + std::log(sigma2));
}

struct Objective {
    std::span<const double> x;
    std::size_t p, q;
    bool css = false;

    double operator()(std::span<const double> z) const {
        Coefs c = coefs_from_unconstrained(z, p, q);
        if (css) return css_negloglik(x, c.phi, c.theta);
        FilterRun run = run_filter(x, c.phi, c.theta, false);
        if (!run.ok) return kBadObjective;
        return -run.loglik;
    }
};

double gsl_f(const gsl_vector* v, void* params) {
    const auto& obj = *static_cast<const Objective*>(params);
    return obj(std::span<const double>(v->data, v->size));
}

void gsl_df(const gsl_vector* v, void* params, gsl_vector* g) {
    const auto& obj = *static_cast<const Objective*>(params);
    std::vector<double> z(v->data, v->data + v->size);
    for (std::size_t i = 0; i < z.size(); ++i) {
        double h = 1e-6 * std::max(1.0, std::abs(z[i]));
        double orig = z[i];
        z[i] = orig + h;
        double fp = obj(z);
        z[i] = orig - h;
        double fm = obj(z);
        z[i] = orig;
        gsl_vector_set(g, i, (fp - fm) / (2.0 * h));
    }
}

void gsl_fdf(const gsl_vector* v, void* params, double* f, gsl_vector* g) {
    *f = gsl_f(v, params);
    gsl_df(v, params, g);
}

struct OptimResult {
    std::vector<double> z;
    double value = kBadObjective;
    bool converged = false;
};

OptimResult minimize_bfgs(const Objective& obj, std::span<const double> z0,
                          std::size_t max_iter) {
    std::size_t dim = z0.size();
    gsl_multimin_function_fdf fdf;
    fdf.n = dim;
    fdf.f = &gsl_f;
    fdf.df = &gsl_df;
    fdf.fdf = &gsl_fdf;
    fdf.params = const_cast<Objective*>(&obj);

    gsl_vector* z = gsl_vector_alloc(dim);
    for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(z, i, z0[i]);
    gsl_multimin_fdfminimizer* m =
        gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, dim);
    gsl_multimin_fdfminimizer_set(m, &fdf, z, 0.1, 0.1);

    OptimResult out;
    out.z.assign(z0.begin(), z0.end());
    out.value = obj(z0);
    for (std::size_t it = 0; it < max_iter; ++it) {
        int status = gsl_multimin_fdfminimizer_iterate(m);
        if (m->f < out.value) {
            out.value = m->f;
            for (std::size_t i = 0; i < dim; ++i) out.z[i] = gsl_vector_get(m->x, i);
        }
        if (status) {
            // No further progress possible; an optimum (possibly on a flat
            // ridge) was reached rather than the iteration cap.
            out.converged = out.value < kBadObjective;
            break;
        }
        if (gsl_multimin_test_gradient(m->gradient, 1e-3) == GSL_SUCCESS) {
            out.converged = true;
            break;
        }
    }
    gsl_multimin_fdfminimizer_free(m);
    gsl_vector_free(z);
    return out;
}

OptimResult minimize_simplex(const Objective& obj, std::span<const double> z0,
                             std::size_t max_iter, double step) {
    std::size_t dim = z0.size();
    gsl_multimin_function f;
    f.n = dim;
    f.f = &gsl_f;
    f.params = const_cast<Objective*>(&obj);

    gsl_vector* z = gsl_vector_alloc(dim);
    gsl_vector* st = gsl_vector_alloc(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        gsl_vector_set(z, i, z0[i]);
        gsl_vector_set(st, i, step);
    }
    gsl_multimin_fminimizer* m =
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_multimin_fminimizer_set(m, &f, z, st);

    OptimResult out;
    out.z.assign(z0.begin(), z0.end());
    out.value = obj(z0);
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (gsl_multimin_fminimizer_iterate(m)) break;
        if (m->fval < out.value) {
            out.value = m->fval;
            for (std::size_t i = 0; i < dim; ++i) out.z[i] = gsl_vector_get(m->x, i);
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-7) == GSL_SUCCESS) {
            out.converged = true;
            break;
        }
    }
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(z);
    gsl_vector_free(st);
    return out;
}

// ---- two-stage long-AR initialization ----------------------------------

std::vector<double> hannan_rissanen_start(std::span<const double> x, std::size_t p,
                                          std::size_t q) {
    std::size_t n = x.size();
    std::size_t dim = p + q;
    std::vector<double> zeros(dim, 0.0);
    if (q == 0) {
        // Direct Yule-Walker AR fit is already a good start.
        try {
            YuleWalkerFit yw = yule_walker(x, p);
            if (auto z = unconstrained_from_coefs(yw.phi, {})) return *z;
        } catch (const std::exception&) {
        }
        return zeros;
    }

    std::size_t m = std::min(n / 4, std::max(p + q,
                                             static_cast<std::size_t>(std::lround(
                                                 10.0 * std::log10(static_cast<double>(n))))));
    if (m == 0 || n <= m + std::max(p, q) + 2) return zeros;

    std::vector<double> phi_long;
    try {
        phi_long = yule_walker(x, m).phi;
    } catch (const std::exception&) {
        return zeros;
    }
    std::vector<double> eps(n, 0.0);
    for (std::size_t t = m; t < n; ++t) {
        double pred = 0;
        for (std::size_t i = 0; i < m; ++i) pred += phi_long[i] * x[t - 1 - i];
        eps[t] = x[t] - pred;
    }

    std::size_t t0 = m + std::max(p, q);
    std::size_t rows = n - t0;
    if (rows <= dim) return zeros;
    Eigen::MatrixXd X(rows, dim);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t t = t0 + r;
        y(static_cast<Eigen::Index>(r)) = x[t];
        for (std::size_t i = 0; i < p; ++i)
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = x[t - 1 - i];
        for (std::size_t j = 0; j < q; ++j)
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p + j)) = eps[t - 1 - j];
    }
    Eigen::VectorXd beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    std::vector<double> phi(p), theta(q);
    for (std::size_t i = 0; i < p; ++i) phi[i] = beta(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < q; ++j) theta[j] = beta(static_cast<Eigen::Index>(p + j));

    // Shrink toward zero until inside the stationary/invertible region.
    for (int attempt = 0; attempt < 60; ++attempt) {
        if (auto z = unconstrained_from_coefs(phi, theta)) {
            for (double& v : *z) v = std::clamp(v, -4.0, 4.0);
            return *z;
        }
        for (double& v : phi) v *= 0.9;
        for (double& v : theta) v *= 0.9;
    }
    return zeros;
}

}  // namespace

bool is_stationary(std::span<const double> coeffs) {
    return pacf_from_coef(coeffs).has_value();
}

LikelihoodResult arma_loglik(std::span<const double> x, std::span<const double> phi,
                             std::span<const double> theta) {
    FilterRun run = run_filter(x, phi, theta, false);
    if (!run.ok) throw std::runtime_error("likelihood evaluation failed (non-finite filter)");
    return {run.loglik, run.sigma2};
}

ArmaModel fit_arma(std::span<const double> x, ArmaSpec spec, const FitOptions& opts) {
    std::size_t p = spec.p, q = spec.q, n = x.size();
    if (p + q == 0) throw std::invalid_argument("ARMA spec must have p + q >= 1");
    if (n <= p + q + 1) throw std::invalid_argument("series too short for this ARMA order");

    Objective obj{x, p, q};
    std::vector<double> z0 = hannan_rissanen_start(x, p, q);

    OptimResult best;
    std::size_t restarts_used = 0;
    for (std::size_t attempt = 0; attempt <= opts.max_restarts; ++attempt) {
        std::vector<double> start = z0;
        if (attempt > 0) {
            std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(p),
                              static_cast<std::uint64_t>(q),
                              static_cast<std::uint64_t>(attempt)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> jitter(0.0, 0.3);
            for (double& v : start) v += jitter(rng);
            restarts_used = attempt;
        }
        if (obj(start) >= kBadObjective) continue;

        // cheap CSS pass first, exact likelihood from there
        Objective css = obj;
        css.css = true;
        OptimResult warm = minimize_bfgs(css, start, opts.max_iterations);
        OptimResult r = minimize_bfgs(obj, warm.z, opts.max_iterations);
        if (!r.converged) {
            OptimResult polished = minimize_simplex(obj, r.z, 100 * (p + q), 0.02);
            if (polished.value <= r.value) {
                polished.converged = polished.converged || r.converged;
                r = polished;
            }
        }
        if (r.value < best.value) best = r;
        if (best.converged && best.value < kBadObjective) break;
    }
    if (best.value >= kBadObjective)
        throw std::runtime_error("ARMA likelihood non-finite at every start (p=" +
                                 std::to_string(p) + ", q=" + std::to_string(q) + ")");

    Coefs c = coefs_from_unconstrained(best.z, p, q);
    FilterRun run = run_filter(x, c.phi, c.theta, false);
    ArmaModel m;
    m.spec = spec;
    m.phi = std::move(c.phi);
    m.theta = std::move(c.theta);
    m.sigma2 = run.sigma2;
    m.loglik = run.loglik;
    m.n = n;
    m.converged = best.converged;
    m.restarts_used = restarts_used;
    return m;
}

ArmaModel fit_arma(const ResidualSeries& x, ArmaSpec spec, const FitOptions& opts) {
    return fit_arma(std::span<const double>(x.values), spec, opts);
}

InformationCriteria information_criteria(const ArmaModel& m) {
    if (!m.converged) throw std::invalid_argument("information criteria need a converged model");
    double k = static_cast<double>(m.spec.p + m.spec.q + 1);
    double nn = static_cast<double>(m.n);
    InformationCriteria ic;
    ic.aic_n = (2.0 * k - 2.0 * m.loglik) / nn;
    ic.bic_n = (k * std::log(nn) - 2.0 * m.loglik) / nn;
    ic.hmean_n = 2.0 * ic.aic_n * ic.bic_n / (ic.aic_n + ic.bic_n);
    return ic;
}

const GridCell& GridResult::at(std::size_t p, std::size_t q) const {
    if (p < 1 || p > p_max || q < 1 || q > q_max)
        throw std::out_of_range("grid cell out of range");
    return cells[(p - 1) * q_max + (q - 1)];
}

GridResult grid_search(const ResidualSeries& x, std::size_t p_max, std::size_t q_max,
                       const FitOptions& opts) {
    if (p_max < 1 || q_max < 1) throw std::invalid_argument("grid bounds must be >= 1");
    GridResult out;
    out.p_max = p_max;
    out.q_max = q_max;
    out.cells.resize(p_max * q_max);
    for (std::size_t p = 1; p <= p_max; ++p) {
        for (std::size_t q = 1; q <= q_max; ++q) {
            GridCell& cell = out.cells[(p - 1) * q_max + (q - 1)];
            cell.spec = {p, q};
            try {
                ArmaModel m = fit_arma(x, cell.spec, opts);
                if (!m.converged) {
                    cell.failure = "optimizer hit iteration cap";
                    continue;
                }
                cell.criteria = information_criteria(m);
                cell.loglik = m.loglik;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.failure = e.what();
            }
        }
    }
    double best_aic = std::numeric_limits<double>::infinity();
    double best_hm = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& cell : out.cells) {
        if (!cell.ok) continue;
        any = true;
        if (cell.criteria.aic_n < best_aic) {
            best_aic = cell.criteria.aic_n;
            out.best_by_aic = cell.spec;
        }
        if (cell.criteria.hmean_n < best_hm) {
            best_hm = cell.criteria.hmean_n;
            out.best_by_hmean = cell.spec;
        }
    }
    if (!any) throw std::runtime_error("every grid cell failed to fit");
    return out;
}

std::vector<double> predict_in_sample(const ArmaModel& m, const ResidualSeries& x) {
    FilterRun run = run_filter(x.values, m.phi, m.theta, true);
    if (!run.ok) throw std::runtime_error("filter failed on in-sample prediction");
    return run.predictions;
}

std::vector<double> forecast_rolling(const ArmaModel& m, const ResidualSeries& train,
                                     std::span<const double> test) {
    FilterRun run = run_filter(train.values, m.phi, m.theta, false);
    if (!run.ok) throw std::runtime_error("filter failed on training data");
    KalmanState s = run.final_state;
    std::vector<double> preds;
    preds.reserve(test.size());
    for (double obs : test) {
        double pred = 0, F = 0;
        if (!run.filter.step(s, obs, pred, F))
            throw std::runtime_error("filter failed during rolling forecast");
        preds.push_back(pred);
    }
    return preds;
}

std::vector<double> forecast_multistep(const ArmaModel& m, const ResidualSeries& train,
                                       std::size_t horizon) {
    FilterRun run = run_filter(train.values, m.phi, m.theta, false);
    if (!run.ok) throw std::runtime_error("filter failed on training data");
    KalmanState s = run.final_state;
    std::vector<double> preds;
    preds.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        preds.push_back(s.a(0));
        run.filter.predict_only(s);
    }
    return preds;
}

LevelAdjustment optimize_level_shift(std::span<const double> pred,
                                     std::span<const double> actual) {
    if (pred.size() != actual.size() || pred.empty())
        throw std::invalid_argument("prediction/actual length mismatch");
    double nn = static_cast<double>(pred.size());
    double sum_err = 0, ssq = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double e = actual[i] - pred[i];
        sum_err += e;
        ssq += e * e;
    }
    LevelAdjustment adj;
    adj.constant = sum_err / nn;
    adj.rmse_before = std::sqrt(ssq / nn);
    double ssq_after = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double e = actual[i] - (pred[i] + adj.constant);
        ssq_after += e * e;
    }
    adj.rmse_after = std::sqrt(ssq_after / nn);
    return adj;
}

std::vector<double> simulate_arma(std::span<const double> phi, std::span<const double> theta,
                                  double sigma2, std::size_t n, std::uint64_t seed,
                                  std::size_t burn_in) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    std::size_t total = n + burn_in;
    std::vector<double> eps(total), x(total, 0.0);
    for (double& e : eps) e = noise(rng);
    for (std::size_t t = 0; t < total; ++t) {
        double v = eps[t];
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (t > i) v += phi[i] * x[t - 1 - i];
        for (std::size_t j = 0; j < theta.size(); ++j)
            if (t > j) v += theta[j] * eps[t - 1 - j];
        x[t] = v;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

}  // namespace cyclecast
