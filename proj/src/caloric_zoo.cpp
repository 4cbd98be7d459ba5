#include "caloric/caloric_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/ids.hpp"
#include "caloric/numeric.hpp"
#include "caloric/polynomial.hpp"

namespace caloric {

using cplx = std::complex<double>;

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

// int e^{z x} p(x) e^{-x^2/(2 sigma^2)} dx
cplx gauss_transform(const std::vector<double>& c, double sigma, cplx z) {
    const double s2 = sigma * sigma;
    return sigma * kSqrt2Pi * std::exp(z * z * s2 / 2.0) * poly::expectation<cplx>(c, z * s2, s2);
}

// int sign(x) p(x) e^{-x^2/(2 sigma^2)} dx
double sign_transform(const std::vector<double>& c, double sigma) {
    double total = 0.0;
    for (std::size_t m = 1; m < c.size(); m += 2) {
        const double md = static_cast<double>(m);
        total += 2.0 * c[m] * std::pow(sigma, md + 1.0) * std::pow(2.0, (md - 1.0) / 2.0) * std::tgamma((md + 1.0) / 2.0);
    }
    return total;
}

// product of the full-line Gaussian integrals over axes >= first
double other_axes(const SchwartzProbe& phi, int first) {
    double v = 1.0;
    for (int a = first; a < phi.dim(); ++a) v *= gauss_transform(phi.axis_coefficients()[a], phi.sigma(), 0.0).real();
    return v;
}

std::vector<double> shifted(const std::vector<double>& c, int k) {
    std::vector<double> out(static_cast<std::size_t>(k), 0.0);
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

double heat_kernel(int dim, double t, const Point& y) {
    const double r2 = y[0] * y[0] + (dim == 2 ? y[1] * y[1] : 0.0);
    return std::exp(-r2 / (4.0 * t)) / std::pow(4.0 * std::numbers::pi * t, dim / 2.0);
}

double dot(int dim, const Point& a, const Point& b) { return a[0] * b[0] + (dim == 2 ? a[1] * b[1] : 0.0); }

// coefficients m!/((m-2j)! j!) of v_m
std::vector<double> caloric_poly_coeffs(int m) {
    std::vector<double> c;
    for (int j = 0; 2 * j <= m; ++j) {
        double v = 1.0;
        for (int i = m - 2 * j + 1; i <= m; ++i) v *= i;
        for (int i = 2; i <= j; ++i) v /= i;
        c.push_back(v);
    }
    return c;
}

double caloric_poly_value(int m, double t, double x) {
    if (m < 0) return 0.0;
    const auto c = caloric_poly_coeffs(m);
    double v = 0.0;
    for (int j = 0; j < static_cast<int>(c.size()); ++j) v += c[j] * std::pow(x, m - 2 * j) * std::pow(t, j);
    return v;
}

}  // namespace

// ------------------------------------------------------------ Tychonoff

std::vector<double> flat_derivatives(double t, int K) {
    require(t > 0.0, ErrorKind::Argument, "flat derivatives need t > 0");
    std::vector<double> out(static_cast<std::size_t>(K));
    const double r = 0.8 * t;
    for (int k = 0; k < K; ++k) {
        const int N = std::max(256, 16 * k);
        cplx acc = 0.0;
        for (int m = 0; m < N; ++m) {
            const double th = 2.0 * std::numbers::pi * m / N;
            const cplx z = t + r * std::polar(1.0, th);
            acc += std::exp(-1.0 / z) * std::polar(1.0, -k * th);
        }
        double scale = 1.0 / N;
        for (int j = 1; j <= k; ++j) scale *= j / r;
        out[static_cast<std::size_t>(k)] = scale * acc.real();
    }
    return out;
}

TychonoffSeries::TychonoffSeries(int K) : K_(K) {
    require(K >= 1, ErrorKind::Argument, "series needs K >= 1");
}

const std::vector<double>& TychonoffSeries::coefficients(double t) const {
    {
        std::lock_guard lock(mutex_);
        const auto it = cache_.find(t);
        if (it != cache_.end()) return *it->second;
    }
    auto fresh = std::make_shared<const std::vector<double>>(flat_derivatives(t, K_));
    std::lock_guard lock(mutex_);
    if (cache_.size() > 4096) cache_.clear();
    return *cache_.emplace(t, std::move(fresh)).first->second;
}

TychonoffSeries::Value TychonoffSeries::evaluate(double t, double x) const {
    const auto& f = coefficients(t);
    CompensatedSum sum;
    double p = 1.0;  // x^{2k}/(2k)!
    double last = 0.0;
    for (int k = 0; k < K_; ++k) {
        if (k > 0) p *= x * x / ((2.0 * k - 1.0) * (2.0 * k));
        last = f[k] * p;
        sum += last;
    }
    const double v = sum.value();
    return {v, std::abs(last) > 1e-12 * std::abs(v)};
}

TychonoffSeries::Value TychonoffSeries::derivative_x(double t, double x) const {
    const auto& f = coefficients(t);
    CompensatedSum sum;
    double q = x;  // x^{2k-1}/(2k-1)!
    double last = 0.0;
    for (int k = 1; k < K_; ++k) {
        if (k > 1) q *= x * x / ((2.0 * k - 2.0) * (2.0 * k - 1.0));
        last = f[k] * q;
        sum += last;
    }
    const double v = sum.value();
    return {v, std::abs(last) > 1e-12 * std::abs(v)};
}

TychonoffSeries::Value tychonoff_eval(double t, double x, int K) {
    coverage::mark("tychonoff_eval");
    require(K >= 1, ErrorKind::Argument, "tychonoff_eval needs K >= 1");
    require(t > 0.0 && t <= 1.0, ErrorKind::Argument, "tychonoff_eval needs t in (0, 1]");
    return TychonoffSeries(K).evaluate(t, x);
}

// ------------------------------------------------------ AnalyticSolution

AnalyticSolution::AnalyticSolution(SolutionKind kind, int dim) : kind_(kind), dim_(dim) {
    require(dim == 1 || dim == 2, ErrorKind::Argument, "solution dimension must be 1 or 2");
}

AnalyticSolution AnalyticSolution::gaussian_kernel(int dim, double t0, Point x0) {
    require(t0 >= 0.0, ErrorKind::Argument, "gaussian_kernel needs t0 >= 0");
    AnalyticSolution s(SolutionKind::gaussian_kernel, dim);
    s.t0_ = t0;
    s.x0_ = x0;
    return s;
}

AnalyticSolution AnalyticSolution::caloric_polynomial(int dim, int m) {
    require(m >= 0, ErrorKind::Argument, "caloric_polynomial needs m >= 0");
    AnalyticSolution s(SolutionKind::caloric_polynomial, dim);
    s.m_ = m;
    return s;
}

AnalyticSolution AnalyticSolution::exponential(int dim, Point mu) {
    AnalyticSolution s(SolutionKind::exponential, dim);
    s.vec_ = mu;
    if (dim == 1) s.vec_[1] = 0.0;
    return s;
}

AnalyticSolution AnalyticSolution::eigenmode(int dim, Point omega) {
    AnalyticSolution s(SolutionKind::eigenmode, dim);
    s.vec_ = omega;
    if (dim == 1) s.vec_[1] = 0.0;
    return s;
}

AnalyticSolution AnalyticSolution::erf_front(int dim) { return AnalyticSolution(SolutionKind::erf_front, dim); }

AnalyticSolution AnalyticSolution::tychonoff(int dim, int K) {
    AnalyticSolution s(SolutionKind::tychonoff, dim);
    s.m_ = K;
    s.series_ = std::make_shared<TychonoffSeries>(K);
    return s;
}

AnalyticSolution AnalyticSolution::parse(const std::string& text, int dim) {
    const auto id = ParsedId::parse(text);
    if (id.name == "gaussian_kernel") {
        id.only({"t0", "x0"});
        return gaussian_kernel(dim, id.number("t0", 1.0), id.point("x0", {0.0, 0.0}));
    }
    if (id.name == "caloric_polynomial") {
        id.only({"m"});
        return caloric_polynomial(dim, id.integer("m", 2));
    }
    if (id.name == "exponential") {
        id.only({"mu"});
        auto mu = id.list("mu");
        if (mu.empty()) mu = {1.0};
        mu.resize(2, 0.0);
        return exponential(dim, {mu[0], mu[1]});
    }
    if (id.name == "eigenmode") {
        id.only({"omega"});
        auto w = id.list("omega");
        if (w.empty()) w = {1.0};
        w.resize(2, 0.0);
        return eigenmode(dim, {w[0], w[1]});
    }
    if (id.name == "erf_front") {
        id.only({});
        return erf_front(dim);
    }
    if (id.name == "tychonoff") {
        id.only({"K"});
        return tychonoff(dim, id.integer("K", 40));
    }
    throw Error(ErrorKind::Argument, "unknown solution '" + id.name +
                                         "' (expected gaussian_kernel, caloric_polynomial, exponential, eigenmode, "
                                         "erf_front or tychonoff)");
}

std::string AnalyticSolution::id() const {
    auto vec = [&](const Point& p) {
        return format_number(p[0]) + (dim_ == 2 ? ";" + format_number(p[1]) : std::string());
    };
    switch (kind_) {
        case SolutionKind::gaussian_kernel: return "gaussian_kernel:t0=" + format_number(t0_) + ",x0=" + vec(x0_);
        case SolutionKind::caloric_polynomial: return "caloric_polynomial:m=" + std::to_string(m_);
        case SolutionKind::exponential: return "exponential:mu=" + vec(vec_);
        case SolutionKind::eigenmode: return "eigenmode:omega=" + vec(vec_);
        case SolutionKind::erf_front: return "erf_front";
        case SolutionKind::tychonoff: return "tychonoff:K=" + std::to_string(m_);
    }
    return {};
}

void AnalyticSolution::check_time(double t) const {
    require(t > 0.0, ErrorKind::Argument, "solution time must be positive");
    require(kind_ != SolutionKind::tychonoff || t <= 1.0, ErrorKind::Argument,
            "tychonoff is defined for t in (0, 1]");
}

double AnalyticSolution::value(double t, const Point& x) const {
    switch (kind_) {
        case SolutionKind::gaussian_kernel: {
            const Point y{x[0] - x0_[0], x[1] - x0_[1]};
            return heat_kernel(dim_, t + t0_, y);
        }
        case SolutionKind::caloric_polynomial: return caloric_poly_value(m_, t, x[0]);
        case SolutionKind::exponential: return std::exp(dot(dim_, vec_, x) + dot(dim_, vec_, vec_) * t);
        case SolutionKind::eigenmode: return std::exp(-dot(dim_, vec_, vec_) * t) * std::sin(dot(dim_, vec_, x));
        case SolutionKind::erf_front: return std::erf(x[0] / std::sqrt(4.0 * t));
        case SolutionKind::tychonoff: return series_->evaluate(t, x[0]).value;
    }
    return 0.0;
}

Point AnalyticSolution::gradient(double t, const Point& x) const {
    switch (kind_) {
        case SolutionKind::gaussian_kernel: {
            const double T = t + t0_;
            const double g = value(t, x) / (2.0 * T);
            return {-(x[0] - x0_[0]) * g, dim_ == 2 ? -(x[1] - x0_[1]) * g : 0.0};
        }
        case SolutionKind::caloric_polynomial: return {m_ * caloric_poly_value(m_ - 1, t, x[0]), 0.0};
        case SolutionKind::exponential: {
            const double u = value(t, x);
            return {vec_[0] * u, vec_[1] * u};
        }
        case SolutionKind::eigenmode: {
            const double c = std::exp(-dot(dim_, vec_, vec_) * t) * std::cos(dot(dim_, vec_, x));
            return {vec_[0] * c, vec_[1] * c};
        }
        case SolutionKind::erf_front:
            return {std::exp(-x[0] * x[0] / (4.0 * t)) / std::sqrt(std::numbers::pi * t), 0.0};
        case SolutionKind::tychonoff: return {series_->derivative_x(t, x[0]).value, 0.0};
    }
    return {0.0, 0.0};
}

std::optional<double> AnalyticSolution::exact_pairing(double t, const SchwartzProbe& phi) const {
    require(phi.dim() == dim_, ErrorKind::Argument, "probe and solution dimensions differ");
    require(t >= 0.0, ErrorKind::Argument, "pairing time must be non-negative");
    const auto& c = phi.axis_coefficients();
    const double s = phi.sigma();
    switch (kind_) {
        case SolutionKind::gaussian_kernel: {
            const double T = t + t0_;
            return T == 0.0 ? phi.value(x0_) : phi.evolved(T, x0_);
        }
        case SolutionKind::caloric_polynomial: {
            const auto coef = caloric_poly_coeffs(m_);
            double v = 0.0;
            for (int j = 0; j < static_cast<int>(coef.size()); ++j) {
                v += coef[j] * std::pow(t, j) * gauss_transform(shifted(c[0], m_ - 2 * j), s, 0.0).real();
            }
            return v * other_axes(phi, 1);
        }
        case SolutionKind::exponential: {
            double v = std::exp(dot(dim_, vec_, vec_) * t);
            for (int a = 0; a < dim_; ++a) v *= gauss_transform(c[a], s, vec_[a]).real();
            return v;
        }
        case SolutionKind::eigenmode: {
            cplx v = 1.0;
            for (int a = 0; a < dim_; ++a) v *= gauss_transform(c[a], s, cplx(0.0, vec_[a]));
            return std::exp(-dot(dim_, vec_, vec_) * t) * v.imag();
        }
        case SolutionKind::erf_front: {
            const SchwartzProbe q = t == 0.0 ? phi : phi.evolved_probe(t);
            return sign_transform(q.axis_coefficients()[0], q.sigma()) * other_axes(q, 1);
        }
        case SolutionKind::tychonoff: return std::nullopt;
    }
    return std::nullopt;
}

double eval_solution(const AnalyticSolution& sol, double t, const Point& x) {
    coverage::mark("eval_solution");
    sol.check_time(t);
    return sol.value(t, x);
}

double heat_residual(const AnalyticSolution& sol, const ProbeRegion& region) {
    coverage::mark("heat_residual");
    require(region.order == 2 || region.order == 4, ErrorKind::Argument, "stencil order must be 2 or 4");
    require(region.nt >= 1 && region.nx >= 1 && region.step > 0.0, ErrorKind::Argument, "empty probe region");
    const double h = region.step;
    const double reach = region.order == 2 ? h : 2.0 * h;
    sol.check_time(region.t_lo - reach);
    sol.check_time(region.t_hi + reach);
    const int dim = sol.dim();
    const std::size_t npts = static_cast<std::size_t>(region.nx) * (dim == 2 ? region.nx : 1);
    const std::size_t total = npts * static_cast<std::size_t>(region.nt);
    auto lin = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
    std::vector<double> res(total);
    parallel_for(total, [&](std::size_t idx) {
        const int it = static_cast<int>(idx / npts);
        const std::size_t p = idx % npts;
        const double t = lin(region.t_lo, region.t_hi, region.nt, it);
        Point x{lin(region.x_lo, region.x_hi, region.nx, static_cast<int>(p % region.nx)), 0.0};
        if (dim == 2) x[1] = lin(region.x_lo, region.x_hi, region.nx, static_cast<int>(p / region.nx));
        auto u = [&](double tt, const Point& xx) { return sol.value(tt, xx); };
        double ut, lap = 0.0;
        const double u0 = u(t, x);
        if (region.order == 2) {
            ut = (u(t + h, x) - u(t - h, x)) / (2.0 * h);
        } else {
            ut = (-u(t + 2 * h, x) + 8 * u(t + h, x) - 8 * u(t - h, x) + u(t - 2 * h, x)) / (12.0 * h);
        }
        for (int a = 0; a < dim; ++a) {
            auto at = [&](double off) {
                Point y = x;
                y[a] += off;
                return u(t, y);
            };
            if (region.order == 2) {
                lap += (at(h) - 2.0 * u0 + at(-h)) / (h * h);
            } else {
                lap += (-at(2 * h) + 16 * at(h) - 30 * u0 + 16 * at(-h) - at(-2 * h)) / (12.0 * h * h);
            }
        }
        res[idx] = std::abs(ut - lap);
    });
    return *std::max_element(res.begin(), res.end());
}

SpaceTimeField sample_field(const AnalyticSolution& sol, const SpatialGrid& grid, const std::vector<double>& times) {
    require(sol.dim() == grid.dim(), ErrorKind::Argument, "solution and grid dimensions differ");
    for (double t : times) sol.check_time(t);
    return SpaceTimeField::from_function(grid, times, [&sol](double t, const Point& x) { return sol.value(t, x); },
                                         sol.id());
}

// ---------------------------------------------------------- InitialDatum

InitialDatum::InitialDatum(DatumKind kind, int dim) : kind_(kind), dim_(dim) {
    require(dim == 1 || dim == 2, ErrorKind::Argument, "datum dimension must be 1 or 2");
}

InitialDatum InitialDatum::schwartz(SchwartzProbe profile) {
    InitialDatum d(DatumKind::schwartz_gaussian_poly, profile.dim());
    d.profile_ = std::move(profile);
    return d;
}

InitialDatum InitialDatum::sign(int dim) { return InitialDatum(DatumKind::sign_function, dim); }

InitialDatum InitialDatum::dirac(int dim, Point x0) {
    InitialDatum d(DatumKind::dirac, dim);
    d.x0_ = x0;
    if (dim == 1) d.x0_[1] = 0.0;
    return d;
}

InitialDatum InitialDatum::oscillator(int dim, double omega, double amplitude) {
    require(omega > 0.0, ErrorKind::Argument, "oscillator frequency must be positive");
    InitialDatum d(DatumKind::bmo_inv_oscillator, dim);
    d.omega_ = omega;
    d.amplitude_ = amplitude;
    return d;
}

InitialDatum InitialDatum::parse(const std::string& text, int dim) {
    const auto id = ParsedId::parse(text);
    if (id.name == "schwartz") {
        return schwartz(SchwartzProbe::parse("probe" + text.substr(std::string("schwartz").size()), dim));
    }
    if (id.name == "sign") {
        id.only({});
        return sign(dim);
    }
    if (id.name == "dirac") {
        id.only({"x0"});
        return dirac(dim, id.point("x0", {0.0, 0.0}));
    }
    if (id.name == "oscillator") {
        id.only({"omega", "A"});
        return oscillator(dim, id.number("omega", 1.0), id.number("A", 1.0));
    }
    throw Error(ErrorKind::Argument,
                "unknown datum '" + id.name + "' (expected schwartz, sign, dirac or oscillator)");
}

std::string InitialDatum::id() const {
    switch (kind_) {
        case DatumKind::schwartz_gaussian_poly: {
            const auto& p = profile_->id();
            return "schwartz" + p.substr(p.find(':'));
        }
        case DatumKind::sign_function: return "sign";
        case DatumKind::dirac:
            return "dirac:x0=" + format_number(x0_[0]) + (dim_ == 2 ? ";" + format_number(x0_[1]) : std::string());
        case DatumKind::bmo_inv_oscillator:
            return "oscillator:omega=" + format_number(omega_) + ",A=" + format_number(amplitude_);
    }
    return {};
}

double InitialDatum::evolved(double t, const Point& x) const {
    require(t > 0.0, ErrorKind::Argument, "evolution time must be positive");
    switch (kind_) {
        case DatumKind::schwartz_gaussian_poly: return profile_->evolved(t, x);
        case DatumKind::sign_function: return std::erf(x[0] / std::sqrt(4.0 * t));
        case DatumKind::dirac: return heat_kernel(dim_, t, {x[0] - x0_[0], x[1] - x0_[1]});
        case DatumKind::bmo_inv_oscillator:
            return amplitude_ * std::exp(-omega_ * omega_ * t) * std::cos(omega_ * x[0]);
    }
    return 0.0;
}

Samples InitialDatum::sample(const SpatialGrid& grid) const {
    require(grid.dim() == dim_, ErrorKind::Argument, "datum and grid dimensions differ");
    switch (kind_) {
        case DatumKind::schwartz_gaussian_poly: return profile_->sample(grid);
        case DatumKind::sign_function:
            return caloric::sample(grid, [](const Point& x) { return x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0); });
        case DatumKind::dirac: {
            Samples s(grid.size(), 0.0);
            const auto n = static_cast<long>(grid.points_per_axis());
            auto node = [&](double c) {
                const long j = std::lround((c + grid.half_extent()) / grid.spacing());
                require(j >= 0 && j < n, ErrorKind::DomainTooSmall, "dirac location outside the grid");
                return static_cast<std::size_t>(j);
            };
            const std::size_t k = dim_ == 1 ? node(x0_[0]) : node(x0_[0]) * grid.points_per_axis() + node(x0_[1]);
            s[k] = 1.0 / grid.cell_volume();
            return s;
        }
        case DatumKind::bmo_inv_oscillator:
            return caloric::sample(grid, [this](const Point& x) { return amplitude_ * std::cos(omega_ * x[0]); });
    }
    return {};
}

double InitialDatum::pairing(const SchwartzProbe& phi) const {
    require(phi.dim() == dim_, ErrorKind::Argument, "probe and datum dimensions differ");
    const auto& c = phi.axis_coefficients();
    const double s = phi.sigma();
    switch (kind_) {
        case DatumKind::schwartz_gaussian_poly: {
            const auto& d = profile_->axis_coefficients();
            const double sd = profile_->sigma();
            const double w = 1.0 / std::sqrt(1.0 / (s * s) + 1.0 / (sd * sd));
            double v = 1.0;
            for (int a = 0; a < dim_; ++a) {
                std::vector<double> prod(c[a].size() + d[a].size() - 1, 0.0);
                for (std::size_t i = 0; i < c[a].size(); ++i) {
                    for (std::size_t j = 0; j < d[a].size(); ++j) prod[i + j] += c[a][i] * d[a][j];
                }
                v *= gauss_transform(prod, w, 0.0).real();
            }
            return v;
        }
        case DatumKind::sign_function: return sign_transform(c[0], s) * other_axes(phi, 1);
        case DatumKind::dirac: return phi.value(x0_);
        case DatumKind::bmo_inv_oscillator:
            return amplitude_ * gauss_transform(c[0], s, cplx(0.0, omega_)).real() * other_axes(phi, 1);
    }
    return 0.0;
}

double InitialDatum::evolved_pairing(double t, const SchwartzProbe& phi) const {
    require(t >= 0.0, ErrorKind::Argument, "pairing time must be non-negative");
    return t == 0.0 ? pairing(phi) : pairing(phi.evolved_probe(t));
}

SpaceTimeField InitialDatum::evolved_field(const SpatialGrid& grid, const std::vector<double>& times) const {
    require(grid.dim() == dim_, ErrorKind::Argument, "datum and grid dimensions differ");
    return SpaceTimeField::from_function(grid, times, [this](double t, const Point& x) { return evolved(t, x); },
                                         "heat(" + id() + ")");
}

}  // namespace caloric
