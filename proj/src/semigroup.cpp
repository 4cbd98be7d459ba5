#include "caloric/semigroup.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>

#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/numeric.hpp"

namespace caloric {

std::string to_string(HeatMethod method) {
    return method == HeatMethod::kernel_quadrature ? "kernel" : "spectral";
}

HeatMethod parse_heat_method(const std::string& text) {
    if (text == "kernel" || text == "kernel_quadrature") return HeatMethod::kernel_quadrature;
    if (text == "spectral" || text == "spectral_multiplier") return HeatMethod::spectral_multiplier;
    throw Error(ErrorKind::Argument, "unknown heat method '" + text + "' (expected kernel or spectral)");
}

void HeatOperatorConfig::validate(const SpatialGrid& grid) const {
    require(truncation_factor >= 6.0, ErrorKind::Config, "kernel truncation factor must be at least 6");
    require(method != HeatMethod::spectral_multiplier || grid.mode() == BoundaryMode::periodic, ErrorKind::Config,
            "the spectral method requires a periodic grid");
}

namespace {

// ------------------------------------------------------------------ kernel

struct Stencil {
    std::vector<double> weights;  // offsets -K..K
    int K;
};

Stencil gaussian_stencil(double dx, double t, const HeatOperatorConfig& cfg, bool derivative) {
    const double radius = cfg.truncation_factor * std::sqrt(t);
    const int K = static_cast<int>(std::floor(radius / dx + 1e-9));
    std::vector<double> g(2 * K + 1), d(2 * K + 1);
    const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
    for (int k = -K; k <= K; ++k) {
        const double z = k * dx;
        g[k + K] = norm * std::exp(-z * z / (4.0 * t)) * dx;
        d[k + K] = z / (2.0 * t) * g[k + K];
    }
    if (cfg.mass_normalization) {
        // pairwise-symmetric summation keeps the total exactly symmetric
        CompensatedSum mass;
        mass += g[K];
        for (int k = 1; k <= K; ++k) mass += g[K + k] + g[K - k];
        const double m = mass.value();
        for (auto& v : g) v /= m;
        for (auto& v : d) v /= m;
    }
    // (G' * f)(x) = sum_y -(x-y)/(2t) G(x-y) f(y); with z = y - x this is +z/(2t) G(z)
    return {derivative ? d : g, K};
}

void convolve_axis(const SpatialGrid& grid, std::vector<double>& data, const Stencil& st, int axis) {
    const std::size_t n = grid.points_per_axis();
    const bool periodic = grid.mode() == BoundaryMode::periodic;
    const std::size_t lines = grid.dim() == 1 ? 1 : n;
    const std::size_t stride = (grid.dim() == 2 && axis == 0) ? n : 1;
    std::vector<double> out(data.size(), 0.0);
    const long nn = static_cast<long>(n);
    parallel_for(lines, [&](std::size_t line) {
        const std::size_t base = (grid.dim() == 2 && axis == 0) ? line : line * n;
        std::vector<double> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = data[base + i * stride];
        for (long i = 0; i < nn; ++i) {
            double acc = 0.0;
            for (int k = -st.K; k <= st.K; ++k) {
                long j = i + k;
                if (periodic) {
                    j %= nn;
                    if (j < 0) j += nn;
                } else if (j < 0 || j >= nn) {
                    continue;
                }
                acc += st.weights[k + st.K] * row[static_cast<std::size_t>(j)];
            }
            out[base + static_cast<std::size_t>(i) * stride] = acc;
        }
    });
    data.swap(out);
}

void check_kernel_extent(const SpatialGrid& grid, double t, const HeatOperatorConfig& cfg) {
    const double radius = cfg.truncation_factor * std::sqrt(t);
    require(radius <= 0.5 * grid.half_extent() * (1.0 + 1e-12), ErrorKind::DomainTooSmall,
            "kernel truncation radius " + std::to_string(radius) + " exceeds L/2 = " +
                std::to_string(0.5 * grid.half_extent()));
}

// ---------------------------------------------------------------- spectral

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct Plan {
    fftw_plan p = nullptr;
    explicit Plan(fftw_plan q) : p(q) {}
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(plan_mutex());
        if (p) fftw_destroy_plan(p);
    }
};

template <typename T>
struct FftwBuffer {
    T* data;
    explicit FftwBuffer(std::size_t n) : data(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
        if (!data) throw std::bad_alloc();
    }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    ~FftwBuffer() { fftw_free(data); }
};

double wavenumber(std::size_t k, std::size_t n, double period) {
    const long kk = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    return 2.0 * std::numbers::pi * static_cast<double>(kk) / period;
}

// Applies a Fourier multiplier m(xi_1, xi_2, is_nyquist) to real samples.
template <typename Multiplier>
Samples spectral_apply(const SpatialGrid& grid, std::span<const double> f, Multiplier multiplier) {
    const std::size_t n = grid.points_per_axis();
    const std::size_t nc = n / 2 + 1;
    const std::size_t real_size = grid.size();
    const std::size_t complex_size = grid.dim() == 1 ? nc : n * nc;
    FftwBuffer<double> in(real_size);
    FftwBuffer<fftw_complex> spectrum(complex_size);
    const int ni = static_cast<int>(n);
    fftw_plan fwd, bwd;
    {
        std::lock_guard lock(plan_mutex());
        if (grid.dim() == 1) {
            fwd = fftw_plan_dft_r2c_1d(ni, in.data, spectrum.data, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_c2r_1d(ni, spectrum.data, in.data, FFTW_ESTIMATE);
        } else {
            fwd = fftw_plan_dft_r2c_2d(ni, ni, in.data, spectrum.data, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_c2r_2d(ni, ni, spectrum.data, in.data, FFTW_ESTIMATE);
        }
    }
    Plan pf(fwd), pb(bwd);
    std::copy(f.begin(), f.end(), in.data);
    fftw_execute(pf.p);
    const double period = 2.0 * grid.half_extent();
    const bool even = n % 2 == 0;
    auto apply = [&](std::size_t idx, double xi0, double xi1, bool nyquist) {
        const std::complex<double> m = multiplier(xi0, xi1, nyquist);
        const std::complex<double> v(spectrum.data[idx][0], spectrum.data[idx][1]);
        const std::complex<double> r = m * v;
        spectrum.data[idx][0] = r.real();
        spectrum.data[idx][1] = r.imag();
    };
    if (grid.dim() == 1) {
        for (std::size_t k = 0; k < nc; ++k) apply(k, wavenumber(k, n, period), 0.0, even && k == n / 2);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < nc; ++k) {
                const bool nyq = even && (i == n / 2 || k == n / 2);
                apply(i * nc + k, wavenumber(i, n, period), wavenumber(k, n, period), nyq);
            }
        }
    }
    fftw_execute(pb.p);
    Samples out(in.data, in.data + real_size);
    const double scale = 1.0 / static_cast<double>(real_size);
    for (auto& v : out) v *= scale;
    return out;
}

void check_common(const SpatialGrid& grid, std::span<const double> f, double t, const HeatOperatorConfig& cfg) {
    require(t > 0.0, ErrorKind::Argument, "evolution time must be positive");
    require(f.size() == grid.size(), ErrorKind::Argument, "sample count does not match grid");
    cfg.validate(grid);
    if (cfg.method == HeatMethod::kernel_quadrature) check_kernel_extent(grid, t, cfg);
}

}  // namespace

Samples heat_evolve(const SpatialGrid& grid, std::span<const double> f, double t, const HeatOperatorConfig& cfg) {
    coverage::mark("heat_evolve");
    check_common(grid, f, t, cfg);
    if (cfg.method == HeatMethod::spectral_multiplier) {
        return spectral_apply(grid, f, [t](double a, double b, bool) {
            return std::complex<double>(std::exp(-(a * a + b * b) * t), 0.0);
        });
    }
    const Stencil g = gaussian_stencil(grid.spacing(), t, cfg, false);
    Samples data(f.begin(), f.end());
    convolve_axis(grid, data, g, grid.dim() == 1 ? 0 : 1);
    if (grid.dim() == 2) convolve_axis(grid, data, g, 0);
    return data;
}

VectorSamples heat_evolve_gradient(const SpatialGrid& grid, std::span<const double> f, double t,
                                   const HeatOperatorConfig& cfg) {
    coverage::mark("heat_evolve_gradient");
    check_common(grid, f, t, cfg);
    VectorSamples out;
    for (int axis = 0; axis < grid.dim(); ++axis) {
        if (cfg.method == HeatMethod::spectral_multiplier) {
            out.push_back(spectral_apply(grid, f, [t, axis](double a, double b, bool nyquist) {
                if (nyquist) return std::complex<double>(0.0, 0.0);
                const double xi = axis == 0 ? a : b;
                return std::complex<double>(0.0, xi * std::exp(-(a * a + b * b) * t));
            }));
            continue;
        }
        const Stencil g = gaussian_stencil(grid.spacing(), t, cfg, false);
        const Stencil d = gaussian_stencil(grid.spacing(), t, cfg, true);
        Samples data(f.begin(), f.end());
        if (grid.dim() == 1) {
            convolve_axis(grid, data, d, 0);
        } else {
            // axis 0 is the slow (x) index
            convolve_axis(grid, data, axis == 1 ? d : g, 1);
            convolve_axis(grid, data, axis == 0 ? d : g, 0);
        }
        out.push_back(std::move(data));
    }
    return out;
}

SpaceTimeField evolve_to_field(const SpatialGrid& grid, std::span<const double> f, const std::vector<double>& times,
                               const HeatOperatorConfig& cfg, std::string label) {
    std::vector<Samples> slices(times.size());
    parallel_for(times.size(), [&](std::size_t i) { slices[i] = heat_evolve(grid, f, times[i], cfg); });
    std::vector<double> values;
    values.reserve(times.size() * grid.size());
    for (const auto& s : slices) values.insert(values.end(), s.begin(), s.end());
    return SpaceTimeField(grid, times, std::move(values), std::move(label));
}

// ------------------------------------------------------------ annulus decay

AnnulusScheme::AnnulusScheme(double rho_, double kappa_, int J_) : rho(rho_), kappa(kappa_), J(J_) {
    require(rho > 0.0, ErrorKind::Argument, "annulus scheme needs rho > 0");
    require(kappa > 1.0 && kappa <= 2.0, ErrorKind::Argument, "annulus scheme needs 1 < kappa <= 2");
    require(J >= 2, ErrorKind::Argument, "annulus scheme needs J >= 2");
}

double AnnulusScheme::inner_radius(int j) const { return j == 0 ? 0.0 : std::pow(kappa, j) * rho; }
double AnnulusScheme::outer_radius(int j) const { return std::pow(kappa, j + 1) * rho; }
double AnnulusScheme::distance(int j) const { return j == 0 ? 0.0 : inner_radius(j) - rho; }

AnnulusDecayReport annulus_decay_check(const TestFunction& h, double t, const AnnulusScheme& scheme,
                                       const SpatialGrid& grid, const HeatOperatorConfig& cfg) {
    coverage::mark("annulus_decay_check");
    require(t > 0.0, ErrorKind::Argument, "annulus decay needs t > 0");
    require(h.dim() == grid.dim(), ErrorKind::Argument, "test function and grid dimensions differ");
    require(scheme.outer_radius(scheme.J) <= grid.half_extent(), ErrorKind::DomainTooSmall,
            "outermost annulus radius " + std::to_string(scheme.outer_radius(scheme.J)) + " exceeds the grid");
    const Samples hs = h.sample(grid);
    const Samples u = heat_evolve(grid, hs, t, cfg);
    Samples sq(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) sq[k] = u[k] * u[k];

    AnnulusDecayReport rep;
    rep.h_l2 = grid_l2_norm(grid, hs);
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * rep.h_l2;
    std::vector<double> xs, ys;
    for (int j = 0; j <= scheme.J; ++j) {
        const double in = scheme.inner_radius(j);
        const double out = scheme.outer_radius(j);
        const double norm = std::sqrt(std::max(0.0, integrate_annulus(grid, sq, h.center(), in, out)));
        AnnulusRow row{j, scheme.distance(j), norm, 0.0, false};
        if (j >= 1 && norm > 0.0) row.c = -t * std::log(norm / rep.h_l2) / (row.d * row.d);
        if (j >= 2 && norm > floor) {
            row.used_in_fit = true;
            xs.push_back(-row.d * row.d / t);
            ys.push_back(std::log(norm));
        }
        rep.rows.push_back(row);
    }
    rep.contraction_ok = rep.rows.front().norm <= rep.h_l2 * (1.0 + 1e-12);
    require(xs.size() >= 3, ErrorKind::InsufficientDecayData,
            "only " + std::to_string(xs.size()) + " annuli above the resolution floor; need 3");
    const LinearFit fit = fit_line(xs, ys);
    rep.fitted_c = fit.slope;
    rep.log_prefactor = fit.intercept - std::log(rep.h_l2);
    rep.r2 = fit.r2;
    rep.in_window = rep.fitted_c > 0.20 && rep.fitted_c <= 0.25;
    return rep;
}

}  // namespace caloric
