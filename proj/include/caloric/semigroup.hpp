#pragma once

#include <string>
#include <vector>

#include "caloric/grid_field.hpp"
#include "caloric/probes.hpp"

namespace caloric {

enum class HeatMethod { kernel_quadrature, spectral_multiplier };

std::string to_string(HeatMethod method);
HeatMethod parse_heat_method(const std::string& text);

struct HeatOperatorConfig {
    HeatMethod method = HeatMethod::kernel_quadrature;
    /// Kernel support radius in units of sqrt(t).
    double truncation_factor = 10.0;
    bool mass_normalization = true;

    void validate(const SpatialGrid& grid) const;
};

/// e^{t Laplacian} applied to grid samples.
///
/// Kernel quadrature applies a truncated, optionally mass-normalized Gaussian
/// along each axis (separable box truncation in 2D). The spectral path scales
/// each discrete Fourier mode by e^{-|xi|^2 t} and needs a periodic grid.
Samples heat_evolve(const SpatialGrid& grid, std::span<const double> f, double t, const HeatOperatorConfig& cfg = {});

/// Gradient of e^{t Laplacian} f, one component per axis. The spectral path
/// zeroes the Nyquist mode.
VectorSamples heat_evolve_gradient(const SpatialGrid& grid, std::span<const double> f, double t,
                                   const HeatOperatorConfig& cfg = {});

/// Evolves f to every time of the ladder (each time directly from f).
SpaceTimeField evolve_to_field(const SpatialGrid& grid, std::span<const double> f, const std::vector<double>& times,
                               const HeatOperatorConfig& cfg = {}, std::string label = {});

struct AnnulusScheme {
    double rho;
    double kappa;
    int J;
    AnnulusScheme(double rho_, double kappa_, int J_);

    double inner_radius(int j) const;
    double outer_radius(int j) const;
    /// Distance from annulus j to the support ball B(0, rho).
    double distance(int j) const;
};

struct AnnulusRow {
    int j;
    double d;
    double norm;
    /// -t log(norm/||h||) / d^2, the exponent this row alone would imply.
    double c;
    bool used_in_fit;
};

struct AnnulusDecayReport {
    std::vector<AnnulusRow> rows;
    double fitted_c = 0.0;
    double log_prefactor = 0.0;
    double r2 = 0.0;
    double h_l2 = 0.0;
    bool contraction_ok = false;
    bool in_window = false;  // fitted c in (0.20, 0.25]
};

/// L2 norms of e^{t Laplacian} h on the annuli of the scheme, and the decay
/// exponent fitted from log norm against -d_j^2/t over j >= 2.
AnnulusDecayReport annulus_decay_check(const TestFunction& h, double t, const AnnulusScheme& scheme,
                                       const SpatialGrid& grid, const HeatOperatorConfig& cfg = {});

}  // namespace caloric
