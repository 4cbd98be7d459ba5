#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "caloric/caloric_zoo.hpp"
#include "caloric/grid_field.hpp"
#include "caloric/norms.hpp"
#include "caloric/probes.hpp"
#include "caloric/semigroup.hpp"

namespace caloric {

/// Geometric snapshot times t_k = t0 q^k, k = 0..K, decreasing toward 0.
struct SnapshotLadder {
    double t0;
    double q;
    int K;
    SnapshotLadder(double t0_, double q_, int K_);

    /// Longest ladder from t0 with ratio q whose last time stays >= dx^2.
    static SnapshotLadder down_to_resolution(double t0, double q, const SpatialGrid& grid, int K_max = 60);

    std::vector<double> times() const;
    /// Throws InsufficientResolution when t_K < dx^2.
    void check_resolution(const SpatialGrid& grid) const;
};

/// A caloric function that can be sampled on a grid at any requested time.
struct SnapshotSource {
    std::string label;
    SpatialGrid grid;
    std::function<Samples(double)> values;
    /// Exact spatial gradient; empty means central differences of `values`.
    std::function<VectorSamples(double)> gradient;
    /// Series-truncation flag at time t anywhere in |x| <= radius; empty means never.
    std::function<bool(double, double)> truncated;
    /// Exact <u_0, phi> when the initial trace is known.
    std::function<std::optional<double>(const SchwartzProbe&)> exact_trace_pairing;

    Samples at(double t) const { return values(t); }
    VectorSamples grad_at(double t) const;

    static SnapshotSource from_solution(const AnalyticSolution& sol, const SpatialGrid& grid);
    /// Closed-form evolution of the datum, sampled.
    static SnapshotSource from_datum(const InitialDatum& datum, const SpatialGrid& grid);
    /// Discrete evolution heat_evolve(sampled datum, t).
    static SnapshotSource from_datum_numeric(const InitialDatum& datum, const SpatialGrid& grid,
                                             const HeatOperatorConfig& cfg);
    /// Times must be sample times of the field.
    static SnapshotSource from_field(const SpaceTimeField& field);
    static SnapshotSource zero(const SpatialGrid& grid);
};

// ----------------------------------------------------------- homotopy

struct HomotopyReport {
    std::string solution;
    double s;
    double t;
    std::string h_id;
    int grid_level;
    double lhs;
    double rhs;
    double residual;
};

/// lhs = int u(t) h over supp h; rhs = int u(s) e^{(t-s) Laplacian} h over the
/// whole grid. The rhs integrand must be below 1e-10 on |x| >= 0.9L.
HomotopyReport homotopy_residual(const SnapshotSource& u, double s, double t, const TestFunction& h,
                                 const HeatOperatorConfig& cfg = {}, int grid_level = 0);
HomotopyReport homotopy_residual(const AnalyticSolution& u, const SpatialGrid& grid, double s, double t,
                                 const TestFunction& h, const HeatOperatorConfig& cfg = {}, int grid_level = 0);

/// Residuals on `levels` grids, each halving the spacing of the previous one.
std::vector<HomotopyReport> homotopy_levels(const AnalyticSolution& u, const SpatialGrid& coarse, double s, double t,
                                            const TestFunction& h, int levels, const HeatOperatorConfig& cfg = {});

void write_homotopy_csv(std::ostream& os, const std::vector<HomotopyReport>& rows);

// --------------------------------------------------------------- flux

struct FluxConfig {
    double lambda = 0.9;
    double kappa = 1.1;
    double c = 0.24;
    std::vector<double> R_values;
    int time_nodes = 41;

    void validate() const;
    double admissibility_threshold() const { return c * lambda * lambda / (kappa * kappa); }
};

struct FluxRow {
    double R;
    double phi1;
    double phi2;
    double total() const { return phi1 + phi2; }
};

struct FluxReport {
    std::vector<FluxRow> rows;
    double gamma_ref = 0.0;
    double threshold = 0.0;
    /// gamma_ref < c lambda^2 / kappa^2; otherwise the rows are a precondition-violation report.
    bool admissible = false;
    double max_total = 0.0;
    bool finite = true;
    /// Non-increasing from the maximum onward, and the maximum is not the last radius.
    bool tail_monotone = false;
};

/// Phi_1(R) = int_s^t int_{lambda R < |x - c| < R} |phi grad u| and Phi_2(R) the same with
/// |u grad phi|, where phi(tau) = e^{(t - tau) Laplacian} h and c is the center of h.
FluxReport flux_functional(const SnapshotSource& u, double s, double t, const TestFunction& h, const FluxConfig& fcfg,
                           double gamma_ref, const HeatOperatorConfig& cfg = {});

// ----------------------------------------------------------- recovery

struct ProbeRecovery {
    std::string probe_id;
    std::vector<double> times;
    std::vector<double> pairings;
    std::vector<double> increments;      // |p_k - p_{k+1}|, size K
    std::vector<double> running_limits;  // extrapolation using samples up to k
    double extrapolated = 0.0;
    std::optional<double> exact;
    std::optional<double> error;
    bool recoverable = true;
};

struct RecoveryReport {
    std::string solution;
    std::vector<ProbeRecovery> probes;
    bool all_recoverable = true;
    /// max error over probes with a known exact pairing (0 when none).
    double max_error = 0.0;
};

/// Pairings <u(t_k), phi> for each probe, Cauchy increments, polynomial
/// extrapolation to t = 0 from the six smallest times, and the error against
/// the exact pairing when known. Increments that grow three times in a row
/// above the noise floor mark the probe NOT-RECOVERABLE.
RecoveryReport recover_initial_data(const SnapshotSource& u, const SnapshotLadder& ladder,
                                    const std::vector<SchwartzProbe>& panel);

void write_recovery_csv(std::ostream& os, const RecoveryReport& report);

// ---------------------------------------------------------- uniqueness

enum class UniquenessVerdict { consistent, violation, hypothesis_not_met, not_applicable };
std::string to_string(UniquenessVerdict v);

struct UniquenessReport {
    UniquenessVerdict verdict;
    double max_limit = 0.0;       // largest |extrapolated pairing|
    double max_slice_norm = 0.0;  // largest interior L2 norm over the ladder
    GrowthVerdict growth;
};

/// Requires a PASS growth fit; then, if every panel limit vanishes, checks
/// that the interior slices vanish too.
UniquenessReport uniqueness_probe(const SnapshotSource& u, const SnapshotLadder& ladder,
                                  const std::vector<SchwartzProbe>& panel, const GrowthFit& growth,
                                  double tolerance = 1e-8);

// ---------------------------------------------------- convergence mode

struct CompactTrack {
    std::string id;
    std::vector<double> pairings;
    bool vanishes = false;   // eventually below 1e-8, stays there, non-increasing tail
    bool converges = false;  // the last three increments are non-increasing
};

struct SchwartzTrack {
    std::string id;
    std::vector<double> rho;
    std::vector<double> partials;
    std::vector<bool> truncated;
    bool diverges = false;   // |partial| grows >= 10x at every step
    bool converges = false;  // increments non-increasing in rho
};

struct ConvergenceModeReport {
    std::string solution;
    std::vector<double> times;
    double t_fixed = 0.1;
    std::vector<CompactTrack> compact;
    std::vector<SchwartzTrack> schwartz;
    bool compact_vanish = false;    // every compact track vanishes
    bool schwartz_diverge = false;  // some Schwartz track diverges
};

ConvergenceModeReport convergence_mode_probe(const SnapshotSource& u, const SnapshotLadder& ladder,
                                             const std::vector<TestFunction>& compact_panel,
                                             const std::vector<SchwartzProbe>& schwartz_panel,
                                             const std::vector<double>& rho = {2.0, 4.0, 6.0, 8.0},
                                             double t_fixed = 0.1);

// ------------------------------------------------------ pairing bound

struct PairingBoundReport {
    double sup_pairing = 0.0;
    double seminorm = 0.0;
    double tent_norm = 0.0;
    double ratio = 0.0;
    int order = 0;
};

/// sup_{t_k < 1/2} |<u(t_k), phi>| / (P_{n+3}(phi) ||u||_T), with the tent norm over `family`.
PairingBoundReport pairing_bound_check(const SpaceTimeField& u, const TestFunction& phi, const BallFamily& family);

// ------------------------------------------------- snapshot boundedness

struct BoundednessReport {
    std::vector<std::string> probe_ids;
    std::vector<double> early_sup;  // sup over the larger half of the ladder times
    std::vector<double> late_sup;   // sup over the smaller half
    double growth_limit = 10.0;
    bool bounded = false;
};

/// Pairings along the ladder stay bounded: for every probe the sup over the
/// smaller half of the times is at most growth_limit times the sup over the
/// larger half (plus a 1e-12 floor), and all pairings are finite.
BoundednessReport snapshot_boundedness_probe(const SnapshotSource& u, const SnapshotLadder& ladder,
                                             const std::vector<SchwartzProbe>& panel, double growth_limit = 10.0);

}  // namespace caloric
