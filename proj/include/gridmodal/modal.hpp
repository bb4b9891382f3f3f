#pragma once

#include "gridmodal/models.hpp"
#include "gridmodal/system.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridmodal::modal {

using Complex = std::complex<double>;

struct EigenDecomposition {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd right;  // columns are right eigenvectors
    Eigen::MatrixXcd left;   // rows are left eigenvectors, left * right = I
    double residual = 0.0;   // max_i ||A v_i - lambda_i v_i||_inf
};

/// Dense eigen-decomposition, eigenvalues sorted by (Re, |Im|), positive Im first
/// within a conjugate pair. Throws NumericError when the solver fails or the
/// residual exceeds 1e-9 * ||A||_inf.
EigenDecomposition eigen(const Eigen::MatrixXd& A);

enum class ModeLabel { Swing, TurbineGovernor, Governor, Real, Unclassified };

std::string_view to_string(ModeLabel label);
std::optional<ModeLabel> parse_label(std::string_view text);

struct Mode {
    Complex lambda;
    double freq_hz = 0.0;  // |Im| / 2 pi
    double zeta = 0.0;     // -Re / |lambda|, 0 for lambda = 0
    bool is_real = false;
    std::vector<Complex> shape;         // right eigenvector, per state
    std::vector<double> participation;  // sums to 1
    ModeLabel label = ModeLabel::Unclassified;

    int multiplicity() const { return is_real ? 1 : 2; }
    bool unstable() const { return lambda.real() > 0.0; }
};

/// One entry per real eigenvalue or conjugate pair (Im >= 0 representative).
struct ModeSet {
    std::vector<Mode> modes;
    std::vector<std::string> state_labels;
    double residual = 0.0;

    int eigenvalue_count() const;
    const Mode* first(ModeLabel label) const&;
    const Mode* first(ModeLabel label) const&& = delete;
    std::vector<const Mode*> all(ModeLabel label) const;
};

struct ClassifierOptions {
    double dominance = 0.4;         // summed participation that makes a state group dominant
    double angle_share = 0.25;      // relative-angle participation that marks a swing mode on its own
    double coherence_floor = 1e-3;  // min |w_small|/|w_large| for in-phase / antiphase tests
};

ModeSet analyze(const models::StateSpaceModel& model, const ClassifierOptions& options = {});

/// Labels every mode; see README for the rules.
ModeSet classify(ModeSet modes, const models::StateSpaceModel& model, const ClassifierOptions& options = {});

/// Undamped two-mass swing frequency in Hz: sqrt((1/M1 + 1/M2) V^2/X) / 2 pi.
double swing_mode_prediction(double M1, double M2, double V, double X);

// ---------------------------------------------------------------------------
// Parameter sweeps

/// Sweepable scenario parameters: H1 H2 D1 D2 R1 R2 Tg1 Tg2 S1 S2 SCR X k Pref1 Pref2 V1 V2.
bool is_sweep_parameter(std::string_view name);

/// True when changing `name` moves the operating point.
bool affects_operating_point(std::string_view name);

/// Copy of `sc` with parameter `name` set to `value`. Throws DomainError for
/// unknown names or parameters the machine kind does not have.
SystemCase with_parameter(const SystemCase& sc, std::string_view name, double value);

struct SweepOptions {
    double jump_abs = 2.0;   // rad/s
    double jump_rel = 0.25;  // fraction of |lambda| at the previous point
    ClassifierOptions classifier;
};

struct SweepPoint {
    double value = 0.0;
    std::optional<ModeSet> modes;
    std::string error;  // non-empty when this grid point failed
};

struct TrajectoryPoint {
    std::size_t grid_index;
    Mode mode;
};

struct Trajectory {
    ModeLabel label;  // label at the first point of the trajectory
    std::vector<TrajectoryPoint> points;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepPoint> points;
    std::vector<Trajectory> trajectories;

    std::vector<const Trajectory*> trajectories_labeled(ModeLabel label) const;
};

SweepResult sweep(const SystemCase& sc, std::string_view parameter, std::span<const double> values,
                  const SweepOptions& options = {});

std::vector<double> linspace(double from, double to, std::size_t points);

}  // namespace gridmodal::modal
