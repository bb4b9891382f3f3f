#pragma once

#include "gridmodal/models.hpp"
#include "gridmodal/system.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridmodal::sim {

struct Channel {
    std::string name;
    std::string unit;
    std::vector<double> values;
};

/// Uniformly sampled trajectories, t[0] = 0.
struct TimeSeries {
    std::vector<double> t;
    std::vector<Channel> channels;

    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
    std::size_t size() const { return t.size(); }

    /// Throws ChannelError when absent.
    const Channel& channel(std::string_view name) const;
    Channel& channel(std::string_view name);
    bool has_channel(std::string_view name) const;
    void validate() const;
};

/// exp(A) by scaling and squaring with a Pade approximant.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

/// Zero-order-hold pair: x[k+1] = Phi x[k] + Gamma u[k].
struct Discretization {
    Eigen::MatrixXd Phi;
    Eigen::MatrixXd Gamma;
};

Discretization discretize_zoh(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double dt);

/// Response from the origin to a step of `magnitude` on input `input` applied at
/// t = 0. Outputs include the D*u feedthrough; y(0) = D u. Channel units follow
/// the model (rad/s for speeds).
TimeSeries step_response(const models::StateSpaceModel& model, std::string_view input, double magnitude,
                         double t_end, double dt);

/// Speed channels converted from rad/s to Hz.
TimeSeries to_report_units(TimeSeries ts);

/// Final value -C A^{-1} B u + D u of a stable model under a step.
Eigen::VectorXd final_value(const models::StateSpaceModel& model, std::string_view input, double magnitude);

/// Time from the peak of |y - y_end| until the deviation stays within 5% of
/// that peak.
double settling_time_95(const std::vector<double>& t, const std::vector<double>& y);

/// Least-squares slope of log|y| over the samples with t in [t_from, t_to]
/// (a negative number for a decaying signal).
double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y, double t_from, double t_to);

struct GovernorDemoOptions {
    std::string input = "dRLD";
    double relative_magnitude = -0.01;  // of R_LD0 for dRLD, absolute pu otherwise
    double t_end = 10.0;
    double dt = 1e-3;
};

struct GovernorDemo {
    TimeSeries series;          // dw1, dw2 (Hz), dPm1, dPm2, dPm_diff (pu)
    double settling_time = 0.0; // of dPm_diff, from its peak
    double fitted_rate = 0.0;   // 1/s
    std::optional<double> governor_eigenvalue;
};

/// Two GC-SG on a symmetric feeder with governor time constants Tg1 and Tg2.
GovernorDemo governor_mode_demo(const SystemCase& symmetric, double Tg1, double Tg2,
                                const GovernorDemoOptions& options = {});

// ---------------------------------------------------------------------------
// Single-bus frequency study

struct PrimaryRegulation {
    double R_pu;
    double Tg;
};

struct SecondaryRegulation {
    double Ki = 0.1;  // pu power per (pu frequency * s)
};

/// Aggregate system: 2H d(df)/dt = Pm + Ps - dP - D df, with optional
/// first-order primary governor and integral secondary regulation.
struct AggregateSystem {
    double H_eq = 4.0;
    double R_natural_pu = 100.0;
    std::optional<PrimaryRegulation> primary;
    std::optional<SecondaryRegulation> secondary;

    double damping() const { return 1.0 / R_natural_pu; }
    void validate() const;
};

struct WindowedRocof {
    double window;  // s
    double value;   // Hz/s
};

struct RocofMetrics {
    std::vector<WindowedRocof> rocof;
    double nadir = 0.0;  // Hz, signed extremum
    double t_nadir = 0.0;

    /// Throws DomainError when the window was not evaluated.
    double rocof_at(double window) const;
};

struct RocofResult {
    RocofMetrics metrics;
    TimeSeries series;  // df (Hz), regulation powers (pu)
};

/// States [df (pu), dPm, dPs]; input dPload (pu generation deficit).
models::StateSpaceModel aggregate_model(const AggregateSystem& sys);

RocofResult rocof_study(const AggregateSystem& sys, double dP, const std::vector<double>& windows, double t_end,
                        double dt, double f0 = 50.0);

/// Initial slope dP f0 / (2 H) in Hz/s.
double instantaneous_rocof(double H_eq, double dP, double f0);

/// Endpoint-difference RoCoF |f(t0 + W) - f(t0)| / W with linear interpolation.
double windowed_rocof(const std::vector<double>& t, const std::vector<double>& f, double window, double t0 = 0.0);

}  // namespace gridmodal::sim
