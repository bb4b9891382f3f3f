#pragma once

// Per-unit bookkeeping. Machine quantities are given on their own rating
// S_n = S_pu * Sbase and converted to physical units for model assembly.
// With Sbase = 1 the "physical" values are simply system-pu values.

namespace gridmodal::perunit {

inline constexpr double kPi = 3.14159265358979323846;

class BaseSystem {
public:
    /// Throws DomainError unless every base is positive.
    explicit BaseSystem(double f0 = 50.0, double sbase = 1.0, double vbase = 1.0);

    double f0() const noexcept { return f0_; }
    double omega_b() const noexcept { return omega_b_; }
    double sbase() const noexcept { return sbase_; }
    double vbase() const noexcept { return vbase_; }
    double zbase() const noexcept { return vbase_ * vbase_ / sbase_; }

    BaseSystem with_sbase(double sbase) const { return BaseSystem(f0_, sbase, vbase_); }

private:
    double f0_;
    double omega_b_;
    double sbase_;
    double vbase_;
};

/// Per-unit machine data, each value on the machine's own rating.
struct MachineRating {
    double s_pu = 1.0;  // rating as a fraction of Sbase
    double H = 0.0;     // s
    double D_pu = 0.0;
    double R_pu = 0.0;
    double Tg = 0.0;    // s

    void validate_gcsg() const;
};

/// Physical (Sbase-scaled) machine constants used in the swing/governor equations.
struct MachineSi {
    double M;   // power*s^2/rad
    double D;   // power*s/rad
    double R;   // (rad/s)/power
    double Tg;  // s
};

double momentum(double H, double s_pu, const BaseSystem& base);
double damping_si(double D_pu, double s_pu, const BaseSystem& base);
double droop_si(double R_pu, double s_pu, const BaseSystem& base);

double inertia_from_momentum(double M, double s_pu, const BaseSystem& base);
double damping_pu(double D, double s_pu, const BaseSystem& base);
double droop_pu(double R, double s_pu, const BaseSystem& base);

MachineSi to_si(const MachineRating& rating, const BaseSystem& base);

/// Short-circuit ratio of the two-segment feeder: the parallel of kX and (1-k)X.
double scr(double X_pu, double k);
double x_from_scr(double scr, double k);

double hz_from_rad(double omega) noexcept;
double deg_from_rad(double angle) noexcept;

}  // namespace gridmodal::perunit
