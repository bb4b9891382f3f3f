#include "gridmodal/perunit.hpp"

#include "gridmodal/error.hpp"

#include <cmath>
#include <string>

namespace gridmodal::perunit {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

BaseSystem::BaseSystem(double f0, double sbase, double vbase)
    : f0_(f0), omega_b_(2.0 * kPi * f0), sbase_(sbase), vbase_(vbase) {
    require_positive(f0, "f0");
    require_positive(sbase, "Sbase");
    require_positive(vbase, "Vbase");
}

void MachineRating::validate_gcsg() const {
    if (!(s_pu > 0.0 && s_pu <= 1.0)) throw DomainError("S_pu must lie in (0, 1]");
    if (!(H >= 0.0)) throw DomainError("H must be non-negative");
    if (!(D_pu >= 0.0)) throw DomainError("D_pu must be non-negative");
    require_positive(R_pu, "R_pu");
    require_positive(Tg, "Tg");
}

double momentum(double H, double s_pu, const BaseSystem& base) {
    return 2.0 * H * s_pu * base.sbase() / base.omega_b();
}

double damping_si(double D_pu, double s_pu, const BaseSystem& base) {
    return D_pu * s_pu * base.sbase() / base.omega_b();
}

double droop_si(double R_pu, double s_pu, const BaseSystem& base) {
    return R_pu * base.omega_b() / (s_pu * base.sbase());
}

double inertia_from_momentum(double M, double s_pu, const BaseSystem& base) {
    return M * base.omega_b() / (2.0 * s_pu * base.sbase());
}

double damping_pu(double D, double s_pu, const BaseSystem& base) {
    return D * base.omega_b() / (s_pu * base.sbase());
}

double droop_pu(double R, double s_pu, const BaseSystem& base) {
    return R * s_pu * base.sbase() / base.omega_b();
}

MachineSi to_si(const MachineRating& rating, const BaseSystem& base) {
    return MachineSi{
        momentum(rating.H, rating.s_pu, base),
        damping_si(rating.D_pu, rating.s_pu, base),
        droop_si(rating.R_pu, rating.s_pu, base),
        rating.Tg,
    };
}

double scr(double X_pu, double k) {
    require_positive(X_pu, "X");
    if (!(k > 0.0 && k < 1.0)) throw DomainError("k must lie in (0, 1)");
    return 1.0 / (X_pu * k * (1.0 - k));
}

double x_from_scr(double scr_value, double k) {
    require_positive(scr_value, "SCR");
    if (!(k > 0.0 && k < 1.0)) throw DomainError("k must lie in (0, 1)");
    return 1.0 / (scr_value * k * (1.0 - k));
}

double hz_from_rad(double omega) noexcept { return omega / (2.0 * kPi); }

double deg_from_rad(double angle) noexcept { return angle * 180.0 / kPi; }

}  // namespace gridmodal::perunit
