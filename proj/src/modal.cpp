#include "gridmodal/modal.hpp"

#include "gridmodal/error.hpp"
#include "gridmodal/perunit.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace gridmodal::modal {

namespace {

constexpr double kResidualBound = 1e-9;

bool is_real_value(const Complex& z) {
    return std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z));
}

double inf_norm(const Eigen::MatrixXd& A) {
    return A.rows() == 0 ? 0.0 : A.cwiseAbs().rowwise().sum().maxCoeff();
}

// Diagonal similarity D^-1 A D with power-of-two entries so rows and columns
// have comparable norms. Exact in floating point.
Eigen::VectorXd balance(Eigen::MatrixXd& B) {
    const Eigen::Index n = B.rows();
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = B.col(i).cwiseAbs().sum() - std::abs(B(i, i));
            double r = B.row(i).cwiseAbs().sum() - std::abs(B(i, i));
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            while (c < r / 2.0) {
                f *= 2.0;
                c *= 4.0;
            }
            while (c >= r * 2.0) {
                f /= 2.0;
                c /= 4.0;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                d(i) *= f;
                B.row(i) /= f;
                B.col(i) *= f;
            }
        }
    }
    return d;
}

}  // namespace

EigenDecomposition eigen(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw NumericError("eigen: matrix must be square");
    if (!A.allFinite()) throw NumericError("eigen: matrix has non-finite entries");
    const Eigen::Index n = A.rows();

    Eigen::MatrixXd B = A;
    const Eigen::VectorXd d = balance(B);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(B, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigen: QR iteration did not converge for a " + std::to_string(n) + "x" +
                           std::to_string(n) + " matrix");
    }
    const Eigen::VectorXcd raw_values = solver.eigenvalues();
    const Eigen::MatrixXcd raw_vectors = solver.eigenvectors();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const Complex& x = raw_values(a);
        const Complex& y = raw_values(b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (std::abs(x.imag()) != std::abs(y.imag())) return std::abs(x.imag()) < std::abs(y.imag());
        return x.imag() > y.imag();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.right.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = raw_values(order[static_cast<std::size_t>(i)]);
        if (is_real_value(out.values(i))) out.values(i).imag(0.0);
        Eigen::VectorXcd v = d.cast<Complex>().cwiseProduct(raw_vectors.col(order[static_cast<std::size_t>(i)]));
        out.right.col(i) = v / v.norm();
    }

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(out.right);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        throw NumericError("eigen: eigenvector matrix is singular (defective matrix, rcond = " +
                           std::to_string(rcond) + ")");
    }
    out.left = lu.inverse();

    const Eigen::MatrixXcd Ac = A.cast<Complex>();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXcd r = Ac * out.right.col(i) - out.values(i) * out.right.col(i);
        const double scale = out.right.col(i).cwiseAbs().maxCoeff();
        worst = std::max(worst, r.cwiseAbs().maxCoeff() / scale);
    }
    out.residual = worst;
    const double bound = kResidualBound * std::max(inf_norm(A), std::numeric_limits<double>::min());
    if (n > 0 && !(worst <= bound)) {
        throw NumericError("eigen: residual " + std::to_string(worst) + " exceeds bound " + std::to_string(bound));
    }
    return out;
}

std::string_view to_string(ModeLabel label) {
    switch (label) {
        case ModeLabel::Swing: return "Swing";
        case ModeLabel::TurbineGovernor: return "TurbineGovernor";
        case ModeLabel::Governor: return "Governor";
        case ModeLabel::Real: return "Real";
        case ModeLabel::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

std::optional<ModeLabel> parse_label(std::string_view text) {
    for (ModeLabel l : {ModeLabel::Swing, ModeLabel::TurbineGovernor, ModeLabel::Governor, ModeLabel::Real,
                        ModeLabel::Unclassified}) {
        if (to_string(l) == text) return l;
    }
    return std::nullopt;
}

int ModeSet::eigenvalue_count() const {
    int n = 0;
    for (const Mode& m : modes) n += m.multiplicity();
    return n;
}

const Mode* ModeSet::first(ModeLabel label) const& {
    for (const Mode& m : modes)
        if (m.label == label) return &m;
    return nullptr;
}

std::vector<const Mode*> ModeSet::all(ModeLabel label) const {
    std::vector<const Mode*> out;
    for (const Mode& m : modes)
        if (m.label == label) out.push_back(&m);
    return out;
}

ModeSet analyze(const models::StateSpaceModel& model, const ClassifierOptions& options) {
    model.validate();
    const EigenDecomposition ed = eigen(model.A);
    const Eigen::Index n = model.states();

    ModeSet set;
    set.state_labels = model.state_labels;
    set.residual = ed.residual;
    const double zero_floor = 1e-12 * std::max(1.0, inf_norm(model.A));
    for (Eigen::Index i = 0; i < n; ++i) {
        // Open-loop integrators produce a rounding-level eigenvalue; treat it as exact zero.
        const Complex lambda = std::abs(ed.values(i)) <= zero_floor ? Complex{} : ed.values(i);
        const bool real = lambda.imag() == 0.0;
        if (!real && lambda.imag() < 0.0) continue;

        Mode m;
        m.lambda = lambda;
        m.is_real = real;
        m.freq_hz = perunit::hz_from_rad(std::abs(lambda.imag()));
        const double mag = std::abs(lambda);
        m.zeta = mag > 0.0 ? -lambda.real() / mag : 0.0;

        Eigen::Index peak = 0;
        ed.right.col(i).cwiseAbs().maxCoeff(&peak);
        const Complex norm = ed.right(peak, i);
        double total = 0.0;
        m.shape.resize(static_cast<std::size_t>(n));
        m.participation.resize(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            m.shape[static_cast<std::size_t>(k)] = ed.right(k, i) / norm;
            const double p = std::abs(ed.left(i, k) * ed.right(k, i));
            m.participation[static_cast<std::size_t>(k)] = p;
            total += p;
        }
        for (double& p : m.participation) p /= total;
        set.modes.push_back(std::move(m));
    }
    return classify(std::move(set), model, options);
}

ModeSet classify(ModeSet set, const models::StateSpaceModel& model, const ClassifierOptions& options) {
    using models::StateRole;
    std::vector<std::size_t> speeds;
    std::vector<std::size_t> mechs;
    for (std::size_t k = 0; k < model.state_roles.size(); ++k) {
        if (model.state_roles[k] == StateRole::Speed) speeds.push_back(k);
        if (model.state_roles[k] == StateRole::MechanicalPower) mechs.push_back(k);
    }
    const bool has_mech = !mechs.empty();

    for (Mode& m : set.modes) {
        double angle = 0.0;
        double angle_speed = 0.0;
        double speed = 0.0;
        double mech = 0.0;
        for (std::size_t k = 0; k < m.participation.size(); ++k) {
            const StateRole role = model.state_roles[k];
            if (role == StateRole::Angle) angle += m.participation[k];
            if (role == StateRole::Angle || role == StateRole::Speed) angle_speed += m.participation[k];
            if (role == StateRole::Speed) speed += m.participation[k];
            if (role == StateRole::MechanicalPower) mech += m.participation[k];
        }

        // Relative motion of the two machines: rotor speeds for oscillatory
        // modes, governor outputs for real modes when both machines have one.
        const auto& pair = m.is_real && mechs.size() == 2 ? mechs : speeds;
        bool antiphase = false;
        bool coherent = pair.size() == 1;
        if (pair.size() == 2) {
            const Complex a = m.shape[pair[0]];
            const Complex b = m.shape[pair[1]];
            const double big = std::max(std::abs(a), std::abs(b));
            const double small = std::min(std::abs(a), std::abs(b));
            if (big > 0.0 && small >= options.coherence_floor * big) {
                const double cos_phase = (a * std::conj(b)).real() / (std::abs(a) * std::abs(b));
                antiphase = cos_phase < 0.0;
                coherent = cos_phase > 0.0;
            }
        }

        const double d = options.dominance;
        if (std::abs(m.lambda) == 0.0) {
            m.label = ModeLabel::Real;
        } else if (!m.is_real) {
            if ((antiphase || angle >= options.angle_share) && angle_speed > d) {
                m.label = ModeLabel::Swing;
            } else if (coherent && mech > d) {
                m.label = ModeLabel::TurbineGovernor;
            } else {
                m.label = ModeLabel::Unclassified;
            }
        } else if (has_mech && antiphase && mech > d) {
            m.label = ModeLabel::Governor;
        } else if (has_mech && coherent && speed + mech > d) {
            // Overdamped common-mode frequency regulation.
            m.label = ModeLabel::TurbineGovernor;
        } else {
            m.label = ModeLabel::Real;
        }
    }
    return set;
}

double swing_mode_prediction(double M1, double M2, double V, double X) {
    if (!(M1 > 0.0 && M2 > 0.0 && X > 0.0)) throw DomainError("swing_mode_prediction: M1, M2, X must be positive");
    const double k_eq = V * V / X;
    const double m_eq = M1 * M2 / (M1 + M2);
    return std::sqrt(k_eq / m_eq) / (2.0 * perunit::kPi);
}

}  // namespace gridmodal::modal
