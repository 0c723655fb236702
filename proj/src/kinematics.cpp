#include "accdet/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace accdet::kinematics {

TrajectoryConfig::TrajectoryConfig(double accel) : a(accel), z0(0.0) {
    if (!(accel > 0.0)) throw std::domain_error("TrajectoryConfig: a must be positive");
    z0 = 1.0 / accel;
}

TrajectoryConfig::TrajectoryConfig(double accel, double z_init) : a(accel), z0(z_init) {
    if (!(accel > 0.0)) throw std::domain_error("TrajectoryConfig: a must be positive");
    if (!(z_init > 0.0)) throw std::domain_error("TrajectoryConfig: z0 must be positive");
}

std::array<double, 2> rindler_to_minkowski(double a, double xi, double tau) {
    if (!(a > 0.0)) throw std::domain_error("rindler_to_minkowski: a must be positive");
    const double pre = std::exp(a * xi) / a;
    return {pre * std::sinh(a * tau), pre * std::cosh(a * tau)};
}

double classical_center(double a, double z0, double tau) {
    if (a < 0.0) throw std::domain_error("classical_center: a must be non-negative");
    return z0 * std::cosh(a * tau);
}

Complex interval_D(double a, double t, double eps) {
    if (!(a > 0.0)) throw std::domain_error("interval_D: a must be positive");
    if (eps < 0.0) throw std::domain_error("interval_D: eps must be non-negative");
    const Complex arg(0.5 * a * t, -0.5 * a * eps);
    const Complex s = std::sinh(arg);
    return 4.0 / (a * a) * s * s;
}

double center_separation(double a, double z0, double t, double T) {
    return 2.0 * z0 * std::sinh(a * T) * std::sinh(0.5 * a * t);
}

IntervalValue interval(double a, double z0, double t, double T, double eps) {
    return IntervalValue{interval_D(a, t, eps), center_separation(a, z0, t, T), eps};
}

}  // namespace accdet::kinematics
