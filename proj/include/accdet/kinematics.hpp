#pragma once

#include <array>
#include <complex>

namespace accdet::kinematics {

using Complex = std::complex<double>;

// Uniformly accelerated worldline at Rindler coordinate xi = 0. Natural units
// c = k_B = 1 throughout the library; hbar stays an explicit parameter.
struct TrajectoryConfig {
    double a;        // proper acceleration, > 0
    double z0;       // initial packet center; default 1/a puts it on the xi=0 worldline
    double xi = 0.0; // fixed: general xi is out of scope

    explicit TrajectoryConfig(double accel);
    TrajectoryConfig(double accel, double z_init);
};

// Geodesic-interval data entering the smeared correlator denominator.
struct IntervalValue {
    Complex D;    // (4/a^2) sinh^2[(a/2)(t - i eps)]
    double Delta; // z_c(tau) - z_c(tau')
    double eps;   // regulator, >= 0
};

// x^0 = a^-1 e^{a xi} sinh(a tau), x^3 = a^-1 e^{a xi} cosh(a tau)
std::array<double, 2> rindler_to_minkowski(double a, double xi, double tau);

// z_c = z0 cosh(a tau); continuous at a = 0 (frozen center)
double classical_center(double a, double z0, double tau);

// D with the i-eps regulator applied inside the sinh argument,
// sinh[(a/2)(t - i eps)]. For eps = 0 and t -> 0, D -> t^2.
Complex interval_D(double a, double t, double eps);

// Delta = z0 [cosh a(T+t/2) - cosh a(T-t/2)] = 2 z0 sinh(aT) sinh(at/2)
double center_separation(double a, double z0, double t, double T);

IntervalValue interval(double a, double z0, double t, double T, double eps);

}  // namespace accdet::kinematics
