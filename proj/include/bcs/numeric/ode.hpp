#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace bcs {

struct OdeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    double h_init = 0.0;        // 0 = pick automatically
    double h_max = std::numeric_limits<double>::infinity();
    long max_steps = 200'000'000;
    bool fixed_step = false;    // reproducibility mode: no error control
    double fixed_h = 0.0;
};

namespace detail {
inline double abs2_(double x) { return x * x; }
inline double abs2_(const std::complex<double>& x) { return std::norm(x); }
}

// Dormand-Prince 5(4) with FSAL and a standard step controller.  The state
// type must behave like an Eigen vector (size(), coefficient access, linear
// expressions).  rhs has signature rhs(t, y, dydt).
template <class Vec>
class Dopri5 {
public:
    explicit Dopri5(const OdeOptions& opt = {}) : opt_(opt) {}

    // Advances y from t0 to t1 in place.
    template <class Rhs>
    void integrate(Rhs&& rhs, Vec& y, double t0, double t1) {
        if (t1 == t0) return;
        if (t1 < t0) throw OdeError("ode: backwards integration not supported");
        ensure_workspace(y);
        rhs(t0, y, k1_);
        double t = t0;
        double h = opt_.fixed_step ? opt_.fixed_h : initial_step(y, t0, t1);
        if (opt_.fixed_step && h <= 0.0)
            throw OdeError("ode: fixed_step mode requires fixed_h > 0");
        long steps = 0;
        const double eps = std::numeric_limits<double>::epsilon();
        while (t < t1) {
            if (++steps > opt_.max_steps) throw OdeError("ode: max step count exceeded");
            bool clipped = false;
            if (t + h >= t1) { h = t1 - t; clipped = true; }
            step(rhs, y, t, h);
            if (opt_.fixed_step) {
                y = y5_;
                k1_ = k7_;
                t = clipped ? t1 : t + h;
                continue;
            }
            double err = error_norm(y, y5_);
            if (err <= 1.0) {
                y = y5_;
                k1_ = k7_;   // FSAL
                t = clipped ? t1 : t + h;
                h = std::min(opt_.h_max, h * std::min(5.0, std::max(0.2, 0.9 * std::pow(err > 1e-30 ? err : 1e-30, -0.2))));
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (h < 16.0 * eps * std::max(std::abs(t), std::abs(t1 - t0)))
                    throw OdeError("ode: step size underflow at t=" + std::to_string(t) +
                                   " (local error estimate exceeds tolerance)");
            }
        }
    }

    // Integrate with evenly spaced sample callbacks: obs(t, y) at t0, t0+dt, ..., t1.
    template <class Rhs, class Obs>
    void integrate_sampled(Rhs&& rhs, Vec& y, double t0, double t1, double dt_sample, Obs&& obs) {
        if (dt_sample <= 0.0) throw OdeError("ode: sample interval must be positive");
        obs(t0, y);
        long nsamp = static_cast<long>(std::ceil((t1 - t0) / dt_sample - 1e-9));
        double t = t0;
        for (long i = 1; i <= nsamp; ++i) {
            double tn = (i == nsamp) ? t1 : t0 + static_cast<double>(i) * dt_sample;
            integrate(rhs, y, t, tn);
            obs(tn, y);
            t = tn;
        }
    }

private:
    OdeOptions opt_;
    Vec k1_, k2_, k3_, k4_, k5_, k6_, k7_, y5_, y4_, ytmp_;
    bool ws_ready_ = false;

    void ensure_workspace(const Vec& y) {
        if (ws_ready_) return;
        k1_ = y; k2_ = y; k3_ = y; k4_ = y; k5_ = y; k6_ = y; k7_ = y;
        y5_ = y; y4_ = y; ytmp_ = y;
        ws_ready_ = true;
    }

    double initial_step(const Vec& y, double t0, double t1) {
        if (opt_.h_init > 0.0) return std::min(opt_.h_init, t1 - t0);
        // scale from the first derivative, conservative; from a zero state
        // there is no amplitude scale, so start from a small span fraction
        // and let the controller grow the step
        double dn = 0.0, yn = 0.0;
        for (long i = 0; i < y.size(); ++i) {
            dn = std::max(dn, std::sqrt(detail::abs2_(k1_[i])));
            yn = std::max(yn, std::sqrt(detail::abs2_(y[i])));
        }
        double h;
        if (dn > 0.0 && yn > 0.0)
            h = 0.01 * yn / dn;
        else
            h = 1e-6 * (t1 - t0);
        h = std::min({h, (t1 - t0), opt_.h_max});
        return std::max(h, 1e-12 * (t1 - t0));
    }

    template <class Rhs>
    void step(Rhs&& rhs, const Vec& y, double t, double h) {
        // Dormand-Prince RK5(4)7M tableau
        ytmp_ = y + h * (0.2 * k1_);
        rhs(t + 0.2 * h, ytmp_, k2_);
        ytmp_ = y + h * ((3.0 / 40.0) * k1_ + (9.0 / 40.0) * k2_);
        rhs(t + 0.3 * h, ytmp_, k3_);
        ytmp_ = y + h * ((44.0 / 45.0) * k1_ - (56.0 / 15.0) * k2_ + (32.0 / 9.0) * k3_);
        rhs(t + 0.8 * h, ytmp_, k4_);
        ytmp_ = y + h * ((19372.0 / 6561.0) * k1_ - (25360.0 / 2187.0) * k2_ + (64448.0 / 6561.0) * k3_ - (212.0 / 729.0) * k4_);
        rhs(t + (8.0 / 9.0) * h, ytmp_, k5_);
        ytmp_ = y + h * ((9017.0 / 3168.0) * k1_ - (355.0 / 33.0) * k2_ + (46732.0 / 5247.0) * k3_ + (49.0 / 176.0) * k4_ - (5103.0 / 18656.0) * k5_);
        rhs(t + h, ytmp_, k6_);
        y5_ = y + h * ((35.0 / 384.0) * k1_ + (500.0 / 1113.0) * k3_ + (125.0 / 192.0) * k4_ - (2187.0 / 6784.0) * k5_ + (11.0 / 84.0) * k6_);
        rhs(t + h, y5_, k7_);
        y4_ = y + h * ((5179.0 / 57600.0) * k1_ + (7571.0 / 16695.0) * k3_ + (393.0 / 640.0) * k4_ - (92097.0 / 339200.0) * k5_ + (187.0 / 2100.0) * k6_ + (1.0 / 40.0) * k7_);
    }

    double error_norm(const Vec& y0, const Vec& y1) const {
        double acc = 0.0;
        const long n = y0.size();
        for (long i = 0; i < n; ++i) {
            double e = std::sqrt(detail::abs2_(y5_[i] - y4_[i]));
            double sc = opt_.atol + opt_.rtol * std::max(std::sqrt(detail::abs2_(y0[i])), std::sqrt(detail::abs2_(y1[i])));
            acc += (e / sc) * (e / sc);
        }
        return std::sqrt(acc / static_cast<double>(n));
    }
};

}  // namespace bcs
