#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Explicit Runge-Kutta integration with event root-finding.
//
// integrate_adaptive: embedded Dormand-Prince 5(4) with PI step-size control.
// integrate_fixed:    classic fixed-step RK4, kept as an independent
//                     cross-check of the adaptive results.
//
// Events are scalar functions of (t, y). A sign change over an accepted step
// is refined by bisection on the step length until the event value is below
// its absolute tolerance or the bracket is narrower than kEventTimeFloor.

namespace jumpsim {

struct IntegratorSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 1e-4;            // s
    double fixed_step = 1e-5;          // s, fixed-step verifier only
    double contact_stiffness = 1e8;    // N m^-1, penalty-contact oracle only

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || !(max_step > 0) ||
            !(fixed_step > 0) || !(contact_stiffness > 0))
            throw std::invalid_argument("integrator settings must be positive");
        if (fixed_step > max_step)
            throw std::invalid_argument("integrator.fixed_step must be <= max_step");
    }
};

inline constexpr double kStepFloor = 1e-14;       // s, controller underflow
inline constexpr double kEventTimeFloor = 1e-12;  // s, bisection bracket floor

struct StepUnderflowError : std::runtime_error {
    explicit StepUnderflowError(const std::string& what)
        : std::runtime_error(what) {}
};

struct DomainExitError : std::runtime_error {
    explicit DomainExitError(const std::string& what)
        : std::runtime_error(what) {}
};

template <int N>
using StateVec = Eigen::Matrix<double, N, 1>;

template <int N>
using DerivFn = std::function<StateVec<N>(double, const StateVec<N>&)>;

/// Scalar event watched during integration. direction < 0 triggers on a
/// + -> - crossing, > 0 on - -> +, 0 on either. abs_tol is the bisection
/// target for |value| at the reported root (0 means bracket-width only).
template <int N>
struct OdeEvent {
    std::string name;
    std::function<double(double, const StateVec<N>&)> value;
    int direction = 0;
    double abs_tol = 0.0;
};

template <int N>
struct OdeSolution {
    std::vector<double> t;
    std::vector<StateVec<N>> y;

    std::optional<std::size_t> event;  // index of the event that fired
    double t_event = 0.0;
    StateVec<N> y_event = StateVec<N>::Zero();
    double event_value = 0.0;
    double bracket_lo = 0.0;  // final bisection bracket [s]
    double bracket_hi = 0.0;

    bool stopped_on_event() const { return event.has_value(); }
};

namespace detail {

// Dormand-Prince 5(4) tableau (FSAL).
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double kB5[7] = {35.0 / 384,      0.0,         500.0 / 1113, 125.0 / 192,
                                  -2187.0 / 6784,  11.0 / 84,   0.0};
inline constexpr double kB4[7] = {5179.0 / 57600,  0.0,         7571.0 / 16695, 393.0 / 640,
                                  -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

template <int N>
struct DopriStep {
    StateVec<N> y5;
    StateVec<N> err;
    StateVec<N> k_last;  // f(t+h, y5), FSAL
};

template <int N>
DopriStep<N> dopri_step(const DerivFn<N>& f, double t, const StateVec<N>& y,
                        double h, const StateVec<N>& k0) {
    StateVec<N> k[7];
    k[0] = k0;
    for (int s = 1; s < 7; ++s) {
        StateVec<N> acc = y;
        for (int j = 0; j < s; ++j) acc += (h * kA[s][j]) * k[j];
        k[s] = f(t + kC[s] * h, acc);
    }
    DopriStep<N> out;
    out.y5 = y;
    StateVec<N> y4 = y;
    for (int s = 0; s < 7; ++s) {
        out.y5 += (h * kB5[s]) * k[s];
        y4 += (h * kB4[s]) * k[s];
    }
    out.err = out.y5 - y4;
    out.k_last = k[6];  // equals f(t+h, y5) by construction
    return out;
}

template <int N>
double error_norm(const StateVec<N>& err, const StateVec<N>& y0,
                  const StateVec<N>& y1, const IntegratorSettings& s) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        const double sc =
            s.abs_tol + s.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / sc;
        acc += r * r;
    }
    return std::sqrt(acc / N);
}

inline bool crossed(double e0, double e1, int direction) {
    if (direction <= 0 && e0 > 0.0 && e1 <= 0.0) return true;
    if (direction >= 0 && e0 < 0.0 && e1 >= 0.0) return true;
    return false;
}

// Refine the root of `ev` inside the step [t0, t0+h] by bisecting the step
// length; each probe takes a fresh single RK step of the trial size from
// (t0, y0). Returns the root offset and writes the refined state/value.
template <int N, class Stepper>
double bisect_event(const OdeEvent<N>& ev, Stepper&& step_to, double t0,
                    double h, double e0, StateVec<N>* y_root, double* e_root,
                    double* lo_out, double* hi_out) {
    double lo = 0.0, hi = h;
    StateVec<N> y_hi = step_to(h);
    double e_hi = ev.value(t0 + h, y_hi);
    StateVec<N> y_best = y_hi;
    double t_best = h, e_best = e_hi;
    while (hi - lo > kEventTimeFloor) {
        const double mid = 0.5 * (lo + hi);
        const StateVec<N> y_mid = step_to(mid);
        const double e_mid = ev.value(t0 + mid, y_mid);
        if (std::abs(e_mid) < std::abs(e_best)) {
            y_best = y_mid;
            t_best = mid;
            e_best = e_mid;
        }
        if (ev.abs_tol > 0.0 && std::abs(e_mid) < ev.abs_tol) break;
        const bool same_side = (e_mid > 0.0) == (e0 > 0.0) && e_mid != 0.0;
        if (same_side)
            lo = mid;
        else
            hi = mid;
    }
    *y_root = y_best;
    *e_root = e_best;
    *lo_out = lo;
    *hi_out = hi;
    return t_best;
}

}  // namespace detail

/// Integrates y' = f(t, y) from (t0, y0) until t_end or the first event root.
/// `domain` (optional) must stay true along the trajectory; leaving the
/// admissible region without an event raises DomainExitError.
template <int N>
OdeSolution<N> integrate_adaptive(
    const DerivFn<N>& f, double t0, const StateVec<N>& y0, double t_end,
    const std::vector<OdeEvent<N>>& events, const IntegratorSettings& settings,
    const std::function<bool(double, const StateVec<N>&)>& domain = nullptr) {
    settings.validate();
    OdeSolution<N> sol;
    sol.t.push_back(t0);
    sol.y.push_back(y0);

    double t = t0;
    StateVec<N> y = y0;
    StateVec<N> k0 = f(t, y);
    std::vector<double> ev_prev(events.size());
    for (std::size_t i = 0; i < events.size(); ++i)
        ev_prev[i] = events[i].value(t, y);

    // Starting step from the scaled derivative magnitude.
    double h = settings.max_step;
    {
        double d0 = 0.0, d1 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double sc = settings.abs_tol + settings.rel_tol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k0[i] / sc) * (k0[i] / sc);
        }
        if (d1 > 0.0)
            h = std::min(settings.max_step, 0.01 * std::sqrt(d0 / d1) + 1e-9);
    }

    double err_prev = 1e-4;
    bool rejected = false;
    while (t < t_end) {
        h = std::min({h, settings.max_step, t_end - t});
        if (h < kStepFloor)
            throw StepUnderflowError("integrate_adaptive: step size underflow at t=" +
                                     std::to_string(t));
        const auto trial = detail::dopri_step<N>(f, t, y, h, k0);
        if (!trial.y5.allFinite())
            throw DomainExitError("integrate_adaptive: non-finite state at t=" +
                                  std::to_string(t));
        const double err = detail::error_norm<N>(trial.err, y, trial.y5, settings);
        if (err <= 1.0) {
            // Accepted. Check events over [t, t+h] before committing.
            std::optional<std::size_t> hit;
            double hit_dt = h;
            for (std::size_t i = 0; i < events.size(); ++i) {
                const double e1 = events[i].value(t + h, trial.y5);
                if (detail::crossed(ev_prev[i], e1, events[i].direction)) {
                    auto step_to = [&](double dt) {
                        return detail::dopri_step<N>(f, t, y, dt, k0).y5;
                    };
                    StateVec<N> y_root;
                    double e_root, lo, hi;
                    const double dt = detail::bisect_event<N>(
                        events[i], step_to, t, h, ev_prev[i], &y_root, &e_root,
                        &lo, &hi);
                    if (!hit || dt < hit_dt) {
                        hit = i;
                        hit_dt = dt;
                        sol.event = i;
                        sol.t_event = t + dt;
                        sol.y_event = y_root;
                        sol.event_value = e_root;
                        sol.bracket_lo = t + lo;
                        sol.bracket_hi = t + hi;
                    }
                }
            }
            if (hit) {
                sol.t.push_back(sol.t_event);
                sol.y.push_back(sol.y_event);
                return sol;
            }
            t += h;
            y = trial.y5;
            k0 = trial.k_last;
            for (std::size_t i = 0; i < events.size(); ++i)
                ev_prev[i] = events[i].value(t, y);
            sol.t.push_back(t);
            sol.y.push_back(y);
            if (domain && !domain(t, y))
                throw DomainExitError(
                    "integrate_adaptive: state left the admissible domain at t=" +
                    std::to_string(t));
            // PI controller (accept branch).
            const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.17) *
                               std::pow(err_prev, 0.04);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(err, 1e-10);
            rejected = false;
        } else {
            const double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.1, rejected ? 1.0 : 0.9);
            rejected = true;
        }
    }
    return sol;
}

/// Classic fixed-step RK4 march with the same event interface as the
/// adaptive driver; serves as an independent cross-check.
template <int N>
OdeSolution<N> integrate_fixed(
    const DerivFn<N>& f, double t0, const StateVec<N>& y0, double t_end,
    const std::vector<OdeEvent<N>>& events, const IntegratorSettings& settings,
    const std::function<bool(double, const StateVec<N>&)>& domain = nullptr) {
    settings.validate();
    const double h = settings.fixed_step;
    OdeSolution<N> sol;
    sol.t.push_back(t0);
    sol.y.push_back(y0);

    auto rk4_from = [&](double t, const StateVec<N>& y, double dt) {
        const StateVec<N> k1 = f(t, y);
        const StateVec<N> k2 = f(t + dt / 2, y + (dt / 2) * k1);
        const StateVec<N> k3 = f(t + dt / 2, y + (dt / 2) * k2);
        const StateVec<N> k4 = f(t + dt, y + dt * k3);
        return (y + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)).eval();
    };

    double t = t0;
    StateVec<N> y = y0;
    std::vector<double> ev_prev(events.size());
    for (std::size_t i = 0; i < events.size(); ++i)
        ev_prev[i] = events[i].value(t, y);

    while (t < t_end) {
        const double dt = std::min(h, t_end - t);
        const StateVec<N> y1 = rk4_from(t, y, dt);
        if (!y1.allFinite())
            throw DomainExitError("integrate_fixed: non-finite state at t=" +
                                  std::to_string(t));
        std::optional<std::size_t> hit;
        double hit_dt = dt;
        for (std::size_t i = 0; i < events.size(); ++i) {
            const double e1 = events[i].value(t + dt, y1);
            if (detail::crossed(ev_prev[i], e1, events[i].direction)) {
                auto step_to = [&](double ddt) { return rk4_from(t, y, ddt); };
                StateVec<N> y_root;
                double e_root, lo, hi;
                const double droot = detail::bisect_event<N>(
                    events[i], step_to, t, dt, ev_prev[i], &y_root, &e_root,
                    &lo, &hi);
                if (!hit || droot < hit_dt) {
                    hit = i;
                    hit_dt = droot;
                    sol.event = i;
                    sol.t_event = t + droot;
                    sol.y_event = y_root;
                    sol.event_value = e_root;
                    sol.bracket_lo = t + lo;
                    sol.bracket_hi = t + hi;
                }
            }
        }
        if (hit) {
            sol.t.push_back(sol.t_event);
            sol.y.push_back(sol.y_event);
            return sol;
        }
        t += dt;
        y = y1;
        for (std::size_t i = 0; i < events.size(); ++i)
            ev_prev[i] = events[i].value(t, y);
        sol.t.push_back(t);
        sol.y.push_back(y);
        if (domain && !domain(t, y))
            throw DomainExitError(
                "integrate_fixed: state left the admissible domain at t=" +
                std::to_string(t));
    }
    return sol;
}

}  // namespace jumpsim
