#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monopole/error.hpp"
#include "monopole/tolerances.hpp"

// Explicit Runge-Kutta integration over Eigen state vectors with monitor
// hooks. Halts raised by the right-hand side or the guard end the run early;
// the samples accepted so far are kept and the error is stored in `halt`.
namespace monopole::integrate {

template <class State>
struct OdeProblem {
  std::function<State(double, const State&)> rhs;
  State initial;
  double t_start = 0.0;
  double t_end = 1.0;
  double step = 1e-3;
  /// Called on every accepted state; throws monopole::Error to halt.
  std::function<void(double, const State&)> guard;
};

template <class State>
struct MonitorHook {
  std::string name;
  std::function<Eigen::VectorXd(double, const State&)> fn;
};

struct MonitorSeries {
  std::string name;
  int width = 0;
  std::vector<double> values;  // row-major, one row per sample

  Eigen::VectorXd at(std::size_t i) const {
    return Eigen::Map<const Eigen::VectorXd>(values.data() + i * width, width);
  }
  double scalar(std::size_t i) const { return values[i * width]; }
};

template <class State>
struct Trajectory {
  std::vector<double> times;  // monotone in the direction of integration
  std::vector<State> states;
  std::vector<MonitorSeries> monitors;
  std::optional<Error> halt;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  std::size_t size() const { return times.size(); }

  const MonitorSeries& monitor(const std::string& name) const {
    for (const auto& m : monitors) {
      if (m.name == name) return m;
    }
    throw Error(ErrorKind::BadInput, "no monitor named " + name);
  }

  void throw_if_halted() const {
    if (halt) throw *halt;
  }
};

namespace detail {

template <class State>
void validate(const OdeProblem<State>& p) {
  if (!p.rhs) throw Error(ErrorKind::BadInput, "problem has no right-hand side");
  if (!(p.step > 0.0) || !std::isfinite(p.step)) throw Error(ErrorKind::BadInput, "step must be positive");
  if (!std::isfinite(p.t_start) || !std::isfinite(p.t_end) || p.t_end == p.t_start) {
    throw Error(ErrorKind::BadInput, "t_end must differ from t_start");
  }
  if (!p.initial.allFinite()) throw Error(ErrorKind::NonFiniteState, "initial state is not finite");
}

template <class State>
class Recorder {
 public:
  Recorder(Trajectory<State>& out, const std::vector<MonitorHook<State>>& hooks)
      : out_(out), hooks_(hooks) {
    for (const auto& h : hooks) out_.monitors.push_back({h.name, -1, {}});
  }

  void record(double t, const State& y) {
    for (std::size_t i = 0; i < hooks_.size(); ++i) {
      const Eigen::VectorXd v = hooks_[i].fn(t, y);
      auto& series = out_.monitors[i];
      if (series.width < 0) series.width = static_cast<int>(v.size());
      series.values.insert(series.values.end(), v.data(), v.data() + v.size());
    }
    out_.times.push_back(t);
    out_.states.push_back(y);
  }

  void finish() {
    for (auto& s : out_.monitors) s.width = std::max(s.width, 0);
  }

 private:
  Trajectory<State>& out_;
  const std::vector<MonitorHook<State>>& hooks_;
};

template <class State>
State rk4_step(const OdeProblem<State>& p, double t, const State& y, double h) {
  const State k1 = p.rhs(t, y);
  const State k2 = p.rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = p.rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = p.rhs(t + h, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State>
void accept(const OdeProblem<State>& p, Recorder<State>& rec, double t, const State& y) {
  if (!y.allFinite()) throw Error(ErrorKind::NonFiniteState, "state became non-finite");
  if (p.guard) p.guard(t, y);
  rec.record(t, y);
}

}  // namespace detail

/// Classical fixed-step RK4. Sample i sits at t_start ± i·step; the final
/// step is shortened to land on t_end. Negative spans integrate backwards.
template <class State>
Trajectory<State> rk4_integrate(const OdeProblem<State>& p,
                                const std::vector<MonitorHook<State>>& hooks = {}) {
  detail::validate(p);
  Trajectory<State> out;
  detail::Recorder<State> rec(out, hooks);
  const double span = p.t_end - p.t_start;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double h = dir * p.step;
  const auto full = static_cast<long long>(std::floor(std::abs(span) / p.step + 1e-9));
  try {
    detail::accept(p, rec, p.t_start, p.initial);
    State y = p.initial;
    double t = p.t_start;
    for (long long i = 1; i <= full; ++i) {
      const double t_next = i == full && std::abs(p.t_start + i * h - p.t_end) <= 1e-9 * p.step
                                ? p.t_end
                                : p.t_start + static_cast<double>(i) * h;
      y = detail::rk4_step(p, t, y, t_next - t);
      t = t_next;
      detail::accept(p, rec, t, y);
      ++out.accepted_steps;
    }
    if (t != p.t_end) {
      y = detail::rk4_step(p, t, y, p.t_end - t);
      t = p.t_end;
      detail::accept(p, rec, t, y);
      ++out.accepted_steps;
    }
  } catch (const Error& e) {
    out.halt = e;
  }
  rec.finish();
  return out;
}

/// RK4 with step-doubling error control: a step of size h is compared with
/// two steps of size h/2 and the estimate |y₂ - y₁|∞/15 decides acceptance.
/// Halve on estimate > tol, double on estimate < tol/32, steps clamped to
/// [1e-8, 1e-1]. The starting step is p.step.
template <class State>
Trajectory<State> step_doubling_integrate(const OdeProblem<State>& p, double tol,
                                          const std::vector<MonitorHook<State>>& hooks = {}) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorKind::BadInput, "tolerance must be positive");
  detail::validate(p);
  Trajectory<State> out;
  detail::Recorder<State> rec(out, hooks);
  const double dir = p.t_end > p.t_start ? 1.0 : -1.0;
  double h = std::clamp(p.step, kTol.min_step, kTol.max_step);
  try {
    detail::accept(p, rec, p.t_start, p.initial);
    State y = p.initial;
    double t = p.t_start;
    while (dir * (p.t_end - t) > 0.0) {
      const double remaining = std::abs(p.t_end - t);
      const bool last = h >= remaining;
      const double hs = last ? remaining : h;
      const State full = detail::rk4_step(p, t, y, dir * hs);
      const State half = detail::rk4_step(p, t, y, dir * 0.5 * hs);
      const State two = detail::rk4_step(p, t + dir * 0.5 * hs, half, dir * 0.5 * hs);
      const double est = (two - full).cwiseAbs().maxCoeff() / 15.0;
      if (!std::isfinite(est) || est > tol) {
        if (0.5 * hs < kTol.min_step) {
          throw Error(ErrorKind::StepUnderflow, "required step fell below the minimum");
        }
        h = 0.5 * hs;
        ++out.rejected_steps;
        continue;
      }
      t = last ? p.t_end : t + dir * hs;
      y = two;
      detail::accept(p, rec, t, y);
      ++out.accepted_steps;
      if (est < tol / 32.0) h = std::min(2.0 * hs, kTol.max_step);
    }
  } catch (const Error& e) {
    out.halt = e;
  }
  rec.finish();
  return out;
}

}  // namespace monopole::integrate
