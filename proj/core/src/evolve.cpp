#include "zsl/evolve.hpp"

#include <cmath>
#include <optional>

#include "zsl/errors.hpp"

namespace zsl {
namespace {

struct StepPlan {
  long full = 0;
  double remainder = 0.0;
};

StepPlan plan_steps(const SimParams& p) {
  const double r = p.t_final / p.dt;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-9 * std::max(1.0, r)) {
    return {static_cast<long>(nearest), 0.0};
  }
  const long full = static_cast<long>(std::floor(r));
  return {full, p.t_final - static_cast<double>(full) * p.dt};
}

// Uniform stepping interface over the two formulations. The split variant
// keeps its own state and converts back only when asked.
class Stepper {
 public:
  Stepper(const std::shared_ptr<const Background>& bg, const SimParams& p, ZakharovState s)
      : lambda_(p.lambda) {
    if (p.integrator == Integrator::strang) {
      strang_.emplace(bg, p);
      state_ = std::move(s);
    } else {
      split_.emplace(bg, p);
      split_state_ = to_split(s, lambda_);
    }
  }
  void step(double t) {
    if (strang_) {
      state_ = strang_->step(state_);
      state_.t = t;
    } else {
      split_state_ = split_->step(split_state_);
      split_state_.t = t;
    }
  }
  ZakharovState current() const {
    return strang_ ? state_ : from_split(split_state_, lambda_);
  }

 private:
  double lambda_;
  std::optional<StrangIntegrator> strang_;
  std::optional<SplitDuhamelIntegrator> split_;
  ZakharovState state_;
  SplitState split_state_;
};

}  // namespace

EvolveResult evolve(ZakharovState s, const std::shared_ptr<const Background>& bg,
                    const SimParams& p, const EvolveOptions& opts) {
  if (opts.record_stride < 1) throw UsageError("sim.record_stride must be >= 1");
  p.validate(bg->grid());
  require_same_grid(s.grid(), bg->grid());
  const StepPlan plan = plan_steps(p);
  const double t0 = s.t;

  EvolveResult out;
  auto emit = [&](const ZakharovState& st) {
    out.series.push_back(record(st, *bg, p.lambda, opts.diagnostics));
    if (opts.observer) opts.observer(st, out.series.back());
  };
  emit(s);

  Stepper stepper(bg, p, std::move(s));
  for (long i = 1; i <= plan.full; ++i) {
    // t from the step count so long runs do not accumulate drift.
    stepper.step(t0 + static_cast<double>(i) * p.dt);
    if (i % opts.record_stride == 0 || (i == plan.full && plan.remainder == 0.0)) {
      emit(stepper.current());
    }
  }
  s = stepper.current();
  if (plan.remainder > 0.0) {
    SimParams last = p;
    last.dt = plan.remainder;
    Stepper tail(bg, last, std::move(s));
    tail.step(t0 + p.t_final);
    s = tail.current();
    emit(s);
  }
  out.steps = plan.full + (plan.remainder > 0.0 ? 1 : 0);
  out.state = std::move(s);
  return out;
}

ComplexField evolve_pnls(ComplexField u, const std::shared_ptr<const Background>& bg,
                         const SimParams& p) {
  p.validate(bg->grid());
  const StepPlan plan = plan_steps(p);
  const PnlsIntegrator pnls(bg, p.dt, p.dealias);
  for (long i = 0; i < plan.full; ++i) u = pnls.step(u, static_cast<double>(i) * p.dt);
  if (plan.remainder > 0.0) {
    u = PnlsIntegrator(bg, plan.remainder, p.dealias).step(u, static_cast<double>(plan.full) * p.dt);
  }
  return u;
}

}  // namespace zsl
