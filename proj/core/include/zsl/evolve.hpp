#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "zsl/diagnostics.hpp"
#include "zsl/solver.hpp"

namespace zsl {

/// Called after every recorded step with the current state and its record.
using Observer = std::function<void(const ZakharovState&, const DiagnosticsRecord&)>;

struct EvolveOptions {
  /// Record every `record_stride` steps; the initial and final states are
  /// always recorded.
  long record_stride = 1;
  DiagnosticsConfig diagnostics;
  Observer observer;
};

struct EvolveResult {
  ZakharovState state;
  std::vector<DiagnosticsRecord> series;
  long steps = 0;
};

/// Fixed-step integration from s.t to s.t + p.t_final with the integrator
/// selected in `p`. If t_final is not a multiple of dt the last step is
/// shortened. Deterministic for given inputs.
EvolveResult evolve(ZakharovState s, const std::shared_ptr<const Background>& bg,
                    const SimParams& p, const EvolveOptions& opts = {});

/// Runs the perturbed NLS for p.t_final with step p.dt (same step rule as
/// evolve) and returns the final field.
ComplexField evolve_pnls(ComplexField u, const std::shared_ptr<const Background>& bg,
                         const SimParams& p);

}  // namespace zsl
