#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confrac/core.hpp"

namespace confrac {

using RightHandSide = std::function<double(double t, double y)>;

/// T_a y = f(t, y), y(0) = y0 on [0, horizon].
struct InitialValueProblem {
    RightHandSide rhs;
    double y0;
    double horizon;
    Alpha order;
    /// Supremum of admissible horizons, when the exact solution has one.
    std::optional<double> domain_limit = std::nullopt;
};

/// Caputo D^a y = f(t, y), y(0) = y0, with a in (0, 1] so a single initial value suffices.
struct CaputoProblem {
    RightHandSide rhs;
    double y0;
    double horizon;
    Alpha order;
};

enum class Method { classical, conformable, caputo };

std::string_view to_string(Method m);
/// Throws invalid_argument_error on an unknown name.
Method parse_method(std::string_view name);

struct SolutionTrace {
    UniformGrid grid;
    std::vector<double> values;                     // y_0 .. y_{n+1}
    std::optional<std::vector<double>> predictors;  // y^p_1 .. y^p_{n+1}
    Method method;
};

struct PcOptions {
    /// Corrector applications per step; 1 is PECE.
    int corrector_iterations = 1;
};

/// Any |y| above this, or a non-finite y, aborts the run.
inline constexpr double blow_up_threshold = 1e12;

/// Classical one-step Adams-Bashforth predictor, trapezoidal Adams-Moulton
/// corrector. Requires problem.order == 1.
SolutionTrace solve_classical_pc(const InitialValueProblem& problem, double h,
                                 const PcOptions& options = {});

/// Running sums of the conformable scheme after nodes 0 .. step_index have
/// been folded in:
///   predictor_accumulator = y0 + (h^a/a)        * sum_{j<=i} w_j f_j
///   corrector_history     = y0 + (h^a/(a(a+1))) * sum_{j<=i} a_j f_j
struct ConformablePcState {
    double predictor_accumulator;
    double corrector_history;
    std::size_t step_index;
};

struct ConformableStepResult {
    ConformablePcState state;
    double corrected;
    double predicted;
};

/// State with only node 0 folded in.
ConformablePcState conformable_initial_state(const InitialValueProblem& problem,
                                             const UniformGrid& grid);

/// Advance to node `step_index` (= state.step_index + 1). O(1) work.
ConformableStepResult conformable_step(const ConformablePcState& state,
                                       const InitialValueProblem& problem,
                                       const UniformGrid& grid, std::size_t step_index,
                                       const PcOptions& options = {});

/// Conformable predictor-corrector with O(1) work per step.
SolutionTrace solve_conformable_pc(const InitialValueProblem& problem, double h,
                                   const PcOptions& options = {});

/// Same scheme, every history sum recomputed from scratch (O(n^2)); the
/// reference for the accumulator path.
SolutionTrace solve_conformable_pc_direct(const InitialValueProblem& problem, double h,
                                          const PcOptions& options = {});

/// Caputo-type fractional Adams predictor-corrector. The weights depend on
/// n - j, so every step re-sums the whole history (O(n) per step).
SolutionTrace solve_caputo_pc(const CaputoProblem& problem, double h,
                              const PcOptions& options = {});

}  // namespace confrac
