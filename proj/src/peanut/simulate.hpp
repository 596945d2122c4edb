#pragma once

#include <cstdint>
#include <string>

#include "peanut/frame.hpp"
#include "peanut/impute.hpp"

namespace peanut {

enum class RelationKind { linear, sine, tanh_s };

/// linear: a + b*x; sine: a*sin(b*x); tanh: a*tanh(b*x). The latter two are
/// the bounded smooth forms used for nonlinear scenarios.
struct Relation {
  RelationKind kind = RelationKind::linear;
  double a = 0.0;
  double b = 1.0;
};

const char* relation_name(RelationKind kind);
RelationKind relation_from_name(const std::string& name);

struct SimulationSpec {
  int64_t n_days = 0;
  Relation relation;
  double ar_phi = 0.0;       // feature AR(1) coefficient, in (-1, 1)
  double ar_noise_sd = 1.0;  // innovation sd, >= 0
  double target_noise_sd = 0.0;
  int64_t weekly_period = 7;  // >= 2
  uint64_t seed = 0;
};

/// Full truth plus the weekly-masked view: the target is observed on days
/// 0, p, 2p, ... only. Columns are "feature" (feature role, fully observed)
/// and "target" (target role).
struct SimulationTruth {
  ObservationFrame full;
  ObservationFrame masked;
  SimulationSpec spec;
};

double apply_relation(const Relation& relation, double x);

/// Feature path x_t = phi*x_{t-1} + e_t with a stationary start
/// (x_0 = e_0/sqrt(1-phi^2)); target = relation(feature) + noise. Feature
/// innovations and target noise come from streams derived from (seed, 1)
/// and (seed, 2), so the feature path is unchanged by target-noise knobs.
SimulationTruth generate(const SimulationSpec& spec);

/// Root-mean-square error of the hybrid's target against the full truth,
/// over originally masked cells only.
double imputation_rmse(const SimulationTruth& truth, const HybridFrame& hybrid);

/// The benchmark scenario used by the acceptance checks: tanh relation on a
/// persistent AR(1) feature, 1253 days, weekly masking.
SimulationSpec default_nonlinear_spec(uint64_t seed);

}  // namespace peanut
