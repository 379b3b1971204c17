#pragma once

#include <optional>

#include "cleconn/specialfn.hpp"

namespace cleconn {

enum class Regime { Simple, Four, NonSimple };

const char* regime_name(Regime r);

struct KappaContext {
    double kappa = 6.0;
    double theta = 1.0;              // -2 cos(4 pi / kappa)
    double eta = 1.0;                // 1 / theta
    double alpha = 0.0;              // (6 - kappa) / (2 kappa)
    double bessel_dim = 5.0 / 3.0;   // 3 - 8 / kappa
    double boundary_exponent = 1.0 / 3.0;  // 8 / kappa - 1
    Regime regime = Regime::NonSimple;

    // Bessel driving pair and boundary hitting only make sense for kappa in (4, 8).
    bool nonsimple() const { return regime == Regime::NonSimple; }
};

KappaContext make_context(double kappa);

// f(x) = 2F1(4/k, 1-4/k; 8/k; x) on [0, 1].
HypergeometricParams f_params(const KappaContext& ctx);
double f_kappa(const KappaContext& ctx, double x);
// f(1 - eps) evaluated from eps.
double f_kappa_complement(const KappaContext& ctx, double eps);
double f_at_one(const KappaContext& ctx);

enum class LimitKind { Value, Limit, Divergent };

struct PartitionValue {
    double value = 0.0;
    LimitKind kind = LimitKind::Value;
};

// Z(x) = x^{2/k} (1-x)^{1-6/k} f(x).  At x = 0 or 1 the limit is reported
// with kind Limit, or Divergent when Z(1-) = infinity (kappa > 6).
PartitionValue partition_Z(const KappaContext& ctx, double x);

// log Z at x, with xc = 1 - x passed separately so that either side can be tiny.
double log_partition_Z(const KappaContext& ctx, double x, double xc);

struct HookupEvaluation {
    double x = 0.5;
    double z_x = 0.0;
    double z_mirror = 0.0;
    double h = 0.0;
};

HookupEvaluation hookup_probability(const KappaContext& ctx, double x);

// Rectangle aspect ratio L <-> cross ratio x.  L(1/2) = 1 and L decreases in x.
double aspect_to_cross(double aspect);
double cross_to_aspect(double x);

struct ModelRelation {
    double loop_weight = 0.0;            // N for the O(N) model
    std::optional<double> cluster_weight;  // q, only for kappa in [4, 8)
    double central_charge = 0.0;
};

ModelRelation relate_models(const KappaContext& ctx);

// Probability that SLE_k from 0 to infinity touches [1, 1 + eps].
double cardy_hit_probability(const KappaContext& ctx, double eps);
// Same for a general interval [left, right] with 0 < left < right.
double interval_hit_probability(const KappaContext& ctx, double left, double right);
// Normalizing integral in closed form and by quadrature.
double cardy_denominator(const KappaContext& ctx);
double cardy_denominator_quadrature(const KappaContext& ctx);
// lim P * eps^{1 - 8/k} as eps -> 0.
double cardy_small_interval_constant(const KappaContext& ctx);

// Expected local time at the swallowing time of 1.
double localtime_expectation(const KappaContext& ctx);
double bessel_value_function_U(const KappaContext& ctx, double x);
// U(1) - U(1 + h), without cancellation.
double bessel_value_drop(const KappaContext& ctx, double h);
double u_ode_residual(const KappaContext& ctx, double x, double h = 1e-4);

double avoid_probability_Q(const KappaContext& ctx, double x);
double c_event_probability(const KappaContext& ctx, double eps);
double q_ode_residual(const KappaContext& ctx, double x, double h = 1e-4);

// The two Gamma-function routes to theta, for the identity checks.
double inverse_theta_from_fone(const KappaContext& ctx);  // kappa in (4, 8)
double eta_from_gamma(const KappaContext& ctx);   // kappa in (8/3, 4)

}  // namespace cleconn
