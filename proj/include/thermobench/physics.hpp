#pragma once

#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "thermobench/timeseries.hpp"

namespace thermobench {

// Heating COP upper bound for reservoirs at t_sink > t_source (kelvin).
double carnot_cop(double t_sink, double t_source);

// Attainable fraction of the Carnot bound for real machines.
inline constexpr double kBandLow = 0.3;
inline constexpr double kBandHigh = 0.8;

std::pair<double, double> realistic_band(double cop_carnot);

// Per-sample thermodynamic reference quantities, structure-of-arrays.
struct PhysicsSignals {
    Eigen::VectorXd t_sink;
    Eigen::VectorXd t_source;
    Eigen::VectorXd heat_output;   // MW
    Eigen::VectorXd power_input;   // MW
    Eigen::VectorXd cop_carnot;
    Eigen::VectorXd cop_lo;
    Eigen::VectorXd cop_hi;

    Eigen::Index size() const { return cop_carnot.size(); }

    // Derives carnot and the band from temperatures and checks invariants.
    static PhysicsSignals from_columns(Eigen::VectorXd t_sink,
                                       Eigen::VectorXd t_source,
                                       Eigen::VectorXd heat_output,
                                       Eigen::VectorXd power_input);

    PhysicsSignals select(const std::vector<std::size_t>& idx) const;
    void validate() const;
};

struct LossWeights {
    double lambda_physics = 0.1;
    double lambda_energy = 0.05;
};

struct LossBreakdown {
    double data = 0.0;
    double physics = 0.0;
    double energy = 0.0;
    double total = 0.0;
};

enum class PhysicsMode {
    Literal,  // squared distance to carnot plus squared distance to band midpoint
    Hinge,    // one-sided: above carnot, below band low, above band high
};

enum class Reduction { Mean, Sum };

// Thermodynamic-consistency penalty on predicted COP.
double physics_loss(const Eigen::VectorXd& cop_pred, const PhysicsSignals& s,
                    PhysicsMode mode = PhysicsMode::Literal,
                    Reduction reduction = Reduction::Mean);

// d physics_loss / d cop_pred, same mode/reduction.
Eigen::VectorXd physics_loss_grad(const Eigen::VectorXd& cop_pred,
                                  const PhysicsSignals& s,
                                  PhysicsMode mode = PhysicsMode::Literal,
                                  Reduction reduction = Reduction::Mean);

// Energy-conservation penalty: heat output vs power * predicted COP.
double energy_loss(const Eigen::VectorXd& heat, const Eigen::VectorXd& power,
                   const Eigen::VectorXd& cop_pred,
                   Reduction reduction = Reduction::Mean);

Eigen::VectorXd energy_loss_grad(const Eigen::VectorXd& heat,
                                 const Eigen::VectorXd& power,
                                 const Eigen::VectorXd& cop_pred,
                                 Reduction reduction = Reduction::Mean);

// Composite objective: data + lambda_physics * physics + lambda_energy * energy.
LossBreakdown total_loss(double data, double physics, double energy,
                         const LossWeights& w = {});

}  // namespace thermobench
