#include "thermobench/physics.hpp"

#include <cmath>

namespace thermobench {

double carnot_cop(double t_sink, double t_source) {
    if (!(t_source > 0.0)) throw Error("carnot_cop: t_source must be > 0 K");
    if (!(t_sink > t_source))
        throw Error("carnot_cop: t_sink must exceed t_source");
    return t_sink / (t_sink - t_source);
}

std::pair<double, double> realistic_band(double cop_carnot) {
    if (!(cop_carnot > 0.0)) throw Error("realistic_band: carnot COP must be > 0");
    return {kBandLow * cop_carnot, kBandHigh * cop_carnot};
}

PhysicsSignals PhysicsSignals::from_columns(Eigen::VectorXd t_sink,
                                            Eigen::VectorXd t_source,
                                            Eigen::VectorXd heat_output,
                                            Eigen::VectorXd power_input) {
    PhysicsSignals s;
    const Eigen::Index n = t_sink.size();
    s.cop_carnot.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s.cop_carnot[i] = carnot_cop(t_sink[i], t_source[i]);
    s.cop_lo = kBandLow * s.cop_carnot;
    s.cop_hi = kBandHigh * s.cop_carnot;
    s.t_sink = std::move(t_sink);
    s.t_source = std::move(t_source);
    s.heat_output = std::move(heat_output);
    s.power_input = std::move(power_input);
    s.validate();
    return s;
}

void PhysicsSignals::validate() const {
    const Eigen::Index n = size();
    if (t_sink.size() != n || t_source.size() != n || heat_output.size() != n ||
        power_input.size() != n || cop_lo.size() != n || cop_hi.size() != n)
        throw Error("physics signals: field lengths differ");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(t_sink[i] > t_source[i]))
            throw Error("physics signals: t_sink <= t_source");
        if (heat_output[i] < 0 || power_input[i] < 0)
            throw Error("physics signals: negative heat or power");
        if (!(cop_carnot[i] > 1.0))
            throw Error("physics signals: carnot COP must exceed 1");
    }
}

PhysicsSignals PhysicsSignals::select(const std::vector<std::size_t>& idx) const {
    PhysicsSignals out;
    const auto n = static_cast<Eigen::Index>(idx.size());
    auto gather = [&](const Eigen::VectorXd& src, Eigen::VectorXd& dst) {
        dst.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
            dst[i] = src[static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)])];
    };
    gather(t_sink, out.t_sink);
    gather(t_source, out.t_source);
    gather(heat_output, out.heat_output);
    gather(power_input, out.power_input);
    gather(cop_carnot, out.cop_carnot);
    gather(cop_lo, out.cop_lo);
    gather(cop_hi, out.cop_hi);
    return out;
}

namespace {

double reduce(double sum, Eigen::Index n, Reduction reduction) {
    return reduction == Reduction::Mean ? sum / static_cast<double>(n) : sum;
}

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

double physics_loss(const Eigen::VectorXd& cop_pred, const PhysicsSignals& s,
                    PhysicsMode mode, Reduction reduction) {
    const Eigen::Index n = cop_pred.size();
    if (n == 0) throw Error("physics_loss: empty batch");
    if (s.size() != n) throw Error("physics_loss: signal/prediction length mismatch");

    double sum = 0.0;
    if (mode == PhysicsMode::Literal) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mid = 0.5 * (s.cop_lo[i] + s.cop_hi[i]);
            const double a = cop_pred[i] - s.cop_carnot[i];
            const double b = cop_pred[i] - mid;
            sum += a * a + b * b;
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double over_carnot = pos(cop_pred[i] - s.cop_carnot[i]);
            const double under_band = pos(s.cop_lo[i] - cop_pred[i]);
            const double over_band = pos(cop_pred[i] - s.cop_hi[i]);
            sum += over_carnot * over_carnot + under_band * under_band +
                   over_band * over_band;
        }
    }
    return reduce(sum, n, reduction);
}

Eigen::VectorXd physics_loss_grad(const Eigen::VectorXd& cop_pred,
                                  const PhysicsSignals& s, PhysicsMode mode,
                                  Reduction reduction) {
    const Eigen::Index n = cop_pred.size();
    if (n == 0) throw Error("physics_loss_grad: empty batch");
    const double scale =
        reduction == Reduction::Mean ? 1.0 / static_cast<double>(n) : 1.0;

    Eigen::VectorXd g(n);
    if (mode == PhysicsMode::Literal) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mid = 0.5 * (s.cop_lo[i] + s.cop_hi[i]);
            g[i] = scale * 2.0 *
                   ((cop_pred[i] - s.cop_carnot[i]) + (cop_pred[i] - mid));
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            g[i] = scale * 2.0 *
                   (pos(cop_pred[i] - s.cop_carnot[i]) -
                    pos(s.cop_lo[i] - cop_pred[i]) + pos(cop_pred[i] - s.cop_hi[i]));
        }
    }
    return g;
}

double energy_loss(const Eigen::VectorXd& heat, const Eigen::VectorXd& power,
                   const Eigen::VectorXd& cop_pred, Reduction reduction) {
    const Eigen::Index n = cop_pred.size();
    if (n == 0) throw Error("energy_loss: empty batch");
    if (heat.size() != n || power.size() != n)
        throw Error("energy_loss: length mismatch");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = heat[i] - power[i] * cop_pred[i];
        sum += r * r;
    }
    return reduce(sum, n, reduction);
}

Eigen::VectorXd energy_loss_grad(const Eigen::VectorXd& heat,
                                 const Eigen::VectorXd& power,
                                 const Eigen::VectorXd& cop_pred,
                                 Reduction reduction) {
    const Eigen::Index n = cop_pred.size();
    if (n == 0) throw Error("energy_loss_grad: empty batch");
    const double scale =
        reduction == Reduction::Mean ? 1.0 / static_cast<double>(n) : 1.0;
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i)
        g[i] = scale * -2.0 * power[i] * (heat[i] - power[i] * cop_pred[i]);
    return g;
}

LossBreakdown total_loss(double data, double physics, double energy,
                         const LossWeights& w) {
    if (!(std::isfinite(data) && std::isfinite(physics) && std::isfinite(energy)))
        throw Error("total_loss: non-finite component");
    if (w.lambda_physics < 0 || w.lambda_energy < 0)
        throw Error("total_loss: negative loss weight");
    LossBreakdown b;
    b.data = data;
    b.physics = physics;
    b.energy = energy;
    b.total = data + w.lambda_physics * physics + w.lambda_energy * energy;
    return b;
}

}  // namespace thermobench
