#include "gnflow/run.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gnflow/output.hpp"

namespace gnflow {

namespace {

struct Failure {
    ExitCode code;
    const char* name;
};

// CFL step of the Lagrangian state measured in physical space.
double lagrangian_dt(const LagrangianState& s, const InitialDepth& h0, Gravity g, double cfl,
                     double cap)
{
    const Field jac = s.jacobian();
    double speed = 0.0;
    for (std::size_t j = 0; j < jac.size(); ++j)
        speed = std::max(speed, std::abs(s.vel[j]) + std::sqrt(g.g * h0.h0[j] / jac[j]));
    return std::min(cap, cfl * s.grid().dx() * jac.min() / speed);
}

std::size_t substeps(double interval, double dt)
{
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(interval / dt - 1e-9)));
}

class Simulation {
public:
    Simulation(const RunConfig& c, const std::filesystem::path& out, std::ostream& log, bool quiet)
        : c_(c), out_(out), log_(log), quiet_(quiet), datum_(make_datum(c)),
          grid_(c.length, c.n), sd_(sample(datum_, grid_)), g_(c.g), sigma_(c.sigma)
    {
    }

    void run()
    {
        const double cadence = c_.cadence_or_default();
        const auto ticks = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(c_.t_end / cadence)));
        const double interval = c_.t_end / static_cast<double>(ticks);
        if (c_.formulation == Formulation::eulerian)
            run_eulerian(ticks, interval);
        else
            run_lagrangian(ticks, interval);
    }

    CsvWriter* snapshots() { return csv_.get(); }
    double last_time() const { return t_; }

private:
    void run_eulerian(std::size_t ticks, double interval)
    {
        csv_ = std::make_unique<CsvWriter>(
            out_ / "snapshots.csv",
            std::vector<std::string>{"t", "mass", "energy", "min_h", "max_h", "norm_h", "norm_u"});
        EulerianState s = sd_.eulerian;
        record(s);
        for (std::size_t k = 1; k <= ticks; ++k) {
            const double t_next = interval * static_cast<double>(k);
            const double dt0 = cfl_dt(s, StepControl(c_.cfl, interval), g_);
            const std::size_t m = substeps(t_next - s.t, dt0);
            const double dt = (t_next - s.t) / static_cast<double>(m);
            for (std::size_t i = 0; i < m; ++i) {
                s = step_rk4(s, dt, datum_.bottom, g_);
                t_ = s.t;
            }
            s.t = t_next;
            record(s);
        }
    }

    void record(const EulerianState& s)
    {
        t_ = s.t;
        const double row[] = {s.t,
                              eulerian_mass(s),
                              eulerian_energy(s, datum_.bottom, g_, datum_.surface),
                              s.h.min(),
                              s.h.max(),
                              sobolev_norm(s.h, SobolevIndex(sigma_)),
                              sobolev_norm(s.u, SobolevIndex(sigma_ + 1.0))};
        csv_->row(row);
        write_fields(out_ / fields_filename(s.t), grid_.length(), s.t, {s.h.view(), s.u.view()});
        progress(s.t);
    }

    void run_lagrangian(std::size_t ticks, double interval)
    {
        csv_ = std::make_unique<CsvWriter>(
            out_ / "snapshots.csv",
            std::vector<std::string>{"t", "mass", "energy", "min_h", "max_h", "min_phi_x",
                                     "norm_disp", "norm_vel"});
        LagrangianState s = sd_.lagrangian;
        record(s);
        for (std::size_t k = 1; k <= ticks; ++k) {
            const double t_next = interval * static_cast<double>(k);
            const double dt0 = lagrangian_dt(s, sd_.h0, g_, c_.cfl, interval);
            const std::size_t m = substeps(t_next - s.t, dt0);
            const double dt = (t_next - s.t) / static_cast<double>(m);
            for (std::size_t i = 0; i < m; ++i) {
                s = step_rk4_lagrangian(s, dt, sd_.h0, datum_.bottom, g_);
                t_ = s.t;
            }
            s.t = t_next;
            record(s);
        }
    }

    void record(const LagrangianState& s)
    {
        t_ = s.t;
        const Field eta = lagrangian_depth(s, sd_.h0);
        const double row[] = {s.t,
                              lagrangian_mass(s, sd_.h0),
                              lagrangian_energy(s, sd_.h0, datum_.bottom, g_, datum_.surface),
                              eta.min(),
                              eta.max(),
                              s.jacobian().min(),
                              sobolev_norm(s.disp, SobolevIndex(sigma_)),
                              sobolev_norm(s.vel, SobolevIndex(sigma_ + 1.0))};
        csv_->row(row);
        write_fields(out_ / fields_filename(s.t), grid_.length(), s.t,
                     {s.disp.view(), s.vel.view()});
        progress(s.t);
    }

    void progress(double t)
    {
        if (!quiet_)
            log_ << "t = " << format_double(t) << '\n';
    }

    const RunConfig& c_;
    std::filesystem::path out_;
    std::ostream& log_;
    bool quiet_;
    Datum datum_;
    Grid grid_;
    SampledDatum sd_;
    Gravity g_;
    double sigma_;
    std::unique_ptr<CsvWriter> csv_;
    double t_ = 0.0;
};

std::vector<std::size_t> twin_ladder(const RunConfig& c)
{
    if (!c.twin_resolutions.empty())
        return c.twin_resolutions;
    return {c.n, 2 * c.n, 4 * c.n};
}

std::vector<std::size_t> convergence_ladder(const RunConfig& c)
{
    if (!c.convergence_resolutions.empty())
        return c.convergence_resolutions;
    std::vector<std::size_t> r;
    for (std::size_t n : {c.n / 4, c.n / 2, c.n, 2 * c.n})
        if (n >= 16)
            r.push_back(n);
    return r;
}

void run_twin(const RunConfig& c, CsvWriter& report)
{
    const TwinRunReport rep = twin_run(make_datum(c), c.t_end, twin_ladder(c), c.cfl,
                                       c.checkpoints, c.guard_tol);
    for (std::size_t i = 0; i < rep.resolutions.size(); ++i) {
        const double row[] = {static_cast<double>(rep.resolutions[i]),
                              c.length / static_cast<double>(rep.resolutions[i]),
                              rep.gap_h[i], rep.gap_u[i], rep.gap[i], rep.order[i]};
        report.row(row);
    }
}

void run_dependence(const RunConfig& c, CsvWriter& report)
{
    const DependenceReport rep =
        dependence_study(make_datum(c), c.n, c.t_end, c.dependence_eps, c.dependence_s,
                         c.dependence_directions, c.formulation, c.seed, c.cfl);
    for (std::size_t i = 0; i < rep.directions.size(); ++i)
        for (std::size_t k = 0; k < rep.eps.size(); ++k)
            report.row(std::vector<std::string>{to_string(rep.directions[i]),
                                                format_double(rep.eps[k]),
                                                format_double(rep.distances[i][k]),
                                                format_double(rep.slopes[i]),
                                                format_double(rep.sigma)});
}

void run_convergence(const RunConfig& c, CsvWriter& report)
{
    const Datum d = make_datum(c);
    auto emit = [&](const std::vector<ConvergenceRow>& rows) {
        for (const auto& r : rows)
            report.row(std::vector<std::string>{r.kind, to_string(r.formulation),
                                                std::to_string(r.n), format_double(r.dt),
                                                format_double(r.error), format_double(r.order)});
    };
    emit(spatial_convergence(d, c.t_end, convergence_ladder(c), c.formulation, c.cfl));
    emit(temporal_convergence(d, c.n, c.t_end, c.convergence_steps0, c.convergence_levels,
                              c.formulation));
}

void run_solitary(const RunConfig& c, CsvWriter& report, std::ostream& log, bool quiet)
{
    const InitialSpec& i = c.initial;
    const Gravity g(c.g);
    const SolitaryGate gate = solitary_gate(i.amplitude, i.depth, g, c.length, c.solitary_resolutions);
    auto line = [&](const std::string& q, std::size_t n, double v) {
        report.row(std::vector<std::string>{q, std::to_string(n), format_double(v)});
    };
    for (std::size_t k = 0; k < gate.resolutions.size(); ++k) {
        line("residual", gate.resolutions[k], gate.residuals[k]);
        if (k > 0)
            line("residual_order", gate.resolutions[k], gate.orders[k]);
    }
    line("gate_passed", 0, gate.passed ? 1.0 : 0.0);
    if (!gate.passed) {
        line("propagation_disabled", c.n, 1.0);
        if (!quiet)
            log << "solitary residual gate failed; propagation benchmark disabled\n";
        return;
    }
    const SolitaryPropagation p =
        solitary_propagation(SolitaryWave{i.amplitude, i.depth, c.g, i.center, c.length}, c.n, c.cfl);
    line("dx", c.n, p.dx);
    line("t_end", c.n, p.t_end);
    line("peak_error", c.n, p.peak_error);
    line("shape_l2", c.n, p.shape_l2);
}

Failure classify(const std::exception& e)
{
    if (dynamic_cast<const DepthPositivityLost*>(&e))
        return {ExitCode::depth_positivity_lost, "DepthPositivityLost"};
    if (dynamic_cast<const DiffeoLost*>(&e))
        return {ExitCode::diffeo_lost, "DiffeoLost"};
    if (dynamic_cast<const HorizonExceeded*>(&e))
        return {ExitCode::horizon_exceeded, "HorizonExceeded"};
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidDatum*>(&e))
        return {ExitCode::config, "ConfigError"};
    return {ExitCode::internal, "InternalError"};
}

double failure_time(const std::exception& e, double fallback)
{
    if (auto p = dynamic_cast<const DepthPositivityLost*>(&e))
        return p->t;
    if (auto p = dynamic_cast<const DiffeoLost*>(&e))
        return p->t;
    if (auto p = dynamic_cast<const HorizonExceeded*>(&e))
        return p->t;
    return fallback;
}

}  // namespace

ExitCode run(const RunConfig& config, const RunOptions& options, std::ostream& log,
             std::ostream& err)
{
    try {
        validate(config);
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return ExitCode::config;
    }

    std::unique_ptr<OutputLock> lock;
    try {
        lock = std::make_unique<OutputLock>(options.out);
    } catch (const OutputLocked& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::output_locked;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::internal;
    }

    std::unique_ptr<Simulation> sim;
    std::unique_ptr<CsvWriter> report;
    try {
        switch (config.mode) {
        case RunMode::simulate:
            sim = std::make_unique<Simulation>(config, options.out, log, options.quiet);
            sim->run();
            break;
        case RunMode::twin:
            report = std::make_unique<CsvWriter>(
                options.out / "report.csv",
                std::vector<std::string>{"n", "dx", "gap_h", "gap_u", "gap", "order"});
            run_twin(config, *report);
            break;
        case RunMode::dependence:
            report = std::make_unique<CsvWriter>(
                options.out / "report.csv",
                std::vector<std::string>{"direction", "eps", "distance", "slope", "sigma"});
            run_dependence(config, *report);
            break;
        case RunMode::convergence:
            report = std::make_unique<CsvWriter>(
                options.out / "report.csv",
                std::vector<std::string>{"kind", "formulation", "n", "dt", "error", "order"});
            run_convergence(config, *report);
            break;
        case RunMode::solitary:
            report = std::make_unique<CsvWriter>(options.out / "report.csv",
                                                 std::vector<std::string>{"quantity", "n", "value"});
            run_solitary(config, *report, log, options.quiet);
            break;
        }
    } catch (const std::exception& e) {
        const Failure f = classify(e);
        const double t = failure_time(e, sim ? sim->last_time() : 0.0);
        CsvWriter* sink = sim ? sim->snapshots() : report.get();
        if (sink)
            sink->failed(f.name, t);
        err << f.name << " at t = " << format_double(t) << ": " << e.what() << '\n';
        return f.code;
    }
    if (!options.quiet)
        log << "done: " << options.out.string() << '\n';
    return ExitCode::ok;
}

}  // namespace gnflow
