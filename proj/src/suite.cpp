#include "emlab/suite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>

#include "emlab/carleson.hpp"
#include "emlab/det_random.hpp"
#include "emlab/errors.hpp"
#include "emlab/numeric.hpp"
#include "emlab/riesz.hpp"
#include "emlab/solver.hpp"
#include "emlab/weights.hpp"

namespace emlab {

namespace {

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CheckResult hard_check(std::string name, bool passed, std::string detail) {
    return {std::move(name), true, passed, std::move(detail)};
}

CheckResult soft_check(std::string name, std::string detail) {
    return {std::move(name), false, true, std::move(detail)};
}

SuiteReport riesz_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite_name = "riesz";
    const LacunaryPair pair = make_lacunary(cfg.j_max, cfg.variant);

    ResultTable t;
    t.columns = {"j", "schedule", "l1", "l2", "l2_closed_form", "lp(3)", "median", "mass90"};
    double max_l1_dev = 0.0;
    double max_parseval_dev = 0.0;
    double last_median = 0.0;
    for (int j = 1; j <= cfg.j_max; ++j) {
        const RieszProduct rp(pair, cfg.schedule, j);
        const double l1 = riesz_l1(rp);
        const double l2 = riesz_l2(rp);
        const double cf = riesz_l2_closed_form(rp);
        const double lp3 = riesz_lp(rp, 3.0);

        std::int64_t grid = 16 * pair.h_at(j);
        ResolutionPolicy policy = ResolutionPolicy::Strict;
        if (grid > kDiagnosticsSampleCap) {
            grid = kSubsampleDiagnosticGrid;
            policy = ResolutionPolicy::Subsampled;
        }
        const SingularityDiagnostics diag = singularity_diagnostics(rp, grid, {0.9}, policy);
        last_median = diag.median;

        t.add_row({format_cell(j), cfg.schedule.name(), format_cell(l1), format_cell(l2),
                   format_cell(cf), format_cell(lp3), format_cell(diag.median),
                   format_cell(diag.mass_support_fraction(0.9))});
        max_l1_dev = std::max(max_l1_dev, std::fabs(l1 - 1.0));
        max_parseval_dev = std::max(max_parseval_dev, std::fabs(l2 * l2 - cf * cf));
    }
    rep.tables.emplace_back("riesz", t);

    rep.checks.push_back(hard_check("l1-identity", max_l1_dev <= 1e-10,
                                    "max |l1 - 1| = " + short_num(max_l1_dev) + " (tol 1e-10)"));
    rep.checks.push_back(hard_check("parseval-closed-form", max_parseval_dev <= 1e-8,
                                    "max |l2^2 - closed_form^2| = " + short_num(max_parseval_dev) +
                                        " (tol 1e-8)"));
    rep.checks.push_back(
        soft_check("median-at-jmax", "median = " + short_num(last_median) + " (mean stays 1)"));

    SuitePlot plot;
    plot.file_stem = "riesz";
    plot.table.columns = {"j", "l2", "l2_closed_form"};
    for (const auto& row : t.rows) plot.table.rows.push_back({row[0], row[3], row[4]});
    plot.spec.title = "Riesz product L2 norm by level";
    plot.spec.x_label = "j";
    plot.spec.y_label = "L2 norm";
    plot.spec.x_column = 0;
    plot.spec.y_columns = {1, 2};
    rep.plots.push_back(std::move(plot));
    return rep;
}

SuiteReport weights_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite_name = "weights";
    const LacunaryPair pair = make_lacunary(cfg.j_max, cfg.variant);
    const std::vector<double> qs = {1.5, 2.0, 3.0, 4.0};
    constexpr int kDepth = 3;

    ResultTable t;
    t.columns = {"j", "schedule", "depth", "q", "rh_q", "a_inf", "llogl"};
    SuitePlot plot;
    plot.file_stem = "weights";
    plot.table.columns = {"j", "rh_2", "a_inf", "llogl"};

    double min_constant = std::numeric_limits<double>::infinity();
    double max_mean_dev = 0.0;
    bool q_monotone = true;
    double rh2_first = 0.0, rh2_last = 0.0;
    for (int j = 1; j <= cfg.j_max; ++j) {
        // weight_from_riesz wants a power-of-two cell count >= 16*h_j.
        const std::int64_t n_cells = static_cast<std::int64_t>(
            std::bit_ceil(static_cast<std::uint64_t>(16 * pair.h_at(j))));
        if (n_cells > (std::int64_t{1} << 24)) {
            throw ResourceLimitError(
                "weights suite: resolving level " + std::to_string(j) +
                " needs more than 2^24 cells; lower jmax");
        }
        const RieszProduct rp(pair, cfg.schedule, j);
        const WeightSample w = weight_from_riesz(rp, n_cells);
        const IntervalFamily fam =
            IntervalFamily::dyadic(static_cast<std::size_t>(n_cells), kDepth);
        const WeightConstants wc = weight_constants(w, fam, qs);

        KahanSum mean_sum;
        for (double v : w.values) mean_sum.add(v);
        max_mean_dev =
            std::max(max_mean_dev, std::fabs(mean_sum.value() / static_cast<double>(n_cells) - 1.0));

        double prev_rh = 0.0;
        for (double q : qs) {
            const double rh = wc.rh_q.at(q);
            t.add_row({format_cell(j), cfg.schedule.name(), format_cell(kDepth), format_cell(q),
                       format_cell(rh), format_cell(wc.a_inf), format_cell(wc.llogl)});
            min_constant = std::min({min_constant, rh, wc.a_inf, wc.llogl});
            if (rh < prev_rh - 1e-12) q_monotone = false;
            prev_rh = rh;
        }
        const double rh2 = wc.rh_q.at(2.0);
        if (j == 1) rh2_first = rh2;
        rh2_last = rh2;
        plot.table.rows.push_back({format_cell(j), format_cell(rh2), format_cell(wc.a_inf),
                                   format_cell(wc.llogl)});
    }
    rep.tables.emplace_back("weights", t);

    rep.checks.push_back(hard_check("constants-at-least-one", min_constant >= 1.0 - 1e-12,
                                    "min constant = " + short_num(min_constant) + " (>= 1 - 1e-12)"));
    rep.checks.push_back(hard_check("rh-exponent-monotone", q_monotone,
                                    std::string("rh_q nondecreasing in q: ") +
                                        (q_monotone ? "yes" : "no")));
    rep.checks.push_back(hard_check("unit-mean", max_mean_dev <= 1e-8,
                                    "max |mean - 1| = " + short_num(max_mean_dev) + " (tol 1e-8)"));
    rep.checks.push_back(soft_check(
        "rh2-growth", "rh_2(jmax)/rh_2(1) = " + short_num(rh2_last / rh2_first)));

    plot.spec.title = "Weight constants by level";
    plot.spec.x_label = "j";
    plot.spec.y_label = "constant";
    plot.spec.x_column = 0;
    plot.spec.y_columns = {1, 2, 3};
    rep.plots.push_back(std::move(plot));
    return rep;
}

SuiteReport kp_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite_name = "kp";
    if (cfg.schedule.kind() == ScheduleKind::Linear) {
        throw UsageError("kp suite: the analytic lower bound needs an A/sqrt(j) schedule "
                         "(use sqrt or scaled:A)");
    }
    if (cfg.j_max > 6) {
        throw ResourceLimitError("kp suite: quadrature above level 6 is impractical; lower jmax");
    }

    ResultTable t;
    t.columns = {"j",      "variant",      "schedule",    "kp_value", "kp_lower_bound",
                 "center", "radius",       "quad_points", "sup_samples"};
    const Region region{0.0, 1.0, 1.0};
    bool dominance = true;
    bool increasing = true;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_slope = std::numeric_limits<double>::infinity();
    double prev_value = 0.0;
    for (int j = 1; j <= cfg.j_max; ++j) {
        const LacunaryPair pair = make_lacunary(j, cfg.variant);
        const CoefficientField field = CoefficientField::level(pair, cfg.schedule, j);
        const KPEstimate est = kp_functional(field, region, KpSampling{});
        const double bound = kp_lower_bound_analytic(j, pair, cfg.schedule);
        t.add_row({format_cell(j), to_string(cfg.variant), cfg.schedule.name(),
                   format_cell(est.value), format_cell(bound), format_cell(est.center),
                   format_cell(est.radius), format_cell(est.quad_points),
                   format_cell(est.sup_samples)});
        if (!(est.value >= bound)) dominance = false;
        min_margin = std::min(min_margin, est.value / bound);
        if (j > 1 && !(est.value > prev_value)) increasing = false;
        prev_value = est.value;
        min_slope = std::min(min_slope, est.value / j);
    }
    rep.tables.emplace_back("kp", t);

    rep.checks.push_back(hard_check("analytic-lower-bound", dominance,
                                    "min value/bound = " + short_num(min_margin) + " (>= 1)"));
    rep.checks.push_back(hard_check("strict-growth", increasing,
                                    std::string("value strictly increasing in j: ") +
                                        (increasing ? "yes" : "no")));
    rep.checks.push_back(soft_check("linear-slope", "min value(j)/j = " + short_num(min_slope)));

    SuitePlot plot;
    plot.file_stem = "kp";
    plot.table.columns = {"j", "kp_value", "kp_lower_bound"};
    for (const auto& row : t.rows) plot.table.rows.push_back({row[0], row[3], row[4]});
    plot.spec.title = "Carleson functional growth";
    plot.spec.x_label = "j";
    plot.spec.y_label = "value";
    plot.spec.x_column = 0;
    plot.spec.y_columns = {1, 2};
    plot.spec.log_y = true;
    rep.plots.push_back(std::move(plot));
    return rep;
}

// Discrete duality on a small fixed fixture: representation weights from one
// Green solve must reproduce direct solves at the pole for random data.
CheckResult duality_check(std::uint64_t seed) {
    const Grid grid{0.0, 1.0, 1.0, 64, 64};
    const DiscreteOperator op = DiscreteOperator::laplacian(grid);
    const int pc = 32;
    const EllipticMeasureVector mv = elliptic_measure(op, pc, pc, 1e-12);
    SplitMix64 rng(seed);
    double max_dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        BoundaryData data = BoundaryData::zeros(grid);
        for (auto* side : {&data.bottom, &data.top, &data.left, &data.right}) {
            for (double& v : *side) v = rng.next_double();
        }
        const std::vector<double> u = solve_dirichlet(op, data, 1e-12);
        double rep_value = 0.0;
        for (int i = 0; i <= grid.nx; ++i) {
            rep_value += mv.bottom[i] * data.bottom[i] + mv.top[i] * data.top[i];
        }
        for (int m = 0; m <= grid.ny; ++m) {
            rep_value += mv.left[m] * data.left[m] + mv.right[m] * data.right[m];
        }
        max_dev = std::max(max_dev, std::fabs(u[op.interior_index(pc, pc)] - rep_value));
    }
    return hard_check("green-flux-duality", max_dev <= 1e-9,
                      "max |direct - represented| = " + short_num(max_dev) + " (tol 1e-9)");
}

SuiteReport solve_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite_name = "solve";
    if (cfg.j_max > 3) {
        throw ResourceLimitError("solve suite: resolving level > 3 is impractical; lower jmax");
    }
    const LacunaryPair pair = make_lacunary(cfg.j_max, cfg.variant);
    const CoefficientField field = CoefficientField::level(pair, cfg.schedule, cfg.j_max);

    Grid grid;
    grid.x0 = -2.0;
    grid.x1 = 3.0;
    grid.y1 = 3.0;
    grid.nx = cfg.nx > 0 ? cfg.nx
                         : static_cast<int>(std::ceil(
                               5.0 * 16.0 * static_cast<double>(field.top_frequency()) - 1e-9));
    grid.ny = cfg.ny > 0 ? cfg.ny
                         : static_cast<int>(std::ceil(
                               3.0 * 16.0 * static_cast<double>(field.next_layer_scale()) - 1e-9));
    const DiscreteOperator op = DiscreteOperator::assemble(field, grid);

    const int pole_i = static_cast<int>(std::lround((0.5 - grid.x0) / grid.hx()));
    const int pole_m = static_cast<int>(std::lround(2.0 / grid.hy()));
    SolveInfo info;
    const EllipticMeasureVector mv = elliptic_measure(op, pole_i, pole_m, cfg.tol, &info);

    ResultTable t;
    t.columns = {"side", "cell_index", "mass"};
    const auto add_side = [&](const char* side, const std::vector<double>& masses) {
        for (std::size_t i = 0; i < masses.size(); ++i) {
            t.add_row({side, format_cell(static_cast<int>(i)), format_cell(masses[i])});
        }
    };
    add_side("bottom", mv.bottom);
    add_side("top", mv.top);
    add_side("left", mv.left);
    add_side("right", mv.right);
    rep.tables.emplace_back("solve-measure", t);

    const double total = mv.total();
    double min_entry = 0.0;
    for (const auto* side : {&mv.bottom, &mv.top, &mv.left, &mv.right}) {
        for (double v : *side) min_entry = std::min(min_entry, v);
    }
    rep.checks.push_back(hard_check("unit-total-mass", std::fabs(total - 1.0) <= 10.0 * cfg.tol,
                                    "|total - 1| = " + short_num(std::fabs(total - 1.0)) +
                                        " (tol " + short_num(10.0 * cfg.tol) + ")"));
    rep.checks.push_back(hard_check("nonnegative-mass", min_entry >= -1e-12,
                                    "min mass = " + short_num(min_entry) + " (>= -1e-12)"));
    rep.checks.push_back(duality_check(cfg.seed));
    rep.checks.push_back(soft_check(
        "doubling-constant", "max mass(2I)/mass(I) = " +
                                 short_num(measure_doubling_constant(mv, grid))));
    rep.checks.push_back(soft_check(
        "green-solve", "iterations = " + std::to_string(info.iterations) +
                           ", true residual = " + short_num(info.residual)));

    const PoissonKernelProfile profile = poisson_kernel_profile(mv, grid);
    SuitePlot plot;
    plot.file_stem = "solve-profile";
    plot.table.columns = {"x", "density"};
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        plot.table.rows.push_back({format_cell(profile.x[i]), format_cell(profile.density[i])});
    }
    plot.spec.title = "Bottom-edge harmonic measure density";
    plot.spec.x_label = "x";
    plot.spec.y_label = "density";
    plot.spec.x_column = 0;
    plot.spec.y_columns = {1};
    rep.plots.push_back(std::move(plot));
    return rep;
}

SuiteReport kernel_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite_name = "kernel-compare";
    KernelCompareConfig kc;
    kc.variant = cfg.variant;
    kc.schedule = cfg.schedule;
    kc.nx = cfg.nx;
    kc.ny = cfg.ny;
    kc.rel_tol = cfg.tol;
    if (cfg.j_max > kc.j_cap) {
        throw UsageError("kernel-compare: jmax must be <= " + std::to_string(kc.j_cap) +
                         " (resolution cost grows as 4^j)");
    }
    const KernelComparison cmp = compare_kernel_to_riesz(cfg.j_max, kc);

    ResultTable t;
    t.columns = {"x", "kernel_density", "riesz_value", "ratio"};
    for (std::size_t i = 0; i < cmp.x.size(); ++i) {
        t.add_row({format_cell(cmp.x[i]), format_cell(cmp.kernel_density[i]),
                   format_cell(cmp.riesz_value[i]), format_cell(cmp.ratio[i])});
    }
    rep.tables.emplace_back("kernel-compare", t);

    double min_density = cmp.kernel_density.empty() ? 0.0 : cmp.kernel_density[0];
    for (double v : cmp.kernel_density) min_density = std::min(min_density, v);
    rep.checks.push_back(hard_check("kernel-positive", min_density > 0.0,
                                    "min density = " + short_num(min_density) + " (> 0)"));
    rep.checks.push_back(hard_check(
        "ratio-finite", std::isfinite(cmp.min_ratio) && std::isfinite(cmp.max_ratio) &&
                            cmp.min_ratio > 0.0,
        "ratio range [" + short_num(cmp.min_ratio) + ", " + short_num(cmp.max_ratio) + "]"));
    rep.checks.push_back(soft_check(
        "log-correlation", cmp.correlation_defined
                               ? "corr(log density, log product) = " + short_num(cmp.correlation)
                               : "not applicable (constant comparator)"));
    rep.checks.push_back(soft_check("mean-scale", "c = " + short_num(cmp.scale)));
    rep.checks.push_back(soft_check(
        "green-solve", "grid " + std::to_string(cmp.nx) + "x" + std::to_string(cmp.ny) +
                           ", iterations = " + std::to_string(cmp.solve_info.iterations) +
                           ", true residual = " + short_num(cmp.solve_info.residual)));

    SuitePlot plot;
    plot.file_stem = "kernel-compare";
    plot.table.columns = {"x", "kernel_density", "scaled_product"};
    for (std::size_t i = 0; i < cmp.x.size(); ++i) {
        plot.table.rows.push_back({format_cell(cmp.x[i]), format_cell(cmp.kernel_density[i]),
                                   format_cell(cmp.scale * cmp.riesz_value[i])});
    }
    plot.spec.title = "Poisson kernel density vs scaled product";
    plot.spec.x_label = "x";
    plot.spec.y_label = "density";
    plot.spec.x_column = 0;
    plot.spec.y_columns = {1, 2};
    rep.plots.push_back(std::move(plot));
    return rep;
}

void write_outputs(const SuiteReport& rep, const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    for (const auto& [stem, table] : rep.tables) {
        write_text_file(cfg.out_dir + "/" + stem + ".csv", to_csv(table));
    }
    if (!cfg.svg) return;
    for (const auto& plot : rep.plots) {
        PlotSpec spec = plot.spec;
        spec.caption = cfg.stamp();
        write_text_file(cfg.out_dir + "/" + plot.file_stem + ".svg", render_svg(plot.table, spec));
    }
}

}  // namespace

bool SuiteReport::all_hard_passed() const {
    for (const auto& c : checks) {
        if (c.hard && !c.passed) return false;
    }
    return true;
}

SuiteReport run_suite(const RunConfig& cfg) {
    SuiteReport rep;
    switch (cfg.suite) {
        case Suite::Riesz: rep = riesz_suite(cfg); break;
        case Suite::Weights: rep = weights_suite(cfg); break;
        case Suite::Kp: rep = kp_suite(cfg); break;
        case Suite::Solve: rep = solve_suite(cfg); break;
        case Suite::KernelCompare: rep = kernel_suite(cfg); break;
    }
    write_outputs(rep, cfg);
    return rep;
}

void print_report(const SuiteReport& report, const RunConfig& cfg, std::ostream& os) {
    os << "suite " << report.suite_name << "\n";
    os << "config: " << cfg.stamp() << "\n";
    int hard_total = 0, hard_passed = 0;
    for (const auto& c : report.checks) {
        if (c.hard) {
            ++hard_total;
            if (c.passed) ++hard_passed;
        }
        os << "  " << (c.hard ? "hard" : "soft") << "  ";
        os << c.name;
        for (std::size_t pad = c.name.size(); pad < 26; ++pad) os << ' ';
        os << (c.hard ? (c.passed ? "PASS    " : "FAIL    ") : "report  ");
        os << c.detail << "\n";
    }
    os << "summary: " << hard_passed << "/" << hard_total << " hard checks passed\n";
}

}  // namespace emlab
