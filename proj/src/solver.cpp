#include "emlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "emlab/det_random.hpp"
#include "emlab/errors.hpp"
#include "emlab/parallel.hpp"
#include "emlab/riesz.hpp"

namespace emlab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t t = 0;
    const std::size_t n = a.size();
    for (; t + 4 <= n; t += 4) {
        s0 += a[t] * b[t];
        s1 += a[t + 1] * b[t + 1];
        s2 += a[t + 2] * b[t + 2];
        s3 += a[t + 3] * b[t + 3];
    }
    for (; t < n; ++t) s0 += a[t] * b[t];
    return (s0 + s1) + (s2 + s3);
}

double vec_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

void Grid::validate() const {
    if (!(x0 < x1)) throw std::invalid_argument("Grid: x0 < x1 required");
    if (!(y1 > 0.0)) throw std::invalid_argument("Grid: y1 > 0 required");
    if (nx < 8 || ny < 8) throw std::invalid_argument("Grid: nx and ny must be >= 8");
}

BoundaryData BoundaryData::zeros(const Grid& grid) {
    BoundaryData d;
    d.bottom.assign(static_cast<std::size_t>(grid.nx) + 1, 0.0);
    d.top.assign(static_cast<std::size_t>(grid.nx) + 1, 0.0);
    d.left.assign(static_cast<std::size_t>(grid.ny) + 1, 0.0);
    d.right.assign(static_cast<std::size_t>(grid.ny) + 1, 0.0);
    return d;
}

void BoundaryData::validate(const Grid& grid) const {
    const auto nxn = static_cast<std::size_t>(grid.nx) + 1;
    const auto nyn = static_cast<std::size_t>(grid.ny) + 1;
    if (bottom.size() != nxn || top.size() != nxn || left.size() != nyn || right.size() != nyn) {
        throw std::invalid_argument("BoundaryData: side lengths do not match the grid");
    }
}

double BoundaryData::min() const {
    double v = bottom.empty() ? 0.0 : bottom.front();
    for (const auto* side : {&bottom, &top, &left, &right}) {
        for (double x : *side) v = std::min(v, x);
    }
    return v;
}

double BoundaryData::max() const {
    double v = bottom.empty() ? 0.0 : bottom.front();
    for (const auto* side : {&bottom, &top, &left, &right}) {
        for (double x : *side) v = std::max(v, x);
    }
    return v;
}

DiscreteOperator::DiscreteOperator(Grid grid, double wx, std::vector<double> wy)
    : grid_(grid), wx_(wx), wy_(std::move(wy)) {}

DiscreteOperator DiscreteOperator::assemble(const CoefficientField& field, const Grid& grid) {
    grid.validate();
    if (field.is_limit()) {
        throw std::invalid_argument("assemble: requires a truncated Level field");
    }
    const double hx_cap = 1.0 / (16.0 * static_cast<double>(field.top_frequency()));
    const double hy_cap = 1.0 / (16.0 * static_cast<double>(field.next_layer_scale()));
    if (grid.hx() > hx_cap * (1.0 + 1e-9)) {
        throw ResolutionError("assemble: hx exceeds 1/(16*top_frequency)");
    }
    if (grid.hy() > hy_cap * (1.0 + 1e-9)) {
        throw ResolutionError("assemble: hy exceeds 1/(16*next_layer_scale)");
    }

    const int W = grid.nx - 1;
    const double inv_hy2 = 1.0 / (grid.hy() * grid.hy());
    std::vector<double> wy(static_cast<std::size_t>(W) * grid.ny);
    std::vector<double> below(static_cast<std::size_t>(grid.nx) + 1);
    std::vector<double> above(static_cast<std::size_t>(grid.nx) + 1);
    for (int i = 0; i <= grid.nx; ++i) below[i] = field.eval(grid.node_x(i), 0.0);
    for (int m = 0; m < grid.ny; ++m) {
        const double y_up = grid.node_y(m + 1);
        for (int i = 0; i <= grid.nx; ++i) above[i] = field.eval(grid.node_x(i), y_up);
        const std::size_t base = static_cast<std::size_t>(m) * W;
        for (int i = 1; i <= W; ++i) {
            wy[base + i - 1] = 0.5 * (below[i] + above[i]) * inv_hy2;
        }
        below.swap(above);
    }
    return DiscreteOperator(grid, 1.0 / (grid.hx() * grid.hx()), std::move(wy));
}

DiscreteOperator DiscreteOperator::laplacian(const Grid& grid) {
    grid.validate();
    const int W = grid.nx - 1;
    std::vector<double> wy(static_cast<std::size_t>(W) * grid.ny,
                           1.0 / (grid.hy() * grid.hy()));
    return DiscreteOperator(grid, 1.0 / (grid.hx() * grid.hx()), std::move(wy));
}

void DiscreteOperator::apply(const std::vector<double>& u, std::vector<double>& out) const {
    const int W = grid_.nx - 1;
    const int H = grid_.ny - 1;
    out.resize(u.size());
    for (int m = 1; m <= H; ++m) {
        const std::size_t base = static_cast<std::size_t>(m - 1) * W;
        const double* wyd = wy_.data() + base;
        const double* wyu = wy_.data() + base + W;
        const double* uc = u.data() + base;
        const double* dn = m > 1 ? uc - W : nullptr;
        const double* up = m < H ? uc + W : nullptr;
        double* o = out.data() + base;
        for (int t = 0; t < W; ++t) {
            double s = (2.0 * wx_ + wyd[t] + wyu[t]) * uc[t];
            if (t > 0) s -= wx_ * uc[t - 1];
            if (t < W - 1) s -= wx_ * uc[t + 1];
            if (dn) s -= wyd[t] * dn[t];
            if (up) s -= wyu[t] * up[t];
            o[t] = s;
        }
    }
}

std::vector<double> DiscreteOperator::solve(const std::vector<double>& rhs, double rel_tol,
                                            SolveInfo* info) const {
    const std::size_t n = static_cast<std::size_t>(interior_count());
    if (rhs.size() != n) throw std::invalid_argument("solve: rhs length does not match the grid");
    std::vector<double> x(n, 0.0);
    const double norm_b = std::sqrt(dot(rhs, rhs));
    if (norm_b == 0.0) {
        if (info) *info = {0, 0.0};
        return x;
    }

    const int W = grid_.nx - 1;
    std::vector<double> inv_diag(n);
    for (int m = 1; m <= grid_.ny - 1; ++m) {
        for (int i = 1; i <= W; ++i) {
            inv_diag[static_cast<std::size_t>(m - 1) * W + (i - 1)] = 1.0 / diagonal(i, m);
        }
    }

    std::vector<double> r = rhs;
    std::vector<double> z(n), p(n), ap(n);
    for (std::size_t t = 0; t < n; ++t) z[t] = inv_diag[t] * r[t];
    p = z;
    double rz = dot(r, z);

    const int cap = 50 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(std::min(cap, 1 << 20)));

    for (int it = 1; it <= cap; ++it) {
        apply(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            throw ConvergenceError("solve: search direction with nonpositive curvature", history);
        }
        const double alpha = rz / pap;
        double rr = 0.0, rz_next = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            x[t] += alpha * p[t];
            const double rt = r[t] - alpha * ap[t];
            r[t] = rt;
            const double zt = inv_diag[t] * rt;
            z[t] = zt;
            rr += rt * rt;
            rz_next += rt * zt;
        }
        const double resnorm = std::sqrt(rr);
        history.push_back(resnorm);
        if (resnorm <= rel_tol * norm_b) {
            apply(x, ap);
            double true_rr = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                const double d = rhs[t] - ap[t];
                true_rr += d * d;
            }
            if (info) *info = {it, std::sqrt(true_rr) / norm_b};
            return x;
        }
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t t = 0; t < n; ++t) p[t] = z[t] + beta * p[t];
    }
    throw ConvergenceError("solve: no convergence within the iteration cap", history);
}

std::vector<double> solve_dirichlet(const DiscreteOperator& op, const BoundaryData& data,
                                    double rel_tol, SolveInfo* info) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-4) {
        throw std::invalid_argument("solve_dirichlet: rel_tol must be in (0, 1e-4]");
    }
    const Grid& grid = op.grid();
    data.validate(grid);
    const int W = grid.nx - 1;
    const int H = grid.ny - 1;
    std::vector<double> rhs(static_cast<std::size_t>(op.interior_count()), 0.0);
    for (int i = 1; i <= W; ++i) {
        rhs[op.interior_index(i, 1)] += op.face_weight_y(i, 0) * data.bottom[i];
        rhs[op.interior_index(i, H)] += op.face_weight_y(i, H) * data.top[i];
    }
    const double wx = op.face_weight_x();
    for (int m = 1; m <= H; ++m) {
        rhs[op.interior_index(1, m)] += wx * data.left[m];
        rhs[op.interior_index(W, m)] += wx * data.right[m];
    }
    return op.solve(rhs, rel_tol, info);
}

double EllipticMeasureVector::total() const {
    double s = 0.0;
    for (const auto* side : {&bottom, &top, &left, &right}) {
        for (double x : *side) s += x;
    }
    return s;
}

double EllipticMeasureVector::bottom_mass() const {
    double s = 0.0;
    for (double x : bottom) s += x;
    return s;
}

double EllipticMeasureVector::top_mass() const {
    double s = 0.0;
    for (double x : top) s += x;
    return s;
}

double EllipticMeasureVector::left_mass() const {
    double s = 0.0;
    for (double x : left) s += x;
    return s;
}

double EllipticMeasureVector::right_mass() const {
    double s = 0.0;
    for (double x : right) s += x;
    return s;
}

namespace {

void require_interior_pole(const Grid& grid, int pole_i, int pole_m, const char* who) {
    if (pole_i < 1 || pole_i > grid.nx - 1 || pole_m < 1 || pole_m > grid.ny - 1) {
        throw std::invalid_argument(std::string(who) + ": pole must be a strictly interior node");
    }
}

}  // namespace

EllipticMeasureVector elliptic_measure(const DiscreteOperator& op, int pole_i, int pole_m,
                                       double rel_tol, SolveInfo* info) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-4) {
        throw std::invalid_argument("elliptic_measure: rel_tol must be in (0, 1e-4]");
    }
    const Grid& grid = op.grid();
    require_interior_pole(grid, pole_i, pole_m, "elliptic_measure");

    std::vector<double> rhs(static_cast<std::size_t>(op.interior_count()), 0.0);
    rhs[op.interior_index(pole_i, pole_m)] = 1.0;
    const std::vector<double> g = op.solve(rhs, rel_tol, info);

    const int W = grid.nx - 1;
    const int H = grid.ny - 1;
    EllipticMeasureVector mv;
    mv.bottom.assign(static_cast<std::size_t>(grid.nx) + 1, 0.0);
    mv.top.assign(static_cast<std::size_t>(grid.nx) + 1, 0.0);
    mv.left.assign(static_cast<std::size_t>(grid.ny) + 1, 0.0);
    mv.right.assign(static_cast<std::size_t>(grid.ny) + 1, 0.0);
    for (int i = 1; i <= W; ++i) {
        mv.bottom[i] = op.face_weight_y(i, 0) * g[op.interior_index(i, 1)];
        mv.top[i] = op.face_weight_y(i, H) * g[op.interior_index(i, H)];
    }
    const double wx = op.face_weight_x();
    for (int m = 1; m <= H; ++m) {
        mv.left[m] = wx * g[op.interior_index(1, m)];
        mv.right[m] = wx * g[op.interior_index(W, m)];
    }
    return mv;
}

EllipticMeasureVector measure_mc_oracle(const DiscreteOperator& op, int pole_i, int pole_m,
                                        std::int64_t walkers, std::uint64_t seed) {
    const Grid& grid = op.grid();
    require_interior_pole(grid, pole_i, pole_m, "measure_mc_oracle");
    if (walkers < 1) throw std::invalid_argument("measure_mc_oracle: walkers must be >= 1");

    struct SideCounts {
        std::vector<std::int64_t> bottom, top, left, right;
    };
    constexpr std::int64_t kWalkerChunk = 4096;
    std::vector<SideCounts> tallies(chunk_count(walkers, kWalkerChunk));
    const double wx = op.face_weight_x();

    for_each_chunk(walkers, kWalkerChunk, [&](std::size_t c, std::int64_t w0, std::int64_t w1) {
        SideCounts& tally = tallies[c];
        tally.bottom.assign(static_cast<std::size_t>(grid.nx) + 1, 0);
        tally.top.assign(static_cast<std::size_t>(grid.nx) + 1, 0);
        tally.left.assign(static_cast<std::size_t>(grid.ny) + 1, 0);
        tally.right.assign(static_cast<std::size_t>(grid.ny) + 1, 0);
        for (std::int64_t w = w0; w < w1; ++w) {
            SplitMix64 rng(SplitMix64(seed + static_cast<std::uint64_t>(w)).next());
            int i = pole_i, m = pole_m;
            for (;;) {
                if (m == 0) { ++tally.bottom[i]; break; }
                if (m == grid.ny) { ++tally.top[i]; break; }
                if (i == 0) { ++tally.left[m]; break; }
                if (i == grid.nx) { ++tally.right[m]; break; }
                const double wyd = op.face_weight_y(i, m - 1);
                const double wyu = op.face_weight_y(i, m);
                const double u = rng.next_double() * (2.0 * wx + wyd + wyu);
                if (u < wx) {
                    --i;
                } else if (u < 2.0 * wx) {
                    ++i;
                } else if (u < 2.0 * wx + wyd) {
                    --m;
                } else {
                    ++m;
                }
            }
        }
    });

    EllipticMeasureVector mv;
    mv.bottom.assign(static_cast<std::size_t>(grid.nx) + 1, 0.0);
    mv.top.assign(static_cast<std::size_t>(grid.nx) + 1, 0.0);
    mv.left.assign(static_cast<std::size_t>(grid.ny) + 1, 0.0);
    mv.right.assign(static_cast<std::size_t>(grid.ny) + 1, 0.0);
    const double inv = 1.0 / static_cast<double>(walkers);
    for (const SideCounts& tally : tallies) {
        for (std::size_t t = 0; t < mv.bottom.size(); ++t) {
            mv.bottom[t] += static_cast<double>(tally.bottom[t]) * inv;
            mv.top[t] += static_cast<double>(tally.top[t]) * inv;
        }
        for (std::size_t t = 0; t < mv.left.size(); ++t) {
            mv.left[t] += static_cast<double>(tally.left[t]) * inv;
            mv.right[t] += static_cast<double>(tally.right[t]) * inv;
        }
    }
    return mv;
}

namespace {

void require_bottom_coverage(const Grid& grid, const char* who) {
    if (grid.x0 > -1.0 + 1e-12 || grid.x1 < 1.0 - 1e-12) {
        throw std::invalid_argument(std::string(who) + ": bottom edge must cover [-1, 1]");
    }
}

}  // namespace

PoissonKernelProfile poisson_kernel_profile(const EllipticMeasureVector& measure, const Grid& grid) {
    require_bottom_coverage(grid, "poisson_kernel_profile");
    if (measure.bottom.size() != static_cast<std::size_t>(grid.nx) + 1) {
        throw std::invalid_argument("poisson_kernel_profile: measure does not match the grid");
    }
    const double eps = 1e-9 * grid.hx();
    PoissonKernelProfile profile;
    for (int i = 0; i <= grid.nx; ++i) {
        const double x = grid.node_x(i);
        if (x >= -1.0 - eps && x <= 1.0 + eps) {
            profile.x.push_back(x);
            profile.density.push_back(measure.bottom[i] / grid.hx());
        }
    }
    return profile;
}

double measure_doubling_constant(const EllipticMeasureVector& measure, const Grid& grid) {
    require_bottom_coverage(grid, "measure_doubling_constant");
    const double eps = 1e-9 * grid.hx();
    auto interval_mass = [&](double lo, double hi) {
        double s = 0.0;
        for (int i = 0; i <= grid.nx; ++i) {
            const double x = grid.node_x(i);
            if (x >= lo - eps && x <= hi + eps) s += measure.bottom[i];
        }
        return s;
    };
    double worst = 0.0;
    for (double c : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
        for (double rho : {0.125, 0.25}) {
            const double inner = interval_mass(c - rho, c + rho);
            if (inner > 0.0) {
                worst = std::max(worst, interval_mass(c - 2.0 * rho, c + 2.0 * rho) / inner);
            }
        }
    }
    return worst;
}

KernelComparison compare_kernel_to_riesz(int j, const KernelCompareConfig& config) {
    if (j < 1) throw std::invalid_argument("compare_kernel_to_riesz: j must be >= 1");
    if (j > config.j_cap) {
        throw std::invalid_argument("compare_kernel_to_riesz: j exceeds the configured cap");
    }
    const LacunaryPair pair = make_lacunary(j, config.variant);
    const CoefficientField field = CoefficientField::level(pair, config.schedule, j);

    Grid grid;
    grid.x0 = config.x0;
    grid.x1 = config.x1;
    grid.y1 = config.y1;
    grid.nx = config.nx > 0
                  ? config.nx
                  : static_cast<int>(std::ceil((config.x1 - config.x0) * 16.0 *
                                               static_cast<double>(field.top_frequency()) - 1e-9));
    grid.ny = config.ny > 0
                  ? config.ny
                  : static_cast<int>(std::ceil(config.y1 * 16.0 *
                                               static_cast<double>(field.next_layer_scale()) - 1e-9));
    const DiscreteOperator op = DiscreteOperator::assemble(field, grid);

    const int pole_i = static_cast<int>(std::lround((config.pole_x - grid.x0) / grid.hx()));
    const int pole_m = static_cast<int>(std::lround(config.pole_y / grid.hy()));
    require_interior_pole(grid, pole_i, pole_m, "compare_kernel_to_riesz");

    KernelComparison cmp;
    cmp.nx = grid.nx;
    cmp.ny = grid.ny;
    cmp.pole_i = pole_i;
    cmp.pole_m = pole_m;
    const EllipticMeasureVector measure =
        elliptic_measure(op, pole_i, pole_m, config.rel_tol, &cmp.solve_info);
    PoissonKernelProfile profile = poisson_kernel_profile(measure, grid);

    const RieszProduct rp(pair, config.schedule, j);
    cmp.x = std::move(profile.x);
    cmp.kernel_density = std::move(profile.density);
    cmp.riesz_value.resize(cmp.x.size());
    for (std::size_t t = 0; t < cmp.x.size(); ++t) {
        if (!(cmp.kernel_density[t] > 0.0)) {
            throw DegenerateCellError("compare_kernel_to_riesz: kernel density not positive", t,
                                      cmp.x[t]);
        }
        cmp.riesz_value[t] = rp.eval(cmp.x[t]);
    }

    cmp.scale = vec_mean(cmp.kernel_density) / vec_mean(cmp.riesz_value);
    cmp.ratio.resize(cmp.x.size());
    cmp.min_ratio = cmp.max_ratio = cmp.kernel_density[0] / (cmp.scale * cmp.riesz_value[0]);
    for (std::size_t t = 0; t < cmp.x.size(); ++t) {
        const double rho = cmp.kernel_density[t] / (cmp.scale * cmp.riesz_value[t]);
        cmp.ratio[t] = rho;
        cmp.min_ratio = std::min(cmp.min_ratio, rho);
        cmp.max_ratio = std::max(cmp.max_ratio, rho);
    }

    const std::size_t n = cmp.x.size();
    std::vector<double> lk(n), lr(n);
    for (std::size_t t = 0; t < n; ++t) {
        lk[t] = std::log(cmp.kernel_density[t]);
        lr[t] = std::log(cmp.riesz_value[t]);
    }
    const double mk = vec_mean(lk), mr = vec_mean(lr);
    double skk = 0.0, srr = 0.0, skr = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        skk += (lk[t] - mk) * (lk[t] - mk);
        srr += (lr[t] - mr) * (lr[t] - mr);
        skr += (lk[t] - mk) * (lr[t] - mr);
    }
    if (std::sqrt(srr / static_cast<double>(n)) < 1e-12 ||
        std::sqrt(skk / static_cast<double>(n)) < 1e-12) {
        cmp.correlation_defined = false;
        cmp.correlation = 0.0;
    } else {
        cmp.correlation_defined = true;
        cmp.correlation = skr / std::sqrt(skk * srr);
    }
    return cmp;
}

}  // namespace emlab
