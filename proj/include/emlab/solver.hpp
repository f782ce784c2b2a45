#pragma once

// Conservative 5-point discretization of -div(diag(1, alpha) grad u) on a
// rectangle with Dirichlet data, vertex-centered: nodes (i, m) at
// (x0 + i*hx, m*hy), unknowns at the (nx-1)*(ny-1) interior nodes. Face
// conductivities: x-faces 1/hx^2, y-faces (arithmetic nodal mean of alpha)/hy^2.
// The boundary representation ("elliptic measure") comes from one Green solve:
// with A g = e_P, the weight of boundary node b with interior neighbor n is
// (face conductivity between b and n) * g(n), which reproduces every Dirichlet
// solve at P exactly (discrete duality).

#include <cstdint>
#include <vector>

#include "emlab/field.hpp"

namespace emlab {

struct Grid {
    double x0 = 0.0, x1 = 1.0;  // horizontal extent
    double y1 = 1.0;            // vertical extent above the boundary line y = 0
    int nx = 8, ny = 8;         // cell counts; node grid is (nx+1) x (ny+1)

    double hx() const { return (x1 - x0) / nx; }
    double hy() const { return y1 / ny; }
    double node_x(int i) const { return x0 + i * hx(); }
    double node_y(int m) const { return m * hy(); }
    void validate() const;  // x0 < x1, y1 > 0, nx >= 8, ny >= 8
};

struct BoundaryData {
    std::vector<double> bottom, top;  // node values, size nx+1
    std::vector<double> left, right;  // node values, size ny+1; corners never read

    static BoundaryData zeros(const Grid& grid);
    void validate(const Grid& grid) const;
    double min() const;
    double max() const;
};

struct SolveInfo {
    int iterations = 0;
    double residual = 0.0;  // true relative residual at exit
};

class DiscreteOperator {
  public:
    // Requires a Level(j) field; grid spacing must satisfy
    // hx <= 1/(16*top_frequency) and hy <= 1/(16*next_layer_scale).
    static DiscreteOperator assemble(const CoefficientField& field, const Grid& grid);
    // alpha == 1 everywhere; no resolution constraint beyond nx, ny >= 8.
    static DiscreteOperator laplacian(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int interior_count() const { return (grid_.nx - 1) * (grid_.ny - 1); }
    int interior_index(int i, int m) const { return (m - 1) * (grid_.nx - 1) + (i - 1); }

    double face_weight_x() const { return wx_; }
    // Conductivity of the y-face between nodes (i, m) and (i, m+1),
    // 1 <= i <= nx-1, 0 <= m <= ny-1.
    double face_weight_y(int i, int m) const { return wy_[static_cast<std::size_t>(m) * (grid_.nx - 1) + (i - 1)]; }
    double diagonal(int i, int m) const {
        return 2.0 * wx_ + face_weight_y(i, m - 1) + face_weight_y(i, m);
    }

    // out = A u on interior nodes, boundary values taken as zero.
    void apply(const std::vector<double>& u, std::vector<double>& out) const;

    // Preconditioned CG on A x = rhs (Jacobi), relative recursive residual
    // <= rel_tol, iteration cap 50*sqrt(N); throws ConvergenceError with the
    // residual history on stagnation.
    std::vector<double> solve(const std::vector<double>& rhs, double rel_tol,
                              SolveInfo* info = nullptr) const;

  private:
    DiscreteOperator(Grid grid, double wx, std::vector<double> wy);

    Grid grid_;
    double wx_;
    std::vector<double> wy_;  // y-face conductivities, index m*(nx-1) + (i-1)
};

// Solves the Dirichlet problem with the given boundary node data; returns the
// interior solution in row-major interior ordering. rel_tol must be in (0, 1e-4].
std::vector<double> solve_dirichlet(const DiscreteOperator& op, const BoundaryData& data,
                                    double rel_tol, SolveInfo* info = nullptr);

struct EllipticMeasureVector {
    std::vector<double> bottom, top;  // mass per boundary node, size nx+1
    std::vector<double> left, right;  // size ny+1; corner entries are 0

    double total() const;
    double bottom_mass() const;
    double top_mass() const;
    double left_mass() const;
    double right_mass() const;
};

// Boundary representation weights of the interior node (pole_i, pole_m) via
// one Green solve at the given tolerance.
EllipticMeasureVector elliptic_measure(const DiscreteOperator& op, int pole_i, int pole_m,
                                       double rel_tol = 1e-10, SolveInfo* info = nullptr);

// Random-walk estimate of the same weights: transition probabilities
// proportional to the face conductivities, absorbed at boundary nodes.
// Deterministic for a fixed seed regardless of thread count.
EllipticMeasureVector measure_mc_oracle(const DiscreteOperator& op, int pole_i, int pole_m,
                                        std::int64_t walkers, std::uint64_t seed);

struct PoissonKernelProfile {
    std::vector<double> x;        // bottom node positions in [-1, 1]
    std::vector<double> density;  // node mass / hx
};

// Bottom-edge density restricted to [-1, 1]; the grid must cover it.
PoissonKernelProfile poisson_kernel_profile(const EllipticMeasureVector& measure, const Grid& grid);

// max over a fixed family of bottom intervals I with 2I inside [-1, 1] of
// mass(2I)/mass(I); reported alongside measures as a doubling diagnostic.
double measure_doubling_constant(const EllipticMeasureVector& measure, const Grid& grid);

struct KernelCompareConfig {
    LacunaryVariant variant = LacunaryVariant::Standard;
    AmplitudeSchedule schedule = AmplitudeSchedule::sqrt_schedule();
    double x0 = -2.0, x1 = 3.0, y1 = 3.0;
    int nx = 0, ny = 0;  // 0 = smallest counts satisfying the resolution rule
    double pole_x = 0.5, pole_y = 2.0;
    double rel_tol = 1e-9;
    int j_cap = 3;  // resolving h_j = 4^j needs nx ~ 80*4^j; j > 3 is impractical
};

struct KernelComparison {
    double min_ratio = 0.0, max_ratio = 0.0;
    double correlation = 0.0;        // Pearson correlation of log density vs log product
    bool correlation_defined = false;  // false when the comparator is constant
    double scale = 0.0;              // c = mean(density)/mean(product)
    std::vector<double> x, kernel_density, riesz_value, ratio;
    int nx = 0, ny = 0;
    int pole_i = 0, pole_m = 0;
    SolveInfo solve_info;
};

// Solves the Level(j) operator, extracts the bottom kernel profile on [-1, 1],
// and compares it cellwise to the order-j product with matched means.
KernelComparison compare_kernel_to_riesz(int j, const KernelCompareConfig& config = {});

}  // namespace emlab
