#pragma once

#include <filesystem>
#include <vector>

#include "mcnn/constitutive.hpp"

namespace mcnn {

/// Grid spec for the explicit reference solver.
struct FdGridSpec {
    double dx = 0.02;
    double dt = 1e-5;
    double t_end = 1.0;
    std::vector<double> snapshot_times; ///< defaults to the test-grid times

    void validate() const; // 1/dx integral, dt > 0, snapshots within [0, t_end]
};

/// The 100 equispaced test times 0.01 .. 1.00 (t = 0 excluded).
std::vector<double> default_snapshot_times();

/// Reference solution on the (X, t) lattice: one row of J values per
/// recorded snapshot.
struct SolutionGrid {
    std::vector<double> x_nodes;
    std::vector<double> t_snapshots;
    std::vector<std::vector<double>> j_values; // [snapshot][node]
};

/// Largest stable time step for the explicit scheme,
/// dx^2 / (2 max_J D(J)/phi0^3) with J scanned over [J_bar, 1] at 1e-3
/// spacing. Throws NumericalError if spec.dt exceeds the bound.
double stability_check(LawId law, const MaterialProps& props,
                       const FdGridSpec& spec);

/// Explicit conservative-form solve: forward Euler in time, centered fluxes
/// with arithmetic-mean interface diffusivity, Dirichlet J = J_bar at X = 0
/// (applied from the first step; the t = 0 state is J = 1 everywhere),
/// mirror ghost node at X = 1. Second-order accurate in space, first-order
/// in time. Aborts (NumericalError) on pore collapse or non-finite values.
SolutionGrid fd_solve(LawId law, const MaterialProps& props,
                      const FdGridSpec& spec);

/// Bilinear interpolation; exact at nodes/snapshots. Throws out-of-hull.
double interpolate(const SolutionGrid& grid, double x_hat, double t_hat);

/// CSV export/import: `x_hat,t_hat,j`, row-major over snapshots then nodes,
/// 17 significant digits.
void write_solution_csv(const std::filesystem::path& path,
                        const SolutionGrid& grid);
SolutionGrid read_solution_csv(const std::filesystem::path& path);

} // namespace mcnn
