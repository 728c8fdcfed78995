#pragma once

#include <vector>

#include "conekit/linalg.hpp"

namespace conekit {

// Column matrix view used by the small dense solvers below.
using Columns = std::vector<Vector>;

// Least squares min ||A x - b|| over the given columns via Householder QR.
// Rank-deficient trailing columns get coefficient 0 (pivot threshold
// kRankTol relative to the column norm). Returns x and the numeric rank.
struct LeastSquaresResult {
    std::vector<double> x;
    int rank = 0;
};
LeastSquaresResult least_squares(const Columns& cols, const Vector& b);

// Lawson-Hanson style active-set NNLS: min ||A w - b|| subject to w >= 0.
// Termination when the maximal dual violation is <= dual_tol; ties are
// broken toward the lowest column index. Columns that are numerically
// dependent on the current passive set are rejected, which keeps the
// passive least-squares problems full rank.
std::vector<double> nnls(const Columns& cols, const Vector& b, double dual_tol = 1e-10);

// Wolfe's min-norm-point algorithm over conv(points): returns the
// convex-combination weights of the nearest point to the origin.
std::vector<double> wolfe_min_norm_point(const Columns& points, double tol = 1e-12);

// Euclidean projection of w onto the probability simplex {x >= 0, sum x = 1},
// via the sort-and-threshold rule.
std::vector<double> project_to_simplex(const std::vector<double>& w);

// Dense two-phase primal simplex with Bland's rule.
// Solve: maximize c.x subject to rows A_i x (<=|=|>=) b_i and x >= 0.
enum class LpRelation { LE, EQ, GE };
enum class LpStatus { Optimal, Infeasible, Unbounded };
struct LpProblem {
    int n_vars = 0;
    std::vector<std::vector<double>> rows;
    std::vector<LpRelation> relations;
    std::vector<double> rhs;
    std::vector<double> objective; // maximized
};
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
};
LpResult lp_solve(const LpProblem& p);

// All real roots of x^3 + a2 x^2 + a1 x + a0 = 0, ascending order.
std::vector<double> cubic_real_roots(double a2, double a1, double a0);

} // namespace conekit
