#include "conekit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace conekit {

namespace {

constexpr double kPivotTol = 1e-9;

} // namespace

LeastSquaresResult least_squares(const Columns& cols, const Vector& b) {
    const int n = b.dim();
    const int k = static_cast<int>(cols.size());
    LeastSquaresResult out;
    out.x.assign(static_cast<std::size_t>(k), 0.0);
    if (k == 0) return out;

    // Householder QR, columns processed left to right; dependent columns
    // are skipped and keep coefficient zero.
    std::vector<std::vector<double>> reflectors;
    std::vector<int> indep;
    std::vector<std::vector<double>> rcol(static_cast<std::size_t>(k));

    auto apply_reflectors = [&](std::vector<double>& v) {
        for (const auto& u : reflectors) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
            for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= 2.0 * s * u[static_cast<std::size_t>(i)];
        }
    };

    for (int j = 0; j < k; ++j) {
        if (cols[static_cast<std::size_t>(j)].dim() != n) {
            throw std::invalid_argument("least_squares: column dimension mismatch");
        }
        std::vector<double> v = cols[static_cast<std::size_t>(j)].coords();
        apply_reflectors(v);
        const int p = static_cast<int>(indep.size());
        if (p >= n) { rcol[static_cast<std::size_t>(j)] = v; continue; }
        double tail = 0.0;
        for (int i = p; i < n; ++i) tail += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        tail = std::sqrt(tail);
        double colscale = norm(cols[static_cast<std::size_t>(j)]);
        if (tail <= kRankTol * std::max(1.0, colscale)) {
            rcol[static_cast<std::size_t>(j)] = v;
            continue; // dependent column
        }
        double alpha = (v[static_cast<std::size_t>(p)] >= 0.0) ? -tail : tail;
        std::vector<double> u(static_cast<std::size_t>(n), 0.0);
        for (int i = p; i < n; ++i) u[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
        u[static_cast<std::size_t>(p)] -= alpha;
        double un = 0.0;
        for (double t : u) un += t * t;
        un = std::sqrt(un);
        if (un > 0.0) {
            for (double& t : u) t /= un;
        }
        // apply to v itself
        for (int i = p + 1; i < n; ++i) v[static_cast<std::size_t>(i)] = 0.0;
        v[static_cast<std::size_t>(p)] = alpha;
        rcol[static_cast<std::size_t>(j)] = v;
        reflectors.push_back(std::move(u));
        indep.push_back(j);
    }

    std::vector<double> qtb = b.coords();
    apply_reflectors(qtb);

    const int r = static_cast<int>(indep.size());
    for (int t = r - 1; t >= 0; --t) {
        int j = indep[static_cast<std::size_t>(t)];
        double s = qtb[static_cast<std::size_t>(t)];
        for (int t2 = t + 1; t2 < r; ++t2) {
            int j2 = indep[static_cast<std::size_t>(t2)];
            s -= rcol[static_cast<std::size_t>(j2)][static_cast<std::size_t>(t)] * out.x[static_cast<std::size_t>(j2)];
        }
        out.x[static_cast<std::size_t>(j)] = s / rcol[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
    }
    out.rank = r;
    return out;
}

std::vector<double> nnls(const Columns& cols, const Vector& b, double dual_tol) {
    const int k = static_cast<int>(cols.size());
    std::vector<double> w(static_cast<std::size_t>(k), 0.0);
    if (k == 0) return w;

    std::vector<char> passive(static_cast<std::size_t>(k), 0);
    std::vector<char> rejected(static_cast<std::size_t>(k), 0);
    Vector r = b;

    auto passive_columns = [&](std::vector<int>& idx) {
        Columns sub;
        idx.clear();
        for (int j = 0; j < k; ++j) {
            if (passive[static_cast<std::size_t>(j)]) {
                idx.push_back(j);
                sub.push_back(cols[static_cast<std::size_t>(j)]);
            }
        }
        return sub;
    };

    auto recompute_residual = [&]() {
        r = b;
        for (int j = 0; j < k; ++j) {
            if (w[static_cast<std::size_t>(j)] != 0.0) r -= w[static_cast<std::size_t>(j)] * cols[static_cast<std::size_t>(j)];
        }
    };

    const int max_outer = 3 * k + 50;
    for (int outer = 0; outer < max_outer; ++outer) {
        // dual vector on the active (zero) set; largest violation wins,
        // lowest index on ties
        int enter = -1;
        double best = dual_tol;
        for (int j = 0; j < k; ++j) {
            if (passive[static_cast<std::size_t>(j)] || rejected[static_cast<std::size_t>(j)]) continue;
            double d = dot(cols[static_cast<std::size_t>(j)], r);
            if (d > best) {
                best = d;
                enter = j;
            }
        }
        if (enter < 0) break;

        // reject columns dependent on the current passive set
        {
            std::vector<int> idx;
            Columns sub = passive_columns(idx);
            Vector resid = cols[static_cast<std::size_t>(enter)];
            Subspace span = orthonormal_basis(sub, b.dim());
            resid -= project_subspace(span, resid);
            if (norm(resid) <= kRankTol * std::max(1.0, norm(cols[static_cast<std::size_t>(enter)]))) {
                rejected[static_cast<std::size_t>(enter)] = 1;
                continue;
            }
        }

        passive[static_cast<std::size_t>(enter)] = 1;
        bool entered_now = true;
        bool shrank = false;
        for (int inner = 0; inner < max_outer; ++inner) {
            std::vector<int> idx;
            Columns sub = passive_columns(idx);
            LeastSquaresResult ls = least_squares(sub, b);
            bool all_pos = true;
            for (double s : ls.x) {
                if (s <= 0.0) { all_pos = false; break; }
            }
            if (all_pos) {
                for (int j = 0; j < k; ++j) w[static_cast<std::size_t>(j)] = 0.0;
                for (std::size_t t = 0; t < idx.size(); ++t) {
                    w[static_cast<std::size_t>(idx[t])] = ls.x[t];
                }
                recompute_residual();
                break;
            }
            if (entered_now) {
                // entering column failed to take a positive coefficient
                std::size_t pos_enter = 0;
                for (std::size_t t = 0; t < idx.size(); ++t) {
                    if (idx[t] == enter) pos_enter = t;
                }
                if (ls.x[pos_enter] <= 0.0) {
                    passive[static_cast<std::size_t>(enter)] = 0;
                    rejected[static_cast<std::size_t>(enter)] = 1;
                    break;
                }
            }
            entered_now = false;
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < idx.size(); ++t) {
                if (ls.x[t] <= 0.0) {
                    double wi = w[static_cast<std::size_t>(idx[t])];
                    double a = wi / (wi - ls.x[t]);
                    alpha = std::min(alpha, a);
                }
            }
            if (!std::isfinite(alpha)) break;
            for (std::size_t t = 0; t < idx.size(); ++t) {
                double wi = w[static_cast<std::size_t>(idx[t])];
                double nw = wi + alpha * (ls.x[t] - wi);
                if (nw <= 1e-12) {
                    nw = 0.0;
                    passive[static_cast<std::size_t>(idx[t])] = 0;
                    shrank = true;
                }
                w[static_cast<std::size_t>(idx[t])] = nw;
            }
            recompute_residual();
        }
        if (shrank) {
            std::fill(rejected.begin(), rejected.end(), 0);
        }
    }
    return w;
}

std::vector<double> wolfe_min_norm_point(const Columns& points, double tol) {
    const int m = static_cast<int>(points.size());
    if (m == 0) throw std::invalid_argument("wolfe_min_norm_point: empty point set");
    const int n = points[0].dim();

    // affine min-norm over the current corral via the KKT system
    auto affine_min_norm = [&](const std::vector<int>& S) -> std::vector<double> {
        const int s = static_cast<int>(S.size());
        if (s == 1) return {1.0};
        const int d = s + 1;
        std::vector<std::vector<double>> M(static_cast<std::size_t>(d),
                                           std::vector<double>(static_cast<std::size_t>(d + 1), 0.0));
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < s; ++j) {
                M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    2.0 * dot(points[static_cast<std::size_t>(S[static_cast<std::size_t>(i)])],
                              points[static_cast<std::size_t>(S[static_cast<std::size_t>(j)])]);
            }
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = 1.0;
            M[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] = 1.0;
        }
        M[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)] = 1.0;
        // Gaussian elimination with partial pivoting
        for (int c = 0; c < d; ++c) {
            int piv = c;
            for (int rI = c + 1; rI < d; ++rI) {
                if (std::abs(M[static_cast<std::size_t>(rI)][static_cast<std::size_t>(c)]) >
                    std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)])) piv = rI;
            }
            if (std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]) < 1e-13) {
                return {}; // singular: affinely dependent corral
            }
            std::swap(M[static_cast<std::size_t>(c)], M[static_cast<std::size_t>(piv)]);
            for (int rI = 0; rI < d; ++rI) {
                if (rI == c) continue;
                double f = M[static_cast<std::size_t>(rI)][static_cast<std::size_t>(c)] /
                           M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
                if (f == 0.0) continue;
                for (int c2 = c; c2 <= d; ++c2) {
                    M[static_cast<std::size_t>(rI)][static_cast<std::size_t>(c2)] -=
                        f * M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c2)];
                }
            }
        }
        std::vector<double> mu(static_cast<std::size_t>(s), 0.0);
        for (int i = 0; i < s; ++i) {
            mu[static_cast<std::size_t>(i)] = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] /
                                              M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        }
        return mu;
    };

    int first = 0;
    for (int i = 1; i < m; ++i) {
        if (norm(points[static_cast<std::size_t>(i)]) <
            norm(points[static_cast<std::size_t>(first)]) - 1e-15) first = i;
    }
    std::vector<int> S{first};
    std::vector<double> lam{1.0};
    Vector x = points[static_cast<std::size_t>(first)];

    auto rebuild_x = [&]() {
        Vector nx(n);
        for (std::size_t t = 0; t < S.size(); ++t) {
            nx += lam[t] * points[static_cast<std::size_t>(S[t])];
        }
        x = nx;
    };

    const int max_major = 16 * m + 100;
    for (int major = 0; major < max_major; ++major) {
        double xx = dot(x, x);
        int best = -1;
        double best_val = xx - tol * (1.0 + xx);
        for (int i = 0; i < m; ++i) {
            double v = dot(points[static_cast<std::size_t>(i)], x);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        if (best < 0) break;
        if (std::find(S.begin(), S.end(), best) != S.end()) break;
        S.push_back(best);
        lam.push_back(0.0);

        for (int minor = 0; minor < max_major; ++minor) {
            std::vector<double> mu = affine_min_norm(S);
            if (mu.empty()) {
                // drop the most recent member to restore affine independence
                S.pop_back();
                lam.pop_back();
                double tot = std::accumulate(lam.begin(), lam.end(), 0.0);
                if (tot > 0.0) for (double& l : lam) l /= tot;
                rebuild_x();
                break;
            }
            bool all_pos = true;
            for (double v : mu) {
                if (v <= 1e-12) { all_pos = false; break; }
            }
            if (all_pos) {
                lam = mu;
                rebuild_x();
                break;
            }
            double theta = 1.0;
            for (std::size_t t = 0; t < S.size(); ++t) {
                if (mu[t] <= 1e-12) {
                    double denom = lam[t] - mu[t];
                    if (denom > 0.0) theta = std::min(theta, lam[t] / denom);
                }
            }
            std::vector<int> keepS;
            std::vector<double> keepL;
            for (std::size_t t = 0; t < S.size(); ++t) {
                double nl = (1.0 - theta) * lam[t] + theta * mu[t];
                if (nl > 1e-12) {
                    keepS.push_back(S[t]);
                    keepL.push_back(nl);
                }
            }
            if (keepS.empty()) {
                keepS.push_back(S[0]);
                keepL.push_back(1.0);
            }
            double tot = std::accumulate(keepL.begin(), keepL.end(), 0.0);
            for (double& l : keepL) l /= tot;
            S = std::move(keepS);
            lam = std::move(keepL);
            rebuild_x();
        }
    }

    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    for (std::size_t t = 0; t < S.size(); ++t) out[static_cast<std::size_t>(S[t])] = lam[t];
    return out;
}

std::vector<double> project_to_simplex(const std::vector<double>& w) {
    const int k = static_cast<int>(w.size());
    if (k == 0) return {};
    std::vector<double> u = w;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0;
    double tau = 0.0;
    int rho = 0;
    double run = 0.0;
    for (int j = 1; j <= k; ++j) {
        run += u[static_cast<std::size_t>(j - 1)];
        double t = (run - 1.0) / j;
        if (u[static_cast<std::size_t>(j - 1)] - t > 0.0) {
            rho = j;
            css = run;
        }
    }
    tau = (css - 1.0) / rho;
    std::vector<double> out(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < k; ++j) {
        out[static_cast<std::size_t>(j)] = std::max(0.0, w[static_cast<std::size_t>(j)] - tau);
    }
    return out;
}

namespace {

struct Tableau {
    int m = 0;
    int cols = 0; // structural + slack/surplus + artificial
    std::vector<std::vector<double>> a; // m rows, cols + 1 (rhs last)
    std::vector<int> basis;

    void pivot(int row, int col) {
        double p = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (int j = 0; j <= cols; ++j) a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) {
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
            }
        }
        basis[static_cast<std::size_t>(row)] = col;
    }
};

// Bland's rule iteration on min c.x; returns false on unbounded.
bool simplex_iterate(Tableau& t, const std::vector<double>& cost,
                     const std::vector<char>& allowed) {
    const int max_iters = 20000;
    for (int iter = 0; iter < max_iters; ++iter) {
        int enter = -1;
        for (int j = 0; j < t.cols; ++j) {
            if (!allowed[static_cast<std::size_t>(j)]) continue;
            double rc = cost[static_cast<std::size_t>(j)];
            for (int i = 0; i < t.m; ++i) {
                rc -= cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])] *
                      t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
            if (rc < -kPivotTol) { enter = j; break; }
        }
        if (enter < 0) return true;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < t.m; ++i) {
            double aij = t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
            if (aij > kPivotTol) {
                double ratio = t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.cols)] / aij;
                if (leave < 0 || ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 &&
                     t.basis[static_cast<std::size_t>(i)] < t.basis[static_cast<std::size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return false;
        t.pivot(leave, enter);
    }
    return true; // iteration cap: treat current point as final
}

} // namespace

LpResult lp_solve(const LpProblem& p) {
    const int m = static_cast<int>(p.rows.size());
    const int n = p.n_vars;
    LpResult res;

    int n_slack = 0;
    for (LpRelation rel : p.relations) {
        if (rel != LpRelation::EQ) ++n_slack;
    }
    Tableau t;
    t.m = m;
    t.cols = n + n_slack + m; // one artificial slot per row (some unused)
    t.a.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(t.cols) + 1, 0.0));
    t.basis.assign(static_cast<std::size_t>(m), -1);

    std::vector<char> is_artificial(static_cast<std::size_t>(t.cols), 0);
    int slack_at = n;
    int art_at = n + n_slack;
    for (int i = 0; i < m; ++i) {
        double sign = (p.rhs[static_cast<std::size_t>(i)] < 0.0) ? -1.0 : 1.0;
        LpRelation rel = p.relations[static_cast<std::size_t>(i)];
        if (sign < 0.0) {
            if (rel == LpRelation::LE) rel = LpRelation::GE;
            else if (rel == LpRelation::GE) rel = LpRelation::LE;
        }
        for (int j = 0; j < n; ++j) {
            t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                sign * p.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.cols)] =
            sign * p.rhs[static_cast<std::size_t>(i)];
        if (rel == LpRelation::LE) {
            t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(slack_at)] = 1.0;
            t.basis[static_cast<std::size_t>(i)] = slack_at;
            ++slack_at;
        } else {
            if (rel == LpRelation::GE) {
                t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(slack_at)] = -1.0;
                ++slack_at;
            }
            t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(art_at)] = 1.0;
            is_artificial[static_cast<std::size_t>(art_at)] = 1;
            t.basis[static_cast<std::size_t>(i)] = art_at;
            ++art_at;
        }
    }

    std::vector<char> allowed(static_cast<std::size_t>(t.cols), 1);
    std::vector<double> cost1(static_cast<std::size_t>(t.cols), 0.0);
    for (int j = 0; j < t.cols; ++j) {
        if (is_artificial[static_cast<std::size_t>(j)]) cost1[static_cast<std::size_t>(j)] = 1.0;
    }
    if (!simplex_iterate(t, cost1, allowed)) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    double phase1 = 0.0;
    for (int i = 0; i < m; ++i) {
        if (is_artificial[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])]) {
            phase1 += t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.cols)];
        }
    }
    if (phase1 > 1e-7) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // drive residual artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (!is_artificial[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(i)])]) continue;
        int piv = -1;
        for (int j = 0; j < t.cols; ++j) {
            if (is_artificial[static_cast<std::size_t>(j)]) continue;
            if (std::abs(t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > 1e-8) {
                piv = j;
                break;
            }
        }
        if (piv >= 0) t.pivot(i, piv);
    }
    for (int j = 0; j < t.cols; ++j) {
        if (is_artificial[static_cast<std::size_t>(j)]) allowed[static_cast<std::size_t>(j)] = 0;
    }

    std::vector<double> cost2(static_cast<std::size_t>(t.cols), 0.0);
    for (int j = 0; j < n; ++j) cost2[static_cast<std::size_t>(j)] = -p.objective[static_cast<std::size_t>(j)];
    if (!simplex_iterate(t, cost2, allowed)) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.status = LpStatus::Optimal;
    res.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        int bj = t.basis[static_cast<std::size_t>(i)];
        if (bj < n) res.x[static_cast<std::size_t>(bj)] = t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.cols)];
    }
    res.objective = 0.0;
    for (int j = 0; j < n; ++j) res.objective += p.objective[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
    return res;
}

std::vector<double> cubic_real_roots(double a2, double a1, double a0) {
    // depressed form t^3 + p t + q with x = t - a2/3
    double p = a1 - a2 * a2 / 3.0;
    double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    double shift = -a2 / 3.0;
    std::vector<double> roots;
    double disc = q * q / 4.0 + p * p * p / 27.0;
    if (std::abs(p) < 1e-14 && std::abs(q) < 1e-14) {
        roots.push_back(shift);
    } else if (disc > 1e-14) {
        double sq = std::sqrt(disc);
        double u = std::cbrt(-q / 2.0 + sq);
        double v = std::cbrt(-q / 2.0 - sq);
        roots.push_back(u + v + shift);
    } else {
        double rr = std::sqrt(std::max(0.0, -p / 3.0));
        if (rr == 0.0) {
            roots.push_back(shift);
        } else {
            double arg = 3.0 * q / (2.0 * p * rr);
            arg = std::clamp(arg, -1.0, 1.0);
            double phi = std::acos(arg);
            for (int kq = 0; kq < 3; ++kq) {
                roots.push_back(2.0 * rr * std::cos(phi / 3.0 - 2.0 * M_PI * kq / 3.0) + shift);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace conekit
