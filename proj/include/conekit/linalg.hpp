#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace conekit {

// Rank / orthonormality tolerance used by the Gram-Schmidt routines.
inline constexpr double kRankTol = 1e-10;

// Dense real vector with a fixed ambient dimension. Coordinates are
// validated to be finite on construction; dimension is always >= 1.
class Vector {
public:
    explicit Vector(int dim);
    Vector(std::initializer_list<double> coords);
    explicit Vector(std::vector<double> coords);

    int dim() const { return static_cast<int>(c_.size()); }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& coords() const { return c_; }

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(double s);

private:
    std::vector<double> c_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);
Vector operator-(Vector a);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
// Euclidean distance ||a - b||.
double distance(const Vector& a, const Vector& b);
Vector zero_vector(int dim);
Vector unit_vector(int dim, int axis);
// a/||a||; throws std::invalid_argument when ||a|| <= kRankTol.
Vector normalized(const Vector& a);
bool is_zero(const Vector& a, double tol);

// Strict lexicographic comparison by coordinates, used to keep stored
// generator lists in a deterministic order.
bool lex_less(const Vector& a, const Vector& b);

// Linear subspace of R^n stored as an orthonormal basis. rank 0 is the
// trivial subspace {o}. Construction validates pairwise orthonormality
// within kRankTol.
class Subspace {
public:
    explicit Subspace(int ambient_dim); // trivial subspace
    Subspace(int ambient_dim, std::vector<Vector> orthonormal_basis);

    int ambient_dim() const { return ambient_dim_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vector>& basis() const { return basis_; }

    bool is_trivial() const { return basis_.empty(); }
    bool is_full() const { return rank() == ambient_dim_; }

private:
    int ambient_dim_;
    std::vector<Vector> basis_;
};

// Modified Gram-Schmidt with one re-orthogonalization pass. Inputs are
// normalized first; pivots below kRankTol are dropped, so the result's
// rank is the numerical rank of the input span.
Subspace orthonormal_basis(const std::vector<Vector>& vectors, int ambient_dim);

// Orthogonal complement, built by sweeping the coordinate basis through
// the same Gram-Schmidt routine. rank(s) + rank(result) == ambient_dim.
Subspace orthogonal_complement(const Subspace& s);

// Metric projection onto the subspace: sum of (u . b_i) b_i.
Vector project_subspace(const Subspace& s, const Vector& u);

// Mutual containment of spans at reconstruction residual <= tol.
bool subspaces_equal(const Subspace& a, const Subspace& b, double tol);

// True when ||v - project_subspace(s, v)|| <= tol.
bool subspace_contains(const Subspace& s, const Vector& v, double tol);

// Span of the union of two subspaces.
Subspace subspace_sum(const Subspace& a, const Subspace& b);

} // namespace conekit
