#include "conekit/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "conekit/errors.hpp"

namespace conekit {

namespace {

void check_finite(const std::vector<double>& c) {
    for (double x : c) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("vector coordinate is not finite");
        }
    }
}

void check_same_dim(const Vector& a, const Vector& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(op) + ": dimensions " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

} // namespace

Vector::Vector(int dim) : c_(static_cast<std::size_t>(dim), 0.0) {
    if (dim < 1) throw std::invalid_argument("vector dimension must be >= 1");
}

Vector::Vector(std::initializer_list<double> coords) : c_(coords) {
    if (c_.empty()) throw std::invalid_argument("vector dimension must be >= 1");
    check_finite(c_);
}

Vector::Vector(std::vector<double> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw std::invalid_argument("vector dimension must be >= 1");
    check_finite(c_);
}

Vector& Vector::operator+=(const Vector& o) {
    check_same_dim(*this, o, "vector add");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o) {
    check_same_dim(*this, o, "vector subtract");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Vector& Vector::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }
Vector operator-(Vector a) { return a *= -1.0; }

double dot(const Vector& a, const Vector& b) {
    check_same_dim(a, b, "dot");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

double distance(const Vector& a, const Vector& b) { return norm(a - b); }

Vector zero_vector(int dim) { return Vector(dim); }

Vector unit_vector(int dim, int axis) {
    Vector e(dim);
    if (axis < 0 || axis >= dim) throw std::invalid_argument("unit_vector: axis out of range");
    e[axis] = 1.0;
    return e;
}

Vector normalized(const Vector& a) {
    double n = norm(a);
    if (n <= kRankTol) throw std::invalid_argument("normalized: vector has (near) zero norm");
    return a * (1.0 / n);
}

bool is_zero(const Vector& a, double tol) { return norm(a) <= tol; }

bool lex_less(const Vector& a, const Vector& b) {
    for (int i = 0; i < a.dim() && i < b.dim(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.dim() < b.dim();
}

Subspace::Subspace(int ambient_dim) : ambient_dim_(ambient_dim) {
    if (ambient_dim < 1) throw std::invalid_argument("subspace ambient dimension must be >= 1");
}

Subspace::Subspace(int ambient_dim, std::vector<Vector> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (ambient_dim < 1) throw std::invalid_argument("subspace ambient dimension must be >= 1");
    if (static_cast<int>(basis_.size()) > ambient_dim) {
        throw std::invalid_argument("subspace basis larger than ambient dimension");
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].dim() != ambient_dim) {
            throw DimensionMismatch("subspace basis vector has wrong dimension");
        }
        for (std::size_t j = 0; j <= i; ++j) {
            double d = dot(basis_[i], basis_[j]);
            double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(d - want) > 1e2 * kRankTol) {
                throw std::invalid_argument("subspace basis is not orthonormal");
            }
        }
    }
}

Subspace orthonormal_basis(const std::vector<Vector>& vectors, int ambient_dim) {
    std::vector<Vector> basis;
    for (const Vector& v : vectors) {
        if (v.dim() != ambient_dim) {
            throw DimensionMismatch("orthonormal_basis: vector dimension does not match ambient");
        }
        double n0 = norm(v);
        if (n0 <= kRankTol) continue;
        Vector w = v * (1.0 / n0);
        // two orthogonalization sweeps: MGS plus one re-orthogonalization
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& b : basis) w -= dot(w, b) * b;
        }
        double n = norm(w);
        if (n > kRankTol) basis.push_back(w * (1.0 / n));
    }
    return Subspace(ambient_dim, std::move(basis));
}

Subspace orthogonal_complement(const Subspace& s) {
    std::vector<Vector> basis;
    int n = s.ambient_dim();
    for (int axis = 0; axis < n && static_cast<int>(basis.size()) < n - s.rank(); ++axis) {
        Vector w = unit_vector(n, axis);
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& b : s.basis()) w -= dot(w, b) * b;
            for (const Vector& b : basis) w -= dot(w, b) * b;
        }
        double nn = norm(w);
        if (nn > kRankTol) basis.push_back(w * (1.0 / nn));
    }
    return Subspace(n, std::move(basis));
}

Vector project_subspace(const Subspace& s, const Vector& u) {
    if (u.dim() != s.ambient_dim()) {
        throw DimensionMismatch("project_subspace: vector dimension does not match ambient");
    }
    Vector p(u.dim());
    for (const Vector& b : s.basis()) p += dot(u, b) * b;
    return p;
}

bool subspace_contains(const Subspace& s, const Vector& v, double tol) {
    return norm(v - project_subspace(s, v)) <= tol;
}

bool subspaces_equal(const Subspace& a, const Subspace& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    if (a.rank() != b.rank()) return false;
    for (const Vector& v : a.basis()) {
        if (!subspace_contains(b, v, tol)) return false;
    }
    for (const Vector& v : b.basis()) {
        if (!subspace_contains(a, v, tol)) return false;
    }
    return true;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch("subspace_sum: ambient dimensions differ");
    }
    std::vector<Vector> all = a.basis();
    all.insert(all.end(), b.basis().begin(), b.basis().end());
    return orthonormal_basis(all, a.ambient_dim());
}

} // namespace conekit
