#pragma once

#include "nspso/rng.hpp"
#include "nspso/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nspso {

/// The seventeen benchmark functions. f1-f14 are scalar minimization
/// problems (f9-f14 rotated variants of f3-f8); f15-f17 are the
/// two-dimensional bi-objective MMF problems MMF1, MMF7 and MMF11.
enum class FunctionId : int {
    f1 = 1,
    f2,
    f3,
    f4,
    f5,
    f6,
    f7,
    f8,
    f9,
    f10,
    f11,
    f12,
    f13,
    f14,
    f15,
    f16,
    f17,
};

std::string to_string(FunctionId id);

/// Parses "f1".."f17"; throws ConfigError on anything else.
FunctionId parse_function_id(const std::string& name);

constexpr int index_of(FunctionId id) { return static_cast<int>(id); }
constexpr bool is_mmf(FunctionId id) { return index_of(id) >= 15; }
constexpr bool is_rotated(FunctionId id) { return index_of(id) >= 9 && index_of(id) <= 14; }

/// Objective values of a bi-objective MMF problem.
struct ObjectivePair {
    double f1 = 0.0;
    double f2 = 0.0;
};

/// Square matrix with M^T M == I, validated on construction
/// (max |M^T M - I| <= 1e-10 and |det M| == 1 within 1e-8).
class OrthogonalMatrix {
public:
    explicit OrthogonalMatrix(Matrix entries);

    const Matrix& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

private:
    Matrix entries_;
};

/// One benchmark objective: dimension, search and initialization boxes,
/// known optimum, and the rotation matrix for f9-f14.
struct Problem {
    FunctionId id = FunctionId::f1;
    int dimension = 0;
    Vector search_lower;
    Vector search_upper;
    Vector init_lower;
    Vector init_upper;
    double optimum_value = 0.0; // scalar problems only
    Vector optimum_location; // empty when the optimum is a Pareto set
    bool optimum_is_pareto_set = false;
    std::optional<OrthogonalMatrix> rotation; // present exactly for f9-f14
    int np = 2; // MMF11 only: number of global + local Pareto sets
};

/// Builds a benchmark problem. Rotated problems draw their orthogonal matrix
/// from `rotation_seed`; the single-argument overload derives a fixed seed
/// from (id, dimension) so each problem instance is canonical across runs.
/// MMF problems require dimension == 2.
Problem make_problem(FunctionId id, int dimension);
Problem make_problem(FunctionId id, int dimension, std::uint64_t rotation_seed);

/// Scalar fitness of f1-f14 at x. Throws std::invalid_argument on a
/// dimension mismatch or when called on an MMF problem (use evaluate_mmf).
double evaluate(const Problem& problem, const Vector& x);

/// Both objectives of f15-f17 at a point of their two-dimensional domain.
/// Throws std::invalid_argument for non-MMF ids and std::domain_error for
/// out-of-domain points.
ObjectivePair evaluate_mmf(const Problem& problem, const Vector& x);

/// `count` >= 2 points spaced uniformly along the analytical global Pareto
/// front, endpoints included.
std::vector<ObjectivePair> pareto_front_samples(const Problem& problem, int count);

/// Inverted generational distance: mean over `reference` of the Euclidean
/// distance to the nearest point of `achieved`. Both sets must be non-empty.
double igd(const std::vector<ObjectivePair>& achieved,
           const std::vector<ObjectivePair>& reference);

/// Random rotation: orthonormalization of a seeded standard-normal matrix
/// (QR with the R diagonal sign fixed), deterministic given the rng state.
OrthogonalMatrix make_rotation_matrix(int dim, Rng& rng);

/// Plain-text persistence: first line `dim`, then dim rows of dim values
/// printed with 17 significant digits, row-major.
void save_rotation(const OrthogonalMatrix& m, const std::string& path);
OrthogonalMatrix load_rotation(const std::string& path);

/// Scalar view of any problem: evaluate() for f1-f14, the first MMF
/// objective for f15-f17. The problem must outlive the returned callable.
std::function<double(const Vector&)> scalar_objective(const Problem& problem);

/// g(x) of MMF11: 2 - exp(-2 ln2 ((x - 0.1) / 0.8)^2) sin^6(np pi x).
double mmf11_g(double x, int np);

} // namespace nspso
