#include "nspso/bench.hpp"

#include "nspso/bench_functions.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace nspso {

namespace {

    // Schwefel optimum coordinate at full precision; Table-style listings
    // round it to 420.96, which misses the optimum by ~1e-2 per coordinate.
    constexpr double kSchwefelOptimum = 420.9687462275036;

    // Shift used by the rotated Schwefel variant, applied exactly as the
    // function is defined: y = M (x - 420.96) + 420.96.
    constexpr double kSchwefelShift = 420.96;

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    Vector constant_vector(int dim, double value) { return Vector::Constant(dim, value); }

    std::string g17(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

} // namespace

std::string to_string(FunctionId id)
{
    return "f" + std::to_string(index_of(id));
}

FunctionId parse_function_id(const std::string& name)
{
    if (name.size() >= 2 && name[0] == 'f') {
        int k = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9')
                throw ConfigError("unknown benchmark function '" + name + "'");
            k = k * 10 + (name[i] - '0');
        }
        if (k >= 1 && k <= 17)
            return static_cast<FunctionId>(k);
    }
    throw ConfigError("unknown benchmark function '" + name + "' (expected f1..f17)");
}

OrthogonalMatrix::OrthogonalMatrix(Matrix entries) : entries_(std::move(entries))
{
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw std::invalid_argument("OrthogonalMatrix: matrix must be square and non-empty");
    const Matrix gram = entries_.transpose() * entries_;
    const double defect
        = (gram - Matrix::Identity(entries_.rows(), entries_.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw std::invalid_argument("OrthogonalMatrix: M^T M deviates from identity by "
            + g17(defect));
    const double det = entries_.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-8)
        throw std::invalid_argument("OrthogonalMatrix: |det| = " + g17(std::abs(det)));
}

OrthogonalMatrix make_rotation_matrix(int dim, Rng& rng)
{
    if (dim < 1)
        throw std::invalid_argument("make_rotation_matrix: dim must be positive");
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            a(r, c) = rng.gaussian();
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing the sign of the R diagonal makes the factorization unique, so
    // the matrix is fully determined by the rng draws.
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0)
            q.col(j) = -q.col(j);
    return OrthogonalMatrix(std::move(q));
}

void save_rotation(const OrthogonalMatrix& m, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    const Eigen::Index d = m.dim();
    out << d << '\n';
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c)
            out << (c ? " " : "") << g17(m.matrix()(r, c));
        out << '\n';
    }
    if (!out)
        throw IoError("failed writing rotation matrix to '" + path + "'");
}

OrthogonalMatrix load_rotation(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    Eigen::Index d = 0;
    if (!(in >> d) || d < 1)
        throw IoError("malformed rotation file '" + path + "': bad dimension line");
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            if (!(in >> m(r, c)))
                throw IoError("malformed rotation file '" + path + "': too few entries");
    try {
        return OrthogonalMatrix(std::move(m));
    } catch (const std::invalid_argument& e) {
        throw IoError("rotation file '" + path + "' does not hold an orthogonal matrix: "
            + std::string(e.what()));
    }
}

Problem make_problem(FunctionId id, int dimension)
{
    // Canonical rotation seed per (id, dimension); runs stay replayable
    // without carrying the matrix around.
    const auto seed
        = 1000003ull * static_cast<std::uint64_t>(index_of(id)) + static_cast<std::uint64_t>(dimension);
    return make_problem(id, dimension, seed);
}

Problem make_problem(FunctionId id, int dimension, std::uint64_t rotation_seed)
{
    if (dimension < 1)
        throw ConfigError("problem dimension must be positive");
    if (is_mmf(id) && dimension != 2)
        throw ConfigError(to_string(id) + " is a two-dimensional MMF problem");

    Problem p;
    p.id = id;
    p.dimension = dimension;

    const auto box = [&](double lo, double hi) {
        return std::pair<Vector, Vector>(constant_vector(dimension, lo), constant_vector(dimension, hi));
    };

    switch (id) {
    case FunctionId::f1:
        std::tie(p.search_lower, p.search_upper) = box(-100.0, 100.0);
        std::tie(p.init_lower, p.init_upper) = box(-100.0, 50.0);
        p.optimum_location = constant_vector(dimension, 0.0);
        break;
    case FunctionId::f2:
        std::tie(p.search_lower, p.search_upper) = box(-2.048, 2.048);
        std::tie(p.init_lower, p.init_upper) = box(-2.048, 2.048);
        p.optimum_location = constant_vector(dimension, 1.0);
        break;
    case FunctionId::f3:
    case FunctionId::f9:
        std::tie(p.search_lower, p.search_upper) = box(-32.768, 32.768);
        std::tie(p.init_lower, p.init_upper) = box(-32.768, 16.0);
        p.optimum_location = constant_vector(dimension, 0.0);
        break;
    case FunctionId::f4:
    case FunctionId::f10:
        std::tie(p.search_lower, p.search_upper) = box(-600.0, 600.0);
        std::tie(p.init_lower, p.init_upper) = box(-600.0, 200.0);
        p.optimum_location = constant_vector(dimension, 0.0);
        break;
    case FunctionId::f5:
    case FunctionId::f11:
        std::tie(p.search_lower, p.search_upper) = box(-0.5, 0.5);
        std::tie(p.init_lower, p.init_upper) = box(-0.5, 0.2);
        p.optimum_location = constant_vector(dimension, 0.0);
        break;
    case FunctionId::f6:
    case FunctionId::f7:
    case FunctionId::f12:
    case FunctionId::f13:
        std::tie(p.search_lower, p.search_upper) = box(-5.12, 5.12);
        std::tie(p.init_lower, p.init_upper) = box(-5.12, 2.0);
        p.optimum_location = constant_vector(dimension, 0.0);
        break;
    case FunctionId::f8:
    case FunctionId::f14:
        std::tie(p.search_lower, p.search_upper) = box(-500.0, 500.0);
        std::tie(p.init_lower, p.init_upper) = box(-500.0, 500.0);
        p.optimum_location = constant_vector(dimension, kSchwefelOptimum);
        break;
    case FunctionId::f15:
    case FunctionId::f16:
        p.search_lower = Vector{{1.0, -1.0}};
        p.search_upper = Vector{{3.0, 1.0}};
        p.init_lower = p.search_lower;
        p.init_upper = p.search_upper;
        p.optimum_value = kNaN;
        p.optimum_is_pareto_set = true;
        break;
    case FunctionId::f17:
        p.search_lower = Vector{{0.1, 0.1}};
        p.search_upper = Vector{{1.1, 1.1}};
        p.init_lower = p.search_lower;
        p.init_upper = p.search_upper;
        p.optimum_value = kNaN;
        p.optimum_is_pareto_set = true;
        break;
    }

    if (is_rotated(id)) {
        Rng rng(rotation_seed);
        p.rotation = make_rotation_matrix(dimension, rng);
    }
    return p;
}

double evaluate(const Problem& problem, const Vector& x)
{
    if (is_mmf(problem.id))
        throw std::invalid_argument(
            to_string(problem.id) + " is bi-objective; call evaluate_mmf instead");
    if (x.size() != problem.dimension)
        throw std::invalid_argument("evaluate: expected dimension "
            + std::to_string(problem.dimension) + ", got " + std::to_string(x.size()));

    using namespace functions;
    switch (problem.id) {
    case FunctionId::f1:
        return sphere(x);
    case FunctionId::f2:
        return rosenbrock(x);
    case FunctionId::f3:
        return ackley(x);
    case FunctionId::f4:
        return griewank(x);
    case FunctionId::f5:
        return weierstrass(x);
    case FunctionId::f6:
        return rastrigin(x);
    case FunctionId::f7:
        return rastrigin_noncontinuous(x);
    case FunctionId::f8:
        return schwefel(x);
    default:
        break;
    }

    const Matrix& m = problem.rotation->matrix();
    if (problem.id == FunctionId::f14) {
        const Vector y = (m * (x.array() - kSchwefelShift).matrix()).array() + kSchwefelShift;
        return schwefel_bounded(y);
    }
    const Vector y = m * x;
    switch (problem.id) {
    case FunctionId::f9:
        return ackley(y);
    case FunctionId::f10:
        return griewank(y);
    case FunctionId::f11:
        return weierstrass(y);
    case FunctionId::f12:
        return rastrigin(y);
    default: // f13
        return rastrigin_noncontinuous(y);
    }
}

double mmf11_g(double x, int np)
{
    const double t = (x - 0.1) / 0.8;
    const double s = std::sin(static_cast<double>(np) * std::numbers::pi * x);
    const double s2 = s * s;
    return 2.0 - std::exp(-2.0 * std::log(2.0) * t * t) * (s2 * s2 * s2);
}

ObjectivePair evaluate_mmf(const Problem& problem, const Vector& x)
{
    if (!is_mmf(problem.id))
        throw std::invalid_argument(
            to_string(problem.id) + " is scalar; call evaluate instead");
    if (x.size() != 2)
        throw std::invalid_argument("evaluate_mmf: expected a 2-dimensional point");
    for (int i = 0; i < 2; ++i)
        if (x[i] < problem.search_lower[i] || x[i] > problem.search_upper[i])
            throw std::domain_error("evaluate_mmf: coordinate " + std::to_string(i + 1)
                + " = " + g17(x[i]) + " outside [" + g17(problem.search_lower[i]) + ", "
                + g17(problem.search_upper[i]) + "]");

    constexpr double pi = std::numbers::pi;
    if (problem.id == FunctionId::f17) {
        return {x[0], mmf11_g(x[1], problem.np) / x[0]};
    }
    const double t = std::abs(x[0] - 2.0);
    if (problem.id == FunctionId::f15) {
        const double dev = x[1] - std::sin(6.0 * pi * t + pi);
        return {t, 1.0 - std::sqrt(t) + 2.0 * dev * dev};
    }
    // MMF7
    const double ridge
        = (0.3 * t * t * std::cos(24.0 * pi * t + 4.0 * pi) + 0.6 * t) * std::sin(6.0 * pi * t + pi);
    const double dev = x[1] - ridge;
    return {t, 1.0 - std::sqrt(t) + dev * dev};
}

std::vector<ObjectivePair> pareto_front_samples(const Problem& problem, int count)
{
    if (!is_mmf(problem.id))
        throw std::invalid_argument(to_string(problem.id) + " has no Pareto front");
    if (count < 2)
        throw std::invalid_argument("pareto_front_samples: count must be at least 2");

    std::vector<ObjectivePair> out;
    out.reserve(count);
    if (problem.id == FunctionId::f17) {
        // Global front f2 = g(1/(2 np)) / f1 over f1 in [0.1, 1.1].
        const double gv = mmf11_g(1.0 / (2.0 * problem.np), problem.np);
        for (int k = 0; k < count; ++k) {
            const double f1 = 0.1 + 1.0 * k / (count - 1);
            out.push_back({f1, gv / f1});
        }
        return out;
    }
    // MMF1 and MMF7 share the front f2 = 1 - sqrt(f1) over f1 in [0, 1],
    // parameterized by t = sqrt(f1) so samples are uniform along f2.
    for (int k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / (count - 1);
        out.push_back({t * t, 1.0 - t});
    }
    return out;
}

double igd(const std::vector<ObjectivePair>& achieved, const std::vector<ObjectivePair>& reference)
{
    if (achieved.empty() || reference.empty())
        throw std::invalid_argument("igd: both point sets must be non-empty");
    double total = 0.0;
    for (const auto& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : achieved) {
            const double d1 = a.f1 - r.f1;
            const double d2 = a.f2 - r.f2;
            best = std::min(best, d1 * d1 + d2 * d2);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

std::function<double(const Vector&)> scalar_objective(const Problem& problem)
{
    const Problem* p = &problem;
    if (is_mmf(problem.id))
        return [p](const Vector& x) { return evaluate_mmf(*p, x).f1; };
    return [p](const Vector& x) { return evaluate(*p, x); };
}

} // namespace nspso
