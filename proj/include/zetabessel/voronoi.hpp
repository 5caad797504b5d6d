// Voronoi summation: finite sums over (alpha, beta) against main terms plus
// sums of Bessel-kernel integrals.
#pragma once

#include "zetabessel/identities.hpp"

#include <functional>
#include <string>
#include <vector>

namespace zb {

enum class TestFunctionKind { exp_decay, polynomial, gaussian };

struct TestFunction {
    TestFunctionKind kind = TestFunctionKind::exp_decay;
    double lambda = 1;                  // e^{-lambda t}
    std::vector<double> coefficients;   // c0 + c1 t + ...
    double center = 0, width = 1;       // e^{-((t-center)/width)^2}

    static TestFunction exp_decay(double lambda);
    static TestFunction polynomial(std::vector<double> coefficients);
    static TestFunction gaussian(double center, double width);
    // "exp_decay:1", "polynomial:1,0,-0.5", "gaussian:2,0.7"
    static TestFunction parse(const std::string& spec);
    std::string describe() const;

    hp operator()(const hp& t) const;  // current precision
    double value(double t) const;
    // f, f', ..., f^{(n)} at t
    std::vector<double> derivatives(double t, int n) const;
};

// combo = cK (2/pi) K + cY Y + cJ J
struct VoronoiKernel {
    double cK = 0, cY = 0, cJ = 0;

    static VoronoiKernel Z(double nu);       // (2/pi K + Y) sin - J cos
    static VoronoiKernel W(double nu);       // (2/pi K - Y) cos - J sin
    static VoronoiKernel Z_plus(double nu);  // (2/pi K + Y) cos + J sin
    static VoronoiKernel W_plus(double nu);  // (2/pi K - Y) sin + J cos
    static VoronoiKernel W_printed(double nu);  // (2/pi K - Y) sin - J cos

    double operator()(double mu, double y) const;
};

// integrand modifier: g = f (plain) or g = f / t
enum class Modifier { plain, over_t };

// adaptive Gauss-Kronrod in double; QuadratureError past the depth limit
double quadrature(const std::function<double(double)>& integrand, double alpha, double beta, double tol);
double quadrature(const TestFunction& f, Modifier g, const std::function<double(double)>& weight, double alpha,
                  double beta, double tol);

// int_alpha^beta g(t) t^{-nu/2} kernel_nu(4 pi sqrt(c t)) dt
double kernel_integral(const TestFunction& f, Modifier g, const VoronoiKernel& kernel, double nu, double c,
                       double alpha, double beta);
// same by repeated integration by parts; requires 4 pi^2 c alpha large
double kernel_integral_ibp(const TestFunction& f, Modifier g, const VoronoiKernel& kernel, double nu, double c,
                           double alpha, double beta);
double kernel_integral_quadrature(const TestFunction& f, Modifier g, const VoronoiKernel& kernel, double nu,
                                  double c, double alpha, double beta);

// smooth cutoff: 1 on [0,1], 0 past 2
double smooth_cutoff(double u);

hpc voronoi_lhs(const IdentityCase& c, const TestFunction& f, const PrecisionContext& ctx);
TailEstimate voronoi_rhs(const IdentityCase& c, const TestFunction& f, const EvaluationBudget& budget,
                         const PrecisionContext& ctx);
VerificationReport voronoi_verify(const IdentityCase& c, const TestFunction& f, const EvaluationBudget& budget,
                                  const PrecisionContext& ctx);

TestFunction test_function_of(const IdentityCase& c);
void validate_voronoi_case(const IdentityCase& c, const PrecisionContext& ctx);
bool is_voronoi_id(const std::string& id);

}  // namespace zb
