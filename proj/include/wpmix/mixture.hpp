#pragma once

#include <cstddef>
#include <vector>

#include "wpmix/geometry.hpp"
#include "wpmix/laws.hpp"
#include "wpmix/linalg.hpp"
#include "wpmix/random.hpp"

namespace wpmix {

// X = A S with S_I = R W U_I, S_J = R W_p U_J and W = (1 - W_p^p)^(1/p).
// R ~ radial, W_p ~ mixing, U_I and U_J cone-measure uniform on unit
// l_{q_I} / l_{q_J} spheres, all four factors independent.
struct WpMixtureModel {
    IndexPartition part;
    double p = 2.0;
    Matrix a;          // d x d, applied to the stacked vector S
    RadialLaw radial;
    MixingLaw mixing;
    double q_i = 2.0;  // sphere norm on the I block
    double q_j = 2.0;  // sphere norm on the J block
};

WpMixtureModel make_mixture_model(IndexPartition part, double p, Matrix a,
                                  RadialLaw radial, MixingLaw mixing,
                                  double q_i, double q_j);

// Coordinate-major sample batch: x[k][s] is coordinate k of sample s.
// r and wp hold the latent radial and mixing factors of each sample when
// requested (empty otherwise).
struct MixtureBatch {
    std::vector<std::vector<double>> x;
    std::vector<double> r;
    std::vector<double> wp;

    std::size_t size() const { return x.empty() ? 0 : x[0].size(); }
};

// Per sample the stream is consumed in the order R, W_p, U_I, U_J.
MixtureBatch sample_mixture(const WpMixtureModel& model, std::size_t n,
                            RandomStream& rng, bool keep_factors = false);

// Bivariate special case used by the concomitant experiments:
//   X = R I1 W_p,  Y = rho X + (1 - rho^p)^(1/p) R I2 W
// with P(I1 = 1) = q1, P(I2 = 1) = q2, values in {-1, +1}.
struct BivariateModel {
    double rho = 0.0;
    double p = 2.0;
    double q1 = 0.5;
    double q2 = 0.5;
    RadialLaw radial;
    MixingLaw mixing;
};

BivariateModel make_bivariate_model(double rho, double p, double q1, double q2,
                                    RadialLaw radial, MixingLaw mixing);

struct BivariateBatch {
    std::vector<double> x;
    std::vector<double> y;
};

// Per sample the stream is consumed in the order R, W_p, I1, I2.
BivariateBatch sample_bivariate(const BivariateModel& model, std::size_t n,
                                RandomStream& rng);

// Distribution function of X = I1 R W_p (one bivariate coordinate).
double bivariate_marginal_cdf(const BivariateModel& model, double x);

// Inverse of the marginal distribution function, used for the n-dependent
// normalizing levels of the concomitant experiments.
double bivariate_marginal_quantile(const BivariateModel& model, double prob);

}  // namespace wpmix
