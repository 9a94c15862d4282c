#pragma once

#include <complex>
#include <memory>

#include "pdhg/grad2d.hpp"
#include "pdhg/images.hpp"
#include "pdhg/lp.hpp"
#include "pdhg/solver.hpp"
#include "pdhg/transforms.hpp"

namespace pdhg {

// Isotropic total variation: sum over pixels of the gradient magnitude.
double tv_value(const GradientOperator2D& grad, const std::vector<double>& x);

// min_x TV(x) + (mu/2)||x - f||^2, dualized over per-pixel unit discs.
SaddlePointProblem<double> build_rof(const Image& f, double mu);

// min_x TV(x) + mu||x - f||_1; the data term is dualized too, so the primal
// resolvent is the identity and the coupling operator stacks [grad; I].
SaddlePointProblem<double> build_tvl1(const Image& f, double mu);

// Two-phase labeling: min_{0<=x<=1} TV(x) + <x, l> with
// l_i = mu_weight * ((f_i - c1)^2 - (f_i - c2)^2); l_i < 0 pushes x_i to 1.
SaddlePointProblem<double> build_segmentation(const Image& f, double c1, double c2,
                                              double mu_weight);

struct CompressedSensingSetup {
  SaddlePointProblem<double> problem;
  Image ground_truth;
  std::vector<double> measurements;  // R H x_true, zero off the mask
  std::shared_ptr<const SubsampledHadamardOperator> sensing;
};

// TV recovery from subsampled Hadamard coefficients of a seeded phantom:
// min_x TV(x) + (mu/2)||R H x - b||^2.  rows*cols must be a power of two.
CompressedSensingSetup build_compressed_sensing(int rows, int cols, double rate,
                                                double mu, std::uint64_t seed);

// min ||x1||_inf subject to ||D x1 - z|| <= eps, written with a slack block:
// the primal variable is (x1, x2), the coupling is D x1 - x2, and the dual
// resolvent subtracts sigma*z.
SaddlePointProblem<std::complex<double>> build_linf_approx(
    std::shared_ptr<const LinearOperator<std::complex<double>>> D,
    std::vector<std::complex<double>> z, double epsilon);

enum class LpPreconditioner { none, printed, inverse_sum };

// Diagonal scalings (Gamma_ii, Sigma_jj) for an LP coupling matrix: row and
// column absolute sums, or their inverses for the inverse_sum variant.
std::pair<std::vector<double>, std::vector<double>> lp_scalings(
    const LpInstance& inst, LpPreconditioner kind);

struct LpSaddle {
  SaddlePointProblem<double> problem;
  std::vector<double> col_scale_sqrt;  // empty when unpreconditioned

  // Maps a solution of the scaled program back: x = Sigma^{1/2} x_hat.
  std::vector<double> recover_x(const std::vector<double>& xhat) const;
};

// min_{x>=0} max_{y>=0} c^T x + <y, Ax - b>.  With preconditioning the
// program is rewritten in terms of A_hat = Gamma^{1/2} A Sigma^{1/2},
// b_hat = Gamma^{1/2} b, c_hat = Sigma^{1/2} c; objective values agree with
// the original coordinates.
LpSaddle build_lp(const LpInstance& inst,
                  LpPreconditioner pre = LpPreconditioner::none);

}  // namespace pdhg
