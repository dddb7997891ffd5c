#pragma once

#include <Eigen/Dense>

#include "anchorex/errors.hpp"

namespace anchorex {

// Shape-preserving cubic Hermite interpolant with Fritsch-Carlson
// monotone-limited slopes; linear extrapolation beyond the knot range using
// the endpoint derivatives.
class PchipSurrogate {
 public:
  PchipSurrogate(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

  double operator()(double t) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& t) const;

  const Eigen::VectorXd& knots() const { return x_; }
  const Eigen::VectorXd& values() const { return y_; }
  const Eigen::VectorXd& derivatives() const { return d_; }

 private:
  Eigen::VectorXd x_, y_, d_;
};

}  // namespace anchorex
