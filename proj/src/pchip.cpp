#include "anchorex/pchip.hpp"

#include <algorithm>
#include <cmath>

namespace anchorex {
namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// One-sided three-point slope with the standard monotonicity clamps.
double edge_derivative(double h0, double h1, double s0, double s1) {
  double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
  if (sign(d) != sign(s0)) {
    d = 0.0;
  } else if (sign(s0) != sign(s1) && std::abs(d) > 3.0 * std::abs(s0)) {
    d = 3.0 * s0;
  }
  return d;
}

}  // namespace

PchipSurrogate::PchipSurrogate(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
    : x_(x), y_(y) {
  const Eigen::Index n = x.size();
  if (n != y.size()) throw ValidationError("knot/value length mismatch");
  if (n < 2) throw ValidationError("need at least two knots");
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(x(i) > x(i - 1))) {
      throw ValidationError("knots must be strictly increasing");
    }
  }

  Eigen::VectorXd h(n - 1), slope(n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    h(i) = x(i + 1) - x(i);
    slope(i) = (y(i + 1) - y(i)) / h(i);
  }

  d_.resize(n);
  if (n == 2) {
    d_(0) = d_(1) = slope(0);
    return;
  }
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    if (slope(i - 1) * slope(i) <= 0.0) {
      // Local extremum or flat run: zero slope prevents overshoot.
      d_(i) = 0.0;
    } else {
      const double w1 = 2.0 * h(i) + h(i - 1);
      const double w2 = h(i) + 2.0 * h(i - 1);
      d_(i) = (w1 + w2) / (w1 / slope(i - 1) + w2 / slope(i));
    }
  }
  d_(0) = edge_derivative(h(0), h(1), slope(0), slope(1));
  d_(n - 1) = edge_derivative(h(n - 2), h(n - 3), slope(n - 2), slope(n - 3));
}

double PchipSurrogate::operator()(double t) const {
  const Eigen::Index n = x_.size();
  if (t <= x_(0)) return y_(0) + d_(0) * (t - x_(0));
  if (t >= x_(n - 1)) return y_(n - 1) + d_(n - 1) * (t - x_(n - 1));

  const double* begin = x_.data();
  const double* it = std::upper_bound(begin, begin + n, t);
  const Eigen::Index i = std::max<Eigen::Index>(0, (it - begin) - 1);

  const double h = x_(i + 1) - x_(i);
  const double s = (t - x_(i)) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y_(i) + h10 * h * d_(i) + h01 * y_(i + 1) + h11 * h * d_(i + 1);
}

Eigen::VectorXd PchipSurrogate::operator()(const Eigen::VectorXd& t) const {
  Eigen::VectorXd out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) out(i) = (*this)(t(i));
  return out;
}

}  // namespace anchorex
