#include "anchorex/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace anchorex {
namespace {

constexpr double kPi = std::numbers::pi;

void require_odd_resolution(int n) {
  if (n < 3 || n % 2 == 0) {
    throw ValidationError("Simpson resolution must be odd and >= 3, got " +
                          std::to_string(n));
  }
}

void require_nonempty(double lo, double hi, const char* what) {
  if (!(lo < hi)) {
    throw ValidationError(std::string(what) + " must satisfy lo < hi");
  }
}

// Composite Simpson nodes/weights on [lo, hi] with n odd nodes.
void simpson_1d(double lo, double hi, int n, std::vector<double>& nodes,
                std::vector<double>& weights) {
  require_odd_resolution(n);
  const double h = (hi - lo) / (n - 1);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = lo + h * i;
    double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    weights[i] = c * h / 3.0;
  }
  nodes[n - 1] = hi;
}

QuadratureGrid product_rect_grid(double x0, double x1, double y0, double y1,
                                 int nx, int ny) {
  std::vector<double> xs, wx, ys, wy;
  simpson_1d(x0, x1, nx, xs, wx);
  simpson_1d(y0, y1, ny, ys, wy);
  QuadratureGrid grid;
  grid.points.resize(static_cast<Eigen::Index>(nx) * ny, 2);
  grid.weights.resize(static_cast<Eigen::Index>(nx) * ny);
  Eigen::Index k = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j, ++k) {
      grid.points(k, 0) = xs[i];
      grid.points(k, 1) = ys[j];
      grid.weights(k) = wx[i] * wy[j];
    }
  }
  return grid;
}

double overlap_1d(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

struct Rect {
  double x0, x1, y0, y1;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

double overlap_area(const Rect& a, const Rect& b) {
  return overlap_1d(a.x0, a.x1, b.x0, b.x1) * overlap_1d(a.y0, a.y1, b.y0, b.y1);
}

Rect outer_rect(const Region& r) { return {r.bounds[0][0], r.bounds[0][1], r.bounds[1][0], r.bounds[1][1]}; }

Rect excluded_rect(const Region& r) { return {r.bounds[2][0], r.bounds[2][1], r.bounds[3][0], r.bounds[3][1]}; }

// Overlap measure of two regions of the same ambient dimension; sphere
// patches overlap in (theta, phi) parameter measure, which vanishes exactly
// when the surface overlap does.
double overlap_measure(const Region& a, const Region& b) {
  const auto pieces = [](const Region& r) {
    std::vector<std::array<double, 2>> out;
    if (r.kind == RegionKind::interval || r.kind == RegionKind::interval_union)
      out = r.bounds;
    return out;
  };
  if (a.ambient_dim() == 1 && b.ambient_dim() == 1) {
    double total = 0.0;
    for (const auto& pa : pieces(a))
      for (const auto& pb : pieces(b))
        total += overlap_1d(pa[0], pa[1], pb[0], pb[1]);
    return total;
  }
  if (a.kind == RegionKind::sphere_patch && b.kind == RegionKind::sphere_patch) {
    return overlap_1d(a.bounds[0][0], a.bounds[0][1], b.bounds[0][0], b.bounds[0][1]) *
           overlap_1d(a.bounds[1][0], a.bounds[1][1], b.bounds[1][0], b.bounds[1][1]);
  }
  if (a.ambient_dim() == 2 && b.ambient_dim() == 2) {
    const auto rects = [](const Region& r) {
      std::vector<std::pair<Rect, double>> out;  // rect, sign
      out.emplace_back(outer_rect(r), 1.0);
      if (r.kind == RegionKind::rect2d_minus_patch) out.emplace_back(excluded_rect(r), -1.0);
      return out;
    };
    // Inclusion-exclusion: |A n B| with A, B = outer - excluded.
    double total = 0.0;
    for (const auto& [ra, sa] : rects(a)) {
      // Excluded rects are inside their outer rect, so signed overlap works.
      for (const auto& [rb, sb] : rects(b)) total += sa * sb * overlap_area(ra, rb);
    }
    return total;
  }
  throw ValidationError("cannot compare regions of different ambient dimension");
}

}  // namespace

double Region::measure() const {
  switch (kind) {
    case RegionKind::interval:
      return bounds[0][1] - bounds[0][0];
    case RegionKind::interval_union: {
      double total = 0.0;
      for (const auto& p : bounds) total += p[1] - p[0];
      return total;
    }
    case RegionKind::sphere_patch: {
      const double dphi = bounds[1][1] - bounds[1][0];
      return dphi * (std::cos(bounds[0][0]) - std::cos(bounds[0][1]));
    }
    case RegionKind::rect2d:
      return outer_rect(*this).area();
    case RegionKind::rect2d_minus_patch:
      return outer_rect(*this).area() - excluded_rect(*this).area();
  }
  throw ValidationError("unknown region kind");
}

int Region::ambient_dim() const {
  switch (kind) {
    case RegionKind::interval:
    case RegionKind::interval_union:
      return 1;
    case RegionKind::rect2d:
    case RegionKind::rect2d_minus_patch:
      return 2;
    case RegionKind::sphere_patch:
      return 3;
  }
  throw ValidationError("unknown region kind");
}

Region make_interval(double lo, double hi, int n) {
  require_nonempty(lo, hi, "interval");
  require_odd_resolution(n);
  return {RegionKind::interval, {{lo, hi}}, {n}};
}

Region make_interval_union(std::vector<std::array<double, 2>> pieces,
                           std::vector<int> resolution) {
  if (pieces.empty() || pieces.size() != resolution.size()) {
    throw ValidationError("interval_union needs one resolution per piece");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    require_nonempty(pieces[i][0], pieces[i][1], "interval piece");
    require_odd_resolution(resolution[i]);
  }
  std::vector<std::size_t> order(pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pieces[a][0] < pieces[b][0]; });
  std::vector<std::array<double, 2>> sorted_pieces;
  std::vector<int> sorted_res;
  for (std::size_t idx : order) {
    sorted_pieces.push_back(pieces[idx]);
    sorted_res.push_back(resolution[idx]);
  }
  for (std::size_t i = 1; i < sorted_pieces.size(); ++i) {
    if (sorted_pieces[i][0] < sorted_pieces[i - 1][1]) {
      throw ValidationError("interval_union pieces must be pairwise disjoint");
    }
  }
  return {RegionKind::interval_union, std::move(sorted_pieces), std::move(sorted_res)};
}

Region make_sphere_patch(double theta_lo, double theta_hi, double phi_lo,
                         double phi_hi, int n_theta, int n_phi) {
  if (!(0.0 <= theta_lo && theta_lo < theta_hi && theta_hi <= kPi)) {
    throw ValidationError("sphere patch needs 0 <= theta_lo < theta_hi <= pi");
  }
  if (!(0.0 <= phi_lo && phi_lo < phi_hi && phi_hi <= 2.0 * kPi + 1e-12)) {
    throw ValidationError("sphere patch needs 0 <= phi_lo < phi_hi <= 2*pi");
  }
  require_odd_resolution(n_theta);
  require_odd_resolution(n_phi);
  return {RegionKind::sphere_patch,
          {{theta_lo, theta_hi}, {phi_lo, phi_hi}},
          {n_theta, n_phi}};
}

Region make_rect2d(double x0, double x1, double y0, double y1, int nx, int ny) {
  require_nonempty(x0, x1, "rect x-range");
  require_nonempty(y0, y1, "rect y-range");
  require_odd_resolution(nx);
  require_odd_resolution(ny);
  return {RegionKind::rect2d, {{x0, x1}, {y0, y1}}, {nx, ny}};
}

Region make_rect2d_minus_patch(double x0, double x1, double y0, double y1,
                               double ex0, double ex1, double ey0, double ey1,
                               int nx, int ny) {
  require_nonempty(x0, x1, "rect x-range");
  require_nonempty(y0, y1, "rect y-range");
  require_nonempty(ex0, ex1, "excluded x-range");
  require_nonempty(ey0, ey1, "excluded y-range");
  if (ex0 < x0 || ex1 > x1 || ey0 < y0 || ey1 > y1) {
    throw ValidationError("excluded rect must lie inside the outer rect");
  }
  if (ex0 == x0 && ex1 == x1 && ey0 == y0 && ey1 == y1) {
    throw ValidationError("excluded rect equals the outer rect: empty region");
  }
  require_odd_resolution(nx);
  require_odd_resolution(ny);
  return {RegionKind::rect2d_minus_patch,
          {{x0, x1}, {y0, y1}, {ex0, ex1}, {ey0, ey1}},
          {nx, ny}};
}

QuadratureGrid build_grid(const Region& region) {
  switch (region.kind) {
    case RegionKind::interval: {
      std::vector<double> xs, ws;
      simpson_1d(region.bounds[0][0], region.bounds[0][1], region.resolution[0], xs, ws);
      QuadratureGrid grid;
      grid.points = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
      grid.weights = Eigen::Map<Eigen::VectorXd>(ws.data(), ws.size());
      return grid;
    }
    case RegionKind::interval_union: {
      QuadratureGrid grid;
      for (std::size_t i = 0; i < region.bounds.size(); ++i) {
        Region piece = make_interval(region.bounds[i][0], region.bounds[i][1],
                                     region.resolution[i]);
        QuadratureGrid g = build_grid(piece);
        grid = (grid.size() == 0) ? g : concat_grids(grid, g);
      }
      return grid;
    }
    case RegionKind::sphere_patch: {
      std::vector<double> ts, wt, ps, wp;
      simpson_1d(region.bounds[0][0], region.bounds[0][1], region.resolution[0], ts, wt);
      simpson_1d(region.bounds[1][0], region.bounds[1][1], region.resolution[1], ps, wp);
      const auto nt = static_cast<Eigen::Index>(ts.size());
      const auto np = static_cast<Eigen::Index>(ps.size());
      QuadratureGrid grid;
      grid.points.resize(nt * np, 3);
      grid.weights.resize(nt * np);
      Eigen::Index k = 0;
      for (Eigen::Index i = 0; i < nt; ++i) {
        const double st = std::sin(ts[i]);
        const double ct = std::cos(ts[i]);
        for (Eigen::Index j = 0; j < np; ++j, ++k) {
          grid.points(k, 0) = st * std::cos(ps[j]);
          grid.points(k, 1) = st * std::sin(ps[j]);
          grid.points(k, 2) = ct;
          grid.weights(k) = wt[i] * wp[j] * st;
        }
      }
      // Poles contribute sin(theta)=0; drop those zero-weight nodes so all
      // retained weights are strictly positive.
      std::vector<Eigen::Index> keep;
      keep.reserve(grid.size());
      for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (grid.weights(i) > 0.0) keep.push_back(i);
      }
      if (static_cast<Eigen::Index>(keep.size()) != grid.size()) {
        QuadratureGrid pruned;
        pruned.points.resize(keep.size(), 3);
        pruned.weights.resize(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
          pruned.points.row(i) = grid.points.row(keep[i]);
          pruned.weights(i) = grid.weights(keep[i]);
        }
        return pruned;
      }
      return grid;
    }
    case RegionKind::rect2d:
      return product_rect_grid(region.bounds[0][0], region.bounds[0][1],
                               region.bounds[1][0], region.bounds[1][1],
                               region.resolution[0], region.resolution[1]);
    case RegionKind::rect2d_minus_patch: {
      // Split outer minus excluded into up to four rectangles (left band,
      // right band, bottom band, top band over the excluded x-range); each
      // gets its own Simpson grid, so removed nodes never distort weights.
      const Rect o = outer_rect(region);
      const Rect e = excluded_rect(region);
      const int nx = region.resolution[0];
      const int ny = region.resolution[1];
      const auto sub_res = [](int n, double full, double part) {
        int m = static_cast<int>(std::lround(n * part / full));
        if (m < 3) m = 3;
        if (m % 2 == 0) ++m;
        return m;
      };
      QuadratureGrid grid;
      const auto add = [&](double x0, double x1, double y0, double y1) {
        if (!(x0 < x1 && y0 < y1)) return;
        QuadratureGrid g = product_rect_grid(
            x0, x1, y0, y1, sub_res(nx, o.x1 - o.x0, x1 - x0),
            sub_res(ny, o.y1 - o.y0, y1 - y0));
        grid = (grid.size() == 0) ? g : concat_grids(grid, g);
      };
      add(o.x0, e.x0, o.y0, o.y1);
      add(e.x1, o.x1, o.y0, o.y1);
      add(e.x0, e.x1, o.y0, e.y0);
      add(e.x0, e.x1, e.y1, o.y1);
      if (grid.size() == 0) throw ValidationError("empty rect2d_minus_patch region");
      return grid;
    }
  }
  throw ValidationError("unknown region kind");
}

QuadratureGrid concat_grids(const QuadratureGrid& a, const QuadratureGrid& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  if (a.dim() != b.dim()) {
    throw ValidationError("cannot concatenate grids of different dimension");
  }
  QuadratureGrid out;
  out.points.resize(a.size() + b.size(), a.dim());
  out.points.topRows(a.size()) = a.points;
  out.points.bottomRows(b.size()) = b.points;
  out.weights.resize(a.size() + b.size());
  out.weights.head(a.size()) = a.weights;
  out.weights.tail(b.size()) = b.weights;
  return out;
}

void require_disjoint(const Region& omega, const Region& xi) {
  const double overlap = overlap_measure(omega, xi);
  const double scale = std::max(omega.measure(), xi.measure());
  if (overlap > 1e-12 * scale) {
    throw ValidationError("sample and extrapolation regions overlap");
  }
}

double inner_product(const QuadratureGrid& grid, const Eigen::VectorXd& f,
                     const Eigen::VectorXd& g) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw ValidationError("value vector length does not match grid");
  }
  return (grid.weights.array() * f.array() * g.array()).sum();
}

double error_norm(const QuadratureGrid& grid, const Eigen::VectorXd& f,
                  const Eigen::VectorXd& g) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw ValidationError("value vector length does not match grid");
  }
  return std::sqrt((grid.weights.array() * (f - g).array().square()).sum());
}

double grid_norm(const QuadratureGrid& grid, const Eigen::VectorXd& f) {
  if (f.size() != grid.size()) {
    throw ValidationError("value vector length does not match grid");
  }
  return std::sqrt((grid.weights.array() * f.array().square()).sum());
}

}  // namespace anchorex
