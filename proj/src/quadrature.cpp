#include "rsverify/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace rsv::quad {

namespace {

enum class DeMap { Finite, Upper, Lower, Full };
enum class Warp { None, SqrtLo, SqrtHi };

struct Node {
  double p = 0.0;  // Finite: fraction from the nearer end; others: e^s or sinh s
  double w = 0.0;  // weight in the canonical variable (without h)
  bool upper_half = false;  // Finite: measured from hi
};

constexpr int kMaxLevel = 16;

double t_max(DeMap m) {
  switch (m) {
    case DeMap::Finite: return 4.5;
    default: return 5.0;
  }
}

Node make_node(DeMap m, double t) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double s = kHalfPi * std::sinh(t);
  const double ds = kHalfPi * std::cosh(t);
  Node n;
  switch (m) {
    case DeMap::Finite: {
      // fraction = (1 + tanh s)/2 from lo, or (1 - tanh s)/2 from hi
      const double e = std::exp(-2.0 * std::abs(s));
      n.p = e / (1.0 + e);
      n.upper_half = t > 0.0;
      const double ch = std::cosh(s);
      n.w = ds / (2.0 * ch * ch);
      break;
    }
    case DeMap::Upper:
    case DeMap::Lower: {
      const double e = std::exp(s);
      n.p = e;
      n.w = e * ds;
      break;
    }
    case DeMap::Full: {
      n.p = std::sinh(s);
      n.w = std::cosh(s) * ds;
      break;
    }
  }
  return n;
}

// Nodes added at a given level: all integer multiples of h at level 0, odd
// multiples afterwards.
class NodeTable {
 public:
  const std::vector<Node>& level(DeMap m, int k) {
    const auto mi = static_cast<std::size_t>(m);
    std::call_once(flags_[mi][k], [&] { build(m, k); });
    return tables_[mi][k];
  }

 private:
  void build(DeMap m, int k) {
    const double h = std::ldexp(1.0, -k);
    const double tm = t_max(m);
    const auto jmax = static_cast<long>(std::floor(tm / h));
    auto& out = tables_[static_cast<std::size_t>(m)][k];
    for (long j = -jmax; j <= jmax; ++j) {
      if (k > 0 && (j % 2 == 0)) continue;
      Node n = make_node(m, static_cast<double>(j) * h);
      if (n.w == 0.0 || !std::isfinite(n.w) || !std::isfinite(n.p)) continue;
      out.push_back(n);
    }
  }

  std::array<std::array<std::once_flag, kMaxLevel + 1>, 4> flags_;
  std::array<std::array<std::vector<Node>, kMaxLevel + 1>, 4> tables_;
};

NodeTable& node_table() {
  static NodeTable table;
  return table;
}

struct Piece {
  DeMap map = DeMap::Finite;
  double lo = 0.0, hi = 0.0;  // canonical variable range
  Warp warp = Warp::None;
  double anchor = 0.0;
};

struct Sample {
  Complex value;
  double error = 0.0;
};

// Evaluates the integrand at a batch of points (already in x-space). offs[i]
// is x - anchor of the piece, exact under the sqrt warp (0 if unwarped).
using BatchEval =
    std::function<void(const Piece&, std::span<const double> xs, std::span<const double> offs, std::span<Sample>)>;

struct PieceResult {
  Complex value;
  double error = 0.0;
  bool converged = false;
  std::int64_t evaluations = 0;
};

PieceResult integrate_piece(const Piece& pc, const BatchEval& eval, const QuadratureSpec& spec, double abs_tol) {
  NodeTable& table = node_table();
  const int kmax = std::min(spec.de_level_max, kMaxLevel);
  const int kmin = std::min(spec.de_level_min, kmax);

  std::vector<double> xs;
  std::vector<double> offs;
  std::vector<double> ws;
  std::vector<Sample> samples;

  Complex sum_prev{0.0, 0.0};
  Complex estimate{0.0, 0.0};
  double inner_err = 0.0;
  PieceResult res;

  for (int k = 0; k <= kmax; ++k) {
    const double h = std::ldexp(1.0, -k);
    const auto& nodes = table.level(pc.map, k);
    xs.clear();
    offs.clear();
    ws.clear();
    for (const Node& n : nodes) {
      double v = 0.0;
      switch (pc.map) {
        case DeMap::Finite: {
          const double len = pc.hi - pc.lo;
          v = n.upper_half ? pc.hi - len * n.p : pc.lo + len * n.p;
          if (v <= pc.lo || v >= pc.hi) continue;
          break;
        }
        case DeMap::Upper:
          v = pc.lo + n.p;
          if (v <= pc.lo) continue;
          break;
        case DeMap::Lower:
          v = pc.hi - n.p;
          if (v >= pc.hi) continue;
          break;
        case DeMap::Full:
          v = n.p;
          break;
      }
      double w = n.w;
      if (pc.map == DeMap::Finite) w *= (pc.hi - pc.lo);
      double x = v, off = 0.0;
      switch (pc.warp) {
        case Warp::None: break;
        case Warp::SqrtLo:
          off = v * v;
          x = pc.anchor + off;
          w *= 2.0 * v;
          if (off == 0.0) continue;
          break;
        case Warp::SqrtHi:
          off = -v * v;
          x = pc.anchor + off;
          w *= 2.0 * v;
          if (off == 0.0) continue;
          break;
      }
      if (!std::isfinite(x) || w == 0.0 || !std::isfinite(w)) continue;
      xs.push_back(x);
      offs.push_back(off);
      ws.push_back(w);
    }
    samples.assign(xs.size(), Sample{});
    if (!xs.empty()) eval(pc, xs, offs, samples);
    res.evaluations += static_cast<std::int64_t>(xs.size());

    Complex level_sum{0.0, 0.0};
    double level_err = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      level_sum += ws[i] * samples[i].value;
      level_err += std::abs(ws[i]) * samples[i].error;
    }
    const Complex sum = (k == 0) ? level_sum : 0.5 * sum_prev + h * level_sum;
    inner_err = (k == 0) ? level_err : 0.5 * inner_err + h * level_err;
    // level 0 uses h = 1, so the sum is already the trapezoid value
    const Complex prev_estimate = estimate;
    estimate = sum;
    sum_prev = sum;
    if (k >= 1) {
      const double diff = std::abs(estimate - prev_estimate);
      res.error = diff + inner_err;
      if (k >= kmin && diff <= std::max(abs_tol, spec.rel_tol * std::abs(estimate))) {
        res.converged = true;
        break;
      }
    }
  }
  res.value = estimate;
  return res;
}

// Build regularized pieces for (a, b) split at the sorted interior points.
std::vector<Piece> make_pieces(double a, double b, const std::vector<double>& splits, bool sqrt_reg) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double s : splits) pts.push_back(s);
  pts.push_back(b);

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    const bool flo = std::isfinite(lo), fhi = std::isfinite(hi);
    if (!flo && !fhi) {
      pieces.push_back({DeMap::Full, 0, 0, Warp::None, 0});
    } else if (flo && !fhi) {
      if (sqrt_reg)
        pieces.push_back({DeMap::Upper, 0.0, kInf, Warp::SqrtLo, lo});
      else
        pieces.push_back({DeMap::Upper, lo, kInf, Warp::None, 0});
    } else if (!flo && fhi) {
      if (sqrt_reg)
        pieces.push_back({DeMap::Upper, 0.0, kInf, Warp::SqrtHi, hi});
      else
        pieces.push_back({DeMap::Lower, -kInf, hi, Warp::None, 0});
    } else if (sqrt_reg) {
      const double mid = 0.5 * (lo + hi);
      pieces.push_back({DeMap::Finite, 0.0, std::sqrt(mid - lo), Warp::SqrtLo, lo});
      pieces.push_back({DeMap::Finite, 0.0, std::sqrt(hi - mid), Warp::SqrtHi, hi});
    } else {
      pieces.push_back({DeMap::Finite, lo, hi, Warp::None, 0});
    }
  }
  return pieces;
}

std::vector<double> clean_splits(double a, double b, std::vector<double> splits) {
  std::vector<double> out;
  for (double s : splits)
    if (std::isfinite(s) && s > a && s < b) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntegralResult integrate_batch(const BatchEval& eval, double a, double b, std::vector<double> splits,
                               const QuadratureSpec& spec) {
  IntegralResult r;
  if (a == b) return r;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  splits = clean_splits(a, b, std::move(splits));
  const auto pieces = make_pieces(a, b, splits, spec.sqrt_regularize);
  if (static_cast<int>(pieces.size()) > std::max(2 * spec.max_subdivisions, 2))
    throw QuadratureError("too many subdivisions requested");
  const double piece_abs = spec.abs_tol / static_cast<double>(pieces.size());
  for (const Piece& pc : pieces) {
    const PieceResult pr = integrate_piece(pc, eval, spec, piece_abs);
    r.value += pr.value;
    r.error_estimate += pr.error;
    r.evaluations += pr.evaluations;
    r.converged = r.converged && pr.converged;
  }
  r.value *= sign;
  if (!r.converged) r.warning = "tolerance not met at de_level_max";
  return r;
}

void check_finite(Complex v) {
  if (!is_finite(v)) throw QuadratureError("non-finite integrand sample");
}

void serial_eval(const Integrand1D& f, std::span<const double> xs, std::span<Sample> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Complex v = f(xs[i]);
    check_finite(v);
    out[i] = Sample{v, 0.0};
  }
}

std::vector<double> splits_1d(const QuadratureSpec& spec) {
  std::vector<double> s;
  for (const auto& h : spec.singular_hyperplanes) {
    if (h.coeffs.size() != 1) throw DomainError("1D integral: hyperplane must have one coefficient");
    if (h.coeffs[0] != 0.0) s.push_back(-h.offset / h.coeffs[0]);
  }
  return s;
}

// ---- iterated integration ----

struct NdContext {
  const IntegrandND& f;
  const std::vector<Dimension>& dims;
  std::vector<QuadratureSpec> level_specs;
  std::vector<std::vector<const AffineFunctional*>> hyperplanes;  // by deepest variable
  std::atomic<std::int64_t> evaluations{0};
  std::int64_t budget = 0;
  std::atomic<bool> inner_converged{true};
};

IntegralResult integrate_level(NdContext& ctx, std::size_t level, std::vector<double>& coords);

std::vector<double> level_splits(NdContext& ctx, std::size_t level, std::span<const double> coords) {
  std::vector<double> splits;
  const Dimension& d = ctx.dims[level];
  if (d.breakpoints) d.breakpoints(coords.first(level), splits);
  for (const AffineFunctional* h : ctx.hyperplanes[level]) {
    double acc = h->offset;
    for (std::size_t j = 0; j < level; ++j) acc += h->coeffs[j] * coords[j];
    splits.push_back(-acc / h->coeffs[level]);
  }
  return splits;
}

Sample eval_point(NdContext& ctx, std::size_t level, std::vector<double>& coords, double x) {
  coords[level] = x;
  if (level + 1 == ctx.dims.size()) {
    const auto n = ctx.evaluations.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > ctx.budget) throw QuadratureError("evaluation budget exceeded");
    const Complex v = ctx.f(std::span<const double>(coords));
    check_finite(v);
    return Sample{v, 0.0};
  }
  const IntegralResult inner = integrate_level(ctx, level + 1, coords);
  if (!inner.converged) ctx.inner_converged.store(false, std::memory_order_relaxed);
  return Sample{inner.value, inner.error_estimate};
}

IntegralResult integrate_level(NdContext& ctx, std::size_t level, std::vector<double>& coords) {
  const QuadratureSpec& spec = ctx.level_specs[level];
  const Dimension& d = ctx.dims[level];
  auto splits = level_splits(ctx, level, coords);

  BatchEval eval;
  const int workers = (level == 0) ? std::max(1, spec.parallelism) : 1;
  if (workers == 1) {
    eval = [&](const Piece&, std::span<const double> xs, std::span<const double>, std::span<Sample> out) {
      std::vector<double> local = coords;
      for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_point(ctx, level, local, xs[i]);
    };
  } else {
    eval = [&](const Piece&, std::span<const double> xs, std::span<const double>, std::span<Sample> out) {
      // Each worker owns a contiguous block; output slots are fixed by index,
      // so the reduction order does not depend on scheduling.
      const std::size_t n = xs.size();
      const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
      std::vector<std::exception_ptr> errors(nw);
      {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < nw; ++w) {
          pool.emplace_back([&, w] {
            try {
              std::vector<double> local = coords;
              for (std::size_t i = w * n / nw; i < (w + 1) * n / nw; ++i) out[i] = eval_point(ctx, level, local, xs[i]);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
      }
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    };
  }
  return integrate_batch(eval, d.lower, d.upper, std::move(splits), spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be positive");
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  if (de_level_max < 1 || de_level_max > kMaxLevel) throw DomainError("QuadratureSpec: de_level_max out of range");
  if (parallelism < 1) throw DomainError("QuadratureSpec: parallelism must be >= 1");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec s = *this;
  s.rel_tol /= factor;
  s.abs_tol /= factor;
  return s;
}

double IntegralResult::relative_error() const {
  const double m = std::abs(value);
  return m > 0.0 ? error_estimate / m : error_estimate;
}

IntegralResult integrate_pieces(const Integrand1D& f, double a, double b, std::vector<double> splits,
                                const QuadratureSpec& spec) {
  spec.validate();
  BatchEval eval = [&](const Piece&, std::span<const double> xs, std::span<const double>, std::span<Sample> out) {
    serial_eval(f, xs, out);
  };
  return integrate_batch(eval, a, b, std::move(splits), spec);
}

IntegralResult integrate_interval(const Integrand1D& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_pieces(f, a, b, splits_1d(spec), spec);
}

IntegralResult integrate_interval_ends(const Integrand1DEnds& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw DomainError("integrate_interval_ends: need finite a < b");
  BatchEval eval = [&](const Piece& pc, std::span<const double> xs, std::span<const double> offs,
                       std::span<Sample> out) {
    const bool at_a = pc.warp != Warp::None && pc.anchor == a;
    const bool at_b = pc.warp != Warp::None && pc.anchor == b;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double dlo = at_a ? offs[i] : xs[i] - a;
      const double dhi = at_b ? -offs[i] : b - xs[i];
      const Complex v = f(xs[i], dlo, dhi);
      check_finite(v);
      out[i] = Sample{v, 0.0};
    }
  };
  return integrate_batch(eval, a, b, splits_1d(spec), spec);
}

IntegralResult integrate_halfline(const Integrand1D& f, const QuadratureSpec& spec) {
  return integrate_interval(f, 0.0, kInf, spec);
}

IntegralResult integrate_realline(const Integrand1D& f, const QuadratureSpec& spec) {
  return integrate_interval(f, -kInf, kInf, spec);
}

IntegralResult integrate_nd(const IntegrandND& f, const std::vector<Dimension>& dims, const QuadratureSpec& spec) {
  spec.validate();
  if (dims.size() < 1 || dims.size() > 4) throw DomainError("integrate_nd: between 1 and 4 dimensions supported");
  NdContext ctx{f, dims, {}, {}, {}, spec.max_evaluations, {true}};
  ctx.hyperplanes.resize(dims.size());
  for (const auto& h : spec.singular_hyperplanes) {
    if (h.coeffs.size() != dims.size()) throw DomainError("integrate_nd: hyperplane dimension mismatch");
    std::size_t deepest = dims.size();
    for (std::size_t j = 0; j < dims.size(); ++j)
      if (h.coeffs[j] != 0.0) deepest = j;
    if (deepest == dims.size()) continue;
    ctx.hyperplanes[deepest].push_back(&h);
  }
  // Inner levels run at half the tolerance of the level above.
  QuadratureSpec s = spec;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    ctx.level_specs.push_back(s);
    s.rel_tol *= 0.5;
    s.abs_tol *= 0.5;
  }
  std::vector<double> coords(dims.size(), 0.0);
  IntegralResult r = integrate_level(ctx, 0, coords);
  r.evaluations = ctx.evaluations.load();
  // Inner errors are folded into error_estimate, so an inner level that
  // stalls only fails the call when the accumulated estimate is too large.
  if (!ctx.inner_converged.load()) {
    const bool within = r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
    r.converged = r.converged && within;
    if (r.warning.empty()) r.warning = within ? "some inner integrals stalled below the outer tolerance"
                                              : "inner integral did not meet tolerance";
  }
  return r;
}

}  // namespace rsv::quad
