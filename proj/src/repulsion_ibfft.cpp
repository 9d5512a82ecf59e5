#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>

#include "tfdp/errors.hpp"
#include "tfdp/repulsion.hpp"

namespace tfdp {

InterpGrid make_interp_grid(const Layout& layout, const GridPolicy& policy) {
  const int k = policy.k;
  if (!(policy.intervals_per_unit > 0.0) || policy.min_intervals < 1) {
    throw ArgumentError("grid policy needs positive interval density and count");
  }
  if (k < 1 || k > 3) throw ArgumentError("interpolation nodes per interval must be 1, 2 or 3");
  const BoundingBox box = bounding_box(layout);
  InterpGrid grid;
  grid.k = k;
  grid.origin = box.min;
  grid.span = std::max(box.width(), box.height());
  if (!(grid.span > 0.0)) {
    grid.span = 1.0;
    grid.origin = box.min - Vec2{0.5, 0.5};
  }
  grid.intervals = std::max(policy.min_intervals,
                            static_cast<std::size_t>(std::ceil(policy.intervals_per_unit * grid.span)));
  grid.interval_width = grid.span / static_cast<double>(grid.intervals);
  grid.node_spacing = grid.interval_width / k;
  return grid;
}

namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t count) {
  auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * count));
  if (!p) throw std::bad_alloc();
  return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t count) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
  if (!p) throw std::bad_alloc();
  return ComplexBuffer(p);
}

// The FFTW planner is not reentrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class PlanPair {
 public:
  PlanPair(int size, double* real, fftw_complex* spectrum) {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_2d(size, size, real, spectrum, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_2d(size, size, spectrum, real, FFTW_ESTIMATE);
    if (!forward_ || !backward_) throw NumericError("FFTW planning failed");
  }
  ~PlanPair() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;

  void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
  void backward(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(backward_, in, out); }

 private:
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

// Buffers and plans for one padded size, reused across calls on a thread.
// Layouts change slowly, so the size rarely changes between iterations and
// reuse avoids re-planning and faulting in fresh pages every call.
struct Workspace {
  std::size_t size = 0;
  std::array<RealBuffer, 3> channels;
  RealBuffer kernel;
  ComplexBuffer kernel_hat, work_hat;
  std::unique_ptr<PlanPair> plans;

  void prepare(std::size_t p) {
    const std::size_t real_size = p * p;
    if (size != p) {
      plans.reset();
      for (auto& c : channels) c = alloc_real(real_size);
      kernel = alloc_real(real_size);
      kernel_hat = alloc_complex(p * (p / 2 + 1));
      work_hat = alloc_complex(p * (p / 2 + 1));
      plans = std::make_unique<PlanPair>(static_cast<int>(p), kernel.get(), kernel_hat.get());
      size = p;
    }
    for (auto& c : channels) std::fill(c.get(), c.get() + real_size, 0.0);
    std::fill(kernel.get(), kernel.get() + real_size, 0.0);
  }
};

Workspace& thread_workspace() {
  thread_local Workspace ws;
  return ws;
}

// Lagrange basis on k equispaced nodes at (a + 0.5) / k of the unit interval.
void lagrange_weights(double u, int k, double* w) {
  for (int a = 0; a < k; ++a) {
    const double ta = (a + 0.5) / k;
    double v = 1.0;
    for (int b = 0; b < k; ++b) {
      if (b == a) continue;
      const double tb = (b + 0.5) / k;
      v *= (u - tb) / (ta - tb);
    }
    w[a] = v;
  }
}

// Smallest even n >= target whose only prime factors are 2, 3, 5 and 7, the
// sizes FFTW's real transforms handle fastest.
std::size_t smooth_size(std::size_t target) {
  for (std::size_t n = std::max<std::size_t>(target + target % 2, 2);; n += 2) {
    std::size_t r = n;
    for (std::size_t f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return n;
  }
}

struct Stencil {
  std::size_t gx = 0, gy = 0;  // first grid node per axis
  std::array<double, 3> wx{}, wy{};
};

Stencil stencil_for(Vec2 p, const InterpGrid& grid) {
  Stencil s;
  auto axis = [&](double coord, std::size_t& g0, double* w) {
    const double u = (coord) / grid.interval_width;
    auto cell = static_cast<std::size_t>(std::max(0.0, std::floor(u)));
    cell = std::min(cell, grid.intervals - 1);
    lagrange_weights(u - static_cast<double>(cell), grid.k, w);
    g0 = cell * static_cast<std::size_t>(grid.k);
  };
  axis(p.x - grid.origin.x, s.gx, s.wx.data());
  axis(p.y - grid.origin.y, s.gy, s.wy.data());
  return s;
}

}  // namespace

RepulsionField repulsion_ibfft(const Layout& layout, const ForceParams& params,
                               const GridPolicy& policy, const RefinementMask& mask) {
  if (params.law != ForceLaw::TFdp) {
    throw ArgumentError("ibfft solver requires the t-FDP force law");
  }
  if (!all_finite(layout)) throw NumericError("non-finite position passed to repulsion solver");
  const std::size_t n = layout.size();
  RepulsionField field{std::vector<Vec2>(n), layout.generation, SolverKind::Ibfft, policy.k};
  const InterpGrid grid = make_interp_grid(layout, policy);
  if (n == 0) return field;

  const std::size_t g = grid.nodes_per_axis();
  // Zero padding to at least 2g makes the circular convolution linear.
  const std::size_t p = smooth_size(2 * g);
  const std::size_t real_size = p * p;
  const std::size_t spec_size = p * (p / 2 + 1);
  const int kk = grid.k;

  // Stencils once per point; weights for channels 1, x - origin.x, y - origin.y.
  std::vector<Stencil> stencils(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    stencils[static_cast<std::size_t>(i)] = stencil_for(layout[static_cast<std::size_t>(i)], grid);
  }

  Workspace& ws = thread_workspace();
  ws.prepare(p);
  auto& channels = ws.channels;
  // Step 1: scatter. Each thread accumulates into a private g x g grid.
  auto scatter = [&](std::size_t begin, std::size_t end, double* c0, double* c1, double* c2,
                     std::size_t stride) {
    for (std::size_t i = begin; i < end; ++i) {
      const Stencil& s = stencils[i];
      const double vx = layout[i].x - grid.origin.x;
      const double vy = layout[i].y - grid.origin.y;
      for (int a = 0; a < kk; ++a) {
        for (int b = 0; b < kk; ++b) {
          const double w = s.wx[a] * s.wy[b];
          const std::size_t idx = (s.gx + a) * stride + (s.gy + b);
          c0[idx] += w;
          c1[idx] += w * vx;
          c2[idx] += w * vy;
        }
      }
    }
  };
  if (omp_get_max_threads() == 1 || n < 4096) {
    scatter(0, n, channels[0].get(), channels[1].get(), channels[2].get(), p);
  } else {
#pragma omp parallel
    {
      std::vector<double> local(3 * g * g, 0.0);
      const auto threads = static_cast<std::size_t>(omp_get_num_threads());
      const auto t = static_cast<std::size_t>(omp_get_thread_num());
      scatter(n * t / threads, n * (t + 1) / threads, local.data(), local.data() + g * g,
              local.data() + 2 * g * g, g);
#pragma omp critical(ibfft_scatter)
      for (int c = 0; c < 3; ++c)
        for (std::size_t x = 0; x < g; ++x)
          for (std::size_t y = 0; y < g; ++y) channels[c][x * p + y] += local[c * g * g + x * g + y];
    }
  }

  // Kernel sampled at every node offset in (-g, g), wrapped for circular indexing.
  const RepulsionKernel kernel(params);
  auto& kernel_grid = ws.kernel;
  const double h = grid.node_spacing;
  auto in_reach = [&](std::size_t a) { return a < g || a > p - g; };
  for (std::size_t a = 0; a < p; ++a) {
    if (!in_reach(a)) continue;
    const double da = (a < g ? static_cast<double>(a) : static_cast<double>(a) - static_cast<double>(p)) * h;
    for (std::size_t b = 0; b < p; ++b) {
      if (!in_reach(b)) continue;
      const double db = (b < g ? static_cast<double>(b) : static_cast<double>(b) - static_cast<double>(p)) * h;
      kernel_grid[a * p + b] = kernel(da * da + db * db);
    }
  }

  // Step 2: convolve on the grid via FFT.
  auto& kernel_hat = ws.kernel_hat;
  auto& work_hat = ws.work_hat;
  const PlanPair& plans = *ws.plans;
  plans.forward(kernel_grid.get(), kernel_hat.get());
  const double norm_factor = 1.0 / static_cast<double>(real_size);
  for (auto& channel : channels) {
    plans.forward(channel.get(), work_hat.get());
#pragma omp parallel for schedule(static)
    for (std::int64_t q = 0; q < static_cast<std::int64_t>(spec_size); ++q) {
      auto& z = reinterpret_cast<std::complex<double>&>(work_hat[q]);
      z *= reinterpret_cast<const std::complex<double>&>(kernel_hat[q]) * norm_factor;
    }
    plans.backward(work_hat.get(), channel.get());
  }

  // Step 3: gather back and assemble F = x * psi_1 - psi_x per axis. The j = i
  // term is part of both sums and cancels here.
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const Stencil& s = stencils[i];
    double psi[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < kk; ++a) {
      for (int b = 0; b < kk; ++b) {
        const double w = s.wx[a] * s.wy[b];
        const std::size_t idx = (s.gx + a) * p + (s.gy + b);
        psi[0] += w * channels[0][idx];
        psi[1] += w * channels[1][idx];
        psi[2] += w * channels[2][idx];
      }
    }
    const double rx = layout[i].x - grid.origin.x;
    const double ry = layout[i].y - grid.origin.y;
    field.forces[i] = {rx * psi[0] - psi[1], ry * psi[0] - psi[2]};
  }

  detail::apply_mask_correction(field.forces, layout, params, mask);
  return field;
}

}  // namespace tfdp
