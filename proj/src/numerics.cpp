#include "cvhg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "cvhg/error.hpp"
#include "cvhg/kernels.hpp"
#include "kernel_detail.hpp"

namespace cvhg {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

struct CompiledPolynomial {
  std::vector<std::pair<double, std::vector<std::size_t>>> terms;

  double operator()(const double* q) const {
    double s = 0.0;
    for (const auto& [c, axes] : terms) {
      double t = c;
      for (std::size_t a : axes) t *= q[a];
      s += t;
    }
    return s;
  }
};

CompiledPolynomial compile(const PhasePolynomial& p, const WaveFunction& wf) {
  CompiledPolynomial out;
  for (const auto& [mono, c] : p.terms()) {
    std::vector<std::size_t> axes;
    for (Vertex v : mono) axes.push_back(wf.axis_of(v));
    out.terms.emplace_back(c, std::move(axes));
  }
  return out;
}

PhasePolynomial substitute_params(PhasePolynomial p, const std::map<Vertex, double>& params) {
  for (const auto& [v, value] : params)
    if (p.references(v)) p = p.substitute(v, value);
  return p;
}

std::map<Vertex, double> q_parameters(const std::vector<ModeBase>& bases) {
  std::map<Vertex, double> params;
  for (Vertex v = 0; v < bases.size(); ++v)
    if (bases[v].kind == ModeBase::Kind::QEigen) params[v] = bases[v].value;
  return params;
}

/// Product state of the live bases; phase and byproducts are not applied.
WaveFunction realize_bases(const std::vector<ModeBase>& bases, double r, GridSpec grid, const Externals& ext) {
  std::vector<Vertex> live;
  for (Vertex v = 0; v < bases.size(); ++v)
    if (!bases[v].detached()) live.push_back(v);
  WaveFunction wf(grid, live);
  const std::size_t n = wf.grid.points;

  std::vector<std::vector<cplx>> profiles;
  double widest = 0.0;
  for (Vertex v : live) {
    const ModeBase& b = bases[v];
    std::vector<cplx> prof(n);
    if (b.kind == ModeBase::Kind::External) {
      auto it = ext.find(b.label);
      if (it == ext.end()) throw DomainError(fmt::format("no wavepacket bound to input '{}'", b.label));
      for (std::size_t j = 0; j < n; ++j) prof[j] = it->second(wf.grid.position(j));
    } else {
      for (std::size_t j = 0; j < n; ++j) prof[j] = zero_momentum_amplitude(b, wf.grid.position(j), r);
      widest = std::max(widest, std::exp(r) * b.envelope.scale + std::abs(b.envelope.offset));
    }
    profiles.push_back(std::move(prof));
  }
  if (3.0 * widest > wf.grid.half_extent)
    wf.warnings.push_back(fmt::format("squeezed vacuum reaches 3 sigma = {:.3g} beyond the grid half-extent {:.3g}",
                                      3.0 * widest, wf.grid.half_extent));

  std::vector<std::size_t> idx(live.size(), 0);
  for (std::size_t i = 0; i < wf.amp.size(); ++i) {
    std::size_t rem = i;
    cplx a{1.0, 0.0};
    for (std::size_t ax = live.size(); ax-- > 0;) {
      a *= profiles[ax][rem % n];
      rem /= n;
    }
    wf.amp[i] = a;
  }
  return wf;
}

void apply_phase(WaveFunction& wf, const PhasePolynomial& phase) {
  if (phase.is_zero()) return;
  auto p = compile(phase, wf);
  kernels::active().pointwise(wf, [&p](const double* q) { return std::polar(1.0, p(q)); });
}

void check_no_momentum_modes(const PhasePolynomial& p, const std::vector<ModeBase>& bases) {
  for (Vertex v = 0; v < bases.size(); ++v)
    if (bases[v].kind == ModeBase::Kind::PEigen && p.references(v))
      throw DomainError(fmt::format("phase acts on the p-detached mode {}", v));
}

}  // namespace

Wavepacket gaussian_packet(double center, double width) {
  const double norm = std::pow(std::numbers::pi, -0.25) / std::sqrt(width);
  return [=](double q) {
    double u = (q - center) / width;
    return cplx{norm * std::exp(-0.5 * u * u), 0.0};
  };
}

double squeezed_vacuum(double q, double r) { return std::exp(-0.5 * q * q * std::exp(-2.0 * r)); }

double zero_momentum_amplitude(const ModeBase& base, double q, double r) {
  const Envelope& e = base.envelope;
  return squeezed_vacuum((q - e.offset) / e.scale, r) / std::sqrt(e.scale);
}

void apply_op(WaveFunction& wf, const GaussianOp& op, const std::map<Vertex, double>& params) {
  const auto& k = kernels::active();
  auto param = [&params](Vertex v) -> const double* {
    auto it = params.find(v);
    return it == params.end() ? nullptr : &it->second;
  };
  auto live_axis = [&](Vertex v) {
    if (param(v)) throw DomainError(fmt::format("{} acts on the measured mode {}", op.render(), v));
    return wf.axis_of(v);
  };
  const double s = op.s;
  switch (op.kind) {
    case GaussianOp::Kind::Fourier:
      k.transform(wf, live_axis(op.a), +1);
      return;
    case GaussianOp::Kind::FourierInv:
      k.transform(wf, live_axis(op.a), -1);
      return;
    case GaussianOp::Kind::Squeeze:
      k.resample(wf, live_axis(op.a), s);
      return;
    case GaussianOp::Kind::XDisp:
      k.spectral(wf, live_axis(op.a), [s](double kk, const double*) { return std::polar(1.0, s * kk); });
      return;
    case GaussianOp::Kind::ZDisp: {
      if (param(op.a)) return;  // global phase
      std::size_t a = wf.axis_of(op.a);
      k.pointwise(wf, [a, s](const double* q) { return std::polar(1.0, -s * q[a]); });
      return;
    }
    case GaussianOp::Kind::CZ2: {
      const double* pa = param(op.a);
      const double* pb = param(op.b);
      if (pa && pb) return;
      if (pa || pb) {
        double c = s * (pa ? *pa : *pb);
        std::size_t ax = wf.axis_of(pa ? op.b : op.a);
        k.pointwise(wf, [ax, c](const double* q) { return std::polar(1.0, c * q[ax]); });
        return;
      }
      std::size_t a = wf.axis_of(op.a), b = wf.axis_of(op.b);
      k.pointwise(wf, [a, b, s](const double* q) { return std::polar(1.0, s * q[a] * q[b]); });
      return;
    }
    case GaussianOp::Kind::CX: {
      std::size_t a = live_axis(op.a);
      if (const double* pb = param(op.b)) {
        double c = s * *pb;
        k.spectral(wf, a, [c](double kk, const double*) { return std::polar(1.0, c * kk); });
        return;
      }
      std::size_t b = wf.axis_of(op.b);
      k.spectral(wf, a, [b, s](double kk, const double* q) { return std::polar(1.0, s * kk * q[b]); });
      return;
    }
  }
}

WaveFunction realize(const StateExpr& st, double r, GridSpec grid, const Externals& ext) {
  auto params = q_parameters(st.bases);
  WaveFunction wf = realize_bases(st.bases, r, grid, ext);
  check_no_momentum_modes(st.phase, st.bases);
  apply_phase(wf, substitute_params(st.phase, params));
  for (auto it = st.byproducts.rbegin(); it != st.byproducts.rend(); ++it) apply_op(wf, *it, params);
  return wf;
}

Quadrature default_quadrature(double r, std::size_t steps, double sigmas) {
  double half = sigmas * std::exp(r);
  return {-half, half, steps};
}

IntegralRealization realize_integral(const IntegralState& is, double r, GridSpec grid, const Quadrature& quad,
                                     const Externals& ext) {
  bool q_dependent = std::any_of(is.coupling.terms().begin(), is.coupling.terms().end(),
                                 [](const auto& t) { return !t.first.empty(); });
  if (!q_dependent) throw DomainError("degenerate momentum measurement: the coupling has no position dependence");
  if (quad.steps < 2 || quad.steps % 2 != 0 || !(quad.x_max > quad.x_min))
    throw DomainError("quadrature needs an even number of steps over a non-empty range");
  if (is.measured_base.kind != ModeBase::Kind::ZeroMomentum)
    throw DomainError("the integral oracle needs a |0>_p base on the measured mode");

  auto params = q_parameters(is.bases);
  WaveFunction full = realize_bases(is.bases, r, grid, ext);
  check_no_momentum_modes(is.residual, is.bases);
  apply_phase(full, substitute_params(is.residual, params));
  auto coupling = compile(substitute_params(is.coupling, params), full);

  const std::size_t pts = quad.steps + 1;
  const double h = (quad.x_max - quad.x_min) / static_cast<double>(quad.steps);
  std::vector<double> amp(pts);
  for (std::size_t k = 0; k < pts; ++k)
    amp[k] = zero_momentum_amplitude(is.measured_base, quad.x_min + static_cast<double>(k) * h, r);

  WaveFunction half = full;
  const auto total = static_cast<long long>(full.amp.size());
  const double m = is.outcome;
#pragma omp parallel
  {
    std::vector<double> q(full.n_axes());
#pragma omp for schedule(static)
    for (long long i = 0; i < total; ++i) {
      kernels::detail::decode(full, static_cast<std::size_t>(i), q.data());
      const double theta = coupling(q.data()) - m;
      const cplx step = std::polar(1.0, h * theta);
      cplx z = std::polar(1.0, quad.x_min * theta);
      cplx s_full{0.0, 0.0}, s_half{0.0, 0.0};
      for (std::size_t k = 0; k < pts; ++k) {
        const bool end = k == 0 || k + 1 == pts;
        const cplx term = amp[k] * z;
        s_full += (end ? 0.5 : 1.0) * term;
        if (k % 2 == 0) s_half += (end ? 1.0 : 2.0) * term;
        z *= step;
      }
      const auto u = static_cast<std::size_t>(i);
      half.amp[u] *= s_half * h;
      full.amp[u] *= s_full * h;
    }
  }
  for (auto it = is.byproducts.rbegin(); it != is.byproducts.rend(); ++it) {
    apply_op(full, *it, params);
    apply_op(half, *it, params);
  }
  double conv = 1.0 - fidelity(full, half);
  return {std::move(full), conv};
}

WaveFunction project_homodyne(const WaveFunction& wf, Vertex v, Basis basis, double value) {
  const std::size_t axis = wf.axis_of(v);
  const auto lay = kernels::detail::lines(wf, axis);
  std::vector<Vertex> labels = wf.labels;
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(axis));
  WaveFunction out(wf.grid, labels);
  out.warnings = wf.warnings;
  const GridSpec& g = wf.grid;

  if (basis == Basis::Q) {
    double f = (value - g.position(0)) / g.dx();
    if (f < -1e-9 || f > static_cast<double>(lay.n - 1) + 1e-9)
      throw DomainError(fmt::format("position {} lies outside the grid", value));
    f = std::clamp(f, 0.0, static_cast<double>(lay.n - 1));
    auto j0 = static_cast<std::size_t>(std::floor(f));
    double t = f - static_cast<double>(j0);
    if (t < 1e-9 || j0 + 1 >= lay.n) t = 0.0;
    if (t > 1.0 - 1e-9) {
      ++j0;
      t = 0.0;
    }
    for (std::size_t line = 0; line < lay.count; ++line) {
      std::size_t b = lay.base(line);
      cplx a = wf.amp[b + j0 * lay.step];
      if (t > 0.0) a = (1.0 - t) * a + t * wf.amp[b + (j0 + 1) * lay.step];
      out.amp[line] = a;
    }
    return out;
  }
  if (std::abs(value) > g.max_frequency())
    throw DomainError(fmt::format("momentum {} exceeds the grid bandwidth {}", value, g.max_frequency()));
  std::vector<cplx> kernel(lay.n);
  for (std::size_t j = 0; j < lay.n; ++j) kernel[j] = std::polar(g.dx() / kSqrt2Pi, -value * g.position(j));
  for (std::size_t line = 0; line < lay.count; ++line) {
    std::size_t b = lay.base(line);
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < lay.n; ++j) s += kernel[j] * wf.amp[b + j * lay.step];
    out.amp[line] = s;
  }
  return out;
}

namespace {
void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid == b.grid) || a.labels != b.labels) throw DomainError("wavefunctions live on different grids");
}
}  // namespace

double fidelity(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  const auto& k = kernels::active();
  double na = k.inner(a, a).real();
  double nb = k.inner(b, b).real();
  if (!(na > 0.0) || !(nb > 0.0)) throw DomainError("fidelity of a zero wavefunction");
  return std::norm(k.inner(a, b)) / (na * nb);
}

double envelope_fidelity(const WaveFunction& a, const WaveFunction& b, const std::vector<Vertex>& rest) {
  require_same_grid(a, b);
  std::vector<std::size_t> axes;
  for (Vertex v : rest) axes.push_back(a.axis_of(v));
  const std::size_t n = a.grid.points;
  auto key = [&](std::size_t flat) {
    std::size_t k = 0;
    for (std::size_t ax : axes) k = k * n + (flat / a.stride(ax)) % n;
    return k;
  };
  std::size_t slices = 1;
  for (std::size_t i = 0; i < axes.size(); ++i) slices *= n;
  std::vector<double> na(slices, 0.0), nb(slices, 0.0);
  for (std::size_t i = 0; i < a.amp.size(); ++i) {
    std::size_t k = key(i);
    na[k] += std::norm(a.amp[i]);
    nb[k] += std::norm(b.amp[i]);
  }
  WaveFunction scaled = b;
  for (std::size_t i = 0; i < b.amp.size(); ++i) {
    std::size_t k = key(i);
    scaled.amp[i] = nb[k] > 0.0 ? b.amp[i] * std::sqrt(na[k] / nb[k]) : cplx{0.0, 0.0};
  }
  return fidelity(a, scaled);
}

double nullifier_variance(const WaveFunction& wf, const NullifierOp& h) {
  const auto& k = kernels::active();
  WaveFunction hpsi = wf;
  k.spectral(hpsi, wf.axis_of(h.mode), [](double kk, const double*) { return cplx{kk, 0.0}; });
  auto qpart = compile(h.qpart, wf);
  const auto total = static_cast<long long>(wf.amp.size());
#pragma omp parallel
  {
    std::vector<double> q(wf.n_axes());
#pragma omp for schedule(static)
    for (long long i = 0; i < total; ++i) {
      auto u = static_cast<std::size_t>(i);
      kernels::detail::decode(wf, u, q.data());
      hpsi.amp[u] -= qpart(q.data()) * wf.amp[u];
    }
  }
  double n = k.inner(wf, wf).real();
  if (!(n > 0.0)) throw DomainError("nullifier variance of a zero wavefunction");
  double mean = k.inner(wf, hpsi).real() / n;
  double second = k.inner(hpsi, hpsi).real() / n;
  return std::max(0.0, second - mean * mean);
}

Marginal marginal(const WaveFunction& wf, Vertex v, Basis basis) {
  const std::size_t axis = wf.axis_of(v);
  const auto lay = kernels::detail::lines(wf, axis);
  const GridSpec& g = wf.grid;
  Marginal out;
  out.density.assign(lay.n, 0.0);
  if (basis == Basis::Q) {
    out.spacing = g.dx();
    for (std::size_t j = 0; j < lay.n; ++j) out.values.push_back(g.position(j));
    for (std::size_t line = 0; line < lay.count; ++line) {
      std::size_t b = lay.base(line);
      for (std::size_t j = 0; j < lay.n; ++j) out.density[j] += std::norm(wf.amp[b + j * lay.step]);
    }
  } else {
    // Bins in ascending frequency: FFT bin (j + N/2) mod N.
    out.spacing = 2.0 * g.max_frequency() / static_cast<double>(lay.n);
    std::vector<std::size_t> order(lay.n);
    for (std::size_t j = 0; j < lay.n; ++j) {
      order[j] = (j + lay.n / 2) % lay.n;
      out.values.push_back(g.frequency(order[j]));
    }
    std::vector<cplx> in(lay.n);
    for (std::size_t line = 0; line < lay.count; ++line) {
      std::size_t b = lay.base(line);
      for (std::size_t j = 0; j < lay.n; ++j) in[j] = wf.amp[b + j * lay.step];
      for (std::size_t j = 0; j < lay.n; ++j) {
        double kk = out.values[j];
        cplx s{0.0, 0.0};
        for (std::size_t x = 0; x < lay.n; ++x) s += in[x] * std::polar(1.0, -kk * g.position(x));
        out.density[j] += std::norm(s);
      }
    }
  }
  double total = 0.0;
  for (double d : out.density) total += d;
  if (!(total > 0.0)) throw DomainError("marginal of a zero wavefunction");
  for (double& d : out.density) d /= total * out.spacing;
  return out;
}

std::vector<double> sample_homodyne(const WaveFunction& wf, Vertex v, Basis basis, std::uint64_t seed,
                                    std::size_t count) {
  Marginal mg = marginal(wf, v, basis);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> bins(mg.density.begin(), mg.density.end());
  std::uniform_real_distribution<double> within(-0.5, 0.5);
  std::vector<double> out(count);
  for (double& x : out) {
    std::size_t b = bins(rng);
    x = mg.values[b] + within(rng) * mg.spacing;
  }
  return out;
}

std::string marginals_csv(const WaveFunction& wf) {
  std::string out = "position";
  std::vector<Marginal> cols;
  for (Vertex v : wf.labels) {
    out += fmt::format(",q{}", v);
    cols.push_back(marginal(wf, v, Basis::Q));
  }
  out += "\n";
  for (std::size_t j = 0; j < wf.grid.points; ++j) {
    out += fmt::format("{:.10g}", wf.grid.position(j));
    for (const auto& c : cols) out += fmt::format(",{:.10g}", c.density[j]);
    out += "\n";
  }
  return out;
}

WaveFunction cubic_gate_oracle(const Wavepacket& psi, double gamma, double m, double n, double r, GridSpec grid,
                               std::size_t steps) {
  if (!(gamma > 0.0)) throw DomainError("cubic gate strength must be positive");
  WaveFunction out(grid, {0});
  const double w1 = std::exp(-r);
  const double w2 = gamma * w1;
  const double e2r = std::exp(2.0 * r);
  const std::size_t steps2 = std::max<std::size_t>(steps / 2, 16);
  const double h1 = 16.0 * w1 / static_cast<double>(steps - 1);
  const double h2 = 16.0 * w2 / static_cast<double>(steps2 - 1);
  const auto total = static_cast<long long>(grid.points);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    const double x = out.grid.position(static_cast<std::size_t>(i));
    cplx acc{0.0, 0.0};
    for (std::size_t a = 0; a < steps; ++a) {
      const double q1 = x - 8.0 * w1 + static_cast<double>(a) * h1;
      const double u1 = q1 - x;
      const double amp1 = std::exp(-0.5 * u1 * u1 * e2r);
      cplx inner{0.0, 0.0};
      for (std::size_t b = 0; b < steps2; ++b) {
        const double q2 = gamma * q1 - 8.0 * w2 + static_cast<double>(b) * h2;
        const double u2 = (q2 - gamma * q1) / gamma;
        inner += std::exp(-0.5 * u2 * u2 * e2r) * std::polar(1.0, (x * q1 - m) * q2);
      }
      acc += amp1 * std::polar(1.0, -n * q1) * inner;
    }
    out.amp[static_cast<std::size_t>(i)] = psi(x) * acc * h1 * h2;
  }
  return out;
}

}  // namespace cvhg
