#include "phasespace/kernels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "phasespace/error.hpp"
#include "phasespace/interp.hpp"
#include "phasespace/solutions.hpp"
#include "row_transform.hpp"

namespace phasespace {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_s_one(const SFamilyKernel& k) { return std::abs(k.s - 1.0) <= 1e-14; }

// log of the Bargmann kernel, optionally with the e^{-|z|^2/2} weight folded in.
cplx bargmann_exponent(const BargmannKernel& k, double q, double p, double qprime, bool weighted) {
  const auto& u = k.units;
  const cplx z = gamma_of(q, p, u);
  const double x = qprime / u.lambda;
  cplx e = -0.25 * std::log(pi * u.lambda * u.lambda) - 0.5 * (z * z + x * x) + std::sqrt(2.0) * z * x;
  if (weighted) e -= 0.5 * std::norm(z);
  return e;
}

// Column factors that depend on q only, and the p-phase slope: K = amp(q) e^{-i p c(q) / hbar}.
struct Separable {
  std::vector<cplx> amp;
  std::vector<double> slope;
};

Separable separable_column(const KernelVariant& base, const PhaseSpaceGrid& grid, double qp) {
  const auto n = grid.q.n;
  Separable out{std::vector<cplx>(n), std::vector<double>(n)};
  std::visit(overloaded{
                 [&](const CoherentStateKernel& k) {
                   const double l = k.units.lambda;
                   const double a = std::pow(l * l * pi, -0.25);
                   for (std::size_t i = 0; i < n; ++i) {
                     const double d = qp - grid.q.at(i);
                     out.amp[i] = a * std::exp(-d * d / (2.0 * l * l));
                     out.slope[i] = d;
                   }
                 },
                 [&](const GeneralGKernel& k) {
                   BandLimited g(k.g.grid, k.g.values);
                   for (std::size_t i = 0; i < n; ++i) {
                     const double q = grid.q.at(i);
                     out.amp[i] = g(qp - q);
                     out.slope[i] = qp - 0.5 * q;
                   }
                 },
                 [&](const SFamilyKernel& k) {
                   require(!is_s_one(k), "kernel: the s = 1 kernel is diagonal in q and has no sampled column");
                   require(std::abs(k.s + 1.0) > 1e-12, "kernel: s = -1 has no closed-form kernel");
                   BandLimited g(k.g.grid, k.g.values);
                   const double s = k.s;
                   const double pre = 2.0 / std::abs(1.0 - s);
                   for (std::size_t i = 0; i < n; ++i) {
                     const double q = grid.q.at(i);
                     out.amp[i] = pre * g(2.0 * qp / (1.0 - s) - 4.0 * q / (1.0 - s * s));
                     out.slope[i] = 2.0 * (qp - q) / (1.0 - s);
                   }
                 },
                 [&](const BargmannKernel&) {},
             },
             base);
  return out;
}

void apply_gauge(const KernelSpec& spec, ComplexField2D& f) {
  if (!spec.gauge) return;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      f(i, j) *= std::polar(1.0, spec.gauge(f.grid.q.at(i), f.grid.p.at(j)));
    }
  }
}

void check_g(const GFunction& g, const PhaseSpaceGrid& grid) {
  require(g.values.size() == g.grid.n, "kernel: g sample count does not match its grid");
  require(g.grid.aligned_with(grid.ygrid()), "kernel: g grid must have the q step and be aligned with the y grid");
  require(g.norm2() > 0.0, "kernel: g is identically zero");
}

}  // namespace

Convention KernelSpec::convention() const {
  return std::holds_alternative<SFamilyKernel>(base) ? Convention::s_family : Convention::general_g;
}

KernelSpec gauged(KernelSpec spec, std::function<double(double, double)> f, std::string label) {
  require(static_cast<bool>(f), "gauged: empty phase function");
  if (spec.gauge) {
    auto prev = spec.gauge;
    spec.gauge = [prev, f](double q, double p) { return prev(q, p) + f(q, p); };
    spec.gauge_label += "+" + label;
  } else {
    spec.gauge = std::move(f);
    spec.gauge_label = std::move(label);
  }
  return spec;
}

ComplexField2D kernel_column(const KernelSpec& spec, const PhaseSpaceGrid& grid, double qp, KernelMeasure measure) {
  const bool barg = std::holds_alternative<BargmannKernel>(spec.base);
  require(barg == (measure == KernelMeasure::bargmann),
          "kernel_column: the bargmann measure applies to (and is required by) the Bargmann kernel only");
  ComplexField2D out(grid, Domain::qp);
  const auto n = grid.q.n;
  if (barg) {
    const auto& k = std::get<BargmannKernel>(spec.base);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) = std::exp(bargmann_exponent(k, grid.q.at(i), grid.p.at(j), qp, true));
    }
  } else {
    if (auto* k = std::get_if<GeneralGKernel>(&spec.base)) check_g(k->g, grid);
    if (auto* k = std::get_if<SFamilyKernel>(&spec.base)) check_g(k->g, grid);
    const auto sep = separable_column(spec.base, grid, qp);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) = sep.amp[i] * std::polar(1.0, -grid.p.at(j) * sep.slope[i] / grid.hbar);
    }
  }
  apply_gauge(spec, out);
  return out;
}

std::vector<cplx> transition_state(const KernelSpec& spec, const PhaseSpaceGrid& grid, double q, double p) {
  const auto n = grid.q.n;
  std::vector<cplx> out(n);
  const double hb = grid.hbar;
  std::visit(overloaded{
                 [&](const BargmannKernel& k) {
                   for (std::size_t m = 0; m < n; ++m) out[m] = std::exp(bargmann_exponent(k, q, p, grid.q.at(m), false));
                 },
                 [&](const CoherentStateKernel& k) {
                   const double l = k.units.lambda;
                   const double a = std::pow(l * l * pi, -0.25);
                   for (std::size_t m = 0; m < n; ++m) {
                     const double d = grid.q.at(m) - q;
                     out[m] = a * std::exp(-d * d / (2.0 * l * l)) * std::polar(1.0, -p * d / hb);
                   }
                 },
                 [&](const GeneralGKernel& k) {
                   check_g(k.g, grid);
                   BandLimited g(k.g.grid, k.g.values);
                   for (std::size_t m = 0; m < n; ++m) {
                     const double qp = grid.q.at(m);
                     out[m] = g(qp - q) * std::polar(1.0, -p * (qp - 0.5 * q) / hb);
                   }
                 },
                 [&](const SFamilyKernel& k) {
                   require(!is_s_one(k), "transition_state: the s = 1 kernel is diagonal in q");
                   require(std::abs(k.s + 1.0) > 1e-12, "transition_state: s = -1 has no closed-form kernel");
                   check_g(k.g, grid);
                   BandLimited g(k.g.grid, k.g.values);
                   const double s = k.s;
                   for (std::size_t m = 0; m < n; ++m) {
                     const double qp = grid.q.at(m);
                     out[m] = 2.0 / std::abs(1.0 - s) * g(2.0 * qp / (1.0 - s) - 4.0 * q / (1.0 - s * s)) *
                              std::polar(1.0, -2.0 * p * (qp - q) / ((1.0 - s) * hb));
                   }
                 },
             },
             spec.base);
  const double phase = spec.gauge ? spec.gauge(q, p) : 0.0;
  for (auto& v : out) v = std::conj(v * std::polar(1.0, phase));
  return out;
}

PhaseSpaceWavefunction DiagonalKernelOperator::apply(const PositionWavefunction& phi) const {
  require(phi.grid.same_as(grid.q), "DiagonalKernelOperator: phi must be sampled on the q grid");
  ComplexField2D out(grid, Domain::qp);
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    const double q = grid.q.at(i);
    for (std::size_t j = 0; j < grid.p.n; ++j) {
      out(i, j) = std::polar(1.0, -grid.p.at(j) * q / grid.hbar) * gtilde[j] * phi.values[i];
    }
  }
  return {std::move(out), Convention::s_family};
}

BuiltKernel build_kernel(const KernelSpec& spec, const PhaseSpaceGrid& grid) {
  if (const auto* k = std::get_if<SFamilyKernel>(&spec.base); k && is_s_one(*k)) {
    require(!spec.gauge, "build_kernel: gauged s = 1 operator is not supported; gauge the transformed field instead");
    check_g(k->g, grid);
    DiagonalKernelOperator op{grid, std::vector<cplx>(grid.p.n)};
    transform_y_to_p(k->g.values, k->g.grid, grid, op.gtilde);
    return op;
  }
  guard(grid.q.n <= 128, "build_kernel: dense kernels hold n^3 entries; use kernel_transform above n = 128");
  const auto n = grid.q.n;
  const auto measure =
      std::holds_alternative<BargmannKernel>(spec.base) ? KernelMeasure::bargmann : KernelMeasure::dGamma;
  SampledKernel out{grid, std::vector<cplx>(n * n * n)};
  for (std::size_t k = 0; k < n; ++k) {
    auto col = kernel_column(spec, grid, grid.q.at(k), measure);
    if (measure == KernelMeasure::bargmann) {
      // Undo the measure weight: the dense kernel is the plain K_B.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double w = 0.5 * std::norm(gamma_of(grid.q.at(i), grid.p.at(j), std::get<BargmannKernel>(spec.base).units));
          col(i, j) *= std::exp(w);
        }
      }
    }
    for (std::size_t ij = 0; ij < n * n; ++ij) out.values[ij * n + k] = col.values[ij];
  }
  return out;
}

PhaseSpaceWavefunction kernel_transform(const KernelSpec& spec, const PositionWavefunction& phi,
                                        const PhaseSpaceGrid& grid, Exec exec) {
  require(phi.grid.same_as(grid.q), "kernel_transform: phi must be sampled on the q grid");
  PhaseSpaceWavefunction out = std::visit(
      overloaded{
          [&](const CoherentStateKernel& k) {
            auto g = gaussian_g(k.units, extended_ygrid(grid, 2 * grid.q.n));
            auto psi = solve_general_g(phi, g, grid, exec);
            for (std::size_t i = 0; i < grid.q.n; ++i) {
              for (std::size_t j = 0; j < grid.p.n; ++j) {
                psi.field(i, j) *= std::polar(1.0, grid.q.at(i) * grid.p.at(j) / (2.0 * grid.hbar));
              }
            }
            return psi;
          },
          [&](const GeneralGKernel& k) { return solve_general_g(phi, k.g, grid, exec); },
          [&](const SFamilyKernel& k) { return solve_s_family(phi, k.g, k.s, grid, exec); },
          [&](const BargmannKernel& k) {
            ComplexField2D f(grid, Domain::qp);
            const auto n = static_cast<long long>(grid.q.n);
            RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(dynamic)
            for (long long ii = 0; ii < n; ++ii) {
              errors.run([&] {
                const auto i = static_cast<std::size_t>(ii);
                for (std::size_t j = 0; j < grid.p.n; ++j) {
                  if (std::abs(gamma_of(grid.q.at(i), grid.p.at(j), k.units)) > k.radius) continue;
                  cplx sum{};
                  for (std::size_t m = 0; m < grid.q.n; ++m) {
                    sum += std::exp(bargmann_exponent(k, grid.q.at(i), grid.p.at(j), grid.q.at(m), false)) * phi.values[m];
                  }
                  f(i, j) = sum * grid.q.step;
                }
              });
            }
            errors.rethrow();
            return PhaseSpaceWavefunction{std::move(f), Convention::general_g};
          },
      },
      spec.base);
  apply_gauge(spec, out.field);
  return out;
}

UnitarityReport check_kernel_unitarity(const KernelSpec& spec, const PhaseSpaceGrid& grid, KernelMeasure measure,
                                       Exec exec) {
  const auto n = grid.q.n;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < 5; ++k) idx.push_back(n / 4 + k * n / 8);
  idx.push_back(n / 2 + 1);

  std::vector<ComplexField2D> cols(idx.size());
  const auto count = static_cast<long long>(idx.size());
  RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(dynamic)
  for (long long c = 0; c < count; ++c) {
    errors.run([&] {
      cols[static_cast<std::size_t>(c)] = kernel_column(spec, grid, grid.q.at(idx[static_cast<std::size_t>(c)]), measure);
    });
  }
  errors.rethrow();
  const double w = grid.cell() / (2.0 * pi * grid.hbar);
  auto pair = [&](std::size_t a, std::size_t b) {
    cplx sum{};
    for (std::size_t t = 0; t < cols[a].values.size(); ++t) sum += std::conj(cols[a].values[t]) * cols[b].values[t];
    return sum * w;
  };
  UnitarityReport r;
  double diag_sum = 0.0;
  std::size_t diag_count = 0;
  auto record = [&](std::size_t a, std::size_t b) {
    const cplx m = pair(a, b);
    const double delta = (idx[a] == idx[b]) ? 1.0 / grid.q.step : 0.0;
    r.residual = std::max(r.residual, std::abs(m - delta));
    if (idx[a] == idx[b]) {
      diag_sum += m.real() * grid.q.step;
      ++diag_count;
    } else {
      r.off_diagonal_max = std::max(r.off_diagonal_max, std::abs(m));
    }
    ++r.probes;
  };
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = 0; b < 5; ++b) record(a, b);
  }
  record(2, 5);
  r.diagonal_factor = diag_sum / static_cast<double>(diag_count);
  return r;
}

PhaseSpaceWavefunction gauge_transform(const PhaseSpaceWavefunction& psi, const ComplexField2D& f) {
  require(f.grid.same_as(psi.field.grid), "gauge_transform: phase field grid mismatch");
  PhaseSpaceWavefunction out = psi;
  for (std::size_t t = 0; t < f.values.size(); ++t) {
    const cplx v = f.values[t];
    require(std::isfinite(v.real()) && v.imag() == 0.0, "gauge_transform: the gauge phase must be real");
    out.field.values[t] *= std::polar(1.0, v.real());
  }
  return out;
}

PhaseSpaceWavefunction gauge_transform(const PhaseSpaceWavefunction& psi, const std::function<double(double, double)>& f) {
  PhaseSpaceWavefunction out = psi;
  for (std::size_t i = 0; i < out.field.rows(); ++i) {
    for (std::size_t j = 0; j < out.field.cols(); ++j) {
      out.field(i, j) *= std::polar(1.0, f(out.field.grid.q.at(i), out.field.grid.p.at(j)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------

std::map<std::string, std::string> KernelConfig::as_map() const {
  auto num = [](double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
  };
  return {{"variant", variant}, {"s", num(s)},       {"lambda", num(lambda)},  {"g", g},
          {"seed", std::to_string(seed)}, {"radius", num(radius)}, {"gauge", num(gauge)}};
}

KernelConfig parse_kernel_config(const std::string& text) {
  KernelConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "kernel config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    auto real = [&](double& dst) {
      std::size_t used = 0;
      try {
        dst = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == val.size() && !val.empty() && std::isfinite(dst),
              "kernel config: '" + key + "' needs a real number, got '" + val + "'");
    };
    if (key == "variant") {
      require(val == "coherent" || val == "bargmann" || val == "general-g" || val == "s-family",
              "kernel config: unknown variant '" + val + "'");
      cfg.variant = val;
    } else if (key == "s") {
      real(cfg.s);
    } else if (key == "lambda") {
      real(cfg.lambda);
      require(cfg.lambda > 0.0, "kernel config: lambda must be positive");
    } else if (key == "g") {
      require(val == "gaussian" || val == "random", "kernel config: g must be gaussian or random");
      cfg.g = val;
    } else if (key == "seed") {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(val, &used);
        require(used == val.size(), "");
      } catch (const std::exception&) {
        throw InvalidArgument("kernel config: seed must be an unsigned integer");
      }
    } else if (key == "radius") {
      real(cfg.radius);
      require(cfg.radius > 0.0, "kernel config: radius must be positive");
    } else if (key == "gauge") {
      if (val == "none") {
        cfg.gauge = 0.0;
      } else {
        real(cfg.gauge);
      }
    } else {
      throw InvalidArgument("kernel config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

KernelConfig load_kernel_config(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "kernel config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_kernel_config(ss.str());
}

KernelSpec make_kernel_spec(const KernelConfig& cfg, const PhaseSpaceGrid& grid) {
  const double hbar = grid.hbar;
  const OscillatorUnits units(1.0, hbar / (cfg.lambda * cfg.lambda), hbar);
  KernelSpec spec;
  auto make_g = [&](Convention c, double s) {
    if (cfg.g == "random") return random_mixture_g(cfg.seed, grid.ygrid(), c, s);
    auto g = gaussian_g(units, extended_ygrid(grid, 2 * grid.q.n));
    const double scale = std::sqrt(g_norm_target(c, s));
    for (auto& v : g.values) v *= scale;
    if (c == Convention::s_family) g.target_s = s;
    return g;
  };
  if (cfg.variant == "coherent") {
    spec.base = CoherentStateKernel{units};
  } else if (cfg.variant == "bargmann") {
    spec.base = BargmannKernel{units, cfg.radius};
  } else if (cfg.variant == "general-g") {
    spec.base = GeneralGKernel{make_g(Convention::general_g, 0.0)};
  } else {
    require(std::abs(cfg.s + 1.0) > 1e-12, "kernel config: s = -1 is not supported");
    spec.base = SFamilyKernel{make_g(Convention::s_family, cfg.s), cfg.s};
  }
  if (cfg.gauge != 0.0) {
    const double a = cfg.gauge;
    spec = gauged(std::move(spec), [a, hbar](double q, double p) { return a * q * p / hbar; }, "a*q*p/hbar");
  }
  return spec;
}

}  // namespace phasespace
