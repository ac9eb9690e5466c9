#include "phasespace/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "phasespace/error.hpp"
#include "phasespace/io.hpp"
#include "phasespace/kernels.hpp"
#include "phasespace/quasidist.hpp"
#include "phasespace/solutions.hpp"
#include "phasespace/star.hpp"
#include "phasespace/version.hpp"

namespace phasespace::cli {

namespace {

using io::json;

struct Globals {
  std::size_t grid = 256;
  double halfwidth = 8.0;
  bool halfwidth_given = false;
  double hbar = 1.0;
  double lambda = 1.0;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t seed = 7;

  OscillatorUnits units() const { return OscillatorUnits(1.0, hbar / (lambda * lambda), hbar); }

  PhaseSpaceGrid phase_grid(double hw) const {
    require(grid >= 8 && (grid & (grid - 1)) == 0, "--grid must be a power of two >= 8");
    require(hw > 0.0 && std::isfinite(hw), "--halfwidth must be positive");
    require(hbar > 0.0 && std::isfinite(hbar), "--hbar must be positive");
    require(lambda > 0.0 && std::isfinite(lambda), "--lambda must be positive");
    return make_phase_grid(grid, hw, hbar);
  }
  PhaseSpaceGrid phase_grid() const { return phase_grid(halfwidth); }

  json to_json(double hw) const {
    return {{"grid", grid}, {"halfwidth", hw}, {"hbar", hbar}, {"lambda", lambda},
            {"format", format}, {"seed", seed}};
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument(what + ": '" + s + "' is not a number");
  }
  require(used == s.size() && std::isfinite(v), what + ": '" + s + "' is not a number");
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  require(v == std::floor(v) && v >= 0.0 && v <= 64.0, what + ": '" + s + "' is not an index in [0, 64]");
  return static_cast<int>(v);
}

// "0..3" or "0,2,5".
std::vector<int> parse_index_list(const std::string& s, const std::string& what) {
  const auto t = trim(s);
  require(!t.empty(), what + ": empty list");
  if (const auto dots = t.find(".."); dots != std::string::npos) {
    const int a = to_int(trim(t.substr(0, dots)), what);
    const int b = to_int(trim(t.substr(dots + 2)), what);
    require(a <= b, what + ": empty range '" + t + "'");
    std::vector<int> out;
    for (int k = a; k <= b; ++k) out.push_back(k);
    return out;
  }
  std::vector<int> out;
  for (const auto& part : split(t, ',')) out.push_back(to_int(part, what));
  return out;
}

std::vector<double> parse_s_list(const std::string& s) {
  const auto t = trim(s);
  require(!t.empty(), "--s: the s list is empty");
  std::vector<double> out;
  for (const auto& part : split(t, ',')) {
    require(!part.empty(), "--s: empty entry in '" + t + "'");
    const double v = to_double(part, "--s");
    require(std::abs(v + 1.0) > 1e-12, "--s: s = -1 is not supported");
    out.push_back(v);
  }
  return out;
}

double check_s(double s) {
  require(std::isfinite(s) && std::abs(s + 1.0) > 1e-12, "--s: s = -1 is not supported");
  return s;
}

// "w:n,w:n,..." with weights rescaled to sum to one.
std::vector<std::pair<double, int>> parse_mixture(const std::string& s) {
  std::vector<std::pair<double, int>> out;
  double total = 0.0;
  for (const auto& part : split(s, ',')) {
    const auto colon = part.find(':');
    require(colon != std::string::npos, "--mix: expected weight:index, got '" + part + "'");
    const double w = to_double(trim(part.substr(0, colon)), "--mix weight");
    require(w >= 0.0, "--mix: negative weight");
    out.emplace_back(w, to_int(trim(part.substr(colon + 1)), "--mix index"));
    total += w;
  }
  require(!out.empty() && total > 0.0, "--mix: no positive weight");
  for (auto& c : out) c.first /= total;
  return out;
}

DensityMatrix mixture_density(const std::vector<std::pair<double, int>>& mix, const OscillatorUnits& u,
                              const Grid1D& q) {
  std::vector<MixtureComponent> c;
  for (const auto& [w, n] : mix) c.push_back({w, hermite_eigenstate(n, u, q)});
  return density_from_mixture(c);
}

DensityMatrix pure_density(const PositionWavefunction& phi) {
  std::vector<MixtureComponent> c{{1.0, phi}};
  return density_from_mixture(c);
}

json mixture_json(const std::vector<std::pair<double, int>>& mix) {
  json a = json::array();
  for (const auto& [w, n] : mix) a.push_back({{"weight", w}, {"n", n}});
  return a;
}

double max_abs_diff(const ComplexField2D& a, const ComplexField2D& b, double scale_b = 1.0) {
  double m = 0.0;
  for (std::size_t t = 0; t < a.values.size(); ++t) m = std::max(m, std::abs(a.values[t] - scale_b * b.values[t]));
  return m;
}

// sqrt(sum Im^2 / sum |f|^2).
double imag_norm(const ComplexField2D& f) {
  double im = 0.0, all = 0.0;
  for (const auto& v : f.values) {
    im += v.imag() * v.imag();
    all += std::norm(v);
  }
  return all > 0.0 ? std::sqrt(im / all) : 0.0;
}

struct ReferenceMarginals {
  std::vector<double> q, p;
};

ReferenceMarginals reference_marginals(const std::vector<std::pair<double, int>>& mix, const OscillatorUnits& u,
                                       const PhaseSpaceGrid& g) {
  ReferenceMarginals r{std::vector<double>(g.q.n, 0.0), std::vector<double>(g.p.n, 0.0)};
  for (const auto& [w, n] : mix) {
    const auto phi = hermite_eigenstate(n, u, g.q);
    const auto pt = momentum_representation(phi, g.hbar);
    for (std::size_t i = 0; i < g.q.n; ++i) r.q[i] += w * std::norm(phi.values[i]);
    for (std::size_t j = 0; j < g.p.n; ++j) r.p[j] += w * std::norm(pt.values[j]);
  }
  return r;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

json field_stats(const ComplexField2D& f) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, im = 0.0;
  for (const auto& v : f.values) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
    im = std::max(im, std::abs(v.imag()));
  }
  return {{"max", hi}, {"min", lo}, {"imag_max", im}};
}

// ---------------------------------------------------------------- distribution

struct DistributionOptions {
  std::string kind = "wigner";
  int n = 0;
  double s = 0.0;
  std::string mix;
  std::string kernel;
};

int cmd_distribution(const Globals& G, const DistributionOptions& o, std::ostream& out) {
  const auto grid = G.phase_grid();
  const auto u = G.units();
  const auto format = io::parse_format(G.format);
  require(o.n >= 0 && o.n <= 64, "--n must be in [0, 64]");
  const std::vector<std::pair<double, int>> mix = o.mix.empty() ? std::vector<std::pair<double, int>>{{1.0, o.n}}
                                                                : parse_mixture(o.mix);
  const bool is_pure = mix.size() == 1;
  const auto phi = hermite_eigenstate(mix.front().second, u, grid.q);

  json config = G.to_json(G.halfwidth);
  config["command"] = "distribution";
  config["kind"] = o.kind;
  config["mixture"] = mixture_json(mix);

  json summary{{"command", "distribution"}, {"kind", o.kind}};
  ComplexField2D field;
  std::optional<QuasiDistribution> Q;

  if (o.kind == "kernel") {
    require(!o.kernel.empty(), "distribution --kind kernel needs --kernel <file>");
    require(is_pure, "distribution --kind kernel transforms a pure state; drop --mix");
    const auto cfg = load_kernel_config(o.kernel);
    config["kernel"] = cfg.as_map();
    const auto spec = make_kernel_spec(cfg, grid);
    const auto psi = kernel_transform(spec, phi, grid);
    field = psi.field;
    summary["convention"] = to_string(psi.convention);
    if (const auto* b = std::get_if<BargmannKernel>(&spec.base)) {
      // Bargmann functions are normalized against e^{-|z|^2} dGamma.
      double sum = 0.0;
      for (std::size_t i = 0; i < grid.q.n; ++i) {
        for (std::size_t j = 0; j < grid.p.n; ++j) {
          sum += std::norm(field(i, j)) * std::exp(-std::norm(gamma_of(grid.q.at(i), grid.p.at(j), b->units)));
        }
      }
      summary["normalization"] = sum * grid.cell() / (2.0 * pi * grid.hbar);
      summary["measure"] = "bargmann";
    } else {
      summary["normalization"] = psi.norm2();
      summary["measure"] = "dGamma";
    }
  } else {
    double s = 0.0;
    if (o.kind == "wigner") {
      Q = is_pure ? wigner_from_pure(phi, grid) : wigner_s_from_density(mixture_density(mix, u, grid.q), 0.0, grid);
    } else if (o.kind == "wigner-s") {
      s = check_s(o.s);
      const auto rho = is_pure ? pure_density(phi) : mixture_density(mix, u, grid.q);
      Q = wigner_s_from_density(rho, s, grid);
    } else if (o.kind == "kirkwood") {
      s = 1.0;
      if (is_pure) {
        Q = kirkwood_rihaczek(phi, grid);
        const auto via_rho = wigner_s_from_density(pure_density(phi), 1.0, grid);
        summary["closed_form_vs_density"] = max_abs_diff(Q->field, via_rho.field);
      } else {
        Q = wigner_s_from_density(mixture_density(mix, u, grid.q), 1.0, grid);
      }
    } else if (o.kind == "husimi") {
      for (const auto& [w, n] : mix) {
        auto part = husimi(hermite_eigenstate(n, u, grid.q), u, grid);
        for (auto& v : part.field.values) v *= w;
        if (!Q) {
          Q = std::move(part);
        } else {
          for (std::size_t t = 0; t < Q->field.values.size(); ++t) Q->field.values[t] += part.field.values[t];
        }
      }
      Q->source = is_pure ? Source::pure : Source::mixed;
    } else {
      throw InvalidArgument("--kind must be wigner, wigner-s, husimi, kirkwood or kernel");
    }
    field = Q->field;
    summary["s"] = Q->kind == DistributionKind::husimi ? json(nullptr) : json(s);
    summary["source"] = to_string(Q->source);
    summary["normalization"] = Q->normalization();
    summary["measure"] = Q->kind == DistributionKind::husimi ? "dGamma" : "dqdp";
    if (Q->kind == DistributionKind::s_ordered && s == 0.0) summary["purity"] = purity_integral(*Q);
  }
  const json stats = field_stats(field);
  for (auto& [k, v] : stats.items()) summary[k] = v;

  json header{{"command", "distribution"}, {"config", config}, {"grid", io::grid_json(grid)}};
  for (auto& [k, v] : summary.items()) header[k] = v;

  json files = json::array();
  files.push_back(io::write_table(G.out, "distribution_" + o.kind, format, header, io::field_table(field)));

  if (Q) {
    const auto m = marginals(*Q);
    const auto ref = reference_marginals(mix, u, grid);
    summary["marginal_q_error"] = max_abs_diff(m.q, ref.q);
    summary["marginal_p_error"] = max_abs_diff(m.p, ref.p);
    summary["marginals_exact"] = m.guaranteed;
    io::Table t{{"q", "marginal_q", "reference_q", "p", "marginal_p", "reference_p"}, {}};
    for (std::size_t k = 0; k < grid.q.n; ++k) {
      t.rows.push_back({grid.q.at(k), m.q[k], ref.q[k], grid.p.at(k), m.p[k], ref.p[k]});
    }
    json mh = header;
    mh["marginal_q_error"] = summary["marginal_q_error"];
    mh["marginal_p_error"] = summary["marginal_p_error"];
    mh["marginals_exact"] = m.guaranteed;
    files.push_back(io::write_table(G.out, "marginals_" + o.kind, format, mh, t));
  }
  summary["files"] = files;
  out << summary.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string suite = "all";
  std::string n;
  std::string s;
  std::string kernel;
  double tol = 0.0;
  bool tol_given = false;
};

struct Record {
  json data;
  bool pass = false;
};

class Report {
 public:
  void add(std::string name, bool pass, json values) {
    json r{{"name", std::move(name)}, {"pass", pass}};
    for (auto& [k, v] : values.items()) r[k] = v;
    records_.push_back({std::move(r), pass});
  }
  bool pass() const {
    return std::all_of(records_.begin(), records_.end(), [](const Record& r) { return r.pass; });
  }
  json records() const {
    json a = json::array();
    for (const auto& r : records_) a.push_back(r.data);
    return a;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> f;
    for (const auto& r : records_) {
      if (!r.pass) f.push_back(r.data["name"].get<std::string>());
    }
    return f;
  }

 private:
  std::vector<Record> records_;
};

std::string s_label(double s) {
  std::ostringstream o;
  o << s;
  return o.str();
}

void suite_eigen(const Globals& G, const VerifyOptions& o, Report& rep, json& cfg) {
  const double hw = G.halfwidth_given ? G.halfwidth : 12.0;
  const auto grid = G.phase_grid(hw);
  const auto u = G.units();
  const auto ns = parse_index_list(o.n.empty() ? "0..3" : o.n, "--n");
  const auto ss = parse_s_list(o.s.empty() ? "-0.5,0,0.5" : o.s);
  const double tol = o.tol_given ? o.tol : 1e-5;
  cfg["eigen"] = {{"halfwidth", hw}, {"n", ns}, {"s", ss}, {"tol", tol}};
  const auto H = HamiltonianSpec::harmonic(u, grid.q);
  for (int n : ns) {
    const auto phi = hermite_eigenstate(n, u, grid.q);
    const auto rho = pure_density(phi);
    for (double s : ss) {
      const auto W = wigner_s_from_density(rho, s, grid);
      const auto r = eigen_residuals(H, W.field, *phi.energy, s);
      rep.add("eigen n=" + std::to_string(n) + " s=" + s_label(s), r.left < tol && r.right < tol,
              {{"n", n}, {"s", s}, {"E", r.E}, {"left", r.left}, {"right", r.right}, {"tol", tol}});
    }
  }
}

void suite_uniqueness(const Globals& G, const VerifyOptions& o, Report& rep, json& cfg) {
  const double hw = G.halfwidth_given ? G.halfwidth : 12.0;
  const auto grid = G.phase_grid(hw);
  const auto u = G.units();
  const auto ns = parse_index_list(o.n.empty() ? "0..3" : o.n, "--n");
  const auto ss = parse_s_list(o.s.empty() ? "0" : o.s);
  const double tol = o.tol_given ? o.tol : 1e-5;
  const double contrast = 0.05;
  const int draws = 5;
  cfg["uniqueness"] = {{"halfwidth", hw}, {"n", ns},     {"s", ss},       {"tol", tol},
                       {"contrast", contrast}, {"seed", G.seed}, {"draws", draws}};
  const auto H = HamiltonianSpec::harmonic(u, grid.q);
  for (double s : ss) {
    for (int k = 0; k < draws; ++k) {
      const std::uint64_t seed = G.seed + static_cast<std::uint64_t>(k);
      const int n = ns[static_cast<std::size_t>(k) % ns.size()];
      const auto phi = hermite_eigenstate(n, u, grid.q);
      const auto g = random_mixture_g(seed, grid.ygrid(), Convention::s_family, s);
      const auto r = eigen_residuals(H, solve_s_family(phi, g, s, grid).field, *phi.energy, s);
      const std::string tag = " n=" + std::to_string(n) + " s=" + s_label(s) + " seed=" + std::to_string(seed);
      rep.add("uniqueness random-g" + tag, r.left < tol && r.right > contrast,
              {{"n", n}, {"s", s}, {"seed", seed}, {"left", r.left}, {"right", r.right}});
      const auto rw = eigen_residuals(H, solve_s_family(phi, wigner_conjugate_g(phi, s, grid), s, grid).field,
                                      *phi.energy, s);
      rep.add("uniqueness wigner-g" + tag, rw.left < tol && rw.right < tol,
              {{"n", n}, {"s", s}, {"left", rw.left}, {"right", rw.right}});
    }
  }
}

void suite_kernels(const Globals& G, const VerifyOptions& o, Report& rep, json& cfg) {
  const auto grid = G.phase_grid();
  const auto u = G.units();
  const double tol = o.tol_given ? o.tol : 1e-6;
  cfg["kernels"] = {{"halfwidth", G.halfwidth}, {"tol", tol}};

  auto unitarity = [&](const std::string& name, const KernelSpec& spec, KernelMeasure m) {
    const auto r = check_kernel_unitarity(spec, grid, m);
    rep.add("kernels unitarity " + name, r.residual < tol,
            {{"residual", r.residual}, {"diagonal_factor", r.diagonal_factor},
             {"off_diagonal_max", r.off_diagonal_max}, {"probes", r.probes}});
  };
  auto norms = [&](const std::string& name, const KernelSpec& spec) {
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n) {
      worst = std::max(worst, std::abs(kernel_transform(spec, hermite_eigenstate(n, u, grid.q), grid).norm2() - 1.0));
    }
    rep.add("kernels norm " + name, worst < tol, {{"max_norm_error", worst}, {"n", "0..3"}});
  };

  const KernelSpec cs{CoherentStateKernel{u}, {}, {}};
  unitarity("coherent", cs, KernelMeasure::dGamma);
  norms("coherent", cs);
  unitarity("bargmann", KernelSpec{BargmannKernel{u}, {}, {}}, KernelMeasure::bargmann);
  const auto g = gaussian_g(u, extended_ygrid(grid, 2 * grid.q.n));
  const KernelSpec gk{GeneralGKernel{g}, {}, {}};
  unitarity("gaussian-g", gk, KernelMeasure::dGamma);
  norms("gaussian-g", gk);

  auto g4 = g;
  for (auto& v : g4.values) v *= 2.0;
  const auto r4 = check_kernel_unitarity(KernelSpec{GeneralGKernel{g4}, {}, {}}, grid, KernelMeasure::dGamma);
  rep.add("kernels misnormalized-g detected", std::abs(r4.diagonal_factor - 4.0) < tol && r4.residual > tol,
          {{"norm2", g4.norm2()}, {"diagonal_factor", r4.diagonal_factor}, {"residual", r4.residual}});

  if (!o.kernel.empty()) {
    const auto kc = load_kernel_config(o.kernel);
    cfg["kernel"] = kc.as_map();
    const auto spec = make_kernel_spec(kc, grid);
    const std::string name = "config " + kc.variant;
    if (kc.variant == "s-family") {
      // Its kernel oscillates at 2p/(1-s), beyond the p grid's band, so the
      // pairing is checked through g's norm and transform norms.
      const auto& sk = std::get<SFamilyKernel>(spec.base);
      const double gr = g_norm_residual(sk.g, Convention::s_family, sk.s);
      rep.add("kernels g-norm " + name, gr < tol, {{"residual", gr}, {"s", sk.s}});
    } else {
      unitarity(name, spec, kc.variant == "bargmann" ? KernelMeasure::bargmann : KernelMeasure::dGamma);
    }
    if (kc.variant != "bargmann") norms(name, spec);
  }
}

void suite_roundtrip(const Globals& G, const VerifyOptions& o, Report& rep, json& cfg) {
  const auto grid = G.phase_grid();
  const auto u = G.units();
  const auto ns = parse_index_list(o.n.empty() ? "0" : o.n, "--n");
  const auto ss = parse_s_list(o.s.empty() ? "-0.5,0,1" : o.s);
  const double tol = o.tol_given ? o.tol : 1e-8;
  const double spectrum_tol = 1e-4;
  cfg["roundtrip"] = {{"halfwidth", G.halfwidth}, {"n", ns}, {"s", ss}, {"tol", tol}, {"spectrum_tol", spectrum_tol}};
  for (int n : ns) {
    const auto W = wigner_from_pure(hermite_eigenstate(n, u, grid.q), grid);
    for (double s : ss) {
      const auto back = operator_to_symbol(symbol_to_operator(W.field, s), s, grid);
      const double e = max_abs_diff(back, W.field);
      rep.add("roundtrip W_" + std::to_string(n) + " s=" + s_label(s), e < tol, {{"n", n}, {"s", s}, {"error", e}});
    }
  }
  const auto spec = operator_spectrum(symbol_to_operator(HamiltonianSpec::harmonic(u, grid.q).symbol(grid), 0.0));
  double worst = 0.0;
  for (int k = 0; k <= 5; ++k) worst = std::max(worst, std::abs(spec[static_cast<std::size_t>(k)] - u.energy(k)));
  rep.add("roundtrip harmonic spectrum n<=5", worst < spectrum_tol, {{"max_error", worst}});
}

int cmd_verify(const Globals& G, const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> known{"eigen", "uniqueness", "kernels", "roundtrip"};
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = known;
  } else {
    require(std::find(known.begin(), known.end(), o.suite) != known.end(),
            "--suite must be eigen, uniqueness, kernels, roundtrip or all");
    suites = {o.suite};
  }
  require(!o.tol_given || (o.tol > 0.0 && std::isfinite(o.tol)), "--tol must be positive");
  json cfg = G.to_json(G.halfwidth);
  cfg["command"] = "verify";
  cfg["suite"] = o.suite;
  Report rep;
  for (const auto& s : suites) {
    if (s == "eigen") suite_eigen(G, o, rep, cfg);
    if (s == "uniqueness") suite_uniqueness(G, o, rep, cfg);
    if (s == "kernels") suite_kernels(G, o, rep, cfg);
    if (s == "roundtrip") suite_roundtrip(G, o, rep, cfg);
  }
  json report{{"command", "verify"}, {"library", kLibraryName}, {"version", kVersion}, {"config", cfg},
              {"pass", rep.pass()}, {"records", rep.records()}};
  const std::string text = report.dump(2) + "\n";
  io::write_file(G.out, "verify_" + o.suite + ".json", text);
  out << text;
  if (!rep.pass()) {
    for (const auto& name : rep.failures()) err << "verify: failed record: " << name << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------- scan-s

struct ScanOptions {
  std::string s;
  int n = 0;
};

int cmd_scan_s(const Globals& G, const ScanOptions& o, std::ostream& out) {
  const auto ss = parse_s_list(o.s);
  const auto grid = G.phase_grid();
  const auto u = G.units();
  const auto format = io::parse_format(G.format);
  const auto phi = hermite_eigenstate(o.n, u, grid.q);
  const auto rho = pure_density(phi);
  const auto ref = reference_marginals({{1.0, o.n}}, u, grid);
  const auto H = HamiltonianSpec::harmonic(u, grid.q);
  const auto kr = kirkwood_rihaczek(phi, grid);

  io::Table t{{"s", "normalization", "marginal_q_error", "marginal_p_error", "imag_max", "imag_norm", "left_residual",
               "right_residual", "kr_difference"},
              {}};
  for (double s : ss) {
    const auto W = wigner_s_from_density(rho, s, grid);
    const auto m = marginals(W);
    const auto r = eigen_residuals(H, W.field, *phi.energy, s);
    const double krd = std::abs(s - 1.0) < 1e-14 ? max_abs_diff(W.field, kr.field)
                                                 : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back({s, W.normalization(), max_abs_diff(m.q, ref.q), max_abs_diff(m.p, ref.p), W.imag_max(),
                      imag_norm(W.field), r.left, r.right, krd});
  }
  json config = G.to_json(G.halfwidth);
  config["command"] = "scan-s";
  config["n"] = o.n;
  config["s"] = ss;
  json header{{"command", "scan-s"}, {"config", config}, {"grid", io::grid_json(grid)}, {"n", o.n},
              {"E", *phi.energy}};
  const auto path = io::write_table(G.out, "scan_s", format, header, t);
  out << json{{"command", "scan-s"}, {"rows", t.rows.size()}, {"files", {path}}}.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- export-state

struct ExportOptions {
  std::string state = "eigen";
  std::string repr = "position";
  int n = 0;
  double q0 = 0.0;
  double p0 = 0.0;
  std::string mix;
};

int cmd_export_state(const Globals& G, const ExportOptions& o, std::ostream& out) {
  const auto grid = G.phase_grid();
  const auto u = G.units();
  const auto format = io::parse_format(G.format);
  require(o.repr == "position" || o.repr == "momentum" || o.repr == "density",
          "--repr must be position, momentum or density");
  json config = G.to_json(G.halfwidth);
  config["command"] = "export-state";
  config["state"] = o.state;
  config["repr"] = o.repr;

  std::optional<PositionWavefunction> phi;
  std::optional<DensityMatrix> rho;
  if (o.state == "eigen") {
    require(o.n >= 0 && o.n <= 64, "--n must be in [0, 64]");
    config["n"] = o.n;
    phi = hermite_eigenstate(o.n, u, grid.q);
  } else if (o.state == "coherent") {
    config["q0"] = o.q0;
    config["p0"] = o.p0;
    phi = coherent_wavefunction(gamma_of(o.q0, o.p0, u), u, grid.q);
  } else if (o.state == "mixture") {
    require(!o.mix.empty(), "--state mixture needs --mix w:n,...");
    require(o.repr == "density", "a mixture only has a density representation (--repr density)");
    const auto mix = parse_mixture(o.mix);
    config["mixture"] = mixture_json(mix);
    rho = mixture_density(mix, u, grid.q);
  } else {
    throw InvalidArgument("--state must be eigen, coherent or mixture");
  }

  json header{{"command", "export-state"}, {"config", config}};
  io::Table t;
  if (o.repr == "density") {
    if (!rho) rho = pure_density(*phi);
    header["grid"] = io::grid_json(rho->grid);
    header["trace"] = rho->trace();
    header["purity"] = rho->purity();
    t = io::density_table(*rho);
  } else if (o.repr == "position") {
    header["grid"] = io::grid_json(phi->grid);
    header["norm"] = phi->norm();
    t = io::wavefunction_table(*phi, "q");
  } else {
    const auto pt = momentum_representation(*phi, grid.hbar);
    header["grid"] = io::grid_json(pt.grid);
    header["norm"] = pt.norm();
    t = io::wavefunction_table(pt, "p");
  }
  if (phi && phi->energy) header["E"] = *phi->energy;
  const auto path = io::write_table(G.out, "state_" + o.repr, format, header, t);
  out << json{{"command", "export-state"}, {"files", {path}}}.dump(2) << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  apply_thread_limit_from_env();

  CLI::App app{"phasespace: s-ordered phase-space representations of quantum mechanics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals G;
  app.add_option("--grid", G.grid, "points per axis (power of two)")->capture_default_str();
  auto* hw = app.add_option("--halfwidth", G.halfwidth, "q grid covers [-halfwidth, halfwidth)")->capture_default_str();
  app.add_option("--hbar", G.hbar, "Planck constant")->capture_default_str();
  app.add_option("--lambda", G.lambda, "oscillator length sqrt(hbar/m omega), m = 1")->capture_default_str();
  app.add_option("--out", G.out, "output directory")->capture_default_str();
  app.add_option("--format", G.format, "csv or json")->capture_default_str();
  app.add_option("--seed", G.seed, "seed for random g functions")->capture_default_str();

  DistributionOptions dopt;
  auto* dist = app.add_subcommand("distribution", "compute a quasi-distribution of an oscillator state");
  dist->add_option("--kind", dopt.kind, "wigner | wigner-s | husimi | kirkwood | kernel")->capture_default_str();
  dist->add_option("--n", dopt.n, "eigenstate index")->capture_default_str();
  dist->add_option("--s", dopt.s, "ordering parameter for wigner-s")->capture_default_str();
  dist->add_option("--mix", dopt.mix, "mixture weight:index,... (instead of --n)");
  dist->add_option("--kernel", dopt.kernel, "kernel config file (kind kernel)");

  VerifyOptions vopt;
  auto* ver = app.add_subcommand("verify", "run residual checks and write a JSON report");
  ver->add_option("--suite", vopt.suite, "eigen | uniqueness | kernels | roundtrip | all")->capture_default_str();
  ver->add_option("--n", vopt.n, "indices: a..b or a,b,c");
  ver->add_option("--s", vopt.s, "comma-separated s values");
  ver->add_option("--kernel", vopt.kernel, "extra kernel config to check (kernels suite)");
  auto* tol = ver->add_option("--tol", vopt.tol, "residual tolerance (suite default otherwise)");

  ScanOptions sopt;
  auto* scan = app.add_subcommand("scan-s", "tabulate W_s diagnostics over a list of s");
  scan->add_option("--s", sopt.s, "comma-separated s values")->required();
  scan->add_option("--n", sopt.n, "eigenstate index")->capture_default_str();

  ExportOptions eopt;
  auto* exp = app.add_subcommand("export-state", "write a state in position, momentum or density form");
  exp->add_option("--state", eopt.state, "eigen | coherent | mixture")->capture_default_str();
  exp->add_option("--repr", eopt.repr, "position | momentum | density")->capture_default_str();
  exp->add_option("--n", eopt.n, "eigenstate index")->capture_default_str();
  exp->add_option("--q0", eopt.q0, "coherent state centre q")->capture_default_str();
  exp->add_option("--p0", eopt.p0, "coherent state centre p")->capture_default_str();
  exp->add_option("--mix", eopt.mix, "mixture weight:index,...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }
  G.halfwidth_given = hw->count() > 0;
  vopt.tol_given = tol->count() > 0;

  try {
    if (*dist) return cmd_distribution(G, dopt, out);
    if (*ver) return cmd_verify(G, vopt, out, err);
    if (*scan) return cmd_scan_s(G, sopt, out);
    if (*exp) return cmd_export_state(G, eopt, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalGuard& e) {
    err << "numerical guard: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace phasespace::cli
