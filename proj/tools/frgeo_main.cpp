// frgeo command-line experiment runner.
//
//   frgeo <subcommand> --config cfg.json [--out PATH] [--seed N]
//
// Subcommands: distance, geodesic, equivalence, converge-gamma, mc-verify,
// curvature. Experiment parameters live in the JSON config; the flags only
// select the config, redirect output and override the seed. Exit codes:
// 0 success, 1 usage/config error, 2 numerical-domain or data error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frgeo/errors.hpp"
#include "frgeo/fisher_rao.hpp"
#include "frgeo/gaussian.hpp"
#include "frgeo/io.hpp"
#include "frgeo/manifold.hpp"
#include "frgeo/mc.hpp"
#include "frgeo/rng.hpp"
#include "frgeo/unitized.hpp"

namespace {

using frgeo::config_error;
using frgeo::domain_error;
using nlohmann::json;

// --- config plumbing --------------------------------------------------------

json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(std::string("config parse failure: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be a JSON object");
  return j;
}

// Rejects keys outside the allowed set; required keys must be present.
void check_keys(const json& j, const std::string& context,
                const std::vector<std::string>& required,
                const std::vector<std::string>& optional) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& k : required)
      if (item.key() == k) known = true;
    for (const auto& k : optional)
      if (item.key() == k) known = true;
    if (!known)
      throw config_error(context + ": unknown key '" + item.key() + "'");
  }
  for (const auto& k : required)
    if (!j.contains(k)) throw config_error(context + ": missing key '" + k + "'");
}

double get_number(const json& j, const std::string& ctx, const std::string& key) {
  if (!j.at(key).is_number())
    throw config_error(ctx + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> get_number_list(const json& j, const std::string& ctx,
                                    const std::string& key) {
  if (!j.at(key).is_array())
    throw config_error(ctx + ": '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw config_error(ctx + ": '" + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// --- covariance sources ------------------------------------------------------
//
// {"csv": "cov.csv"}                       dense SPD matrix file
// {"model": "prefix"}                      persisted CovarianceModel
// {"dense": [[...], ...]}                  inline dense SPD matrix
// {"kernel": "rbf"|"matern32", "lengthscale": h, "amplitude": a,
//  "grid": {"start": x0, "stop": x1, "count": n}}
// {"spectrum": {"dim": n, "exponent": p}}  lambda_k = k^{-p}, identity basis
// {"spectrum": {"eigenvalues": [...]}}     explicit spectrum, identity basis

frgeo::CovarianceModel parse_cov_source(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw config_error(ctx + ": covariance source must be an object");
  check_keys(j, ctx, {}, {"csv", "model", "dense", "kernel", "lengthscale",
                          "amplitude", "grid", "spectrum"});
  int forms = j.contains("csv") + j.contains("model") + j.contains("dense") +
              j.contains("kernel") + j.contains("spectrum");
  if (forms != 1)
    throw config_error(ctx + ": give exactly one of csv/model/dense/kernel/spectrum");

  if (j.contains("csv")) {
    const frgeo::Matrix m = frgeo::load_matrix_csv(j.at("csv").get<std::string>());
    return frgeo::CovarianceModel::from_dense(frgeo::SymMatrix(m), frgeo::Provenance::file);
  }
  if (j.contains("model")) {
    return frgeo::load_model(j.at("model").get<std::string>());
  }
  if (j.contains("dense")) {
    const auto& rows = j.at("dense");
    if (!rows.is_array() || rows.empty())
      throw config_error(ctx + ": 'dense' must be a nonempty array of rows");
    frgeo::Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != m.cols())
        throw config_error(ctx + ": 'dense' rows must have equal lengths");
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k].get<double>();
    }
    return frgeo::CovarianceModel::from_dense(frgeo::SymMatrix(m),
                                              frgeo::Provenance::explicit_);
  }
  if (j.contains("kernel")) {
    check_keys(j, ctx + ".kernel form", {"kernel", "lengthscale", "amplitude", "grid"}, {});
    const std::string name = j.at("kernel").get<std::string>();
    frgeo::CovKernel kernel;
    if (name == "rbf") kernel = frgeo::CovKernel::rbf;
    else if (name == "matern32") kernel = frgeo::CovKernel::matern32;
    else throw config_error(ctx + ": unknown kernel '" + name + "'");
    const json& g = j.at("grid");
    check_keys(g, ctx + ".grid", {"start", "stop", "count"}, {});
    const double start = get_number(g, ctx, "start");
    const double stop = get_number(g, ctx, "stop");
    const std::size_t count = g.at("count").get<std::size_t>();
    if (count < 1) throw config_error(ctx + ": grid count must be positive");
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
      grid[i] = count == 1 ? start
                           : start + (stop - start) * static_cast<double>(i) /
                                         static_cast<double>(count - 1);
    return frgeo::build_from_kernel(kernel, get_number(j, ctx, "lengthscale"),
                                    get_number(j, ctx, "amplitude"), grid);
  }
  const json& s = j.at("spectrum");
  check_keys(s, ctx + ".spectrum", {}, {"dim", "exponent", "eigenvalues"});
  std::vector<double> eig;
  if (s.contains("eigenvalues")) {
    eig = get_number_list(s, ctx, "eigenvalues");
  } else {
    if (!s.contains("dim") || !s.contains("exponent"))
      throw config_error(ctx + ": spectrum needs eigenvalues or dim+exponent");
    const std::size_t dim = s.at("dim").get<std::size_t>();
    const double expo = get_number(s, ctx, "exponent");
    eig.resize(dim);
    for (std::size_t k = 0; k < dim; ++k)
      eig[k] = std::pow(static_cast<double>(k + 1), -expo);
  }
  return frgeo::CovarianceModel::from_eigenvalues(std::move(eig),
                                                  frgeo::Provenance::explicit_);
}

// --- perturbation sources ----------------------------------------------------
//
// {"type": "zero"}
// {"type": "diag", "values": [...]}            padded with zeros to dim
// {"type": "rank", "values": [...], "seed": n} random orthonormal directions
// {"type": "scale", "factor": c}               S = (1 - c) I, i.e. C1 = c C0

frgeo::SymMatrix parse_s_source(const json& j, std::size_t dim, const std::string& ctx) {
  if (!j.is_object()) throw config_error(ctx + ": perturbation source must be an object");
  check_keys(j, ctx, {"type"}, {"values", "seed", "factor"});
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") return frgeo::SymMatrix::zero(dim);
  if (type == "diag") {
    std::vector<double> v = get_number_list(j, ctx, "values");
    if (v.size() > dim) throw config_error(ctx + ": more diag values than dimensions");
    v.resize(dim, 0.0);
    return frgeo::SymMatrix::diag(v);
  }
  if (type == "scale") {
    const double c = get_number(j, ctx, "factor");
    std::vector<double> v(dim, 1.0 - c);
    return frgeo::SymMatrix::diag(v);
  }
  if (type == "rank") {
    const std::vector<double> values = get_number_list(j, ctx, "values");
    if (values.size() > dim) throw config_error(ctx + ": rank exceeds dimension");
    const std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 1;
    // Random Gaussian frame, Gram-Schmidt orthonormalized.
    frgeo::Philox rng(seed, 7);
    std::vector<std::vector<double>> frame;
    for (std::size_t r = 0; r < values.size(); ++r) {
      std::vector<double> v(dim);
      for (double& x : v) x = rng.normal();
      for (const auto& prev : frame) {
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) d += v[i] * prev[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= d * prev[i];
      }
      double nrm = 0.0;
      for (double x : v) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (!(nrm > 1e-12)) throw config_error(ctx + ": degenerate random frame");
      for (double& x : v) x /= nrm;
      frame.push_back(std::move(v));
    }
    frgeo::Matrix s(dim, dim);
    for (std::size_t r = 0; r < values.size(); ++r)
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k)
          s(i, k) += values[r] * frame[r][i] * frame[r][k];
    return frgeo::symmetrize(s);
  }
  throw config_error(ctx + ": unknown perturbation type '" + type + "'");
}

// --- output helpers ----------------------------------------------------------

void emit(const std::string& text, const std::optional<std::string>& out_path) {
  if (out_path.has_value()) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw config_error("cannot open output path " + *out_path);
    out << text;
  } else {
    std::cout << text;
  }
}

std::string fmt(double v) { return frgeo::format_double(v); }

// --- subcommands --------------------------------------------------------------

int cmd_distance(const json& cfg, const std::optional<std::string>& out_path) {
  check_keys(cfg, "distance", {"pairs"}, {"gamma", "out"});
  const double gamma = cfg.contains("gamma") ? get_number(cfg, "distance", "gamma") : 0.0;
  if (gamma < 0.0) throw config_error("distance: gamma must be nonnegative");
  std::ostringstream os;
  os << "pair_id,d_fisher_rao,d_aihs,gamma\n";
  if (!cfg.at("pairs").is_array()) throw config_error("distance: 'pairs' must be an array");
  for (const auto& pair : cfg.at("pairs")) {
    check_keys(pair, "distance.pairs[]", {"id", "a", "b"}, {});
    const std::string id = pair.at("id").get<std::string>();
    const frgeo::SpdMatrix a = parse_cov_source(pair.at("a"), "distance.a").matrix();
    const frgeo::SpdMatrix b = parse_cov_source(pair.at("b"), "distance.b").matrix();
    const double d_fr = frgeo::fisher_rao_distance(a, b);
    os << id << ',' << fmt(d_fr) << ',';
    if (gamma > 0.0) {
      const double d_ai =
          frgeo::daihs_distance({a.sym(), gamma}, {b.sym(), gamma});
      os << fmt(d_ai);
    }
    os << ',' << fmt(gamma) << '\n';
  }
  emit(os.str(), out_path);
  return 0;
}

int cmd_geodesic(const json& cfg, const std::optional<std::string>& out_path) {
  check_keys(cfg, "geodesic", {"a", "b", "t_values"}, {"out"});
  const frgeo::SpdMatrix a = parse_cov_source(cfg.at("a"), "geodesic.a").matrix();
  const frgeo::SpdMatrix b = parse_cov_source(cfg.at("b"), "geodesic.b").matrix();
  const std::vector<double> ts = get_number_list(cfg, "geodesic", "t_values");
  const frgeo::GeodesicPath path(a, b);
  std::ostringstream os;
  // Row layout: t, extrapolated flag, then the row-major matrix entries.
  for (double t : ts) {
    const frgeo::SymMatrix g = path.point(t);
    os << fmt(t) << ',' << ((t < 0.0 || t > 1.0) ? 1 : 0);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) os << ',' << fmt(g(i, j));
    os << '\n';
  }
  emit(os.str(), out_path);
  return 0;
}

int cmd_equivalence(const json& cfg, const std::optional<std::string>& out_path) {
  check_keys(cfg, "equivalence", {"a", "b"},
             {"mean_a", "mean_b", "sweep_dims", "slope_threshold", "out"});
  frgeo::CovarianceModel ca = parse_cov_source(cfg.at("a"), "equivalence.a");
  frgeo::CovarianceModel cb = parse_cov_source(cfg.at("b"), "equivalence.b");
  std::vector<double> ma(ca.dim(), 0.0), mb(cb.dim(), 0.0);
  if (cfg.contains("mean_a")) ma = get_number_list(cfg, "equivalence", "mean_a");
  if (cfg.contains("mean_b")) mb = get_number_list(cfg, "equivalence", "mean_b");
  std::vector<std::size_t> sweep;
  if (cfg.contains("sweep_dims"))
    for (const auto& v : cfg.at("sweep_dims")) sweep.push_back(v.get<std::size_t>());
  frgeo::EquivalenceOptions opts;
  if (cfg.contains("slope_threshold"))
    opts.slope_threshold = get_number(cfg, "equivalence", "slope_threshold");

  const frgeo::GaussianMeasure mu0(std::move(ma), std::move(ca));
  const frgeo::GaussianMeasure mu1(std::move(mb), std::move(cb));
  const frgeo::EquivalenceReport rep = frgeo::equivalence_report(mu0, mu1, sweep, opts);

  std::ostringstream os;
  os << "{\n";
  os << "  \"verdict\": \"" << frgeo::verdict_name(rep.verdict) << "\",\n";
  os << "  \"s\": ";
  if (rep.s.has_value()) {
    os << "[";
    const frgeo::SymMatrix& sm = rep.s->s();
    for (std::size_t i = 0; i < sm.dim(); ++i) {
      if (i) os << ", ";
      os << "[";
      for (std::size_t j = 0; j < sm.dim(); ++j) {
        if (j) os << ", ";
        os << fmt(sm(i, j));
      }
      os << "]";
    }
    os << "]";
  } else {
    os << "null";
  }
  os << ",\n";
  os << "  \"hs_norm_s\": " << (rep.s.has_value() ? fmt(rep.hs_norm_s) : "null") << ",\n";
  os << "  \"gap\": " << fmt(rep.gap) << ",\n";
  os << "  \"mean_coeff_tail\": " << fmt(rep.mean_coeff_tail) << ",\n";
  os << "  \"sweep_slope\": " << fmt(rep.sweep_slope) << ",\n";
  os << "  \"dim_sweep\": [";
  for (std::size_t i = 0; i < rep.dim_sweep.size(); ++i) {
    if (i) os << ", ";
    os << "[" << rep.dim_sweep[i].first << ", " << fmt(rep.dim_sweep[i].second) << "]";
  }
  os << "],\n";
  os << "  \"mean_tail_sweep\": [";
  for (std::size_t i = 0; i < rep.mean_tail_sweep.size(); ++i) {
    if (i) os << ", ";
    os << "[" << rep.mean_tail_sweep[i].first << ", "
       << fmt(rep.mean_tail_sweep[i].second) << "]";
  }
  os << "]\n}\n";
  emit(os.str(), out_path);
  return 0;
}

int cmd_converge_gamma(const json& cfg, const std::optional<std::string>& out_path) {
  check_keys(cfg, "converge-gamma", {"a", "s", "gammas"}, {"out"});
  const frgeo::CovarianceModel model = parse_cov_source(cfg.at("a"), "converge-gamma.a");
  const frgeo::SymMatrix s =
      parse_s_source(cfg.at("s"), model.dim(), "converge-gamma.s");
  const frgeo::PerturbationS pert(s);

  const frgeo::SpdMatrix a = model.matrix();
  const frgeo::SymMatrix root = frgeo::matfun(a, frgeo::MatFun::sqrt);
  frgeo::Matrix inner = frgeo::Matrix::identity(model.dim());
  inner -= pert.s().matrix();
  const frgeo::SpdMatrix b(
      frgeo::symmetrize(root.matrix() * inner * root.matrix()));

  const auto rows = frgeo::gamma_sweep(a, b, get_number_list(cfg, "converge-gamma", "gammas"));
  std::ostringstream os;
  frgeo::write_gamma_sweep_csv(rows, os);
  emit(os.str(), out_path);
  return 0;
}

int cmd_mc_verify(const json& cfg, const std::optional<std::string>& out_path,
                  std::optional<std::uint64_t> seed_override) {
  check_keys(cfg, "mc-verify", {"n_samples", "seed", "checks"},
             {"model", "dim", "s", "directions_seed", "out"});
  frgeo::McConfig mc{};
  mc.n_samples = cfg.at("n_samples").get<std::size_t>();
  mc.seed = seed_override.value_or(cfg.at("seed").get<std::uint64_t>());

  frgeo::CovarianceModel model = [&] {
    if (cfg.contains("model")) return parse_cov_source(cfg.at("model"), "mc-verify.model");
    if (!cfg.contains("dim"))
      throw config_error("mc-verify: give 'model' or 'dim'");
    const std::size_t dim = cfg.at("dim").get<std::size_t>();
    std::vector<double> eig(dim);
    for (std::size_t k = 0; k < dim; ++k)
      eig[k] = std::pow(static_cast<double>(k + 1), -2.0);
    return frgeo::CovarianceModel::from_eigenvalues(std::move(eig),
                                                    frgeo::Provenance::explicit_);
  }();
  const std::size_t dim = model.dim();

  const frgeo::SymMatrix s_mat =
      cfg.contains("s") ? parse_s_source(cfg.at("s"), dim, "mc-verify.s")
                        : frgeo::SymMatrix::zero(dim);
  const frgeo::PerturbationS s(s_mat);

  // Deterministic test directions from their own stream.
  const std::uint64_t dir_seed =
      cfg.contains("directions_seed") ? cfg.at("directions_seed").get<std::uint64_t>() : 11;
  frgeo::Philox dir_rng(dir_seed, 3);
  auto random_sym = [&]() {
    frgeo::Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = dir_rng.normal();
    return frgeo::symmetrize(m);
  };
  const frgeo::SymMatrix v1 = random_sym();
  const frgeo::SymMatrix v2 = random_sym();
  std::vector<double> z1(dim), z2(dim);
  for (double& v : z1) v = dir_rng.normal();
  for (double& v : z2) v = dir_rng.normal();

  std::ostringstream os;
  os << "[\n";
  bool first = true;
  for (const auto& item : cfg.at("checks")) {
    const std::string name = item.get<std::string>();
    frgeo::McEstimate est;
    if (name == "fisher_metric") est = frgeo::mc_fisher_metric(model, s, v1, v2, mc);
    else if (name == "lognorm_mu") est = frgeo::mc_lognorm_identity(model, s, mc);
    else if (name == "lognorm_mu0") est = frgeo::mc_lognorm_identity_mu0(model, s, mc);
    else if (name == "quadratic") est = frgeo::mc_quadratic_identity(model, v1, v2, mc);
    else if (name == "white_noise_isometry")
      est = frgeo::mc_white_noise_isometry(model, z1, z2, mc);
    else if (name == "score_mean") est = frgeo::mc_score_mean(model, s, v1, mc);
    else throw config_error("mc-verify: unknown check '" + name + "'");
    if (!first) os << ",\n";
    first = false;
    os << "  " << frgeo::mc_report_json(name, est, mc.seed);
  }
  os << "\n]\n";
  emit(os.str(), out_path);
  return 0;
}

int cmd_curvature(const json& cfg, const std::optional<std::string>& out_path,
                  std::optional<std::uint64_t> seed_override) {
  check_keys(cfg, "curvature", {"p", "n_planes", "seed"},
             {"b", "fd_step", "t_samples", "out"});
  const frgeo::SpdMatrix p = parse_cov_source(cfg.at("p"), "curvature.p").matrix();
  const std::size_t n_planes = cfg.at("n_planes").get<std::size_t>();
  const std::uint64_t seed = seed_override.value_or(cfg.at("seed").get<std::uint64_t>());
  const double fd_step =
      cfg.contains("fd_step") ? get_number(cfg, "curvature", "fd_step") : 1e-4;

  frgeo::Philox rng(seed, 5);
  const std::size_t dim = p.dim();
  auto random_sym = [&]() {
    frgeo::Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = rng.normal();
    return frgeo::symmetrize(m);
  };

  std::vector<double> sectional;
  double max_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_planes; ++i) {
    const double k = frgeo::sectional_curvature(p, random_sym(), random_sym());
    sectional.push_back(k);
    max_value = std::max(max_value, k);
  }

  // First-Bianchi residual over one random triple.
  const frgeo::SymMatrix x = random_sym();
  const frgeo::SymMatrix y = random_sym();
  const frgeo::SymMatrix z = random_sym();
  frgeo::Matrix bianchi = frgeo::curvature_tensor(p, x, y, z).matrix();
  bianchi += frgeo::curvature_tensor(p, y, z, x).matrix();
  bianchi += frgeo::curvature_tensor(p, z, x, y).matrix();
  const double bianchi_residual = bianchi.frobenius_norm();

  double ode_residual = 0.0;
  if (cfg.contains("b")) {
    const frgeo::SpdMatrix b = parse_cov_source(cfg.at("b"), "curvature.b").matrix();
    std::vector<double> ts = cfg.contains("t_samples")
                                 ? get_number_list(cfg, "curvature", "t_samples")
                                 : std::vector<double>{0.25, 0.5, 0.75};
    ode_residual = frgeo::geodesic_ode_residual(p, b, ts, fd_step);
  }

  std::ostringstream os;
  os << "{\n  \"max_value\": " << fmt(max_value)
     << ",\n  \"bianchi_residual\": " << fmt(bianchi_residual)
     << ",\n  \"ode_residual\": " << fmt(ode_residual) << ",\n  \"sectional_samples\": [";
  for (std::size_t i = 0; i < sectional.size(); ++i) {
    if (i) os << ", ";
    os << fmt(sectional[i]);
  }
  os << "]\n}\n";
  emit(os.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fisher-Rao geometry of Gaussian covariance truncations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed_value = 0;
  bool seed_given = false;

  std::vector<std::string> names = {"distance",       "geodesic", "equivalence",
                                    "converge-gamma", "mc-verify", "curvature"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", out_path, "output path (default: config 'out' or stdout)");
    sub->add_option("--seed", seed_value, "seed override")
        ->each([&](const std::string&) { seed_given = true; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const json cfg = load_config(config_path);
    std::optional<std::string> out;
    if (!out_path.empty()) out = out_path;
    else if (cfg.contains("out")) out = cfg.at("out").get<std::string>();
    std::optional<std::uint64_t> seed;
    if (seed_given) seed = seed_value;

    if (name == "distance") return cmd_distance(cfg, out);
    if (name == "geodesic") return cmd_geodesic(cfg, out);
    if (name == "equivalence") return cmd_equivalence(cfg, out);
    if (name == "converge-gamma") return cmd_converge_gamma(cfg, out);
    if (name == "mc-verify") return cmd_mc_verify(cfg, out, seed);
    if (name == "curvature") return cmd_curvature(cfg, out, seed);
    std::cerr << "unknown subcommand " << name << "\n";
    return 1;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const frgeo::parse_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
