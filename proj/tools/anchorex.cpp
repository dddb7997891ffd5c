#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "anchorex/conditioning.hpp"
#include "anchorex/errors.hpp"
#include "anchorex/experiments.hpp"
#include "anchorex/feasibility.hpp"
#include "anchorex/fitting.hpp"
#include "anchorex/io.hpp"
#include "anchorex/probabilistic.hpp"

namespace {

using anchorex::Json;

void emit(const Json& report, const std::string& out_dir,
          const std::string& name) {
  if (out_dir.empty()) {
    std::cout << report.dump(2) << std::endl;
    return;
  }
  std::filesystem::create_directories(out_dir);
  anchorex::write_json(out_dir + "/" + name, report);
}

anchorex::SampleSet samples_from_csv(const std::string& path) {
  const anchorex::CsvTable table = anchorex::read_csv(path);
  if (table.values.cols() < 2)
    throw anchorex::ValidationError(path + ": need at least two columns (x..., value)");
  anchorex::SampleSet s;
  s.points = table.values.leftCols(table.values.cols() - 1);
  s.values = table.values.col(table.values.cols() - 1);
  return s;
}

Json fit_to_json(const anchorex::FitResult& fit) {
  Json j;
  j["coeffs"] = anchorex::to_json(fit.coeffs);
  j["method"] = fit.method;
  j["alpha"] = fit.alpha;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["e_omega_empirical"] = fit.e_omega_empirical;
  return j;
}

Json anchor_to_json(const anchorex::Anchor& a) {
  Json j;
  j["coeffs"] = anchorex::to_json(a.coeffs);
  j["delta"] = a.delta;
  j["provenance"] = Json{{"kind", a.provenance}};
  return j;
}

anchorex::Anchor anchor_from_json(const Json& j) {
  anchorex::Anchor a;
  a.coeffs = anchorex::vector_from_json(j.at("coeffs"));
  a.delta = j.at("delta").get<double>();
  if (j.contains("provenance")) {
    const Json& p = j.at("provenance");
    a.provenance = p.is_string() ? p.get<std::string>()
                                 : p.value("kind", std::string{});
  }
  return a;
}

int run_certify(const Json& config, const std::string& out_dir) {
  const auto basis = anchorex::parse_basis(config.at("basis"));
  const anchorex::Region omega = anchorex::parse_region(config.at("omega"));
  const anchorex::Region xi = anchorex::parse_region(config.at("xi"));
  const anchorex::CertificationReport cert = anchorex::certify(*basis, omega, xi);
  Json report;
  report["kappa"] = cert.kappa;
  report["kappa_kind"] = cert.kappa_kind;
  report["kappa_spec"] = cert.kappa_spec;
  if (cert.kappa_r)
    report["kappa_r"] = *cert.kappa_r;
  else
    report["kappa_r"] = nullptr;
  report["condition_flag_r"] = cert.condition_flag_r;
  report["m_hat_xi"] = cert.m_hat_xi;
  report["m_omega"] = cert.m_omega;
  report["m_xi_max"] = cert.m_xi_max;
  report["spectrum"] = anchorex::to_json(cert.spectrum);
  report["top_direction"] = anchorex::to_json(cert.top_direction);
  emit(report, out_dir, "certify.json");
  return 0;
}

int run_fit(const Json& config, const std::string& out_dir) {
  const auto basis = anchorex::parse_basis(config.at("basis"));
  const anchorex::SampleSet samples =
      samples_from_csv(config.at("csv").get<std::string>());
  const Eigen::MatrixXd x = anchorex::design_matrix(*basis, samples.points);
  const std::string method = config.value("method", std::string("ls"));
  const double alpha = config.value("alpha", 0.0);
  anchorex::FitResult fit;
  if (method == "ls")
    fit = anchorex::fit_ls(x, samples.values);
  else if (method == "ridge")
    fit = anchorex::fit_ridge(x, samples.values, alpha);
  else if (method == "lasso")
    fit = anchorex::fit_lasso(x, samples.values, alpha,
                              config.value("lasso_tol", 1e-8),
                              config.value("lasso_max_iter", 100000));
  else
    throw anchorex::ValidationError("unknown fit method: " + method);
  if (config.contains("omega")) {
    const anchorex::Region omega = anchorex::parse_region(config.at("omega"));
    fit.e_omega_empirical = anchorex::empirical_e_omega(
        x, samples.values, fit.coeffs, omega.measure());
  }
  emit(fit_to_json(fit), out_dir, "fit.json");
  return 0;
}

int run_project(const Json& config, const std::string& out_dir) {
  const auto basis = anchorex::parse_basis(config.at("basis"));
  const anchorex::Region xi = anchorex::parse_region(config.at("xi"));
  const Json fit = anchorex::load_json(config.at("fit").get<std::string>());
  const Json anchors = anchorex::load_json(config.at("anchors").get<std::string>());
  anchorex::FeasibleSet fs;
  fs.xi_metric =
      anchorex::gram_matrix(*basis, anchorex::build_grid(xi));
  for (const auto& a : anchors.at("anchors")) fs.anchors.push_back(anchor_from_json(a));
  const Eigen::VectorXd g = anchorex::vector_from_json(fit.at("coeffs"));
  const anchorex::ProjectionResult proj = anchorex::project_intersection(
      g, fs, config.value("tol", 1e-10), config.value("max_iter", 10000));
  Json report;
  report["h"] = anchorex::to_json(proj.h);
  report["delta_dist"] = proj.delta_dist;
  if (proj.improvement_lower) report["improvement_lower"] = *proj.improvement_lower;
  if (proj.improvement_upper) report["improvement_upper"] = *proj.improvement_upper;
  report["iterations"] = proj.iterations;
  report["converged"] = proj.converged;
  report["member"] = anchorex::membership(proj.h, fs);
  emit(report, out_dir, "projection.json");
  return 0;
}

int run_anchors(const Json& config, const std::string& out_dir,
                std::optional<std::uint64_t> seed_override) {
  const auto basis = anchorex::parse_basis(config.at("basis"));
  const anchorex::Region omega = anchorex::parse_region(config.at("omega"));
  const anchorex::Region xi = anchorex::parse_region(config.at("xi"));
  anchorex::SampleSet samples =
      samples_from_csv(config.at("csv").get<std::string>());
  const std::string kind = config.value("certificate", std::string("spec"));
  const auto certificate = kind == "inner"
                               ? anchorex::CertificateKind::inner
                               : anchorex::CertificateKind::spec;
  if (kind != "spec" && kind != "inner")
    throw anchorex::ValidationError("certificate must be \"spec\" or \"inner\"");
  const std::uint64_t seed =
      seed_override.value_or(config.value("seed", std::uint64_t{0}));
  const auto anchors = anchorex::create_anchors(
      *basis, omega, xi, samples, config.at("subset_size").get<int>(),
      config.at("count").get<int>(), certificate, seed);
  Json list = Json::array();
  for (const auto& a : anchors) list.push_back(anchor_to_json(a));
  Json report;
  report["anchors"] = list;
  report["seed"] = seed;
  emit(report, out_dir, "anchors.json");
  return 0;
}

int run_prob_radius(const Json& config, const std::string& out_dir,
                    std::optional<std::uint64_t> seed_override) {
  const auto basis = anchorex::parse_basis(config.at("basis"));
  const anchorex::Region omega = anchorex::parse_region(config.at("omega"));
  const anchorex::Region xi = anchorex::parse_region(config.at("xi"));
  const anchorex::OrthonormalBasis onb =
      anchorex::orthonormalize_on(*basis, omega, xi);
  const std::uint64_t seed =
      seed_override.value_or(config.value("seed", std::uint64_t{0}));
  const anchorex::ProbRadiusReport prr =
      anchorex::kappa_rho(onb, config.at("rho").get<double>(),
                          config.value("n_samples", 10000L), seed);
  Json report;
  report["rho"] = prr.rho;
  report["kappa_rho_beta"] = prr.kappa_rho_beta;
  report["kappa_rho_mc"] = prr.kappa_rho_mc;
  report["lambda_top"] = anchorex::to_json(prr.lambda_top);
  report["spectral_gap_ratio"] = prr.spectral_gap_ratio;
  report["n_samples"] = prr.n_samples;
  report["seed"] = prr.seed;
  emit(report, out_dir, "prob_radius.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anchor-based function extrapolation workbench"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  std::string experiment_name;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", config_path, "JSON config file");
    if (needs_config) opt->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed_override, "override the config seed");
  };

  add_common(app.add_subcommand("certify", "condition numbers for a basis/region pair"));
  add_common(app.add_subcommand("fit", "fit coefficients to CSV samples"));
  add_common(app.add_subcommand("project", "project a fit onto anchor balls"));
  add_common(app.add_subcommand("anchors", "create certified random-subset anchors"));
  add_common(app.add_subcommand("prob-radius", "probabilistic extrapolation radius"));
  auto* exp_cmd = app.add_subcommand("experiment", "run a named study end to end");
  exp_cmd->add_option("name", experiment_name, "experiment name")->required();
  add_common(exp_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : anchorex::kExitValidation;
  }

  try {
    Json config;
    if (!config_path.empty()) config = anchorex::load_json(config_path);
    if (seed_override) config["seed"] = *seed_override;

    if (app.got_subcommand("certify")) return run_certify(config, out_dir);
    if (app.got_subcommand("fit")) return run_fit(config, out_dir);
    if (app.got_subcommand("project")) return run_project(config, out_dir);
    if (app.got_subcommand("anchors"))
      return run_anchors(config, out_dir, seed_override);
    if (app.got_subcommand("prob-radius"))
      return run_prob_radius(config, out_dir, seed_override);
    anchorex::run_experiment(experiment_name, config, out_dir.empty() ? "." : out_dir);
    return 0;
  } catch (const anchorex::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << std::endl;
    return anchorex::kExitValidation;
  } catch (const anchorex::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << std::endl;
    return anchorex::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return anchorex::kExitValidation;
  }
}
