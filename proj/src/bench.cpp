// Copyright 2026 The arms-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arms/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "arms/msbound.hpp"
#include "arms/oracle.hpp"

namespace arms {

namespace {

using Cell = std::variant<long long, double, std::string>;

std::string format_cell(const Cell& cell) {
  if (std::holds_alternative<long long>(cell)) {
    return std::to_string(std::get<long long>(cell));
  }
  if (std::holds_alternative<double>(cell)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(cell));
    return buf;
  }
  return std::get<std::string>(cell);
}

/// Column-schema'd table collected by every experiment, serialized to CSV
/// or JSON with 17-significant-digit floats either way.
class Table {
 public:
  explicit Table(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) {
      throw std::logic_error("Table: row width mismatch");
    }
    rows_.push_back(std::move(row));
  }

  void write(const std::string& path, const std::string& format) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& row : rows_) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < header_.size(); ++c) {
          // Floats go through the same 17-digit formatting as CSV so the
          // two formats carry identical values.
          if (std::holds_alternative<double>(row[c])) {
            obj[header_[c]] = format_cell(row[c]);
          } else if (std::holds_alternative<long long>(row[c])) {
            obj[header_[c]] = std::get<long long>(row[c]);
          } else {
            obj[header_[c]] = std::get<std::string>(row[c]);
          }
        }
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << "\n";
    } else {
      for (std::size_t c = 0; c < header_.size(); ++c) {
        out << (c ? "," : "") << header_[c];
      }
      out << "\n";
      for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << (c ? "," : "") << format_cell(row[c]);
        }
        out << "\n";
      }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

double logit(double p) { return std::log(p / (1.0 - p)); }

FunctionOracle toy_objective() {
  return FunctionOracle([](const BitVec& b) {
    double x = b[0];
    return (x - 0.499) * (x - 0.499);
  });
}

ToyLatentModel builtin_model() {
  ToyLatentModel model;
  model.prior_logits = {0.2, -0.3};
  model.posterior_logits = {0.5, -0.1};
  model.likelihood = {1.0, 2.0, 0.5, 1.5};
  return model;
}

std::uint64_t cell_key(std::size_t e, std::size_t n_idx) {
  return (static_cast<std::uint64_t>(e) << 32) | n_idx;
}

int run_toy(const BenchConfig& cfg) {
  Table table({"step", "sigma_phi", "estimator", "n", "grad_variance",
               "grad_mean"});
  RandomStream master(cfg.seed);
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      const int n = cfg.n_list[ni];
      EstimatorConfig est = EstimatorConfig::parse(cfg.estimators[e], n);
      RandomStream cell = master.split(cell_key(e, ni));
      FunctionOracle f = toy_objective();
      Vec phi = {logit(0.1)};
      for (int step = 0; step < cfg.steps; ++step) {
        double sp = sigmoid(phi[0]);
        if (sp >= 0.9) break;
        if (step % cfg.probe_every == 0) {
          if (est.kind == EstimatorKind::Exact) {
            Vec g = exact_gradient(phi, f);
            table.add_row({static_cast<long long>(step), sp, est.name(),
                           static_cast<long long>(n), 0.0, g[0]});
          } else {
            VarianceReport report = estimator_variance(
                est, phi, f, cfg.mc_replicates,
                cell.split(2ull * step));
            table.add_row({static_cast<long long>(step), sp, est.name(),
                           static_cast<long long>(n),
                           report.per_dim_variance[0], report.mean[0]});
          }
        }
        RandomStream step_rng = cell.split(2ull * step + 1);
        GradientEstimate g = estimate(est, phi, f, step_rng);
        phi[0] += cfg.learning_rate * g.grad[0];
      }
    }
  }
  table.write(cfg.output_path, cfg.format);
  return 0;
}

int run_corr_curves(const BenchConfig& cfg) {
  Table table({"p", "n", "dirichlet_rho", "gaussian_rho", "independent",
               "dirichlet_empirical", "dirichlet_se", "gaussian_empirical",
               "gaussian_se"});
  RandomStream master(cfg.seed);
  const long draws = std::max<long>(10000, cfg.mc_replicates);
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    for (int pi = 1; pi <= 99; ++pi) {
      double p = pi / 100.0;
      double dir_rho =
          dirichlet_bernoulli_corr(p, n, dirichlet_branch_select(p));
      double gau_rho = gaussian_bernoulli_corr(p, n);
      RandomStream dir_rng = master.split(cell_key(ni, 2 * pi));
      RandomStream gau_rng = master.split(cell_key(ni, 2 * pi + 1));
      CorrelationEstimate dir_emp = empirical_correlation(
          {CopulaKind::Dirichlet, n}, p, draws, dir_rng);
      CorrelationEstimate gau_emp = empirical_correlation(
          {CopulaKind::Gaussian, n}, p, draws, gau_rng);
      table.add_row({p, static_cast<long long>(n), dir_rho, gau_rho, 0.0,
                     dir_emp.rho, dir_emp.std_error, gau_emp.rho,
                     gau_emp.std_error});
    }
  }
  table.write(cfg.output_path, cfg.format);
  return 0;
}

int run_variance_grid(const BenchConfig& cfg) {
  Table table({"sigma_phi", "estimator", "n", "grad_variance", "grad_mean"});
  RandomStream master(cfg.seed);
  FunctionOracle f = toy_objective();
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      const int n = cfg.n_list[ni];
      EstimatorConfig est = EstimatorConfig::parse(cfg.estimators[e], n);
      RandomStream cell = master.split(cell_key(e, ni));
      for (int si = 10; si <= 90; si += 2) {
        double sp = si / 100.0;
        Vec phi = {logit(sp)};
        if (est.kind == EstimatorKind::Exact) {
          Vec g = exact_gradient(phi, f);
          table.add_row({sp, est.name(), static_cast<long long>(n), 0.0,
                         g[0]});
          continue;
        }
        VarianceReport report = estimator_variance(
            est, phi, f, cfg.mc_replicates, cell.split(si));
        table.add_row({sp, est.name(), static_cast<long long>(n),
                       report.per_dim_variance[0], report.mean[0]});
      }
    }
  }
  table.write(cfg.output_path, cfg.format);
  return 0;
}

struct Instance {
  Vec logits;
  Vec ftable;
};

Instance random_instance(int m, RandomStream& rng) {
  Instance inst;
  inst.logits.resize(m);
  for (auto& x : inst.logits) x = -2.0 + 4.0 * rng.uniform();
  inst.ftable.resize(std::size_t{1} << m);
  for (auto& x : inst.ftable) x = -1.0 + 2.0 * rng.uniform();
  return inst;
}

FunctionOracle table_objective(const Vec& ftable) {
  return FunctionOracle([&ftable](const BitVec& b) {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < b.size(); ++d) {
      if (b[d]) idx |= std::size_t{1} << d;
    }
    return ftable[idx];
  });
}

int run_unbiasedness(const BenchConfig& cfg) {
  Table table({"estimator", "n", "m", "mode", "max_deviation", "se_multiple",
               "f_evals", "status"});
  RandomStream master(cfg.seed);
  const long replicates = std::max<long>(10000, cfg.mc_replicates);
  bool all_pass = true;
  int case_idx = 0;
  for (const std::string& name : cfg.estimators) {
    for (int n : cfg.n_list) {
      for (int m = 1; m <= 3; ++m) {
        RandomStream rng = master.split(case_idx++);
        Instance inst = random_instance(m, rng);
        FunctionOracle f = table_objective(inst.ftable);
        Vec truth = exact_gradient(inst.logits, f);
        EstimatorConfig est = EstimatorConfig::parse(name, n);
        bool exact_mode = est.kind == EstimatorKind::Reinforce ||
                          est.kind == EstimatorKind::Loorf ||
                          est.kind == EstimatorKind::LoorfBiased ||
                          est.kind == EstimatorKind::ArmsDirichlet ||
                          est.kind == EstimatorKind::Exact;
        double max_dev = 0.0;
        double se_mult = 0.0;
        std::uint64_t f_evals = 0;
        bool pass;
        if (exact_mode) {
          f.reset_evals();
          Vec expectation = exact_estimator_expectation(est, inst.logits, f);
          for (int d = 0; d < m; ++d) {
            max_dev = std::max(max_dev, std::fabs(expectation[d] - truth[d]));
          }
          f_evals = f.evals();
          pass = max_dev <= 1e-9;
        } else {
          f.reset_evals();
          VarianceReport report =
              estimator_variance(est, inst.logits, f, replicates, rng);
          for (int d = 0; d < m; ++d) {
            double dev = std::fabs(report.mean[d] - truth[d]);
            max_dev = std::max(max_dev, dev);
            if (report.std_error_of_mean[d] > 0.0) {
              se_mult = std::max(se_mult, dev / report.std_error_of_mean[d]);
            }
          }
          f_evals = f.evals();
          pass = se_mult <= 4.0;
        }
        if (est.kind == EstimatorKind::LoorfBiased) {
          // Negative control: it is expected to be biased; "pass" means the
          // harness detected the bias.
          pass = !pass;
        }
        all_pass = all_pass && pass;
        table.add_row({name, static_cast<long long>(n),
                       static_cast<long long>(m),
                       std::string(exact_mode ? "exact" : "statistical"),
                       max_dev, se_mult,
                       static_cast<long long>(f_evals),
                       std::string(pass ? "pass" : "fail")});
      }
    }
  }
  table.write(cfg.output_path, cfg.format);
  return all_pass ? 0 : 1;
}

int run_msb_compare(const BenchConfig& cfg) {
  ToyLatentModel model;
  if (cfg.model_path.empty()) {
    model = builtin_model();
  } else {
    std::ifstream in(cfg.model_path);
    if (!in) throw std::runtime_error("cannot open model: " + cfg.model_path);
    std::stringstream ss;
    ss << in.rdbuf();
    model = ToyLatentModel::from_json(ss.str());
  }
  const double ln_px = enumerated_log_evidence(model);
  Table table({"estimator", "n", "replicates", "f_evals_per_estimate",
               "bound_mean", "grad_mean", "grad_variance", "ln_px"});
  RandomStream master(cfg.seed);
  const int m = model.dims();
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    // Matched budget of 2n ratio evaluations per estimate: ARMS-MSB with n
    // pairs, VIMCO as the average of two independent n-sample estimates.
    for (int which = 0; which < 2; ++which) {
      RandomStream cell = master.split(cell_key(which, ni));
      Vec mean(m, 0.0), m2(m, 0.0);
      double bound_sum = 0.0;
      std::uint64_t evals = 0;
      for (long r = 0; r < cfg.mc_replicates; ++r) {
        RandomStream rng = cell.split(r);
        BoundEstimate est;
        if (which == 0) {
          est = arms_msb_grad(model, n, {CopulaKind::Dirichlet, n}, rng);
        } else {
          BoundEstimate a = vimco_grad(model, n, rng);
          RandomStream rng2 = cell.split(r + 0x80000000ull);
          BoundEstimate b = vimco_grad(model, n, rng2);
          est.value = 0.5 * (a.value + b.value);
          est.grad_phi.resize(m);
          for (int d = 0; d < m; ++d) {
            est.grad_phi[d] = 0.5 * (a.grad_phi[d] + b.grad_phi[d]);
          }
          est.f_evals = a.f_evals + b.f_evals;
        }
        evals = est.f_evals;
        bound_sum += est.value;
        for (int d = 0; d < m; ++d) {
          double delta = est.grad_phi[d] - mean[d];
          mean[d] += delta / (r + 1);
          m2[d] += delta * (est.grad_phi[d] - mean[d]);
        }
      }
      double grad_mean = 0.0, grad_var = 0.0;
      for (int d = 0; d < m; ++d) {
        grad_mean += mean[d] / m;
        grad_var += m2[d] / (cfg.mc_replicates - 1) / m;
      }
      table.add_row({std::string(which == 0 ? "arms-msb" : "vimco-2x"),
                     static_cast<long long>(n),
                     static_cast<long long>(cfg.mc_replicates),
                     static_cast<long long>(evals),
                     bound_sum / cfg.mc_replicates, grad_mean, grad_var,
                     ln_px});
    }
  }
  table.write(cfg.output_path, cfg.format);
  return 0;
}

}  // namespace

BenchConfig BenchConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BenchConfig cfg;
  cfg.experiment = j.at("experiment").get<std::string>();
  if (j.contains("estimators")) {
    cfg.estimators = j["estimators"].get<std::vector<std::string>>();
  }
  if (j.contains("n_list")) cfg.n_list = j["n_list"].get<std::vector<int>>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("steps")) cfg.steps = j["steps"].get<int>();
  if (j.contains("learning_rate")) {
    cfg.learning_rate = j["learning_rate"].get<double>();
  }
  if (j.contains("mc_replicates")) {
    cfg.mc_replicates = j["mc_replicates"].get<long>();
  }
  if (j.contains("probe_every")) cfg.probe_every = j["probe_every"].get<int>();
  if (j.contains("output_path")) {
    cfg.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("model_path")) {
    cfg.model_path = j["model_path"].get<std::string>();
  }
  return cfg;
}

void BenchConfig::validate() const {
  if (experiment != "toy" && experiment != "corr-curves" &&
      experiment != "variance-grid" && experiment != "unbiasedness" &&
      experiment != "msb-compare") {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (mc_replicates < 2) {
    throw std::invalid_argument("mc_replicates must be >= 2");
  }
  if (probe_every < 1) throw std::invalid_argument("probe_every must be >= 1");
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  if (output_path.empty()) throw std::invalid_argument("output_path required");
  for (int n : n_list) {
    if (n < 2) throw std::invalid_argument("n_list entries must be >= 2");
  }
}

int run_bench(const BenchConfig& config) {
  BenchConfig cfg = config;
  if (cfg.estimators.empty()) {
    cfg.estimators = {"loorf", "arms-dirichlet", "arms-gaussian", "disarm",
                      "arm"};
  }
  if (cfg.n_list.empty()) {
    cfg.n_list = cfg.experiment == "corr-curves" ? std::vector<int>{5}
                                                 : std::vector<int>{4};
  }
  cfg.validate();
  if (cfg.experiment == "toy") return run_toy(cfg);
  if (cfg.experiment == "corr-curves") return run_corr_curves(cfg);
  if (cfg.experiment == "variance-grid") return run_variance_grid(cfg);
  if (cfg.experiment == "unbiasedness") return run_unbiasedness(cfg);
  return run_msb_compare(cfg);
}

}  // namespace arms
