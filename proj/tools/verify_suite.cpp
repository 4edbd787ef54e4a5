#include "verify_suite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

namespace anisoflow::cli {

namespace {

struct CheckDef {
  std::string name;
  bool has_control = false;  // spread-type checks get a +0.5 exponent control
  std::function<std::vector<ConstantReport>(const ExperimentConfig&, const CheckOptions&)> run;
};

std::vector<double> doubled(const std::vector<double>& q) {
  std::vector<double> r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = 2.0 * q[i];
  return r;
}

// mu with (1 - mu_i)/r_i = (1 - lambda_i)/q_i for r = 2q.
std::vector<double> matched_mu(const std::vector<double>& lambda) {
  std::vector<double> mu(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) mu[i] = 1.0 - 2.0 * (1.0 - lambda[i]);
  return mu;
}

std::vector<CheckDef> catalog() {
  std::vector<CheckDef> defs;
  auto part_of = [](const ExperimentConfig& cfg) {
    return DyadicPartition::build(cfg.grid());
  };

  defs.push_back({"bernstein-physical", true,
                  [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                    auto p = part_of(cfg);
                    return std::vector<ConstantReport>{
                        check_bernstein_physical(p, cfg.space.q, cfg.space.lambda, o)};
                  }});
  defs.push_back({"bernstein-fourier-l1", true,
                  [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                    auto p = part_of(cfg);
                    return std::vector<ConstantReport>{
                        check_bernstein_fourier_l1(p, cfg.space.q, cfg.space.lambda, o)};
                  }});
  defs.push_back({"bernstein-fourier-morrey", true,
                  [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                    auto p = part_of(cfg);
                    return std::vector<ConstantReport>{check_bernstein_fourier_morrey(
                        p, cfg.space.q, cfg.space.lambda, doubled(cfg.space.q),
                        cfg.space.lambda, o)};
                  }});

  defs.push_back({"holder-lebesgue", false,
                  [](const ExperimentConfig& cfg, const CheckOptions& o) {
                    return std::vector<ConstantReport>{
                        check_holder_mixed_lebesgue(cfg.grid(), cfg.space.q, cfg.space.q, o)};
                  }});
  defs.push_back({"holder-morrey", false,
                  [](const ExperimentConfig& cfg, const CheckOptions& o) {
                    return std::vector<ConstantReport>{check_holder_mixed_morrey(
                        cfg.grid(), cfg.space.q, cfg.space.lambda, cfg.space.q,
                        cfg.space.lambda, o)};
                  }});
  defs.push_back({"young-morrey", false,
                  [](const ExperimentConfig& cfg, const CheckOptions& o) {
                    return std::vector<ConstantReport>{
                        check_young_mixed_morrey(cfg.grid(), cfg.space.q, cfg.space.lambda, o)};
                  }});

  defs.push_back({"r-mono-besov", false,
                  [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                    auto p = part_of(cfg);
                    return std::vector<ConstantReport>{check_r_monotonicity(
                        SpaceFlavor::physical_besov, p, cfg.space.q, cfg.space.lambda,
                        cfg.space.regularity, 1.0, kInf, o)};
                  }});
  defs.push_back({"r-mono-fourier", false,
                  [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                    auto p = part_of(cfg);
                    return std::vector<ConstantReport>{check_r_monotonicity(
                        SpaceFlavor::fourier_besov, p, cfg.space.q, cfg.space.lambda,
                        cfg.space.regularity, 1.0, kInf, o)};
                  }});

  auto add_embed = [&](const char* name, EmbeddingFamily family, bool paired) {
    defs.push_back({name, true,
                    [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                      auto p = DyadicPartition::build(cfg.grid());
                      EmbeddingSpec spec;
                      spec.family = family;
                      spec.q = cfg.space.q;
                      spec.lambda = cfg.space.lambda;
                      if (paired) {
                        spec.r_vec = doubled(cfg.space.q);
                        spec.mu = family == EmbeddingFamily::fourier_shift
                                      ? cfg.space.lambda
                                      : matched_mu(cfg.space.lambda);
                      }
                      spec.a = 2.0;
                      spec.reg = 0.4;
                      spec.theta = 0.5;
                      return std::vector<ConstantReport>{check_embeddings(spec, p, o)};
                    }});
  };
  add_embed("embed-besov-parameter", EmbeddingFamily::besov_parameter, true);
  add_embed("embed-besov-lebesgue", EmbeddingFamily::besov_to_lebesgue, false);
  add_embed("embed-besov-theta", EmbeddingFamily::besov_theta, false);
  add_embed("embed-fourier-parameter", EmbeddingFamily::fourier_parameter, true);
  add_embed("embed-fourier-shift", EmbeddingFamily::fourier_shift, true);
  add_embed("embed-fourier-fb1", EmbeddingFamily::fourier_to_fb1, false);
  add_embed("embed-fb1-besov-inf", EmbeddingFamily::fb1_to_besov_inf, false);
  add_embed("embed-fourier-theta", EmbeddingFamily::fourier_theta, false);

  defs.push_back({"sandwich", true,
                  [](const ExperimentConfig& cfg, const CheckOptions& o) {
                    const std::vector<int> sizes{16, 32, 64};
                    return check_sandwich(cfg.space.q, cfg.space.lambda, sizes, cfg.length, o);
                  }});

  auto add_linear = [&](const char* name, LinearEstimate which) {
    defs.push_back({name, false,
                    [=](const ExperimentConfig& cfg, const CheckOptions& o) {
                      auto p = DyadicPartition::build(cfg.grid());
                      CheckOptions lo = o;
                      lo.samples = std::max(1, o.samples / 10);
                      return std::vector<ConstantReport>{check_linear_estimate(
                          which, cfg.space.flavor, p, cfg.space.q, cfg.space.lambda,
                          cfg.space.r, cfg.nu_list, lo)};
                    }});
  };
  add_linear("linear-semigroup-sup", LinearEstimate::semigroup_sup);
  add_linear("linear-semigroup-int", LinearEstimate::semigroup_int);
  add_linear("linear-duhamel-sup", LinearEstimate::duhamel_sup);
  add_linear("linear-duhamel-int", LinearEstimate::duhamel_int);

  defs.push_back({"bilinear-K", false,
                  [](const ExperimentConfig& cfg, const CheckOptions& o) {
                    auto p = DyadicPartition::build(cfg.grid());
                    SpaceParams params = SpaceParams::critical(
                        cfg.space.flavor, cfg.space.q, cfg.space.lambda, cfg.space.r);
                    CheckOptions bo = o;
                    bo.samples = std::max(2, o.samples / 6);
                    return std::vector<ConstantReport>{
                        estimate_bilinear_constant(params, p, cfg.nu, bo)};
                  }});
  return defs;
}

}  // namespace

std::vector<std::string> default_checks() {
  std::vector<std::string> names;
  for (const auto& def : catalog()) names.push_back(def.name);
  return names;
}

VerifyOutcome run_verify(const ExperimentConfig& cfg, int jobs) {
  const auto defs = catalog();

  struct Task {
    const CheckDef* def;
    bool control;
  };
  std::vector<Task> tasks;
  auto find_def = [&](const std::string& name) -> const CheckDef* {
    for (const auto& d : defs)
      if (d.name == name) return &d;
    return nullptr;
  };

  if (cfg.checks.empty()) {
    for (const auto& d : defs) {
      tasks.push_back({&d, false});
      if (d.has_control && cfg.controls) tasks.push_back({&d, true});
    }
  } else {
    for (const auto& name : cfg.checks) {
      bool control = false;
      std::string base = name;
      if (const auto pos = name.rfind(":control"); pos != std::string::npos &&
                                                   pos + 8 == name.size()) {
        control = true;
        base = name.substr(0, pos);
      }
      const CheckDef* d = find_def(base);
      if (!d) throw std::invalid_argument("verify: unknown check " + name);
      if (control && !d->has_control)
        throw std::invalid_argument("verify: check " + base + " has no negative control");
      tasks.push_back({d, control});
    }
  }

  std::vector<std::vector<VerifyEntry>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      CheckOptions opts;
      opts.samples = cfg.samples;
      opts.seed = cfg.seed;
      opts.exponent_shift = t.control ? 0.5 : 0.0;
      for (auto& rep : t.def->run(cfg, opts)) {
        VerifyEntry entry;
        entry.is_control = t.control;
        entry.ok = t.control ? control_failed(rep) : rep.pass;
        if (t.control) rep.id += ":control";
        entry.report = std::move(rep);
        slots[i].push_back(std::move(entry));
      }
    }
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  VerifyOutcome out;
  for (auto& slot : slots) {
    for (auto& entry : slot) {
      if (!entry.ok && out.all_ok) {
        out.all_ok = false;
        out.first_failure = entry.report.id;
      }
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace anisoflow::cli
