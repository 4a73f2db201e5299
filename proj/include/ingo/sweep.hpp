#ifndef INGO_SWEEP_HPP
#define INGO_SWEEP_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ingo/errors.hpp"
#include "ingo/harness.hpp"

namespace ingo {

/// A sweep document mirrors RunConfig; the fields algorithm, fn, dim, seed,
/// budget, beta, pop and target may be scalars or arrays, and the sweep runs
/// their cross-product in document field order. beta/pop accept "auto".
///
/// Example:
///   { "algorithm": ["ingo", "igo"], "fn": "ellipsoid", "dim": 20,
///     "seed": [0, 1, 2], "budget": 100000, "target": 1e-8 }
inline std::vector<RunConfig> parse_sweep_config(const std::string& path) {
  std::ifstream file(path);
  require(file.good(), Errc::config_invalid, "sweep: cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    file >> doc;
  } catch (const std::exception& e) {
    raise(Errc::config_invalid, std::string("sweep: invalid JSON: ") + e.what());
  }
  require(doc.is_object(), Errc::config_invalid, "sweep: top-level JSON object expected");

  auto as_list = [&](const char* key) -> std::vector<nlohmann::json> {
    if (!doc.contains(key)) return {};
    const auto& v = doc[key];
    if (v.is_array()) {
      require(!v.empty(), Errc::config_invalid, std::string("sweep: empty array for ") + key);
      return std::vector<nlohmann::json>(v.begin(), v.end());
    }
    return {v};
  };

  auto algorithms = as_list("algorithm");
  auto fns = as_list("fn");
  auto dims = as_list("dim");
  auto seeds = as_list("seed");
  auto budgets = as_list("budget");
  auto betas = as_list("beta");
  auto pops = as_list("pop");
  auto targets = as_list("target");
  require(!algorithms.empty(), Errc::config_invalid, "sweep: 'algorithm' is required");
  require(!fns.empty(), Errc::config_invalid, "sweep: 'fn' is required");
  require(!dims.empty(), Errc::config_invalid, "sweep: 'dim' is required");
  if (seeds.empty()) seeds = {nlohmann::json(0)};
  if (budgets.empty()) budgets = {nlohmann::json(10000)};
  if (betas.empty()) betas = {nlohmann::json("auto")};
  if (pops.empty()) pops = {nlohmann::json("auto")};
  if (targets.empty()) targets = {nlohmann::json()};

  RunConfig base;
  if (doc.contains("threads")) base.threads = doc["threads"].get<unsigned>();
  if (doc.contains("init_sigma")) base.init_sigma = doc["init_sigma"].get<double>();
  if (doc.contains("log_every")) base.log_every = doc["log_every"].get<std::uint64_t>();
  if (doc.contains("categories")) base.categories = doc["categories"].get<std::size_t>();
  if (doc.contains("max_iterations")) base.max_iterations = doc["max_iterations"].get<std::uint64_t>();
  if (doc.contains("clip_b")) base.clip_b = doc["clip_b"].get<double>();
  if (doc.contains("clip_gamma_half")) base.clip_gamma_half = doc["clip_gamma_half"].get<double>();

  auto auto_or_double = [](const nlohmann::json& v, const char* key) -> double {
    if (v.is_string()) {
      require(v.get<std::string>() == "auto", Errc::config_invalid,
              std::string("sweep: ") + key + " must be a number or \"auto\"");
      return 0.0;
    }
    return v.get<double>();
  };
  auto auto_or_size = [](const nlohmann::json& v, const char* key) -> std::size_t {
    if (v.is_string()) {
      require(v.get<std::string>() == "auto", Errc::config_invalid,
              std::string("sweep: ") + key + " must be a count or \"auto\"");
      return 0;
    }
    return v.get<std::size_t>();
  };

  std::vector<RunConfig> configs;
  for (const auto& algo : algorithms)
    for (const auto& fn : fns)
      for (const auto& dim : dims)
        for (const auto& budget : budgets)
          for (const auto& beta : betas)
            for (const auto& pop : pops)
              for (const auto& target : targets)
                for (const auto& seed : seeds) {
                  RunConfig cfg = base;
                  cfg.algorithm = algorithm_from_name(algo.get<std::string>());
                  cfg.objective = fn.get<std::string>();
                  cfg.dim = dim.get<std::size_t>();
                  cfg.budget = budget.get<std::uint64_t>();
                  cfg.beta = auto_or_double(beta, "beta");
                  cfg.population = auto_or_size(pop, "pop");
                  if (!target.is_null()) cfg.target = target.get<double>();
                  cfg.seed = seed.get<std::uint64_t>();
                  configs.push_back(cfg);
                }
  return configs;
}

}  // namespace ingo

#endif  // INGO_SWEEP_HPP
