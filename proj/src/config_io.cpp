#include "recsim/config_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "recsim/errors.hpp"

namespace recsim {

using nlohmann::json;

namespace {

Eigen::MatrixXd columns_from_json(const json& arr, int dim, const char* key) {
  if (!arr.is_array() || arr.empty())
    throw ConfigError(std::string(key) + " must be a non-empty array of arrays");
  Eigen::MatrixXd M(dim, static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_array() || arr[i].size() != static_cast<std::size_t>(dim))
      throw ConfigError(std::string(key) + "[" + std::to_string(i) + "] must have length " +
                        std::to_string(dim));
    for (int j = 0; j < dim; ++j) M(j, static_cast<Eigen::Index>(i)) = arr[i][j].get<double>();
  }
  return M;
}

json columns_to_json(const Eigen::MatrixXd& M) {
  json arr = json::array();
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) col.push_back(M(r, c));
    arr.push_back(col);
  }
  return arr;
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing config key: ") + key);
  return *it;
}

}  // namespace

ModelConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ModelConfig cfg;
  try {
    cfg.n_users = require(j, "n_users").get<int>();
    cfg.n_products = require(j, "n_products").get<int>();
    cfg.p = require(j, "p").get<int>();
    cfg.q = require(j, "q").get<int>();
    cfg.V = columns_from_json(require(j, "user_attrs"), cfg.p, "user_attrs");
    cfg.W = columns_from_json(require(j, "product_attrs"), cfg.q, "product_attrs");
    const json& lam = require(j, "arrival_probs");
    cfg.lambda.resize(static_cast<Eigen::Index>(lam.size()));
    for (std::size_t i = 0; i < lam.size(); ++i)
      cfg.lambda(static_cast<Eigen::Index>(i)) = lam[i].get<double>();
    cfg.a = require(j, "a").get<double>();
    cfg.zeta = require(j, "zeta").get<double>();
    const json& noise = require(j, "noise");
    const std::string type = require(noise, "type").get<std::string>();
    if (type == "none") {
      cfg.noise.type = NoiseType::kNone;
      cfg.noise.sigma = noise.value("sigma", 0.0);
    } else if (type == "gaussian") {
      cfg.noise.type = NoiseType::kGaussian;
      cfg.noise.sigma = require(noise, "sigma").get<double>();
    } else {
      throw ConfigError("noise.type must be \"none\" or \"gaussian\"");
    }
    cfg.seed = require(j, "seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const ModelConfig& cfg) {
  json j;
  j["n_users"] = cfg.n_users;
  j["n_products"] = cfg.n_products;
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["user_attrs"] = columns_to_json(cfg.V);
  j["product_attrs"] = columns_to_json(cfg.W);
  json lam = json::array();
  for (Eigen::Index i = 0; i < cfg.lambda.size(); ++i) lam.push_back(cfg.lambda(i));
  j["arrival_probs"] = lam;
  j["a"] = cfg.a;
  j["zeta"] = cfg.zeta;
  j["noise"] = {{"type", cfg.noise.type == NoiseType::kNone ? "none" : "gaussian"},
                {"sigma", cfg.noise.sigma}};
  j["seed"] = cfg.seed;
  return j.dump(2);
}

void save_config(const ModelConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << config_to_json(cfg) << "\n";
}

void apply_override(ModelConfig& cfg, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like key=value: " + key_value);
  const std::string key = key_value.substr(0, eq);
  const std::string value = key_value.substr(eq + 1);

  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, '.')) parts.push_back(item);
  if (parts.empty()) throw ConfigError("empty override key");

  auto as_double = [&]() {
    try {
      std::size_t pos = 0;
      double d = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("");
      return d;
    } catch (...) {
      throw ConfigError("override value for " + key + " is not a number: " + value);
    }
  };
  auto as_index = [&](const std::string& s, Eigen::Index bound, const char* what) {
    try {
      long i = std::stol(s);
      if (i < 0 || i >= bound) throw std::out_of_range("");
      return static_cast<Eigen::Index>(i);
    } catch (...) {
      throw ConfigError("override index " + s + " out of range for " + what);
    }
  };

  const std::string& head = parts[0];
  if (head == "a" && parts.size() == 1) {
    cfg.a = as_double();
  } else if (head == "zeta" && parts.size() == 1) {
    cfg.zeta = as_double();
  } else if (head == "seed" && parts.size() == 1) {
    cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
  } else if (head == "noise" && parts.size() == 2 && parts[1] == "sigma") {
    cfg.noise.sigma = as_double();
    if (cfg.noise.sigma > 0.0) cfg.noise.type = NoiseType::kGaussian;
  } else if (head == "noise" && parts.size() == 2 && parts[1] == "type") {
    if (value == "none")
      cfg.noise.type = NoiseType::kNone;
    else if (value == "gaussian")
      cfg.noise.type = NoiseType::kGaussian;
    else
      throw ConfigError("noise.type must be none or gaussian");
  } else if (head == "arrival_probs" && parts.size() == 2) {
    cfg.lambda(as_index(parts[1], cfg.lambda.size(), "arrival_probs")) = as_double();
  } else if (head == "user_attrs" && parts.size() == 3) {
    const Eigen::Index n = as_index(parts[1], cfg.V.cols(), "user_attrs");
    const Eigen::Index i = as_index(parts[2], cfg.V.rows(), "user_attrs component");
    cfg.V(i, n) = as_double();
  } else if (head == "product_attrs" && parts.size() == 3) {
    const Eigen::Index k = as_index(parts[1], cfg.W.cols(), "product_attrs");
    const Eigen::Index j = as_index(parts[2], cfg.W.rows(), "product_attrs component");
    cfg.W(j, k) = as_double();
  } else {
    throw ConfigError("unknown override key: " + key);
  }
}

}  // namespace recsim
