#include "colsafe/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace colsafe::app {
namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

template <class T>
T read_scalar(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) throw ConfigError(key, line_of(node), "expected a scalar value");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(key, line_of(node), "value '" + node.Scalar() + "' has the wrong type");
    }
}

template <class T>
std::vector<T> read_list(const YAML::Node& node, const std::string& key) {
    if (!node.IsSequence()) throw ConfigError(key, line_of(node), "expected a list");
    std::vector<T> out;
    for (const auto& item : node) out.push_back(read_scalar<T>(item, key));
    return out;
}

using Handler = std::function<void(const YAML::Node&, const std::string&)>;

void read_section(const YAML::Node& node, const std::string& prefix, const std::map<std::string, Handler>& handlers) {
    if (!node.IsMap()) throw ConfigError(prefix.empty() ? "<root>" : prefix, line_of(node), "expected a mapping");
    for (const auto& kv : node) {
        const auto name = kv.first.as<std::string>();
        const std::string key = prefix.empty() ? name : prefix + "." + name;
        auto it = handlers.find(name);
        if (it == handlers.end()) throw ConfigError(key, line_of(kv.first), "unknown key");
        it->second(kv.second, key);
    }
}

void require(bool ok, const std::string& key, const YAML::Node& node, const std::string& message) {
    if (!ok) throw ConfigError(key, line_of(node), message);
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "key '" + key + "': " +
                         message),
      key_(std::move(key)),
      line_(line) {}

ExperimentConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("<syntax>", e.mark.line + 1, e.msg);
    }
    ExperimentConfig c;
    if (root.IsNull()) return c;

    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };

    read_section(root, "", {
        {"problem", [&](const YAML::Node& n, const std::string& p) {
             read_section(n, p, {
                 {"name", [&](const YAML::Node& v, const std::string& k) {
                      c.problem.name = read_scalar<std::string>(v, k);
                      require(c.problem.name == "synthetic-2d" || c.problem.name == "lqr", k, v,
                              "unknown problem '" + c.problem.name + "'");
                  }},
                 {"sigma", [&](const YAML::Node& v, const std::string& k) {
                      c.problem.sigma = read_scalar<double>(v, k);
                      require(*c.problem.sigma >= 0.0, k, v, "must be nonnegative");
                  }},
                 {"resolution", [&](const YAML::Node& v, const std::string& k) {
                      const auto r = read_scalar<long long>(v, k);
                      require(r >= 2, k, v, "must be at least 2");
                      c.problem.resolution = static_cast<Index>(r);
                  }},
             });
         }},
        {"method", [&](const YAML::Node& v, const std::string& k) {
             c.method = read_scalar<std::string>(v, k);
             require(c.method == "colsafe" || c.method == "gp-safeopt", k, v, "unknown method '" + c.method + "'");
         }},
        {"compare", [&](const YAML::Node& v, const std::string& k) {
             c.compare = read_list<std::string>(v, k);
             for (const auto& m : c.compare) {
                 require(m == "colsafe" || m == "gp-safeopt", k, v, "unknown method '" + m + "'");
             }
         }},
        {"kernel", [&](const YAML::Node& n, const std::string& p) {
             read_section(n, p, {
                 {"family", [&](const YAML::Node& v, const std::string& k) {
                      try {
                          c.kernel.family = parse_kernel_family(read_scalar<std::string>(v, k));
                      } catch (const std::invalid_argument& e) {
                          throw ConfigError(k, line_of(v), e.what());
                      }
                  }},
                 {"bandwidth", [&](const YAML::Node& v, const std::string& k) {
                      c.kernel.bandwidth = read_scalar<double>(v, k);
                      require(positive(c.kernel.bandwidth), k, v, "must be positive");
                  }},
                 {"length_scale", [&](const YAML::Node& v, const std::string& k) {
                      c.kernel.length_scale = read_scalar<double>(v, k);
                      require(positive(c.kernel.length_scale), k, v, "must be positive");
                  }},
             });
         }},
        {"confidence", [&](const YAML::Node& n, const std::string& p) {
             read_section(n, p, {
                 {"delta", [&](const YAML::Node& v, const std::string& k) {
                      c.delta = read_scalar<double>(v, k);
                      require(c.delta > 0.0 && c.delta < 1.0, k, v, "must lie in (0, 1)");
                  }},
                 {"sigma", [&](const YAML::Node& v, const std::string& k) {
                      c.sigma = read_scalar<double>(v, k);
                      require(positive(*c.sigma), k, v, "must be positive");
                  }},
                 {"lipschitz", [&](const YAML::Node& v, const std::string& k) {
                      c.lipschitz = read_scalar<double>(v, k);
                      require(positive(*c.lipschitz), k, v, "must be positive");
                  }},
             });
         }},
        {"gp", [&](const YAML::Node& n, const std::string& p) {
             read_section(n, p, {
                 {"length_scale", [&](const YAML::Node& v, const std::string& k) {
                      c.gp.length_scale = read_scalar<double>(v, k);
                      require(positive(c.gp.length_scale), k, v, "must be positive");
                  }},
                 {"signal_variance", [&](const YAML::Node& v, const std::string& k) {
                      c.gp.signal_variance = read_scalar<double>(v, k);
                      require(positive(c.gp.signal_variance), k, v, "must be positive");
                  }},
                 {"noise_variance", [&](const YAML::Node& v, const std::string& k) {
                      c.gp.noise_variance = read_scalar<double>(v, k);
                      require(c.gp.noise_variance >= 0.0, k, v, "must be nonnegative");
                  }},
                 {"scale", [&](const YAML::Node& v, const std::string& k) {
                      c.gp.scale = read_scalar<double>(v, k);
                      require(positive(c.gp.scale), k, v, "must be positive");
                  }},
             });
         }},
        {"run", [&](const YAML::Node& n, const std::string& p) {
             read_section(n, p, {
                 {"budget", [&](const YAML::Node& v, const std::string& k) {
                      const auto b = read_scalar<long long>(v, k);
                      require(b >= 1, k, v, "must be at least 1");
                      c.budget = static_cast<Index>(b);
                  }},
                 {"seed", [&](const YAML::Node& v, const std::string& k) { c.seed = read_scalar<std::uint64_t>(v, k); }},
                 {"output", [&](const YAML::Node& v, const std::string& k) { c.output = read_scalar<std::string>(v, k); }},
                 {"repeats", [&](const YAML::Node& v, const std::string& k) {
                      const auto r = read_scalar<long long>(v, k);
                      require(r >= 1, k, v, "must be at least 1");
                      c.repeats = static_cast<Index>(r);
                  }},
                 {"wall_times", [&](const YAML::Node& v, const std::string& k) { c.wall_times = read_scalar<bool>(v, k); }},
             });
         }},
        {"concentration", [&](const YAML::Node& n, const std::string& p) {
             auto& cc = c.concentration;
             read_section(n, p, {
                 {"deltas", [&](const YAML::Node& v, const std::string& k) {
                      cc.deltas = read_list<double>(v, k);
                      for (double d : cc.deltas) require(d > 0.0 && d < 1.0, k, v, "entries must lie in (0, 1)");
                  }},
                 {"lengths", [&](const YAML::Node& v, const std::string& k) {
                      cc.lengths.clear();
                      for (long long x : read_list<long long>(v, k)) {
                          require(x >= 1, k, v, "entries must be at least 1");
                          cc.lengths.push_back(static_cast<Index>(x));
                      }
                  }},
                 {"trials", [&](const YAML::Node& v, const std::string& k) {
                      const auto t = read_scalar<long long>(v, k);
                      require(t >= 1, k, v, "must be at least 1");
                      cc.trials = static_cast<Index>(t);
                  }},
                 {"sigma", [&](const YAML::Node& v, const std::string& k) {
                      cc.sigma = read_scalar<double>(v, k);
                      require(positive(cc.sigma), k, v, "must be positive");
                  }},
                 {"noise", [&](const YAML::Node& v, const std::string& k) {
                      cc.noise.clear();
                      for (const auto& name : read_list<std::string>(v, k)) {
                          try {
                              cc.noise.push_back(parse_noise_family(name));
                          } catch (const std::invalid_argument& e) {
                              throw ConfigError(k, line_of(v), e.what());
                          }
                      }
                  }},
                 {"bound_multiplier", [&](const YAML::Node& v, const std::string& k) {
                      cc.bound_multiplier = read_scalar<double>(v, k);
                      require(positive(cc.bound_multiplier), k, v, "must be positive");
                  }},
                 {"etas", [&](const YAML::Node& v, const std::string& k) {
                      cc.etas = read_list<double>(v, k);
                      for (double e : cc.etas) require(std::isfinite(e), k, v, "entries must be finite");
                  }},
                 {"martingale_length", [&](const YAML::Node& v, const std::string& k) {
                      const auto t = read_scalar<long long>(v, k);
                      require(t >= 1, k, v, "must be at least 1");
                      cc.martingale_length = static_cast<Index>(t);
                  }},
                 {"martingale_trials", [&](const YAML::Node& v, const std::string& k) {
                      const auto t = read_scalar<long long>(v, k);
                      require(t >= 1, k, v, "must be at least 1");
                      cc.martingale_trials = static_cast<Index>(t);
                  }},
             });
         }},
    });
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", 0, "cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;

    out << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << c.problem.name;
    if (c.problem.sigma) out << YAML::Key << "sigma" << YAML::Value << *c.problem.sigma;
    if (c.problem.resolution) out << YAML::Key << "resolution" << YAML::Value << *c.problem.resolution;
    out << YAML::EndMap;

    out << YAML::Key << "method" << YAML::Value << c.method;
    out << YAML::Key << "compare" << YAML::Value << YAML::Flow << c.compare;

    out << YAML::Key << "kernel" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "family" << YAML::Value << std::string(to_string(c.kernel.family));
    out << YAML::Key << "bandwidth" << YAML::Value << c.kernel.bandwidth;
    out << YAML::Key << "length_scale" << YAML::Value << c.kernel.length_scale;
    out << YAML::EndMap;

    out << YAML::Key << "confidence" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "delta" << YAML::Value << c.delta;
    if (c.sigma) out << YAML::Key << "sigma" << YAML::Value << *c.sigma;
    if (c.lipschitz) out << YAML::Key << "lipschitz" << YAML::Value << *c.lipschitz;
    out << YAML::EndMap;

    out << YAML::Key << "gp" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "length_scale" << YAML::Value << c.gp.length_scale;
    out << YAML::Key << "signal_variance" << YAML::Value << c.gp.signal_variance;
    out << YAML::Key << "noise_variance" << YAML::Value << c.gp.noise_variance;
    out << YAML::Key << "scale" << YAML::Value << c.gp.scale;
    out << YAML::EndMap;

    out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "budget" << YAML::Value << c.budget;
    out << YAML::Key << "seed" << YAML::Value << c.seed;
    out << YAML::Key << "output" << YAML::Value << YAML::DoubleQuoted << c.output;
    out << YAML::Key << "repeats" << YAML::Value << c.repeats;
    out << YAML::Key << "wall_times" << YAML::Value << c.wall_times;
    out << YAML::EndMap;

    const auto& cc = c.concentration;
    std::vector<std::string> noise;
    for (auto f : cc.noise) noise.emplace_back(to_string(f));
    out << YAML::Key << "concentration" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "deltas" << YAML::Value << YAML::Flow << cc.deltas;
    out << YAML::Key << "lengths" << YAML::Value << YAML::Flow << cc.lengths;
    out << YAML::Key << "trials" << YAML::Value << cc.trials;
    out << YAML::Key << "sigma" << YAML::Value << cc.sigma;
    out << YAML::Key << "noise" << YAML::Value << YAML::Flow << noise;
    out << YAML::Key << "bound_multiplier" << YAML::Value << cc.bound_multiplier;
    out << YAML::Key << "etas" << YAML::Value << YAML::Flow << cc.etas;
    out << YAML::Key << "martingale_length" << YAML::Value << cc.martingale_length;
    out << YAML::Key << "martingale_trials" << YAML::Value << cc.martingale_trials;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace colsafe::app
