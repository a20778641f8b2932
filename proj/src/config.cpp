#include "adoprior/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "adoprior/error.hpp"

namespace adoprior {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits on sep outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Splits on runs of whitespace or '*' outside parentheses.
std::vector<std::string> split_factors(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    if (!trim(cur).empty()) out.push_back(trim(cur));
    cur.clear();
  };
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == ' ' || c == '\t' || c == '*')) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

double parse_number(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("expected a number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + t + "'");
  }
  if (used != t.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a number, got '" + t + "'");
  }
  return v;
}

long long parse_integer(const std::string& s) {
  const double v = parse_number(s);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw std::invalid_argument("expected an integer, got '" + trim(s) + "'");
  }
  return static_cast<long long>(v);
}

struct Call {
  std::string name;
  std::vector<std::string> args;
};

Call parse_call(const std::string& s) {
  const std::string t = trim(s);
  const auto open = t.find('(');
  if (open == std::string::npos) return {t, {}};
  if (t.back() != ')') throw std::invalid_argument("unbalanced parentheses in '" + t + "'");
  Call c{trim(t.substr(0, open)), {}};
  const std::string inner = t.substr(open + 1, t.size() - open - 2);
  if (!trim(inner).empty()) c.args = split_top(inner, ',');
  return c;
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
           c == '.';
  });
}

AxisPrior parse_axis_prior(const std::string& s) {
  const Call c = parse_call(s);
  auto need = [&](std::size_t n) {
    if (c.args.size() != n) {
      throw std::invalid_argument(c.name + " takes " + std::to_string(n) +
                                  " argument(s)");
    }
  };
  AxisPrior a;
  if (c.name == "normal") {
    need(2);
    a = {AxisPrior::Kind::Normal, parse_number(c.args[0]), parse_number(c.args[1])};
    if (!(a.p2 > 0.0)) throw std::invalid_argument("normal: sigma must be positive");
  } else if (c.name == "beta") {
    need(2);
    a = {AxisPrior::Kind::Beta, parse_number(c.args[0]), parse_number(c.args[1])};
    if (!(a.p1 > 0.0 && a.p2 > 0.0)) {
      throw std::invalid_argument("beta: shape parameters must be positive");
    }
  } else if (c.name == "uniform") {
    if (s.find('(') != std::string::npos) need(0);
    a = {AxisPrior::Kind::Uniform, 0.0, 0.0};
  } else if (c.name == "point") {
    need(1);
    a = {AxisPrior::Kind::Point, parse_number(c.args[0]), 0.0};
  } else {
    throw std::invalid_argument("unknown prior family '" + c.name + "'");
  }
  return a;
}

std::vector<ModelPrior> parse_dist_value(const std::string& value,
                                         const std::vector<std::string>& models) {
  std::vector<ModelPrior> out;
  for (const std::string& part : split_top(value, ';')) {
    if (part.empty()) throw std::invalid_argument("empty model prior");
    ModelPrior mp;
    std::string body = part;
    const auto colon = part.find(':');
    if (colon != std::string::npos && part.find('(') > colon) {
      std::string head = trim(part.substr(0, colon));
      body = part.substr(colon + 1);
      const auto at = head.find('@');
      if (at != std::string::npos) {
        mp.weight = parse_number(head.substr(at + 1));
        if (!(mp.weight >= 0.0)) throw std::invalid_argument("negative model weight");
        head = trim(head.substr(0, at));
      }
      mp.model = head;
    } else if (models.size() == 1) {
      mp.model = models.front();
    } else {
      throw std::invalid_argument("model prefix required with several models");
    }
    for (const std::string& f : split_factors(body)) mp.axes.push_back(parse_axis_prior(f));
    if (mp.axes.empty()) throw std::invalid_argument("missing axis priors");
    out.push_back(std::move(mp));
  }
  return out;
}

std::string model_axis_name(const std::string& model, std::size_t axis) {
  if (model == "irt") return "theta";
  if (model == "pow" || model == "exp") return axis == 0 ? "a" : "b";
  if (model == "gauss-a" || model == "gauss-b") return "mu";
  return "axis" + std::to_string(axis);
}

int model_family(const std::string& m) {
  if (m == "irt") return 0;
  if (m == "pow" || m == "exp") return 1;
  if (m == "gauss-a" || m == "gauss-b") return 2;
  return -1;
}

const std::set<std::string> kScalarKeys{
    "name",      "models", "param_grid", "stimuli", "fixed_stimuli",
    "fixed_repeats", "response_bins", "design", "utility", "focus",
    "ucb_weight", "trials", "reps", "seed", "metrics", "track_efd"};

void semantic(const std::string& what) { throw Error(ErrorCode::Semantic, what); }

void validate(const ExperimentConfig& c) {
  if (c.models.empty()) semantic("models: at least one model required");
  const int family = model_family(c.models.front());
  for (const auto& m : c.models) {
    if (model_family(m) < 0) semantic("models: unknown model '" + m + "'");
    if (model_family(m) != family) semantic("models: mixed model families");
  }
  const std::size_t dims = family == 1 ? 2 : 1;
  if (c.param_grid.size() != dims) {
    semantic("param_grid: expected " + std::to_string(dims) + " axis spec(s)");
  }
  if (c.trials < 1) semantic("trials must be >= 1");
  if (c.reps < 1) semantic("reps must be >= 1");
  if (c.fixed_repeats < 1) semantic("fixed_repeats must be >= 1");
  for (double v : c.fixed_stimuli.values) {
    if (std::find(c.stimuli.values.begin(), c.stimuli.values.end(), v) ==
        c.stimuli.values.end()) {
      semantic("fixed_stimuli: " + fmt(v) + " is not a stimulus");
    }
  }
  const bool uses_schedule =
      std::find(c.designs.begin(), c.designs.end(), DesignKind::Fixed) != c.designs.end();
  if (uses_schedule &&
      c.fixed_stimuli.values.size() * static_cast<std::size_t>(c.fixed_repeats) <
          static_cast<std::size_t>(c.trials)) {
    semantic("fixed schedule is shorter than the trial count");
  }
  if (c.designs.empty()) semantic("design: at least one design required");
  if (c.utilities.empty()) semantic("utility: at least one utility required");
  const bool multi = c.models.size() > 1;
  for (UtilityKind u : c.utilities) {
    if (u == UtilityKind::MiParameter && multi) {
      semantic("utility mi-parameter requires a single model");
    }
  }
  if (c.focus == FocusKind::Parameter && multi) {
    semantic("focus parameter requires a single model");
  }
  for (const auto& d : c.dists) {
    if (d.models.size() != c.models.size()) {
      semantic("dist." + d.id + ": one prior per configured model required");
    }
    double total = 0.0;
    for (std::size_t m = 0; m < d.models.size(); ++m) {
      if (d.models[m].model != c.models[m]) {
        semantic("dist." + d.id + ": models must follow the order of 'models'");
      }
      if (d.models[m].axes.size() != dims) {
        semantic("dist." + d.id + ": expected " + std::to_string(dims) +
                 " axis prior(s) for " + d.models[m].model);
      }
      total += d.models[m].weight;
    }
    if (!(total > 0.0)) semantic("dist." + d.id + ": model weights sum to zero");
  }
  if (c.conditions.empty()) semantic("at least one condition.<prior_id> required");
  for (const auto& cond : c.conditions) {
    for (const auto& [s, p] : cond.pairs) {
      c.dist(s);
      c.dist(p);
    }
  }
}

std::string emit_dist(const DistSpec& d) {
  std::vector<std::string> parts;
  for (const auto& mp : d.models) {
    std::vector<std::string> axes;
    for (const auto& a : mp.axes) axes.push_back(to_string(a));
    parts.push_back(mp.model + "@" + fmt(mp.weight) + ": " + join(axes, " "));
  }
  return join(parts, "; ");
}

double beta_log_density(double x, double a, double b) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
}

}  // namespace

ValueList parse_value_list(const std::string& text) {
  const std::string t = trim(text);
  ValueList out;
  const Call c = parse_call(t);
  auto need = [&](std::size_t n) {
    if (c.args.size() != n) {
      throw std::invalid_argument(c.name + " takes " + std::to_string(n) + " arguments");
    }
  };
  if (c.name == "linspace") {
    need(3);
    const long long n = parse_integer(c.args[2]);
    if (n < 1) throw std::invalid_argument("linspace: n must be >= 1");
    out.values = linspace(parse_number(c.args[0]), parse_number(c.args[1]),
                          static_cast<int>(n));
    out.text = "linspace(" + fmt(parse_number(c.args[0])) + "," +
               fmt(parse_number(c.args[1])) + "," + std::to_string(n) + ")";
  } else if (c.name == "range") {
    need(2);
    const long long lo = parse_integer(c.args[0]);
    const long long hi = parse_integer(c.args[1]);
    if (hi < lo) throw std::invalid_argument("range: hi < lo");
    for (long long v = lo; v <= hi; ++v) out.values.push_back(static_cast<double>(v));
    out.text = "range(" + std::to_string(lo) + "," + std::to_string(hi) + ")";
  } else if (c.name == "midpoints") {
    need(1);
    const long long n = parse_integer(c.args[0]);
    if (n < 1) throw std::invalid_argument("midpoints: n must be >= 1");
    out.values = cell_midpoints(static_cast<int>(n));
    out.text = "midpoints(" + std::to_string(n) + ")";
  } else if (c.name == "values") {
    if (c.args.empty()) throw std::invalid_argument("values: at least one value");
    std::vector<std::string> parts;
    for (const auto& a : c.args) {
      out.values.push_back(parse_number(a));
      parts.push_back(fmt(out.values.back()));
    }
    out.text = "values(" + join(parts, ",") + ")";
  } else {
    throw std::invalid_argument("expected linspace(), range(), midpoints() or "
                                "values(), got '" + t + "'");
  }
  std::vector<double> sorted = out.values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate values in '" + t + "'");
  }
  return out;
}

std::string to_string(const AxisPrior& a) {
  switch (a.kind) {
    case AxisPrior::Kind::Normal: return "normal(" + fmt(a.p1) + "," + fmt(a.p2) + ")";
    case AxisPrior::Kind::Beta: return "beta(" + fmt(a.p1) + "," + fmt(a.p2) + ")";
    case AxisPrior::Kind::Uniform: return "uniform";
    case AxisPrior::Kind::Point: return "point(" + fmt(a.p1) + ")";
  }
  return "?";
}

const DistSpec& ExperimentConfig::dist(const std::string& id) const {
  for (const auto& d : dists) {
    if (d.id == id) return d;
  }
  throw Error(ErrorCode::Semantic, "unknown distribution '" + id + "'");
}

UtilitySpec ExperimentConfig::utility_spec(UtilityKind k) const {
  return {k, focus == FocusKind::Joint ? FocusKind::Model : focus, ucb_weight};
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::map<std::string, std::pair<int, std::string>> entries;
  std::vector<std::pair<int, std::string>> order;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
    const bool known = kScalarKeys.count(key) || key.rfind("dist.", 0) == 0 ||
                       key.rfind("condition.", 0) == 0;
    if (!known) throw ParseError(line_no, "unknown key '" + key + "'");
    if (entries.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
    entries[key] = {line_no, value};
    order.push_back({line_no, key});
  }

  auto get = [&](const std::string& key) -> const std::pair<int, std::string>* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  // Runs a field parser, converting failures into line-anchored errors.
  auto field = [&](const std::string& key, auto&& fn) {
    if (const auto* e = get(key)) {
      try {
        fn(e->second);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& ex) {
        throw ParseError(e->first, key + ": " + ex.what());
      }
      return true;
    }
    return false;
  };
  auto require = [&](const std::string& key) {
    if (!get(key)) throw ParseError(line_no, "missing required key '" + key + "'");
  };

  field("name", [&](const std::string& v) {
    if (!valid_identifier(v)) throw std::invalid_argument("invalid name");
    c.name = v;
  });
  require("models");
  field("models", [&](const std::string& v) {
    for (const auto& m : split_top(v, ',')) {
      if (model_family(m) < 0) throw std::invalid_argument("unknown model '" + m + "'");
      if (std::find(c.models.begin(), c.models.end(), m) != c.models.end()) {
        throw std::invalid_argument("duplicate model '" + m + "'");
      }
      c.models.push_back(m);
    }
  });
  const int family = model_family(c.models.front());

  if (!field("param_grid", [&](const std::string& v) {
        for (const auto& axis : split_top(v, 'x')) {
          c.param_grid.push_back(parse_value_list(axis));
        }
      })) {
    if (family == 0) c.param_grid = {parse_value_list("linspace(-3,3,31)")};
    if (family == 1) c.param_grid = {parse_value_list("midpoints(50)"),
                                     parse_value_list("midpoints(50)")};
    if (family == 2) c.param_grid = {parse_value_list("linspace(-30,30,61)")};
  }
  if (!field("stimuli", [&](const std::string& v) { c.stimuli = parse_value_list(v); })) {
    if (family == 0) c.stimuli = parse_value_list("linspace(-3,3,31)");
    if (family == 1) c.stimuli = parse_value_list("range(0,100)");
    if (family == 2) c.stimuli = parse_value_list("values(0)");
  }
  if (!field("fixed_stimuli",
             [&](const std::string& v) { c.fixed_stimuli = parse_value_list(v); })) {
    c.fixed_stimuli = c.stimuli;
  }
  field("fixed_repeats", [&](const std::string& v) {
    c.fixed_repeats = static_cast<int>(parse_integer(v));
  });
  if (!field("response_bins",
             [&](const std::string& v) { c.response_bins = parse_value_list(v); })) {
    if (family == 2) c.response_bins = parse_value_list("linspace(-40,40,81)");
  }
  field("design", [&](const std::string& v) {
    c.designs.clear();
    for (const auto& d : split_top(v, ',')) c.designs.push_back(parse_design(d));
  });
  if (!field("utility", [&](const std::string& v) {
        for (const auto& u : split_top(v, ',')) c.utilities.push_back(parse_utility(u));
      })) {
    c.utilities = {c.models.size() > 1 ? UtilityKind::MiModel : UtilityKind::MiParameter};
  }
  if (!field("focus", [&](const std::string& v) { c.focus = parse_focus(v); })) {
    c.focus = c.models.size() > 1 ? FocusKind::Model : FocusKind::Parameter;
  }
  field("ucb_weight", [&](const std::string& v) { c.ucb_weight = parse_number(v); });
  require("trials");
  field("trials", [&](const std::string& v) { c.trials = static_cast<int>(parse_integer(v)); });
  require("reps");
  field("reps", [&](const std::string& v) { c.reps = static_cast<int>(parse_integer(v)); });
  require("seed");
  field("seed", [&](const std::string& v) {
    const long long s = parse_integer(v);
    if (s < 0) throw std::invalid_argument("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  });
  field("metrics", [&](const std::string& v) {
    c.metric_log = c.metric_linear = false;
    for (const auto& m : split_top(v, ',')) {
      if (m == "log") c.metric_log = true;
      else if (m == "linear") c.metric_linear = true;
      else throw std::invalid_argument("unknown metric '" + m + "'");
    }
  });
  field("track_efd", [&](const std::string& v) {
    if (v == "off") c.track_efd = EfdTracking::Off;
    else if (v == "fixed") c.track_efd = EfdTracking::FixedPopulation;
    else if (v == "conditioned") c.track_efd = EfdTracking::ConditionedPopulation;
    else throw std::invalid_argument("expected off, fixed or conditioned");
  });

  std::sort(order.begin(), order.end());
  for (const auto& [ln, key] : order) {
    const std::string& value = entries[key].second;
    try {
      if (key.rfind("dist.", 0) == 0) {
        DistSpec d{key.substr(5), parse_dist_value(value, c.models)};
        if (!valid_identifier(d.id)) throw std::invalid_argument("invalid dist id");
        c.dists.push_back(std::move(d));
      } else if (key.rfind("condition.", 0) == 0) {
        ConditionSpec cond{key.substr(10), {}};
        if (!valid_identifier(cond.prior_id)) throw std::invalid_argument("invalid prior id");
        for (const auto& pair : split_top(value, ',')) {
          const auto slash = pair.find('/');
          if (slash == std::string::npos) {
            throw std::invalid_argument("expected specified/population, got '" + pair + "'");
          }
          cond.pairs.emplace_back(trim(pair.substr(0, slash)), trim(pair.substr(slash + 1)));
        }
        c.conditions.push_back(std::move(cond));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(ln, key + ": " + ex.what());
    }
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream os;
  std::vector<std::string> tmp;
  os << "name = " << c.name << '\n';
  os << "models = " << join(c.models, ", ") << '\n';
  tmp.clear();
  for (const auto& a : c.param_grid) tmp.push_back(a.text);
  os << "param_grid = " << join(tmp, " x ") << '\n';
  os << "stimuli = " << c.stimuli.text << '\n';
  os << "fixed_stimuli = " << c.fixed_stimuli.text << '\n';
  os << "fixed_repeats = " << c.fixed_repeats << '\n';
  if (!c.response_bins.values.empty()) os << "response_bins = " << c.response_bins.text << '\n';
  tmp.clear();
  for (auto d : c.designs) tmp.push_back(design_name(d));
  os << "design = " << join(tmp, ", ") << '\n';
  tmp.clear();
  for (auto u : c.utilities) tmp.push_back(utility_name(u));
  os << "utility = " << join(tmp, ", ") << '\n';
  os << "focus = " << focus_name(c.focus) << '\n';
  os << "ucb_weight = " << fmt(c.ucb_weight) << '\n';
  os << "trials = " << c.trials << '\n';
  os << "reps = " << c.reps << '\n';
  os << "seed = " << c.seed << '\n';
  tmp.clear();
  if (c.metric_log) tmp.push_back("log");
  if (c.metric_linear) tmp.push_back("linear");
  os << "metrics = " << join(tmp, ", ") << '\n';
  os << "track_efd = "
     << (c.track_efd == EfdTracking::Off ? "off"
         : c.track_efd == EfdTracking::FixedPopulation ? "fixed" : "conditioned")
     << '\n';
  for (const auto& d : c.dists) os << "dist." << d.id << " = " << emit_dist(d) << '\n';
  for (const auto& cond : c.conditions) {
    tmp.clear();
    for (const auto& [s, p] : cond.pairs) tmp.push_back(s + "/" + p);
    os << "condition." << cond.prior_id << " = " << join(tmp, ", ") << '\n';
  }
  return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string config_hash(const ExperimentConfig& cfg) {
  return hex64(fnv1a64(emit_config(cfg)));
}

std::vector<double> axis_weights(const AxisPrior& prior,
                                 const std::vector<double>& axis_values) {
  std::vector<double> w(axis_values.size(), 0.0);
  switch (prior.kind) {
    case AxisPrior::Kind::Normal: {
      const DiscreteDist d = discretize_normal(prior.p1, prior.p2, axis_values);
      return std::vector<double>(d.masses().begin(), d.masses().end());
    }
    case AxisPrior::Kind::Beta: {
      std::vector<double> logw(axis_values.size());
      double top = -INFINITY;
      for (std::size_t i = 0; i < axis_values.size(); ++i) {
        const double x = axis_values[i];
        if (!(x > 0.0 && x < 1.0)) {
          throw Error(ErrorCode::Parameter, "beta prior on an axis outside (0, 1)");
        }
        logw[i] = beta_log_density(x, prior.p1, prior.p2);
        top = std::max(top, logw[i]);
      }
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(logw[i] - top);
      return w;
    }
    case AxisPrior::Kind::Uniform:
      std::fill(w.begin(), w.end(), 1.0);
      return w;
    case AxisPrior::Kind::Point: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < axis_values.size(); ++i) {
        if (std::abs(axis_values[i] - prior.p1) < std::abs(axis_values[best] - prior.p1)) {
          best = i;
        }
      }
      w[best] = 1.0;
      return w;
    }
  }
  return w;
}

ExperimentSetup::ExperimentSetup(const ExperimentConfig& cfg) : cfg_(cfg) {
  std::vector<GridAxis> axes;
  for (std::size_t a = 0; a < cfg_.param_grid.size(); ++a) {
    axes.push_back({model_axis_name(cfg_.models.front(), a), cfg_.param_grid[a].values});
  }
  const ParamGrid grid(axes);
  for (const auto& id : cfg_.models) {
    models_.push_back(ResponseModel::make(id, cfg_.stimuli.values, grid,
                                          cfg_.response_bins.values));
  }
  for (std::size_t i = 0; i < cfg_.stimuli.values.size(); ++i) candidates_.push_back(i);
  for (int r = 0; r < cfg_.fixed_repeats; ++r) {
    for (double v : cfg_.fixed_stimuli.values) {
      fixed_.push_back(models_.front()->stimulus_index(v));
    }
  }
}

JointBelief ExperimentSetup::belief(const std::string& dist_id, Role role) const {
  const DistSpec& d = cfg_.dist(dist_id);
  std::vector<double> model_w;
  std::vector<DiscreteDist> params;
  for (std::size_t m = 0; m < models_.size(); ++m) {
    const auto& model = *models_[m];
    const auto& grid = model.grid();
    std::vector<std::vector<double>> axis_w;
    for (std::size_t a = 0; a < grid.dims(); ++a) {
      axis_w.push_back(axis_weights(d.models[m].axes[a], grid.axes()[a].values));
    }
    std::vector<double> w(grid.size(), 1.0);
    std::vector<std::size_t> idx(grid.dims(), 0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      for (std::size_t a = 0; a < grid.dims(); ++a) w[k] *= axis_w[a][idx[a]];
      for (std::size_t a = grid.dims(); a-- > 0;) {
        if (++idx[a] < grid.axes()[a].values.size()) break;
        idx[a] = 0;
      }
    }
    params.emplace_back(grid.support(), std::move(w));
    model_w.push_back(d.models[m].weight);
  }
  return JointBelief(models_, DiscreteDist(Support::of_ids(cfg_.models), std::move(model_w)),
                     std::move(params), role);
}

}  // namespace adoprior
