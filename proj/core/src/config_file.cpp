#include "caft/config_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "caft/csv.hpp"
#include "caft/error.hpp"

namespace caft {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      if (values_.count(key)) throw InvalidArgument("config key '" + key + "' given twice");
      values_[key] = trim(line.substr(eq + 1));
    }
  }

  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string text(const std::string& key, const std::string& fallback) {
    used_[key] = true;
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return parse(key, text(key, ""));
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : csv::split(text(key, ""))) out.push_back(parse(key, trim(item)));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : values_)
      if (!used_.count(key)) throw InvalidArgument("unknown config key '" + key + "'");
  }

 private:
  static double parse(const std::string& key, const std::string& value) {
    try {
      const double x = csv::parse_number(value);
      if (std::isnan(x)) throw IoError("NA");
      return x;
    } catch (const IoError&) {
      throw InvalidArgument("config key '" + key + "' needs a number, got '" + value + "'");
    }
  }

  std::map<std::string, std::string> values_;
  std::map<std::string, bool> used_;
};

std::string num(double x) { return csv::format_number(x); }

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + num(xs[i]);
  return out;
}

}  // namespace

ConfigFile parse_config(const std::string& text) {
  KeyValues kv(text);
  ConfigFile file;
  ScmConfig& c = file.config;

  const std::string baseline = kv.text("baseline", "weibull");
  if (baseline == "weibull") {
    c.baseline = WeibullBaseline{kv.number("sigma", 1.0 / 3.0), kv.number("kappa", 1.0 / 60.0)};
  } else if (baseline == "weibull_mixture") {
    WeibullMixtureBaseline m;
    m.shape = kv.number("mixture_shape", 2.0);
    m.scale_law = FrailtyLaw::weibull_mixture_scale(kv.list("mixture_scales", {1.0, 10.0}),
                                                    kv.list("mixture_weights", {0.5, 0.5}));
    c.baseline = m;
  } else {
    throw InvalidArgument("baseline must be weibull or weibull_mixture");
  }

  const std::string frailty = kv.text("frailty", "degenerate");
  const double frailty_variance = kv.number("frailty_variance", 0.0);
  if (frailty == "degenerate") c.frailty = FrailtyLaw::degenerate();
  else if (frailty == "gamma") c.frailty = FrailtyLaw::gamma(frailty_variance);
  else if (frailty == "inverse_gaussian") c.frailty = FrailtyLaw::inverse_gaussian(frailty_variance);
  else throw InvalidArgument("frailty must be degenerate, gamma or inverse_gaussian");

  const std::string effect = kv.text("effect", "degenerate");
  if (effect == "degenerate") {
    c.effect = EffectLaw::degenerate(kv.number("effect_factor", 1.0));
  } else if (effect == "bhn") {
    const auto p = kv.list("bhn", {});
    if (p.size() != 4) throw InvalidArgument("bhn needs p1,mu1,p2,mu2");
    c.effect = EffectLaw::bhn_law(p[0], p[1], p[2], p[3]);
  } else if (effect == "gamma") {
    c.effect = EffectLaw::gamma(kv.number("effect_mean", 1.0), kv.number("effect_variance", 1.0));
  } else {
    throw InvalidArgument("effect must be degenerate, bhn or gamma");
  }

  const std::string treatment = kv.text("treatment", "randomized");
  if (treatment == "randomized") {
    c.treatment = RandomizedTreatment{kv.number("p_treat", 0.5)};
  } else if (treatment == "confounded") {
    c.treatment = ConfoundedTreatment{kv.number("beta_la", 0.0), {kv.number("tau0", 0.0), kv.number("tau1", 0.0)}};
  } else {
    throw InvalidArgument("treatment must be randomized or confounded");
  }

  if (kv.has("follow_up")) c.censoring.administrative = kv.number("follow_up", 0.0);
  if (kv.has("censoring_mean")) c.censoring.exponential_mean = kv.number("censoring_mean", 0.0);

  file.n_obs = static_cast<std::size_t>(kv.number("n_obs", static_cast<double>(file.n_obs)));
  file.seed = static_cast<std::uint64_t>(kv.number("seed", static_cast<double>(file.seed)));
  kv.reject_unknown();
  c.validate();
  return file;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_config_text(const ScmConfig& c) {
  std::ostringstream out;
  if (const auto* w = std::get_if<WeibullBaseline>(&c.baseline)) {
    out << "baseline = weibull\nsigma = " << num(w->sigma) << "\nkappa = " << num(w->kappa) << '\n';
    switch (c.frailty.kind) {
      case FrailtyKind::degenerate:
        out << "frailty = degenerate\n";
        break;
      case FrailtyKind::gamma:
        out << "frailty = gamma\nfrailty_variance = " << num(c.frailty.variance) << '\n';
        break;
      case FrailtyKind::inverse_gaussian:
        out << "frailty = inverse_gaussian\nfrailty_variance = " << num(c.frailty.variance) << '\n';
        break;
      case FrailtyKind::weibull_mixture_scale:
        break;
    }
  } else {
    const auto& m = std::get<WeibullMixtureBaseline>(c.baseline);
    out << "baseline = weibull_mixture\nmixture_shape = " << num(m.shape) << "\nmixture_scales = "
        << join(m.scale_law.atoms) << "\nmixture_weights = " << join(m.scale_law.weights) << '\n';
  }
  switch (c.effect.kind) {
    case EffectKind::degenerate:
      out << "effect = degenerate\neffect_factor = " << num(c.effect.value) << '\n';
      break;
    case EffectKind::bhn:
      out << "effect = bhn\nbhn = " << join({c.effect.bhn.p1, c.effect.bhn.mu1, c.effect.bhn.p2, c.effect.bhn.mu2})
          << '\n';
      break;
    case EffectKind::gamma:
      out << "effect = gamma\neffect_mean = " << num(c.effect.gamma_mean)
          << "\neffect_variance = " << num(c.effect.gamma_variance) << '\n';
      break;
  }
  if (const auto* r = std::get_if<RandomizedTreatment>(&c.treatment)) {
    out << "treatment = randomized\np_treat = " << num(r->p_treat) << '\n';
  } else {
    const auto& t = std::get<ConfoundedTreatment>(c.treatment);
    out << "treatment = confounded\nbeta_la = " << num(t.beta_la) << "\ntau0 = " << num(t.taus.l_u0)
        << "\ntau1 = " << num(t.taus.l_u1) << '\n';
  }
  if (c.censoring.administrative) out << "follow_up = " << num(*c.censoring.administrative) << '\n';
  if (c.censoring.exponential_mean) out << "censoring_mean = " << num(*c.censoring.exponential_mean) << '\n';
  return out.str();
}

std::string config_hash(const ScmConfig& config) { return text_hash(to_config_text(config)); }

std::string text_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace caft
