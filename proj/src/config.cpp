#include "cdlab/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace cdlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("config line " + std::to_string(line) + ": " + what);
}

struct KeyValue {
  std::string value;
  int line;
};

using Section = std::map<std::string, KeyValue>;

double to_double(const KeyValue& kv) {
  try {
    std::size_t used = 0;
    double v = std::stod(kv.value, &used);
    if (used != kv.value.size()) fail(kv.line, "bad number '" + kv.value + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(kv.line, "bad number '" + kv.value + "'");
  }
}

int to_int(const KeyValue& kv) {
  const double v = to_double(kv);
  const int i = static_cast<int>(v);
  if (i != v) fail(kv.line, "expected an integer");
  return i;
}

void check_expr(const KeyValue& kv) {
  try {
    Expr::parse(kv.value);
  } catch (const ParseError& e) {
    fail(kv.line, e.what());
  }
}

SchemeFamily parse_family(const KeyValue& kv) {
  const std::string& v = kv.value;
  if (v == "two_level") return SchemeFamily::TwoLevelWeighted;
  if (v == "split_weights") return SchemeFamily::TwoLevelSplitWeights;
  if (v == "explicit_implicit") return SchemeFamily::ExplicitImplicit;
  if (v == "three_level") return SchemeFamily::ThreeLevelEI;
  if (v == "reaction_split") return SchemeFamily::ReactionSplitImplicit;
  if (v == "symmetric_reaction_split") return SchemeFamily::SymmetricReactionSplit;
  if (v == "exp_transform") return SchemeFamily::ExpTransform;
  if (v == "lod") return SchemeFamily::LOD;
  if (v == "additive_avg") return SchemeFamily::AdditiveAvg;
  fail(kv.line, "unknown scheme family '" + v + "'");
}

std::string family_name(SchemeFamily f) {
  switch (f) {
    case SchemeFamily::TwoLevelWeighted: return "two_level";
    case SchemeFamily::TwoLevelSplitWeights: return "split_weights";
    case SchemeFamily::ExplicitImplicit: return "explicit_implicit";
    case SchemeFamily::ThreeLevelEI: return "three_level";
    case SchemeFamily::ReactionSplitImplicit: return "reaction_split";
    case SchemeFamily::SymmetricReactionSplit: return "symmetric_reaction_split";
    case SchemeFamily::ExpTransform: return "exp_transform";
    case SchemeFamily::LOD: return "lod";
    case SchemeFamily::AdditiveAvg: return "additive_avg";
  }
  return "?";
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty()) fail(lineno, "empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    if (current.empty()) fail(lineno, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    sections[current][key] = {value, lineno};
  }

  ProblemConfig cfg;
  auto get = [&](const std::string& sec, const std::string& key) -> const KeyValue* {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
  };

  if (const KeyValue* kv = get("domain", "kind")) {
    if (kv->value == "rect") {
      cfg.domain.kind = DomainConfig::Kind::Rect;
    } else if (kv->value == "mesh") {
      cfg.domain.kind = DomainConfig::Kind::Mesh;
    } else {
      fail(kv->line, "domain kind must be rect or mesh");
    }
  }
  if (const KeyValue* kv = get("domain", "l1")) cfg.domain.l1 = to_double(*kv);
  if (const KeyValue* kv = get("domain", "l2")) cfg.domain.l2 = to_double(*kv);
  if (const KeyValue* kv = get("domain", "n1")) cfg.domain.n1 = to_int(*kv);
  if (const KeyValue* kv = get("domain", "n2")) cfg.domain.n2 = to_int(*kv);
  if (const KeyValue* kv = get("domain", "mesh_file")) cfg.domain.mesh_file = kv->value;

  auto expr_key = [&](const std::string& key, std::string& target, bool required) {
    if (const KeyValue* kv = get("coefficients", key)) {
      check_expr(*kv);
      target = kv->value;
    } else if (required) {
      throw ParseError("config: [coefficients] " + key + " is required");
    }
  };
  expr_key("k", cfg.coefficients.k, false);
  expr_key("v1", cfg.coefficients.v1, false);
  expr_key("v2", cfg.coefficients.v2, false);
  expr_key("r", cfg.coefficients.r, false);
  expr_key("f", cfg.coefficients.f, false);
  expr_key("u0", cfg.coefficients.u0, false);
  if (const KeyValue* kv = get("coefficients", "kappa1")) cfg.coefficients.kappa1 = to_double(*kv);
  if (const KeyValue* kv = get("coefficients", "kappa2")) cfg.coefficients.kappa2 = to_double(*kv);

  if (const KeyValue* kv = get("scheme", "family")) cfg.scheme.family = parse_family(*kv);
  if (const KeyValue* kv = get("scheme", "sigma")) cfg.scheme.sigma = to_double(*kv);
  if (const KeyValue* kv = get("scheme", "sigma1")) cfg.scheme.sigma1 = to_double(*kv);
  if (const KeyValue* kv = get("scheme", "sigma2")) cfg.scheme.sigma2 = to_double(*kv);
  if (const KeyValue* kv = get("scheme", "m")) {
    cfg.scheme.m = to_double(*kv);
    cfg.scheme.has_m = true;
  }
  if (const KeyValue* kv = get("scheme", "tau")) cfg.scheme.tau = to_double(*kv);
  if (const KeyValue* kv = get("scheme", "T")) cfg.scheme.t_end = to_double(*kv);
  if (const KeyValue* kv = get("scheme", "form")) {
    if (kv->value == "nondivergent") {
      cfg.scheme.form = ConvectionForm::Nondivergent;
    } else if (kv->value == "divergent") {
      cfg.scheme.form = ConvectionForm::Divergent;
    } else if (kv->value == "skew") {
      cfg.scheme.form = ConvectionForm::SkewSymmetric;
    } else {
      fail(kv->line, "form must be nondivergent | divergent | skew");
    }
  }
  if (const KeyValue* kv = get("scheme", "placement")) {
    if (kv->value == "node") {
      cfg.scheme.placement = CoefficientPlacement::NodeCentered;
    } else if (kv->value == "staggered") {
      cfg.scheme.placement = CoefficientPlacement::Staggered;
    } else {
      fail(kv->line, "placement must be node | staggered");
    }
  }
  if (const KeyValue* kv = get("scheme", "spatial")) {
    if (kv->value == "central") {
      cfg.scheme.spatial = SpatialKind::Central;
    } else if (kv->value == "exponential") {
      cfg.scheme.spatial = SpatialKind::Exponential;
    } else if (kv->value == "upwind") {
      cfg.scheme.spatial = SpatialKind::Upwind;
    } else {
      fail(kv->line, "spatial must be central | exponential | upwind");
    }
  }
  if (const KeyValue* kv = get("scheme", "eta")) cfg.scheme.eta = to_double(*kv);

  if (const KeyValue* kv = get("monitors", "denergy")) {
    cfg.monitors.d_energy = (kv->value == "1" || kv->value == "true");
  }
  if (const KeyValue* kv = get("monitors", "estimate")) cfg.monitors.estimate = kv->value;
  if (const KeyValue* kv = get("monitors", "stability_gate")) {
    if (kv->value != "none" && kv->value != "samarskii" && kv->value != "banach") {
      fail(kv->line, "stability_gate must be none | samarskii | banach");
    }
    cfg.monitors.stability_gate = kv->value;
  }

  if (const KeyValue* kv = get("output", "snapshots")) {
    if (kv->value == "none") {
      cfg.output.snapshots = SnapshotMode::None;
    } else if (kv->value == "final") {
      cfg.output.snapshots = SnapshotMode::Final;
    } else if (kv->value == "all") {
      cfg.output.snapshots = SnapshotMode::All;
    } else {
      fail(kv->line, "snapshots must be none | final | all");
    }
  }

  if (const KeyValue* kv = get("converge", "case")) cfg.converge.case_name = kv->value;
  if (const KeyValue* kv = get("converge", "norm")) cfg.converge.norm = kv->value;
  if (const KeyValue* kv = get("converge", "levels")) cfg.converge.levels = to_int(*kv);
  if (const KeyValue* kv = get("converge", "n0")) cfg.converge.n0 = to_int(*kv);
  if (const KeyValue* kv = get("converge", "tau0")) cfg.converge.tau0 = to_double(*kv);
  if (const KeyValue* kv = get("converge", "refine")) {
    if (kv->value == "space") {
      cfg.converge.refine = ConvergeConfig::Refine::Space;
    } else if (kv->value == "time") {
      cfg.converge.refine = ConvergeConfig::Refine::Time;
    } else if (kv->value == "both") {
      cfg.converge.refine = ConvergeConfig::Refine::Both;
    } else {
      fail(kv->line, "refine must be space | time | both");
    }
  }
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ProblemConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "[domain]\n";
  out << "kind = " << (cfg.domain.kind == DomainConfig::Kind::Rect ? "rect" : "mesh") << "\n";
  out << "l1 = " << cfg.domain.l1 << "\n";
  out << "l2 = " << cfg.domain.l2 << "\n";
  out << "n1 = " << cfg.domain.n1 << "\n";
  out << "n2 = " << cfg.domain.n2 << "\n";
  if (!cfg.domain.mesh_file.empty()) out << "mesh_file = " << cfg.domain.mesh_file << "\n";
  out << "\n[coefficients]\n";
  out << "k = " << cfg.coefficients.k << "\n";
  out << "v1 = " << cfg.coefficients.v1 << "\n";
  out << "v2 = " << cfg.coefficients.v2 << "\n";
  if (!cfg.coefficients.r.empty()) out << "r = " << cfg.coefficients.r << "\n";
  if (!cfg.coefficients.f.empty()) out << "f = " << cfg.coefficients.f << "\n";
  if (!cfg.coefficients.u0.empty()) out << "u0 = " << cfg.coefficients.u0 << "\n";
  if (cfg.coefficients.kappa1 != 0.0) out << "kappa1 = " << cfg.coefficients.kappa1 << "\n";
  if (cfg.coefficients.kappa2 != 0.0) out << "kappa2 = " << cfg.coefficients.kappa2 << "\n";
  out << "\n[scheme]\n";
  out << "family = " << family_name(cfg.scheme.family) << "\n";
  out << "sigma = " << cfg.scheme.sigma << "\n";
  if (cfg.scheme.family == SchemeFamily::TwoLevelSplitWeights) {
    out << "sigma1 = " << cfg.scheme.sigma1 << "\n";
    out << "sigma2 = " << cfg.scheme.sigma2 << "\n";
  }
  if (cfg.scheme.has_m) out << "m = " << cfg.scheme.m << "\n";
  out << "tau = " << cfg.scheme.tau << "\n";
  out << "T = " << cfg.scheme.t_end << "\n";
  out << "form = "
      << (cfg.scheme.form == ConvectionForm::Nondivergent
              ? "nondivergent"
              : cfg.scheme.form == ConvectionForm::Divergent ? "divergent" : "skew")
      << "\n";
  out << "placement = "
      << (cfg.scheme.placement == CoefficientPlacement::NodeCentered ? "node" : "staggered")
      << "\n";
  out << "spatial = "
      << (cfg.scheme.spatial == SpatialKind::Central
              ? "central"
              : cfg.scheme.spatial == SpatialKind::Exponential ? "exponential" : "upwind")
      << "\n";
  out << "eta = " << cfg.scheme.eta << "\n";
  out << "\n[monitors]\n";
  out << "denergy = " << (cfg.monitors.d_energy ? 1 : 0) << "\n";
  out << "estimate = " << cfg.monitors.estimate << "\n";
  out << "stability_gate = " << cfg.monitors.stability_gate << "\n";
  out << "\n[output]\n";
  out << "snapshots = "
      << (cfg.output.snapshots == SnapshotMode::None
              ? "none"
              : cfg.output.snapshots == SnapshotMode::Final ? "final" : "all")
      << "\n";
  out << "\n[converge]\n";
  out << "case = " << cfg.converge.case_name << "\n";
  out << "norm = " << cfg.converge.norm << "\n";
  out << "levels = " << cfg.converge.levels << "\n";
  out << "n0 = " << cfg.converge.n0 << "\n";
  out << "tau0 = " << cfg.converge.tau0 << "\n";
  out << "refine = "
      << (cfg.converge.refine == ConvergeConfig::Refine::Space
              ? "space"
              : cfg.converge.refine == ConvergeConfig::Refine::Time ? "time" : "both")
      << "\n";
  return out.str();
}

CoefficientField ProblemConfig::field() const {
  CoefficientField f;
  f.k = Expr::parse(coefficients.k).fn_space();
  f.v1 = Expr::parse(coefficients.v1).fn();
  f.v2 = Expr::parse(coefficients.v2).fn();
  if (!coefficients.r.empty()) f.r = Expr::parse(coefficients.r).fn();
  if (!coefficients.f.empty()) f.f = Expr::parse(coefficients.f).fn();
  f.kappa1 = coefficients.kappa1;
  f.kappa2 = coefficients.kappa2;
  return f;
}

SchemeSpec ProblemConfig::scheme_spec() const {
  SchemeSpec spec;
  spec.family = scheme.family;
  spec.sigma = scheme.sigma;
  spec.sigma1 = scheme.sigma1;
  spec.sigma2 = scheme.sigma2;
  spec.m = scheme.m;
  spec.tau = scheme.tau;
  spec.t_end = scheme.t_end;
  spec.form = scheme.form;
  spec.placement = scheme.placement;
  return spec;
}

}  // namespace cdlab
