#pragma once
// Flat config-file format: "[section]" headers and "key = value" lines.
// Expressions are kept verbatim (round-trip is lossless) and compiled on
// demand.

#include <string>

#include "cdlab/expr.hpp"
#include "cdlab/monotone_fd.hpp"
#include "cdlab/time_schemes.hpp"

namespace cdlab {

enum class SpatialKind { Central, Exponential, Upwind };

struct DomainConfig {
  enum class Kind { Rect, Mesh } kind = Kind::Rect;
  double l1 = 1.0, l2 = 1.0;
  int n1 = 16, n2 = 16;
  std::string mesh_file;

  bool operator==(const DomainConfig&) const = default;
};

struct CoefficientConfig {
  std::string k = "1", v1 = "0", v2 = "0", r, f, u0;
  double kappa1 = 0.0, kappa2 = 0.0;  // 0 = unspecified

  bool operator==(const CoefficientConfig&) const = default;
};

struct SchemeConfig {
  SchemeFamily family = SchemeFamily::TwoLevelWeighted;
  double sigma = 1.0, sigma1 = 1.0, sigma2 = 1.0;
  double m = 0.0;
  bool has_m = false;
  double tau = 0.1, t_end = 1.0;
  ConvectionForm form = ConvectionForm::SkewSymmetric;
  CoefficientPlacement placement = CoefficientPlacement::Staggered;
  SpatialKind spatial = SpatialKind::Central;
  double eta = 1.0;  // quadratic regularizer parameter

  bool operator==(const SchemeConfig&) const = default;
};

struct MonitorConfig {
  bool d_energy = false;
  std::string estimate = "none";
  std::string stability_gate = "none";  // none | samarskii | banach

  bool operator==(const MonitorConfig&) const = default;
};

struct OutputConfig {
  SnapshotMode snapshots = SnapshotMode::Final;

  bool operator==(const OutputConfig&) const = default;
};

struct ConvergeConfig {
  std::string case_name = "sine2d";
  std::string norm = "l2";
  int levels = 4;
  int n0 = 8;
  double tau0 = 0.1;
  enum class Refine { Space, Time, Both } refine = Refine::Both;

  bool operator==(const ConvergeConfig&) const = default;
};

struct ProblemConfig {
  DomainConfig domain;
  CoefficientConfig coefficients;
  SchemeConfig scheme;
  MonitorConfig monitors;
  OutputConfig output;
  ConvergeConfig converge;

  bool operator==(const ProblemConfig&) const = default;

  // compiled accessors (throw ParseError on bad expressions)
  CoefficientField field() const;
  SchemeSpec scheme_spec() const;
};

ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::string& path);
std::string serialize_config(const ProblemConfig& config);

}  // namespace cdlab
