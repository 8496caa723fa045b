#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "sfock/composite.hpp"
#include "sfock/quadrature.hpp"
#include "sfock/verify.hpp"

namespace sfock::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  double sigma = 1.0;
  double upsilon = 1.0;
  bool sigma_given = false;
  bool upsilon_given = false;
  Complex zeta{0.0, 0.0};
  Complex xi{0.0, 0.0};
  Complex alpha{0.0, 0.0};
  Complex eta{0.0, 0.0};
  int dim = 0;
  std::optional<double> tol;
  std::string format = "json";
  std::string output_path;
  std::uint64_t seed = VerifyOptions{}.seed;

  std::string family = "coherent";
  int n = 0;
  std::string kind = "displacement";
  std::string input_path;

  std::vector<double> sigmas;
  std::vector<double> upsilons;
  std::vector<double> zeta_abs;
  std::vector<double> rhos;
  std::vector<std::string> observables;
};

// Raw flag text, converted into RunConfig once CLI11 has finished.
struct RawFlags {
  std::string zeta, polar, xi, alpha, eta;
  std::string sigmas, upsilons, zeta_abs, rhos;
  std::string observable = "mean";
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, const char* what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DomainError(std::string(what) + ": cannot read a finite number from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json optional_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json stats_json(const PhotonStats& s) {
  Json j;
  j["mean"] = s.mean;
  j["second_moment"] = s.second_moment;
  j["mandel_q"] = optional_json(s.mandel_q);
  return j;
}

std::string optional_csv(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

double tail_tol(const RunConfig& rc) { return rc.tol.value_or(kDefaultTailTol); }

Json params_json(const RunConfig& rc) {
  Json p;
  p["sigma"] = rc.sigma;
  p["upsilon"] = rc.upsilon;
  p["zeta"] = complex_json(rc.zeta);
  p["xi"] = complex_json(rc.xi);
  p["alpha"] = complex_json(rc.alpha);
  p["eta"] = complex_json(rc.eta);
  p["dim"] = rc.dim;
  p["tol"] = optional_json(rc.tol);
  p["seed"] = rc.seed;
  if (rc.command == "state" || rc.command == "stats") {
    p["family"] = rc.family;
    p["n"] = rc.n;
  }
  if (rc.command == "stats") p["input"] = rc.input_path.empty() ? Json(nullptr) : Json(rc.input_path);
  if (rc.command == "operator") p["kind"] = rc.kind;
  if (rc.command == "sweep") {
    p["sigmas"] = rc.sigmas;
    p["upsilons"] = rc.upsilons;
    p["zeta_abs"] = rc.zeta_abs;
    p["rhos"] = rc.rhos;
    p["observables"] = rc.observables;
  }
  return p;
}

// A command's output before serialization: a JSON view and a CSV table.
struct Report {
  Json results;
  Json audit = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kSuccess;
};

std::string render(const RunConfig& rc, const Report& report) {
  std::ostringstream os;
  if (rc.format == "csv") {
    auto write_row = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    };
    write_row(report.csv_header);
    for (const auto& row : report.csv_rows) write_row(row);
  } else {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = rc.command;
    doc["params"] = params_json(rc);
    doc["results"] = report.results;
    doc["audit"] = report.audit;
    os << doc.dump(2) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- state

struct BuiltState {
  FockVector state;
  Json audit;
  std::optional<StretchLabel> coherent_label;
};

bool is_family(const std::string& f) {
  return f == "coherent" || f == "displaced-number" || f == "squeezed-coherent" ||
         f == "squeezed-displaced-number" || f == "modified-coherent";
}

BuiltState build_state(const RunConfig& rc) {
  const double tol = tail_tol(rc);
  const StretchLabel label(rc.zeta, rc.sigma);
  BuiltState built;
  Json audit;

  if (rc.family == "coherent") {
    const TruncationConfig cfg = rc.dim > 0 ? TruncationConfig(rc.dim, tol) : TruncationConfig::for_mean(label.intensity(), tol);
    built.state = make_state(label, cfg);
    built.coherent_label = label;
    audit["dim"] = cfg.dim();
    audit["tail_tol"] = cfg.tail_tol();
    audit["tail_bound"] = poisson_tail_bound(label.intensity(), cfg.dim());
    audit["required_dim"] = required_dim(label.intensity(), cfg.tail_tol());
  } else if (rc.family == "modified-coherent") {
    const StretchLabel alpha(rc.alpha, rc.sigma);
    const double mean = std::norm(alpha.w() + label.w());
    const int auto_dim = std::max(required_dim(std::max(mean, label.intensity()), tol),
                                  displacement_buffer(alpha) + 1);
    const TruncationConfig cfg(rc.dim > 0 ? rc.dim : auto_dim, tol);
    built.state = modified_coherent(alpha, label, cfg);
    audit["dim"] = cfg.dim();
    audit["tail_tol"] = cfg.tail_tol();
    audit["tail_bound"] = poisson_tail_bound(mean, cfg.dim());
    audit["prefactor"] = complex_json(modified_displacement_prefactor(alpha, label));
  } else {
    const bool squeezed = rc.family != "displaced-number";
    const SqueezeLabel squeeze(squeezed ? rc.xi : Complex{0.0, 0.0}, rc.upsilon);
    const int n = rc.family == "squeezed-coherent" ? 0 : rc.n;
    const double s = std::sinh(squeeze.squeeze_modulus());
    // <n_hat> in D S|n> is |w|^2 + n cosh 2r + sinh^2 r, bounded by the estimate below.
    const double mean = label.intensity() + n * (1.0 + 2.0 * s * s) + s * s;
    const int buffer = std::max(displacement_buffer(label), squeezed ? squeezing_buffer(squeeze) : 0);
    const int auto_dim = required_dim(mean, tol) + buffer + n;
    const TruncationConfig cfg(rc.dim > 0 ? rc.dim : auto_dim, tol);
    if (rc.family == "displaced-number") {
      built.state = displaced_number(label, n, cfg);
    } else {
      built.state = squeezed_displaced_number({label, squeeze, n}, cfg);
    }
    audit["dim"] = cfg.dim();
    audit["tail_tol"] = cfg.tail_tol();
    audit["buffer"] = buffer;
  }
  audit["edge_mass"] = edge_mass(built.state);
  built.audit = std::move(audit);
  return built;
}

Report cmd_state(const RunConfig& rc) {
  const BuiltState built = build_state(rc);
  const Eigen::VectorXd pmf = pmf_of(built.state);
  Report report;
  Json amps = Json::array();
  Json pmf_json = Json::array();
  for (Eigen::Index k = 0; k < built.state.size(); ++k) {
    amps.push_back(complex_json(built.state(k)));
    pmf_json.push_back(pmf(k));
    report.csv_rows.push_back({std::to_string(k), format_number(built.state(k).real()),
                               format_number(built.state(k).imag()), format_number(pmf(k))});
  }
  report.results["family"] = rc.family;
  report.results["amplitudes"] = std::move(amps);
  report.results["pmf"] = std::move(pmf_json);
  report.results["norm"] = built.state.norm();
  report.audit = built.audit;
  report.csv_header = {"n", "re", "im", "pmf"};
  return report;
}

// ---------------------------------------------------------------- stats

FockVector read_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("stats: cannot open input file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("stats: input is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || doc.value("schema", 0) != 1 || doc.value("command", "") != "state" ||
      !doc.contains("results") || !doc["results"].contains("amplitudes")) {
    throw DomainError("stats: input must be schema-1 output of the state command");
  }
  const auto& amps = doc["results"]["amplitudes"];
  if (!amps.is_array() || amps.empty()) throw DomainError("stats: amplitudes must be a non-empty array");
  FockVector state(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const auto& a = amps[k];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw DomainError("stats: amplitude entries must be [re, im] pairs");
    }
    state(static_cast<Eigen::Index>(k)) = {a[0].get<double>(), a[1].get<double>()};
  }
  return state;
}

Report cmd_stats(const RunConfig& rc) {
  Report report;
  report.csv_header = {"source", "mean", "second_moment", "mandel_q"};
  auto add_row = [&](const std::string& source, const PhotonStats& s) {
    report.results[source] = stats_json(s);
    report.csv_rows.push_back({source, format_number(s.mean), format_number(s.second_moment), optional_csv(s.mandel_q)});
  };

  FockVector state;
  if (!rc.input_path.empty()) {
    state = read_state_json(rc.input_path);
    report.audit["dim"] = state.size();
  } else {
    BuiltState built = build_state(rc);
    if (built.coherent_label) add_row("closed_form", photon_stats(*built.coherent_label));
    state = std::move(built.state);
    report.audit = std::move(built.audit);
  }
  const Eigen::VectorXd pmf = pmf_of(state);
  add_row("truncated_pmf", photon_stats_from_pmf({pmf.data(), static_cast<std::size_t>(pmf.size())}));
  report.results["pmf"] = std::vector<double>(pmf.data(), pmf.data() + pmf.size());
  return report;
}

// ---------------------------------------------------------------- overlap

Report cmd_overlap(const RunConfig& rc) {
  const StretchLabel eta(rc.eta, rc.sigma);
  const StretchLabel zeta(rc.zeta, rc.sigma);
  const double tol = tail_tol(rc);
  const TruncationConfig cfg = rc.dim > 0 ? TruncationConfig(rc.dim, tol)
                                          : TruncationConfig::for_mean(std::max(eta.intensity(), zeta.intensity()), tol);
  const Complex closed = overlap(eta, zeta);
  const Complex truncated = make_state(eta, cfg).dot(make_state(zeta, cfg));

  Report report;
  report.results["closed_form"] = complex_json(closed);
  report.results["abs_sq"] = std::norm(closed);
  report.results["truncated"] = complex_json(truncated);
  report.audit["dim"] = cfg.dim();
  report.audit["tail_tol"] = cfg.tail_tol();
  report.audit["difference"] = std::abs(closed - truncated);
  report.csv_header = {"route", "re", "im", "abs_sq"};
  report.csv_rows.push_back({"closed_form", format_number(closed.real()), format_number(closed.imag()),
                             format_number(std::norm(closed))});
  report.csv_rows.push_back({"truncated", format_number(truncated.real()), format_number(truncated.imag()),
                             format_number(std::norm(truncated))});
  return report;
}

// ---------------------------------------------------------------- operator

Report cmd_operator(const RunConfig& rc) {
  const TruncationConfig cfg(rc.dim > 0 ? rc.dim : 64, tail_tol(rc));
  FockOperator op;
  int buffer = 0;
  Json extra = Json::object();
  if (rc.kind == "displacement" || rc.kind == "normal-ordered") {
    const StretchLabel label(rc.zeta, rc.sigma);
    buffer = displacement_buffer(label);
    if (rc.kind == "displacement") {
      op = displacement(label, cfg);
    } else {
      auto ordered = displacement_normal_ordered(label, cfg);
      extra["converged"] = ordered.converged;
      op = std::move(ordered.op);
    }
  } else if (rc.kind == "standard-displacement") {
    buffer = default_buffer(std::abs(rc.alpha));
    op = standard_displacement(rc.alpha, cfg);
  } else if (rc.kind == "squeeze") {
    const SqueezeLabel label(rc.xi, rc.upsilon);
    buffer = squeezing_buffer(label);
    op = squeezing(label, cfg);
    const auto [u, v] = bogoliubov(label);
    extra["bogoliubov_u"] = u;
    extra["bogoliubov_v"] = complex_json(v);
  } else if (rc.kind == "modified-displacement") {
    const StretchLabel alpha(rc.alpha, rc.sigma);
    const StretchLabel zeta(rc.zeta, rc.sigma);
    buffer = displacement_buffer(alpha);
    op = modified_displacement(alpha, zeta, cfg);
    extra["prefactor"] = complex_json(modified_displacement_prefactor(alpha, zeta));
  } else {
    throw DomainError("operator: unknown kind '" + rc.kind + "'");
  }

  const int block = identity_block(op, buffer);
  const FockOperator gram = op.adjoint() * op - FockOperator::Identity(cfg.dim(), cfg.dim());

  Report report;
  report.results["kind"] = rc.kind;
  Json rows = Json::array();
  for (Eigen::Index m = 0; m < op.rows(); ++m) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < op.cols(); ++k) {
      row.push_back(complex_json(op(m, k)));
      report.csv_rows.push_back(
          {std::to_string(m), std::to_string(k), format_number(op(m, k).real()), format_number(op(m, k).imag())});
    }
    rows.push_back(std::move(row));
  }
  report.results["matrix"] = std::move(rows);
  for (auto& [key, value] : extra.items()) report.results[key] = value;
  report.audit["dim"] = cfg.dim();
  report.audit["buffer"] = buffer;
  report.audit["identity_block"] = block;
  report.audit["unitarity_residual"] = block > 0 ? Json(block_residual(gram, block)) : Json(nullptr);
  report.csv_header = {"m", "n", "re", "im"};
  return report;
}

// ---------------------------------------------------------------- verify

Report cmd_verify(const RunConfig& rc, std::ostream& err) {
  VerifyOptions options;
  options.tol = rc.tol.value_or(options.tol);
  if (rc.sigma_given) options.sigma = rc.sigma;
  if (rc.upsilon_given) options.upsilon = rc.upsilon;
  options.seed = rc.seed;
  if (rc.dim > 0) options.dim = rc.dim;

  const auto checks = run_identity_suite(options);
  Report report;
  report.results = Json::array();
  report.csv_header = {"check", "residual", "cases", "passed", "identity"};
  bool all = true;
  for (const auto& c : checks) {
    Json j;
    j["check"] = c.name;
    j["identity"] = c.identity;
    j["residual"] = c.residual;
    j["cases"] = c.cases;
    j["passed"] = c.passed;
    report.results.push_back(std::move(j));
    report.csv_rows.push_back(
        {c.name, format_number(c.residual), std::to_string(c.cases), c.passed ? "true" : "false", c.identity});
    if (!c.passed) {
      all = false;
      err << "FAILED " << c.name << ": " << c.identity << " (residual " << format_number(c.residual) << " >= tol "
          << format_number(options.tol) << ")\n";
    }
  }
  report.audit["tol"] = options.tol;
  report.audit["dim"] = options.dim;
  report.audit["seed"] = options.seed;
  report.audit["all_passed"] = all;
  report.exit_code = all ? kSuccess : kVerifyFailed;
  return report;
}

// ---------------------------------------------------------------- sweep

bool is_observable(const std::string& o) {
  return o == "mean" || o == "q" || o == "en" || o == "overlap" || o == "residual";
}

Report cmd_sweep(const RunConfig& rc) {
  Report report;
  report.results = Json::array();
  report.csv_header = {"sigma", "upsilon", "zeta_abs", "rho"};
  for (const auto& o : rc.observables) report.csv_header.push_back(o);

  const double zeta_phase = std::arg(rc.zeta);
  const double xi_phase = std::arg(rc.xi);
  const TruncationConfig cfg(rc.dim > 0 ? rc.dim : 128, tail_tol(rc));

  for (double sigma : rc.sigmas) {
    for (double upsilon : rc.upsilons) {
      for (double zabs : rc.zeta_abs) {
        for (double rho : rc.rhos) {
          const StretchLabel label(std::polar(zabs, zeta_phase), sigma);
          const SqueezeLabel squeeze(std::polar(rho, xi_phase), upsilon);
          Json row;
          row["sigma"] = sigma;
          row["upsilon"] = upsilon;
          row["zeta_abs"] = zabs;
          row["rho"] = rho;
          std::vector<std::string> csv = {format_number(sigma), format_number(upsilon), format_number(zabs),
                                          format_number(rho)};
          for (const auto& o : rc.observables) {
            std::optional<double> value;
            if (o == "mean") {
              value = photon_stats(label).mean;
            } else if (o == "q") {
              value = photon_stats(label).mandel_q;
            } else if (o == "en") {
              value = squeezed_expectations({label, squeeze, 0}).en;
            } else if (o == "overlap") {
              value = std::abs(overlap(StretchLabel(rc.eta, sigma), label));
            } else {
              value = annihilation_residual(label, cfg);
            }
            row[o] = optional_json(value);
            csv.push_back(optional_csv(value));
          }
          report.results.push_back(std::move(row));
          report.csv_rows.push_back(std::move(csv));
        }
      }
    }
  }
  report.audit["rows"] = report.csv_rows.size();
  return report;
}

// ---------------------------------------------------------------- parsing

void add_common(CLI::App* sub, RunConfig& rc, RawFlags& raw) {
  sub->add_option("--sigma", rc.sigma, "Stretch exponent in (0, 1]");
  sub->add_option("--upsilon", rc.upsilon, "Squeeze exponent in (0, 1]");
  sub->add_option("--zeta", raw.zeta, "Coherent label as re,im");
  sub->add_option("--polar", raw.polar, "Coherent label as r,theta");
  sub->add_option("--xi", raw.xi, "Squeeze label as re,im");
  sub->add_option("--alpha", raw.alpha, "Second displacement label as re,im");
  sub->add_option("--eta", raw.eta, "Bra label for overlaps as re,im");
  sub->add_option("--dim", rc.dim, "Fock basis size (0 picks one from the tail bound)");
  sub->add_option("--tol", rc.tol, "Tail tolerance, or the pass tolerance for verify");
  sub->add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", rc.output_path, "Write to this file instead of stdout");
  sub->add_option("--seed", rc.seed, "Seed for randomized verify cases");
}

void finalize(RunConfig& rc, const RawFlags& raw, const CLI::App* sub) {
  if (!raw.zeta.empty() && !raw.polar.empty()) throw DomainError("--zeta and --polar are mutually exclusive");
  if (!raw.zeta.empty()) rc.zeta = parse_complex(raw.zeta);
  if (!raw.polar.empty()) rc.zeta = parse_polar(raw.polar);
  if (!raw.xi.empty()) rc.xi = parse_complex(raw.xi);
  if (!raw.alpha.empty()) rc.alpha = parse_complex(raw.alpha);
  if (!raw.eta.empty()) rc.eta = parse_complex(raw.eta);
  rc.sigma_given = sub->count("--sigma") > 0;
  rc.upsilon_given = sub->count("--upsilon") > 0;

  require_unit_exponent(rc.sigma, "--sigma");
  require_unit_exponent(rc.upsilon, "--upsilon");
  if (rc.dim < 0) throw DomainError("--dim must be >= 0");
  if (rc.tol) {
    const double upper = rc.command == "verify" ? INFINITY : 1.0;
    if (!(*rc.tol >= 0.0 && *rc.tol < upper)) throw DomainError("--tol is out of range");
    if (rc.command == "verify" && !(*rc.tol > 0.0)) throw DomainError("--tol must be positive for verify");
  }
  if (rc.n < 0) throw DomainError("--n must be >= 0");
  if (!is_family(rc.family)) throw DomainError("unknown --family '" + rc.family + "'");

  if (rc.command == "sweep") {
    rc.sigmas = raw.sigmas.empty() ? std::vector<double>{rc.sigma} : parse_range(raw.sigmas);
    rc.upsilons = raw.upsilons.empty() ? std::vector<double>{rc.upsilon} : parse_range(raw.upsilons);
    rc.zeta_abs = raw.zeta_abs.empty() ? std::vector<double>{std::abs(rc.zeta)} : parse_range(raw.zeta_abs);
    rc.rhos = raw.rhos.empty() ? std::vector<double>{std::abs(rc.xi)} : parse_range(raw.rhos);
    for (double s : rc.sigmas) require_unit_exponent(s, "--sigmas");
    for (double u : rc.upsilons) require_unit_exponent(u, "--upsilons");
    for (double z : rc.zeta_abs) {
      if (z < 0.0) throw DomainError("--zeta-abs values must be >= 0");
    }
    for (double r : rc.rhos) {
      if (r < 0.0) throw DomainError("--rhos values must be >= 0");
    }
    for (auto part : split(raw.observable, ',')) {
      std::string name(trim(part));
      if (!is_observable(name)) throw DomainError("unknown --observable '" + name + "'");
      rc.observables.push_back(std::move(name));
    }
  }
}

int dispatch(RunConfig& rc, std::ostream& out, std::ostream& err) {
  Report report;
  if (rc.command == "state") {
    report = cmd_state(rc);
  } else if (rc.command == "stats") {
    report = cmd_stats(rc);
  } else if (rc.command == "overlap") {
    report = cmd_overlap(rc);
  } else if (rc.command == "operator") {
    report = cmd_operator(rc);
  } else if (rc.command == "verify") {
    report = cmd_verify(rc, err);
  } else {
    report = cmd_sweep(rc);
  }
  const std::string text = render(rc, report);
  if (rc.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(rc.output_path, std::ios::binary);
    if (!(file << text)) {
      err << "error: cannot write " << rc.output_path << "\n";
      return kConfigError;
    }
  }
  return report.exit_code;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_real(parts[0], "complex value"), 0.0};
  if (parts.size() != 2) throw DomainError("complex value must be written re,im: '" + std::string(text) + "'");
  return {parse_real(parts[0], "complex value"), parse_real(parts[1], "complex value")};
}

Complex parse_polar(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw DomainError("polar value must be written r,theta: '" + std::string(text) + "'");
  const double r = parse_real(parts[0], "polar modulus");
  if (r < 0.0) throw DomainError("polar modulus must be >= 0");
  return std::polar(r, parse_real(parts[1], "polar phase"));
}

std::vector<double> parse_range(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw DomainError("empty range");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw DomainError("range must be a:b:n, got '" + std::string(text) + "'");
    const double a = parse_real(parts[0], "range start");
    const double b = parse_real(parts[1], "range stop");
    const double count = parse_real(parts[2], "range count");
    if (count < 1.0 || count != std::floor(count) || count > 1e6) {
      throw DomainError("range count must be a positive integer");
    }
    const int n = static_cast<int>(count);
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    if (n > 1) values.back() = b;
    return values;
  }
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(parse_real(part, "range value"));
  return values;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  RawFlags raw;
  CLI::App app{"Stretched coherent states, displacement and squeezing operators in a truncated Fock basis",
               "stretched-fock"};
  app.require_subcommand(1);

  auto* state = app.add_subcommand("state", "Amplitudes and photon-number distribution of a state");
  auto* stats = app.add_subcommand("stats", "Photon statistics, closed form and from the truncated pmf");
  auto* ovl = app.add_subcommand("overlap", "<eta|zeta> in closed form and by truncated inner product");
  auto* oper = app.add_subcommand("operator", "Matrix of a displacement or squeezing operator");
  auto* verify = app.add_subcommand("verify", "Run the identity suite; exit 1 if any residual reaches tol");
  auto* sweep = app.add_subcommand("sweep", "Scalar observables over a (sigma, upsilon, |zeta|, rho) grid");

  for (auto* sub : {state, stats, ovl, oper, verify, sweep}) add_common(sub, rc, raw);
  for (auto* sub : {state, stats}) {
    sub->add_option("--family", rc.family,
                    "coherent | displaced-number | squeezed-coherent | squeezed-displaced-number | modified-coherent");
    sub->add_option("--n", rc.n, "Number-state index for displaced families");
  }
  stats->add_option("--input", rc.input_path, "JSON written by the state command");
  oper->add_option("--kind", rc.kind,
                   "displacement | normal-ordered | standard-displacement | squeeze | modified-displacement");
  sweep->add_option("--sigmas", raw.sigmas, "List a,b,... or range a:b:n");
  sweep->add_option("--upsilons", raw.upsilons, "List or range");
  sweep->add_option("--zeta-abs", raw.zeta_abs, "List or range of |zeta|");
  sweep->add_option("--rhos", raw.rhos, "List or range of |xi|");
  sweep->add_option("--observable", raw.observable, "mean | q | en | overlap | residual, comma separated");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  rc.command = chosen->get_name();
  try {
    finalize(rc, raw, chosen);
    return dispatch(rc, out, err);
  } catch (const TruncationError& e) {
    err << "truncation: " << e.what();
    if (e.required_dim() > 0) err << " (required dim " << e.required_dim() << ")";
    err << "\n";
    return kTruncation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace sfock::cli
