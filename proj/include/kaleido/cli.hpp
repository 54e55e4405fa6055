#pragma once

// Command-line front end. Every command produces one OutputRecord
//
//   {"command": ..., "params": {...}, "payload": {...}, "tool_version": ...}
//
// serialized as JSON (default) or as a single CSV table with a fixed header.
// Floats are always written with 17 significant digits so output is
// byte-for-byte reproducible and round-trips exactly.
//
// Exit codes: 0 success, 1 a numerical check missed its tolerance,
// 2 usage or input error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kaleido/errors.hpp"
#include "kaleido/fock.hpp"
#include "kaleido/gates.hpp"
#include "kaleido/kaleidoscope.hpp"
#include "kaleido/modexp.hpp"

namespace kaleido::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr double kDefaultEps = 1e-14;

enum ExitCode : int { kSuccess = 0, kToleranceFailure = 1, kUsageError = 2 };

// ---------------------------------------------------------------- parsing

namespace detail {

inline std::optional<double> parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace detail

/// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" (with optional exponents, e.g.
/// "1e-3-2.5e+1i"). Returns nullopt on anything else.
inline std::optional<complex> parse_complex(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    const auto re = detail::parse_real(text);
    if (!re) return std::nullopt;
    return complex{*re, 0.0};
  }

  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the sign of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  const std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);

  double re = 0.0;
  if (!re_text.empty()) {
    const auto parsed = detail::parse_real(re_text);
    if (!parsed) return std::nullopt;
    re = *parsed;
  }
  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    const auto parsed = detail::parse_real(im_text);
    if (!parsed) return std::nullopt;
    im = *parsed;
  }
  return complex{re, im};
}

// ---------------------------------------------------------------- output

/// 17 significant digits, locale independent. -0 prints as 0; non-finite as null.
inline std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("null");
}

inline Json to_json(complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

namespace detail {

inline bool is_inline(const Json& j) {
  if (j.is_primitive()) return true;
  if (j.is_object()) {
    return std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
  }
  return std::all_of(j.begin(), j.end(), [](const Json& v) { return !v.is_array() && is_inline(v); });
}

inline void write_scalar(std::ostream& os, const Json& j) {
  switch (j.type()) {
    case Json::value_t::number_float: os << format_double(j.get<double>()); break;
    default: os << j.dump(); break;
  }
}

inline void write_json(std::ostream& os, const Json& j, int depth) {
  if (j.is_primitive()) {
    write_scalar(os, j);
    return;
  }
  const bool object = j.is_object();
  const char open = object ? '{' : '[';
  const char close = object ? '}' : ']';
  if (j.empty()) {
    os << open << close;
    return;
  }
  const bool flat = is_inline(j);
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  os << open;
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) os << (flat ? ", " : ",");
    first = false;
    if (!flat) os << '\n' << pad;
    if (object) os << Json(it.key()).dump() << ": ";
    write_json(os, *it, depth + 1);
  }
  if (!flat) os << '\n' << std::string(static_cast<std::size_t>(2 * depth), ' ');
  os << close;
}

}  // namespace detail

/// Deterministic pretty printer: keys in insertion order, two-space indent,
/// containers of scalars kept on one line.
inline void write_json(std::ostream& os, const Json& j) {
  detail::write_json(os, j, 0);
  os << '\n';
}

struct OutputRecord {
  std::string command;
  Json params = Json::object();
  Json payload = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kSuccess;

  Json to_json() const {
    return Json{{"command", command}, {"params", params}, {"payload", payload}, {"tool_version", kToolVersion}};
  }
};

inline void write_csv(std::ostream& os, const OutputRecord& record) {
  auto write_row = [&os](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  };
  write_row(record.csv_header);
  for (const auto& row : record.csv_rows) write_row(row);
}

// ---------------------------------------------------------------- commands

namespace detail {

inline std::string str(double v) { return format_double(v); }
inline std::string str(long long v) { return std::to_string(v); }
inline std::string str(int v) { return std::to_string(v); }
inline std::string str(bool v) { return v ? "true" : "false"; }

inline Json matrix_json(const SquareMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(cli::to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Gram tolerance for a basis built with tail budget eps.
inline double basis_tolerance(double eps) { return std::max(10.0 * eps, 1e-12); }

inline OutputRecord cmd_basis(int n, complex alpha, double eps, std::ostream& diag) {
  const auto basis = kaleidoscope_basis(n, alpha, eps);
  const auto report = gram(basis.states);

  OutputRecord rec;
  rec.command = "basis";
  rec.params = Json{{"n", n}, {"alpha", to_json(alpha)}, {"eps", eps}, {"dim", basis.dim}};

  Json states = Json::array();
  for (const auto& s : basis.states) {
    Json amps = Json::array();
    for (const auto& a : s.amps()) amps.push_back(to_json(a));
    states.push_back(std::move(amps));
  }
  rec.payload = Json{{"dim", basis.dim},
                     {"norm_constants", basis.norm_constants},
                     {"gram_max_deviation", report.max_deviation},
                     {"ill_conditioned", basis.ill_conditioned},
                     {"states", std::move(states)}};

  rec.csv_header = {"state", "level", "re", "im"};
  for (std::size_t k = 0; k < basis.states.size(); ++k)
    for (std::size_t m = 0; m < basis.dim; ++m) {
      const auto a = basis.states[k][m];
      rec.csv_rows.push_back({std::to_string(k), std::to_string(m), detail::str(a.real()), detail::str(a.imag())});
    }

  for (int k : basis.ill_conditioned) {
    diag << "ConditioningWarning: f_" << k << "(|alpha|^2) < 1e-12 exp(|alpha|^2); state " << k
         << " has a large normalization constant\n";
  }
  if (!(report.max_deviation < basis_tolerance(eps))) {
    diag << "basis: Gram deviation " << format_double(report.max_deviation) << " exceeds "
         << format_double(basis_tolerance(eps)) << '\n';
    rec.exit_code = kToleranceFailure;
  }
  return rec;
}

inline double modexp_tolerance(complex x) { return 1e-12 * std::max(1.0, std::exp(std::abs(x))); }

inline OutputRecord cmd_modexp(int n, int s, complex x, std::ostream& diag) {
  const ModExpSpec spec(n, s);
  const complex series = modexp_series(spec, x);
  const complex roots = modexp_roots(spec, x);
  const double diff = std::abs(series - roots);

  OutputRecord rec;
  rec.command = "modexp";
  rec.params = Json{{"n", n}, {"s", s}, {"x", to_json(x)}};
  rec.payload = Json{{"series", to_json(series)},
                     {"roots", to_json(roots)},
                     {"abs_diff", diff},
                     {"tolerance", modexp_tolerance(x)}};
  rec.csv_header = {"n", "s", "x_re", "x_im", "series_re", "series_im", "roots_re", "roots_im", "abs_diff"};
  rec.csv_rows.push_back({detail::str(n), detail::str(s), detail::str(x.real()), detail::str(x.imag()),
                          detail::str(series.real()), detail::str(series.imag()), detail::str(roots.real()),
                          detail::str(roots.imag()), detail::str(diff)});
  if (!(diff < modexp_tolerance(x))) {
    diag << "modexp: series and root-of-unity values differ by " << format_double(diff) << '\n';
    rec.exit_code = kToleranceFailure;
  }
  return rec;
}

inline constexpr double kLemmaTolerance = 1e-12;

inline OutputRecord cmd_lemma(int n, long long m, long long s, std::ostream& diag) {
  const complex sum = roots_lemma_sum(n, m, s);
  const bool congruent = positive_mod(m - s, n) == 0;
  const double expected = congruent ? static_cast<double>(n) : 0.0;
  const bool matches = std::abs(sum - expected) < kLemmaTolerance;

  OutputRecord rec;
  rec.command = "lemma";
  rec.params = Json{{"n", n}, {"m", m}, {"s", s}};
  rec.payload = Json{{"sum", to_json(sum)}, {"expected", expected}, {"congruent", congruent}, {"matches", matches}};
  rec.csv_header = {"n", "m", "s", "sum_re", "sum_im", "expected", "matches"};
  rec.csv_rows.push_back({detail::str(n), detail::str(m), detail::str(s), detail::str(sum.real()),
                          detail::str(sum.imag()), detail::str(expected), detail::str(matches)});
  if (!matches) {
    diag << "lemma: sum deviates from n*delta by more than " << format_double(kLemmaTolerance) << '\n';
    rec.exit_code = kToleranceFailure;
  }
  return rec;
}

inline constexpr double kGateTolerance = 1e-12;

inline OutputRecord cmd_gates(int n, std::ostream& diag) {
  const auto g = check_gates(n);

  OutputRecord rec;
  rec.command = "gates";
  rec.params = Json{{"n", n}};
  const std::vector<std::pair<const char*, double>> checks = {
      {"dft_unitarity", g.dft_unitarity},
      {"clock_unitarity", g.clock_unitarity},
      {"shift_unitarity", g.shift_unitarity},
      {"clock_order", g.clock_order},
      {"shift_order", g.shift_order},
      {"decomposition", g.decomposition},
      {"weyl_commutation", g.weyl.residual},
      {"weyl_phase_root", g.weyl.root_residual},
      {"weyl_scalar", g.weyl.scalar_residual},
  };
  Json residuals = Json::object();
  rec.csv_header = {"check", "residual", "passed"};
  for (const auto& [name, value] : checks) {
    residuals[name] = value;
    rec.csv_rows.push_back({name, detail::str(value), detail::str(value < kGateTolerance)});
  }
  rec.payload = Json{{"residuals", std::move(residuals)},
                     {"weyl_phase", to_json(g.weyl.phase)},
                     {"tolerance", kGateTolerance},
                     {"passed", g.worst() < kGateTolerance}};
  if (!(g.worst() < kGateTolerance)) {
    diag << "gates: residual " << format_double(g.worst()) << " exceeds tolerance\n";
    rec.exit_code = kToleranceFailure;
  }
  return rec;
}

inline constexpr double kOverlapTolerance = 1e-10;

inline OutputRecord cmd_overlap(int n, complex alpha, double eps, std::ostream& diag) {
  if (n < 1) throw std::invalid_argument("overlap: n must be >= 1");
  const std::size_t dim = truncation_dim(alpha, eps);
  const auto rotated = rotated_coherent_states(n, alpha, dim);
  const auto size = static_cast<std::size_t>(n);
  SquareMatrix closed(size), fock(size);
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      closed(k, l) = rotated_overlap(alpha, n, k, l);
      fock(k, l) = inner_product(rotated[k], rotated[l]);
      worst = std::max(worst, std::abs(closed(k, l) - fock(k, l)));
    }

  OutputRecord rec;
  rec.command = "overlap";
  rec.params = Json{{"n", n}, {"alpha", to_json(alpha)}, {"eps", eps}, {"dim", dim}};
  rec.payload = Json{{"max_discrepancy", worst},
                     {"closed_form", detail::matrix_json(closed)},
                     {"fock", detail::matrix_json(fock)}};
  rec.csv_header = {"k", "l", "closed_re", "closed_im", "fock_re", "fock_im", "abs_diff"};
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t l = 0; l < size; ++l) {
      rec.csv_rows.push_back({std::to_string(k), std::to_string(l), detail::str(closed(k, l).real()),
                              detail::str(closed(k, l).imag()), detail::str(fock(k, l).real()),
                              detail::str(fock(k, l).imag()), detail::str(std::abs(closed(k, l) - fock(k, l)))});
    }
  if (!(worst < kOverlapTolerance)) {
    diag << "overlap: closed form and Fock overlaps differ by " << format_double(worst) << '\n';
    rec.exit_code = kToleranceFailure;
  }
  return rec;
}

// ---------------------------------------------------------------- driver

/// Runs one command line (args excludes the program name). The payload goes
/// to `out` (or to --out FILE), diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kaleidoscope of cat states: qudit bases from rotated coherent states", "kaleido"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  double eps = kDefaultEps;
  std::string out_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--eps", eps, "Poisson tail budget for Fock truncation")->check(CLI::Range(0.0, 1.0));
  app.add_option("--out", out_path, "Write the payload to FILE instead of stdout");

  int n = 0;
  std::string alpha_text, x_text;
  int s = 0;
  long long m = 0, lemma_s = 0;

  auto* basis = app.add_subcommand("basis", "Build the normalized kaleidoscope basis");
  basis->add_option("--n", n, "Number of polygon vertices")->required();
  basis->add_option("--alpha", alpha_text, "Coherent amplitude, e.g. 1+0i")->required();

  auto* modexp = app.add_subcommand("modexp", "Evaluate f_s by series and by roots of unity");
  modexp->add_option("--n", n, "Modulus")->required();
  modexp->add_option("--s", s, "Residue class, 0 <= s < n")->required();
  modexp->add_option("--x", x_text, "Argument (real or a+bi)")->required();

  auto* lemma = app.add_subcommand("lemma", "Sum of q^{2(m-s)j} over the n-gon");
  lemma->add_option("--n", n, "Number of roots")->required();
  lemma->add_option("--m", m, "Exponent")->required();
  lemma->add_option("--s", lemma_s, "Residue")->required();

  auto* gates = app.add_subcommand("gates", "Clock/shift decomposition and unitarity residuals");
  gates->add_option("--n", n, "Dimension")->required();

  auto* overlap = app.add_subcommand("overlap", "Rotated coherent-state overlaps, closed form vs Fock");
  overlap->add_option("--n", n, "Number of polygon vertices")->required();
  overlap->add_option("--alpha", alpha_text, "Coherent amplitude, e.g. 1+0i")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  auto complex_arg = [&](const std::string& text, const char* name) {
    const auto value = parse_complex(text);
    if (!value) throw std::invalid_argument(std::string("cannot parse ") + name + " '" + text + "' as a+bi");
    return *value;
  };

  OutputRecord rec;
  try {
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    if (*basis) {
      rec = cmd_basis(n, complex_arg(alpha_text, "--alpha"), eps, err);
    } else if (*modexp) {
      rec = cmd_modexp(n, s, complex_arg(x_text, "--x"), err);
    } else if (*lemma) {
      rec = cmd_lemma(n, m, lemma_s, err);
    } else if (*gates) {
      rec = cmd_gates(n, err);
    } else {
      rec = cmd_overlap(n, complex_arg(alpha_text, "--alpha"), eps, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot open " << out_path << " for writing\n";
      return kUsageError;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;
  if (format == "csv") {
    write_csv(sink, rec);
  } else {
    write_json(sink, rec.to_json());
  }
  return rec.exit_code;
}

}  // namespace kaleido::cli
