#include "telefid/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "telefid/metrics.hpp"
#include "telefid/optimal.hpp"
#include "telefid/properties.hpp"
#include "telefid/sim.hpp"
#include "telefid/state_io.hpp"

namespace telefid::cli {

using nlohmann::json;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument: return kExitParse;
    case ErrorKind::NonHermitian:
    case ErrorKind::TraceNotOne:
    case ErrorKind::NotPositive:
    case ErrorKind::NotEntangled:
    case ErrorKind::PreconditionFailed:
    case ErrorKind::DesignTooWeak: return kExitInvalidState;
    case ErrorKind::OutOfRange: return kExitRange;
    case ErrorKind::MismatchedProperty: return kExitMismatch;
  }
  return kExitParse;
}

double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json round_numbers(json doc) {
  if (doc.is_number_float()) return sig12(doc.get<double>());
  if (doc.is_structured())
    for (auto& v : doc) v = round_numbers(std::move(v));
  return doc;
}

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", sig12(x));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

// ---------------------------------------------------------------------------

namespace {

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

PropertyKind parse_kind(const std::string& s) {
  if (s == "L") return PropertyKind::LinearEntropy;
  if (s == "B") return PropertyKind::ChshB;
  if (s == "C") return PropertyKind::Concurrence;
  throw Error(ErrorKind::InvalidArgument, "unknown kind " + s);
}

// B values typed with a few extra digits can land just above 2 sqrt 2.
double snap_value(PropertyKind kind, double v) {
  const double top = 2.0 * std::numbers::sqrt2;
  if (kind == PropertyKind::ChshB && v > top && v <= top + 1e-9) return top;
  return v;
}

Vec3 parse_vec3(const std::string& s) {
  Vec3 v{};
  std::stringstream ss(s);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) throw Error(ErrorKind::Parse, "expected three comma-separated numbers: " + s);
    std::size_t used = 0;
    try {
      v[n] = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not a number: " + item);
    }
    if (used != item.size()) throw Error(ErrorKind::Parse, "not a number: " + item);
    ++n;
  }
  if (n != 3) throw Error(ErrorKind::Parse, "expected three comma-separated numbers: " + s);
  return v;
}

void emit(std::ostream& out, const json& doc) { out << round_numbers(doc).dump(2) << '\n'; }

json error_json(const Error& e) {
  json doc = {{"schema_version", kSchemaVersion},
              {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
  if (e.kind() == ErrorKind::NotPositive) doc["error"]["worst_eigenvalue"] = e.value();
  if (e.kind() == ErrorKind::OutOfRange || e.kind() == ErrorKind::MismatchedProperty)
    doc["error"]["value"] = e.value();
  return doc;
}

}  // namespace

json canonical_to_json(const CanonicalForm& c) {
  return {{"t_abs", vec_json(c.t_abs)},
          {"lambda", json::array({c.lambda[0], c.lambda[1], c.lambda[2]})},
          {"det_class", to_string(c.det_class)},
          {"r", vec_json(c.r)},
          {"s", vec_json(c.s)},
          {"degenerate", c.degenerate}};
}

json analysis_report(const DensityMatrix& rho) {
  const CanonicalForm c = canonicalize(rho);
  const TeleportMetrics m = assess(c);
  const PropertyReport p = properties(rho);
  const auto pt = hermitian_eig(partial_transpose(rho));
  const double neg_bound = (2.0 + p.negativity) / 3.0;
  const double conc_bound = (2.0 + p.concurrence) / 3.0;

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["input"] = state_to_json(rho, StateLayout::HilbertSchmidt)["hs"];
  doc["canonical"] = canonical_to_json(c);
  doc["metrics"] = {{"F", m.f_max}, {"delta", m.delta}, {"useful", m.useful}, {"universal", m.universal}};
  doc["properties"] = {{"L", p.linear_entropy},
                       {"M", p.chsh_m},
                       {"B", p.chsh_b},
                       {"C", p.concurrence},
                       {"N", p.negativity}};
  doc["saturation"] = {{"lambda_min", pt.values[0]},
                       {"eigvec_max_entangled", is_maximally_entangled(pt.vector(0))}};
  doc["bounds"] = {{"F", m.f_max},
                   {"negativity_bound", neg_bound},
                   {"concurrence_bound", conc_bound},
                   {"F_le_negativity_bound", m.f_max <= neg_bound + 1e-9},
                   {"negativity_bound_le_concurrence_bound", neg_bound <= conc_bound + 1e-9}};
  return doc;
}

std::string analysis_text(const json& report) {
  const json r = round_numbers(report);
  std::ostringstream os;
  auto vec = [](const json& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].dump();
    return "(" + s + ")";
  };
  const json& c = r["canonical"];
  os << "canonical\n";
  os << "  t_abs       " << vec(c["t_abs"]) << '\n';
  os << "  lambda      " << vec(c["lambda"]) << '\n';
  os << "  det_class   " << c["det_class"].get<std::string>() << '\n';
  os << "  r           " << vec(c["r"]) << '\n';
  os << "  s           " << vec(c["s"]) << '\n';
  os << "  degenerate  " << c["degenerate"].dump() << '\n';
  os << "metrics\n";
  for (const char* k : {"F", "delta", "useful", "universal"}) os << "  " << k << std::string(12 - std::strlen(k), ' ') << r["metrics"][k].dump() << '\n';
  os << "properties\n";
  for (const char* k : {"L", "M", "B", "C", "N"}) os << "  " << k << std::string(12 - std::strlen(k), ' ') << r["properties"][k].dump() << '\n';
  os << "saturation\n";
  os << "  lambda_min  " << r["saturation"]["lambda_min"].dump() << '\n';
  os << "  eigvec_max_entangled  " << r["saturation"]["eigvec_max_entangled"].dump() << '\n';
  os << "bounds\n";
  os << "  F <= (2+N)/3 <= (2+C)/3   " << r["bounds"]["F"].dump() << " <= " << r["bounds"]["negativity_bound"].dump()
     << " <= " << r["bounds"]["concurrence_bound"].dump() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

int cmd_analyze(const std::string& file, bool text, std::ostream& out) {
  const json report = analysis_report(read_state_file(file));
  if (text) {
    out << analysis_text(report);
  } else {
    json doc = report;
    doc["input"] = {{"file", file}, {"hs", report["input"]}};
    emit(out, doc);
  }
  return kExitOk;
}

int cmd_construct(const std::string& kind_s, double value, const std::string& r_s, const std::string& path,
                  std::ostream& out) {
  const PropertyKind kind = parse_kind(kind_s);
  value = snap_value(kind, value);
  Vec3 r{};
  if (!r_s.empty()) {
    if (kind != PropertyKind::Concurrence)
      throw Error(ErrorKind::InvalidArgument, "--r is only meaningful for --kind C");
    r = parse_vec3(r_s);
  }
  const OptimalFamilyMember member = construct_optimal(kind, value, r);
  write_state_file(path, member.state);

  const TeleportMetrics m = assess(member.state);
  emit(out, {{"schema_version", kSchemaVersion},
             {"kind", to_string(kind)},
             {"value", value},
             {"out", path},
             {"t_abs_target", vec_json(member.spec.t_abs_target)},
             {"F_largest", member.spec.f_largest},
             {"F", m.f_max},
             {"delta", m.delta},
             {"local_vector_constraint", to_string(member.spec.local_vector_constraint)}});
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& kind_s, double value, std::ostream& out) {
  const PropertyKind kind = parse_kind(kind_s);
  value = snap_value(kind, value);
  const DensityMatrix rho = read_state_file(file);
  const OptimalityVerdict v = check_optimal(rho, kind, value);
  const OptimalityWitness& w = v.witness;
  json witness = {{"failed", w.failed},
                  {"measured_value", w.measured_value},
                  {"F", w.f_max},
                  {"F_largest", w.f_largest},
                  {"t_sum", w.t_sum},
                  {"target_sum", w.target_sum},
                  {"max_pair_gap", w.max_pair_gap},
                  {"delta", w.delta},
                  {"det_class", to_string(w.det_class)}};
  if (w.saturation) witness["saturation"] = *w.saturation;
  emit(out, {{"schema_version", kSchemaVersion},
             {"file", file},
             {"kind", to_string(kind)},
             {"value", value},
             {"optimal", v.is_optimal},
             {"largest_max_fidelity", v.is_largest_max_fidelity},
             {"zero_deviation", v.is_zero_deviation},
             {"witness", witness}});
  return v.is_optimal ? kExitOk : kExitNotOptimal;
}

struct SweepRow {
  double value = 0.0;
  double f_closed_form = 0.0;
  double t_abs = 0.0;
  double f_oracle = 0.0;
  double delta_oracle = 0.0;
};

std::vector<SweepRow> sweep_rows(PropertyKind kind, double from, double to, int steps) {
  std::vector<SweepRow> rows(steps);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(steps));
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < steps; i += static_cast<int>(workers)) {
          const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);
          const auto member = construct_optimal(kind, v);
          const FidelityStats st = fidelity_stats(member.state);
          rows[i] = {v, member.spec.f_largest, member.spec.t_abs_target[0], st.mean, st.deviation};
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

int cmd_sweep(const std::string& kind_s, double from, double to, int steps, const std::string& path,
              std::ostream& out) {
  const PropertyKind kind = parse_kind(kind_s);
  from = snap_value(kind, from);
  to = snap_value(kind, to);
  require_admissible(kind, from);
  require_admissible(kind, to);
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "--steps must be at least 1");

  const auto rows = sweep_rows(kind, from, to, steps);
  std::ostringstream csv;
  const char* header[] = {"value", "f_closed_form", "t_abs", "f_oracle", "delta_oracle"};
  for (int i = 0; i < 5; ++i) csv << (i ? "," : "") << csv_field(header[i]);
  csv << "\r\n";
  double worst = 0.0;
  for (const auto& row : rows) {
    worst = std::max(worst, std::abs(row.f_closed_form - row.f_oracle));
    csv << format12(row.value) << ',' << format12(row.f_closed_form) << ',' << format12(row.t_abs) << ','
        << format12(row.f_oracle) << ',' << format12(row.delta_oracle) << "\r\n";
  }

  if (path.empty() || path == "-") {
    out << csv.str();
    return kExitOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << csv.str();
  emit(out, {{"schema_version", kSchemaVersion},
             {"kind", to_string(kind)},
             {"rows", steps},
             {"out", path},
             {"max_abs_f_gap", worst}});
  return kExitOk;
}

int cmd_oracle(const std::string& file, std::size_t mc, std::uint64_t seed, std::ostream& out) {
  const DensityMatrix rho = read_state_file(file);
  const CanonicalForm c = canonicalize(rho);
  const TeleportMetrics m = assess(c);
  const DensityMatrix canon = apply_local(rho, c.u1.matrix(), c.u2.matrix());
  const FidelityStats exact = fidelity_stats(canon);
  const FidelityStats raw = fidelity_stats(rho);

  json doc = {{"schema_version", kSchemaVersion},
              {"file", file},
              {"closed_form", {{"F", m.f_max}, {"delta", m.delta}}},
              {"design_exact",
               {{"mean", exact.mean},
                {"second_moment", exact.second_moment},
                {"deviation", exact.deviation},
                {"nodes", exact.n_samples}}},
              {"gap", {{"F", std::abs(exact.mean - m.f_max)}, {"delta", std::abs(exact.deviation - m.delta)}}},
              {"agree", std::abs(exact.mean - m.f_max) <= 1e-9 && std::abs(exact.deviation - m.delta) <= 1e-9},
              {"uncorrected_mean", raw.mean}};
  if (mc > 0) {
    const FidelityStats st = fidelity_stats_mc(canon, mc, seed);
    // The floor keeps zero-variance resources from failing on rounding noise.
    const bool within = std::abs(st.mean - m.f_max) <= 4.0 * st.std_error + 1e-12;
    doc["monte_carlo"] = {{"mean", st.mean},
                          {"deviation", st.deviation},
                          {"std_error", st.std_error},
                          {"n_samples", st.n_samples},
                          {"seed", seed},
                          {"within_4_sigma", within}};
  }
  emit(out, doc);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Teleportation fidelity toolkit for two-qubit states", "telefid"};
  app.require_subcommand(1);

  std::string file, kind, r_text, out_path;
  double value = 0.0, from = 0.0, to = 0.0;
  int steps = 0;
  bool as_text = false, as_json = false;
  std::size_t mc = 0;
  std::uint64_t seed = 1;
  const std::vector<std::string> kinds = {"L", "B", "C"};

  auto* analyze = app.add_subcommand("analyze", "Full report for a state file");
  analyze->add_option("state_file", file)->required();
  auto* json_flag = analyze->add_flag("--json", as_json, "JSON output (default)");
  analyze->add_flag("--text", as_text, "Plain text output")->excludes(json_flag);

  auto* construct = app.add_subcommand("construct", "Write an optimal state for a property value");
  construct->add_option("--kind", kind)->required()->check(CLI::IsMember(kinds));
  construct->add_option("--value", value)->required();
  construct->add_option("--r", r_text, "Local vector x,y,z (kind C only)");
  construct->add_option("--out", out_path)->required();

  auto* verify = app.add_subcommand("verify", "Check optimality of a state");
  verify->add_option("state_file", file)->required();
  verify->add_option("--kind", kind)->required()->check(CLI::IsMember(kinds));
  verify->add_option("--value", value)->required();

  auto* sweep = app.add_subcommand("sweep", "CSV of the largest maximal fidelity curve");
  sweep->add_option("--kind", kind)->required()->check(CLI::IsMember(kinds));
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_option("--out", out_path, "CSV path; stdout when omitted");

  auto* oracle = app.add_subcommand("oracle", "Closed forms against the simulated protocol");
  oracle->add_option("state_file", file)->required();
  oracle->add_option("--mc", mc, "Monte Carlo samples (0 disables)");
  oracle->add_option("--seed", seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(file, as_text, out);
    if (construct->parsed()) return cmd_construct(kind, value, r_text, out_path, out);
    if (verify->parsed()) return cmd_verify(file, kind, value, out);
    if (sweep->parsed()) return cmd_sweep(kind, from, to, steps, out_path, out);
    if (oracle->parsed()) return cmd_oracle(file, mc, seed, out);
  } catch (const Error& e) {
    err << round_numbers(error_json(e)).dump() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitParse;
}

}  // namespace telefid::cli
