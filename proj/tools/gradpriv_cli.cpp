// gradpriv: privacy accounting and leakage calculator for gradient
// perturbation mechanisms.  Batch CLI over the core library: RDP curves,
// (epsilon, delta) conversion, subsampled+composed accounting, Bayes'
// capacities, parameter sweeps, VMF sampling and discrete channel leakage.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gradpriv/accountant.hpp"
#include "gradpriv/dpconvert.hpp"
#include "gradpriv/noisechan.hpp"
#include "gradpriv/qif.hpp"
#include "gradpriv/rdp.hpp"
#include "gradpriv/specfn.hpp"

namespace {

using json = nlohmann::json;
using namespace gradpriv;

constexpr const char* kVersion = "0.1.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All numbers are serialised with 17 significant digits so that output is
// byte-stable and round-trips to the same double.
std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(std::int64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%" PRId64, v);
  return buf;
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  if (s == "inf" || s == "-inf" || s == "nan") return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end != nullptr && *end == '\0';
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string json_value(const std::string& s) {
  if (looks_numeric(s)) return s;
  return "\"" + json_escape(s) + "\"";
}

// Accepts decimal literals and rationals like "1/60000".
double parse_ratio(const std::string& text, const char* what) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator");
    return num / den;
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + ": " + text);
  }
}

struct VariantFlags {
  std::string zhu = "orig";          // orig | paper
  std::string kairouz = "orig";      // orig | paper
  std::string bc = "derivation";     // derivation | theorem
};

AccountantVariants to_accountant_variants(const VariantFlags& v) {
  AccountantVariants out;
  out.zhu = v.zhu == "orig" ? ZhuPrefactor::original : ZhuPrefactor::paper;
  out.kairouz =
      v.kairouz == "orig" ? KairouzBranch::original : KairouzBranch::paper;
  return out;
}

BcGaussianForm to_bc_form(const VariantFlags& v) {
  return v.bc == "derivation" ? BcGaussianForm::derivation
                              : BcGaussianForm::theorem;
}

// One command's result: an ordered input echo plus a named table (scalar
// commands hold exactly one row).  CSV and JSON render the same cells.
struct CommandOutput {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  VariantFlags variants;

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out += columns[i];
      out += (i + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += row[i];
        out += (i + 1 < row.size()) ? ',' : '\n';
      }
    }
    return out;
  }

  std::string to_json() const {
    std::string out = "{\n  \"command\": \"" + json_escape(command) + "\",\n";
    out += "  \"inputs\": {";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      out += "\"" + json_escape(inputs[i].first) +
             "\": " + json_value(inputs[i].second);
      if (i + 1 < inputs.size()) out += ", ";
    }
    out += "},\n  \"outputs\": ";
    if (rows.size() == 1) {
      out += "{";
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out += "\"" + json_escape(columns[i]) +
               "\": " + json_value(rows[0][i]);
        if (i + 1 < columns.size()) out += ", ";
      }
      out += "}";
    } else {
      out += "{\"columns\": [";
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out += "\"" + json_escape(columns[i]) + "\"";
        if (i + 1 < columns.size()) out += ", ";
      }
      out += "], \"rows\": [";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out += "[";
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
          out += json_value(rows[r][i]);
          if (i + 1 < rows[r].size()) out += ", ";
        }
        out += "]";
        if (r + 1 < rows.size()) out += ", ";
      }
      out += "]}";
    }
    out += ",\n  \"variants\": {\"zhu_prefactor\": \"" + variants.zhu +
           "\", \"kairouz_branch\": \"" + variants.kairouz +
           "\", \"bc_gaussian_form\": \"" + variants.bc + "\"},\n";
    out += "  \"version\": \"" + std::string(kVersion) + "\"\n}\n";
    return out;
  }
};

void emit(const CommandOutput& result, const std::string& format,
          const std::string& out_path) {
  const std::string text =
      format == "json" ? result.to_json() : result.to_csv();
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + out_path);
  out << text;
}

struct MechanismFlags {
  std::string mechanism;  // vmf | gauss
  std::int64_t p = 0;
  std::optional<double> kappa;
  std::optional<double> sigma;
  double radius = 1.0;
};

MechanismSpec to_mechanism(const MechanismFlags& f) {
  if (f.mechanism == "vmf") {
    if (!f.kappa) throw UsageError("vmf mechanism requires --kappa");
    return VmfParams{f.p, *f.kappa};
  }
  if (f.mechanism == "gauss") {
    if (!f.sigma) throw UsageError("gauss mechanism requires --sigma");
    return GaussParams{f.p, *f.sigma, f.radius};
  }
  throw UsageError("unknown mechanism: " + f.mechanism);
}

void echo_mechanism(CommandOutput& out, const MechanismFlags& f) {
  out.inputs.emplace_back("mechanism", f.mechanism);
  out.inputs.emplace_back("p", fmt_int(f.p));
  if (f.kappa) out.inputs.emplace_back("kappa", fmt_num(*f.kappa));
  if (f.sigma) out.inputs.emplace_back("sigma", fmt_num(*f.sigma));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("cannot parse " + path + ": " + e.what());
  }
}

double json_ratio(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_ratio(v.get<std::string>(), what);
  throw UsageError(std::string("expected number or ratio string for ") + what);
}

// ---------------------------------------------------------------------------
// subcommand implementations

struct CommonOpts {
  std::string format = "csv";
  std::string out_path;
};

void run_rdp(const MechanismFlags& mech_flags,
             const std::vector<double>& alphas, const VariantFlags& variants,
             const CommonOpts& common) {
  if (alphas.empty()) throw UsageError("rdp: provide --alpha or --alpha-grid");
  const MechanismSpec mech = to_mechanism(mech_flags);
  const RdpCurve curve = make_curve(mech);
  CommandOutput out;
  out.command = "rdp";
  out.variants = variants;
  echo_mechanism(out, mech_flags);
  out.columns = {"alpha", "tau"};
  for (double alpha : alphas) {
    out.rows.push_back({fmt_num(alpha), fmt_num(curve.tau(alpha))});
  }
  emit(out, common.format, common.out_path);
}

void run_convert(const MechanismFlags& mech_flags,
                 const std::optional<double>& epsilon,
                 const std::optional<std::string>& delta_text,
                 const VariantFlags& variants, const CommonOpts& common) {
  if (epsilon.has_value() == delta_text.has_value()) {
    throw UsageError("convert: provide exactly one of --epsilon / --delta");
  }
  const MechanismSpec mech = to_mechanism(mech_flags);
  const RdpCurve curve = make_curve(mech);
  CommandOutput out;
  out.command = "convert";
  out.variants = variants;
  echo_mechanism(out, mech_flags);
  DpGuarantee g;
  if (epsilon) {
    out.inputs.emplace_back("epsilon", fmt_num(*epsilon));
    g = delta_given_epsilon(curve, *epsilon);
  } else {
    const double delta = parse_ratio(*delta_text, "--delta");
    out.inputs.emplace_back("delta", fmt_num(delta));
    g = epsilon_given_delta(curve, delta);
  }
  out.columns = {"epsilon", "delta", "log_delta", "alpha_star"};
  out.rows.push_back({fmt_num(g.epsilon), fmt_num(g.delta),
                      fmt_num(g.log_delta),
                      g.alpha_star ? fmt_num(*g.alpha_star) : "nan"});
  emit(out, common.format, common.out_path);
}

AccountingScenario make_scenario(const std::string& gamma_text,
                                 const std::optional<double>& epochs,
                                 const std::optional<double>& steps,
                                 const std::string& delta_text) {
  if (epochs.has_value() == steps.has_value()) {
    throw UsageError("provide exactly one of --epochs / --steps");
  }
  AccountingScenario s;
  s.gamma = parse_ratio(gamma_text, "--gamma");
  s.compositions = epochs ? *epochs : *steps;
  s.delta_target = parse_ratio(delta_text, "--delta");
  return s;
}

void account_columns(CommandOutput& out, const AccountingResult& r) {
  out.columns = {"epsilon_approach1", "epsilon_approach2", "epsilon_best",
                 "winner",           "alpha_star",         "base_epsilon",
                 "eps_s",            "delta_tilde",        "branch"};
  out.rows.push_back(
      {fmt_num(r.eps_approach1), fmt_num(r.eps_approach2), fmt_num(r.eps_best),
       r.winner,
       r.diag2.alpha_star ? fmt_num(*r.diag2.alpha_star) : "nan",
       fmt_num(r.diag1.base_epsilon), fmt_num(r.diag1.eps_s),
       fmt_num(r.diag1.delta_tilde), fmt_int(r.diag1.branch)});
}

void run_account(const MechanismFlags& mech_flags,
                 const std::string& gamma_text,
                 const std::optional<double>& epochs,
                 const std::optional<double>& steps,
                 const std::string& delta_text, const VariantFlags& variants,
                 const CommonOpts& common) {
  const MechanismSpec mech = to_mechanism(mech_flags);
  const AccountingScenario scenario =
      make_scenario(gamma_text, epochs, steps, delta_text);
  const AccountingResult r =
      best_epsilon(mech, scenario, to_accountant_variants(variants));
  CommandOutput out;
  out.command = "account";
  out.variants = variants;
  echo_mechanism(out, mech_flags);
  out.inputs.emplace_back("gamma", fmt_num(scenario.gamma));
  out.inputs.emplace_back("compositions", fmt_num(scenario.compositions));
  out.inputs.emplace_back("delta", fmt_num(scenario.delta_target));
  account_columns(out, r);
  emit(out, common.format, common.out_path);
}

void run_capacity(const MechanismFlags& mech_flags,
                  const VariantFlags& variants, const CommonOpts& common) {
  const MechanismSpec mech = to_mechanism(mech_flags);
  const CapacityValue cap = mechanism_capacity(mech, to_bc_form(variants));
  CommandOutput out;
  out.command = "capacity";
  out.variants = variants;
  echo_mechanism(out, mech_flags);
  out.inputs.emplace_back("radius", fmt_num(mech_flags.radius));
  out.columns = {"log_capacity", "capacity_or_inf", "variant"};
  out.rows.push_back(
      {fmt_num(cap.log_capacity), fmt_num(cap.capacity), variants.bc});
  emit(out, common.format, common.out_path);
}

void run_compare(const MechanismFlags& mech_flags,
                 const VariantFlags& variants, const CommonOpts& common) {
  if (!mech_flags.kappa || !mech_flags.sigma) {
    throw UsageError("compare: requires both --kappa and --sigma");
  }
  const MechanismSpec vmf = VmfParams{mech_flags.p, *mech_flags.kappa};
  const MechanismSpec gauss =
      GaussParams{mech_flags.p, *mech_flags.sigma, mech_flags.radius};
  const BcGaussianForm form = to_bc_form(variants);
  const SafetyOrdering ord = compare_safety(vmf, gauss, form);
  CommandOutput out;
  out.command = "compare";
  out.variants = variants;
  out.inputs.emplace_back("p", fmt_int(mech_flags.p));
  out.inputs.emplace_back("kappa", fmt_num(*mech_flags.kappa));
  out.inputs.emplace_back("sigma", fmt_num(*mech_flags.sigma));
  out.inputs.emplace_back("radius", fmt_num(mech_flags.radius));
  out.columns = {"safer", "log_capacity_vmf", "log_capacity_gauss"};
  const std::string safer = ord == SafetyOrdering::equal
                                ? "equal"
                                : (ord == SafetyOrdering::safer ? "vmf" : "gauss");
  out.rows.push_back({safer,
                      fmt_num(mechanism_capacity(vmf, form).log_capacity),
                      fmt_num(mechanism_capacity(gauss, form).log_capacity)});
  emit(out, common.format, common.out_path);
}

void run_sweep(const std::string& spec_path, const CommonOpts& common) {
  const json spec = load_json_file(spec_path);
  for (const char* key : {"mechanism", "p", "grid", "outputs"}) {
    if (!spec.contains(key)) {
      throw UsageError(std::string("sweep spec: missing field '") + key + "'");
    }
  }
  const std::string mechanism = spec.at("mechanism").get<std::string>();
  if (mechanism != "vmf" && mechanism != "gauss") {
    throw UsageError("sweep spec: mechanism must be 'vmf' or 'gauss'");
  }
  const auto p = spec.at("p").get<std::int64_t>();
  const std::vector<double> grid = spec.at("grid").get<std::vector<double>>();
  const std::vector<std::string> outputs =
      spec.at("outputs").get<std::vector<std::string>>();
  if (grid.empty()) throw UsageError("sweep spec: empty grid");
  if (outputs.empty()) throw UsageError("sweep spec: empty outputs");
  const double radius =
      spec.contains("radius") ? spec.at("radius").get<double>() : 1.0;

  VariantFlags variants;
  if (spec.contains("variants")) {
    const json& v = spec.at("variants");
    if (v.contains("zhu")) variants.zhu = v.at("zhu").get<std::string>();
    if (v.contains("kairouz")) {
      variants.kairouz = v.at("kairouz").get<std::string>();
    }
    if (v.contains("bc")) variants.bc = v.at("bc").get<std::string>();
  }

  const bool needs_accounting = [&] {
    for (const auto& field : outputs) {
      if (field != "log_capacity") return true;
    }
    return false;
  }();
  AccountingScenario scenario;
  if (needs_accounting) {
    for (const char* key : {"gamma", "delta"}) {
      if (!spec.contains(key)) {
        throw UsageError(std::string("sweep spec: missing field '") + key +
                         "' (required for accounting outputs)");
      }
    }
    scenario.gamma = json_ratio(spec.at("gamma"), "gamma");
    scenario.delta_target = json_ratio(spec.at("delta"), "delta");
    if (spec.contains("steps")) {
      scenario.compositions = spec.at("steps").get<double>();
    } else if (spec.contains("epochs")) {
      scenario.compositions = spec.at("epochs").get<double>();
    } else {
      throw UsageError("sweep spec: provide 'epochs' or 'steps'");
    }
  }

  CommandOutput out;
  out.command = "sweep";
  out.variants = variants;
  out.inputs.emplace_back("mechanism", mechanism);
  out.inputs.emplace_back("p", fmt_int(p));
  if (needs_accounting) {
    out.inputs.emplace_back("gamma", fmt_num(scenario.gamma));
    out.inputs.emplace_back("compositions", fmt_num(scenario.compositions));
    out.inputs.emplace_back("delta", fmt_num(scenario.delta_target));
  }
  out.columns.push_back(mechanism == "vmf" ? "kappa" : "sigma");
  for (const auto& field : outputs) out.columns.push_back(field);

  for (double value : grid) {
    const MechanismSpec mech =
        mechanism == "vmf" ? MechanismSpec{VmfParams{p, value}}
                           : MechanismSpec{GaussParams{p, value, radius}};
    std::vector<std::string> row{fmt_num(value)};
    std::optional<AccountingResult> acct;
    if (needs_accounting) {
      acct = best_epsilon(mech, scenario, to_accountant_variants(variants));
    }
    for (const auto& field : outputs) {
      if (field == "epsilon_approach1") {
        row.push_back(fmt_num(acct->eps_approach1));
      } else if (field == "epsilon_approach2") {
        row.push_back(fmt_num(acct->eps_approach2));
      } else if (field == "epsilon_best") {
        row.push_back(fmt_num(acct->eps_best));
      } else if (field == "winner") {
        row.push_back(acct->winner);
      } else if (field == "log_capacity") {
        row.push_back(
            fmt_num(mechanism_capacity(mech, to_bc_form(variants)).log_capacity));
      } else {
        throw UsageError("sweep spec: unknown output field '" + field + "'");
      }
    }
    out.rows.push_back(std::move(row));
  }
  emit(out, common.format, common.out_path);
}

void run_sample(std::int64_t p, double kappa, std::int64_t count,
                std::uint64_t seed, const std::string& mean_path,
                const VariantFlags& variants, const CommonOpts& common) {
  if (p < 2) throw UsageError("sample: --p must be >= 2");
  if (count < 1) throw UsageError("sample: --count must be >= 1");
  GradientVector mean(static_cast<std::size_t>(p), 0.0);
  mean[0] = 1.0;
  if (!mean_path.empty()) {
    const json j = load_json_file(mean_path);
    const json& arr = j.is_object() && j.contains("mean") ? j.at("mean") : j;
    if (!arr.is_array() ||
        arr.size() != static_cast<std::size_t>(p)) {
      throw UsageError("sample: mean file must hold a length-p array");
    }
    mean = arr.get<std::vector<double>>();
    mean = normalize(mean);
  }
  RandomSource rng(seed);
  CommandOutput out;
  out.command = "sample";
  out.variants = variants;
  out.inputs.emplace_back("p", fmt_int(p));
  out.inputs.emplace_back("kappa", fmt_num(kappa));
  out.inputs.emplace_back("count", fmt_int(count));
  out.inputs.emplace_back("seed", fmt_int(static_cast<std::int64_t>(seed)));
  for (std::int64_t i = 0; i < p; ++i) {
    out.columns.push_back("x" + fmt_int(i));
  }
  out.columns.push_back("norm");
  for (std::int64_t i = 0; i < count; ++i) {
    const GradientVector y = vmf_sample(mean, kappa, rng);
    std::vector<std::string> row;
    row.reserve(y.size() + 1);
    for (double v : y) row.push_back(fmt_num(v));
    row.push_back(fmt_num(l2_norm(y)));
    out.rows.push_back(std::move(row));
  }
  emit(out, common.format, common.out_path);
}

void run_channel_capacity(const std::string& channel_path,
                          const std::string& prior_path,
                          const VariantFlags& variants,
                          const CommonOpts& common) {
  const json j = load_json_file(channel_path);
  const json& arr =
      j.is_object() && j.contains("channel") ? j.at("channel") : j;
  if (!arr.is_array()) {
    throw UsageError("channel-capacity: channel file must hold a 2-d array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : arr) {
    rows.push_back(row.get<std::vector<double>>());
  }
  Channel channel = [&] {
    try {
      return Channel::from_rows(rows);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("channel-capacity: ") + e.what());
    }
  }();

  Prior prior = uniform_prior(channel.rows());
  if (!prior_path.empty()) {
    const json pj = load_json_file(prior_path);
    const json& parr =
        pj.is_object() && pj.contains("prior") ? pj.at("prior") : pj;
    if (!parr.is_array()) {
      throw UsageError("channel-capacity: prior file must hold an array");
    }
    prior.weights = parr.get<std::vector<double>>();
  }

  const CapacityValue cap = bayes_capacity_channel(channel);
  CommandOutput out;
  out.command = "channel-capacity";
  out.variants = variants;
  out.inputs.emplace_back("rows", fmt_int(static_cast<std::int64_t>(channel.rows())));
  out.inputs.emplace_back("cols", fmt_int(static_cast<std::int64_t>(channel.cols())));
  out.columns = {"capacity", "log_capacity", "prior_vulnerability",
                 "posterior_vulnerability", "leakage"};
  out.rows.push_back({fmt_num(cap.capacity), fmt_num(cap.log_capacity),
                      fmt_num(prior_vulnerability(prior)),
                      fmt_num(posterior_vulnerability(prior, channel)),
                      fmt_num(leakage(prior, channel))});
  emit(out, common.format, common.out_path);
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("cannot parse --alpha-grid entry: " + item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy accounting and leakage for gradient perturbation"};
  app.require_subcommand(1);

  MechanismFlags mech;
  VariantFlags variants;
  CommonOpts common;
  std::optional<double> epsilon;
  std::optional<std::string> delta_text;
  std::string gamma_text = "1";
  std::optional<double> epochs;
  std::optional<double> steps;
  std::optional<double> alpha;
  std::string alpha_grid_text;
  std::string spec_path;
  std::string channel_path;
  std::string prior_path;
  std::string mean_path;
  std::int64_t count = 1;
  std::uint64_t seed = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", common.out_path, "Write output to FILE");
    cmd->add_option("--variant-zhu", variants.zhu,
                    "Subsampled-RDP prefactor variant")
        ->check(CLI::IsMember({"orig", "paper"}));
    cmd->add_option("--variant-kairouz", variants.kairouz,
                    "Composition branch variant")
        ->check(CLI::IsMember({"orig", "paper"}));
    cmd->add_option("--variant-bc", variants.bc,
                    "Gaussian capacity closed form")
        ->check(CLI::IsMember({"derivation", "theorem"}));
  };
  const auto add_mechanism = [&](CLI::App* cmd, bool require) {
    auto* m = cmd->add_option("--mechanism", mech.mechanism,
                              "Mechanism family (vmf | gauss)")
                  ->check(CLI::IsMember({"vmf", "gauss"}));
    if (require) m->required();
    cmd->add_option("--p", mech.p, "Gradient dimension")->required();
    cmd->add_option("--kappa", [&](const std::vector<std::string>& v) {
         mech.kappa = std::stod(v.back());
         return true;
       }, "VMF concentration");
    cmd->add_option("--sigma", [&](const std::vector<std::string>& v) {
         mech.sigma = std::stod(v.back());
         return true;
       }, "Gaussian noise multiplier");
    cmd->add_option("--radius", mech.radius, "Input ball radius");
  };

  // rdp
  auto* rdp_cmd = app.add_subcommand("rdp", "Tabulate the RDP curve tau(alpha)");
  add_mechanism(rdp_cmd, true);
  rdp_cmd->add_option("--alpha", [&](const std::vector<std::string>& v) {
    alpha = std::stod(v.back());
    return true;
  }, "Single order");
  rdp_cmd->add_option("--alpha-grid", alpha_grid_text,
                      "Comma-separated list of orders");
  add_common(rdp_cmd);

  // convert
  auto* convert_cmd = app.add_subcommand(
      "convert", "Convert between the RDP curve and (epsilon, delta)");
  add_mechanism(convert_cmd, true);
  convert_cmd->add_option("--epsilon", [&](const std::vector<std::string>& v) {
    epsilon = std::stod(v.back());
    return true;
  }, "Target epsilon (outputs delta)");
  convert_cmd->add_option("--delta", [&](const std::vector<std::string>& v) {
    delta_text = v.back();
    return true;
  }, "Target delta (outputs epsilon); accepts rationals like 1/60000");
  add_common(convert_cmd);

  // account
  auto* account_cmd = app.add_subcommand(
      "account", "Best epsilon under subsampling and composition");
  add_mechanism(account_cmd, true);
  account_cmd->add_option("--gamma", gamma_text, "Subsampling probability")
      ->required();
  account_cmd->add_option("--epochs", [&](const std::vector<std::string>& v) {
    epochs = std::stod(v.back());
    return true;
  }, "Composition count (epochs)");
  account_cmd->add_option("--steps", [&](const std::vector<std::string>& v) {
    steps = std::stod(v.back());
    return true;
  }, "Composition count (explicit steps)");
  account_cmd
      ->add_option("--delta",
                   [&](const std::vector<std::string>& v) {
                     delta_text = v.back();
                     return true;
                   },
                   "Target delta")
      ->required();
  add_common(account_cmd);

  // capacity
  auto* capacity_cmd =
      app.add_subcommand("capacity", "Continuous Bayes' capacity");
  add_mechanism(capacity_cmd, true);
  add_common(capacity_cmd);

  // compare
  auto* compare_cmd = app.add_subcommand(
      "compare", "Order VMF and Gaussian by reconstruction safety");
  compare_cmd->add_option("--p", mech.p, "Gradient dimension")->required();
  compare_cmd->add_option("--kappa", [&](const std::vector<std::string>& v) {
    mech.kappa = std::stod(v.back());
    return true;
  }, "VMF concentration")->required();
  compare_cmd->add_option("--sigma", [&](const std::vector<std::string>& v) {
    mech.sigma = std::stod(v.back());
    return true;
  }, "Gaussian noise multiplier")->required();
  compare_cmd->add_option("--radius", mech.radius, "Input ball radius");
  add_common(compare_cmd);

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run a parameter grid from a spec file");
  sweep_cmd->add_option("--spec", spec_path, "JSON sweep description")
      ->required();
  add_common(sweep_cmd);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw VMF noise samples");
  sample_cmd->add_option("--p", mech.p, "Dimension")->required();
  sample_cmd->add_option("--kappa", [&](const std::vector<std::string>& v) {
    mech.kappa = std::stod(v.back());
    return true;
  }, "Concentration")->required();
  sample_cmd->add_option("--count", count, "Number of samples")->required();
  sample_cmd->add_option("--seed", seed, "RNG seed");
  sample_cmd->add_option("--mean", mean_path,
                         "JSON file with the mean direction (default: e_1)");
  add_common(sample_cmd);

  // channel-capacity
  auto* channel_cmd = app.add_subcommand(
      "channel-capacity", "Discrete Bayes' capacity and leakage");
  channel_cmd->add_option("--channel", channel_path, "JSON channel matrix")
      ->required();
  channel_cmd->add_option("--prior", prior_path,
                          "JSON prior (default: uniform)");
  add_common(channel_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (rdp_cmd->parsed()) {
      std::vector<double> alphas;
      if (alpha) alphas.push_back(*alpha);
      if (!alpha_grid_text.empty()) {
        const auto grid = parse_alpha_grid(alpha_grid_text);
        alphas.insert(alphas.end(), grid.begin(), grid.end());
      }
      run_rdp(mech, alphas, variants, common);
    } else if (convert_cmd->parsed()) {
      run_convert(mech, epsilon, delta_text, variants, common);
    } else if (account_cmd->parsed()) {
      if (!delta_text) throw UsageError("account: --delta is required");
      run_account(mech, gamma_text, epochs, steps, *delta_text, variants,
                  common);
    } else if (capacity_cmd->parsed()) {
      run_capacity(mech, variants, common);
    } else if (compare_cmd->parsed()) {
      run_compare(mech, variants, common);
    } else if (sweep_cmd->parsed()) {
      run_sweep(spec_path, common);
    } else if (sample_cmd->parsed()) {
      if (!mech.kappa) throw UsageError("sample: --kappa is required");
      run_sample(mech.p, *mech.kappa, count, seed, mean_path, variants,
                 common);
    } else if (channel_cmd->parsed()) {
      run_channel_capacity(channel_path, prior_path, variants, common);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
