#include "cklab/cli_reports.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace cklab {

namespace {

struct CommandOutcome {
  OrderedJson payload;
  int exit_code = 0;
};

OrderedJson complex_json(Complex z) {
  OrderedJson out;
  out["re"] = z.real();
  out["im"] = z.imag();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CkError(ErrorCode::BadInput, "cannot read input file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

OrderedJson parse_json_text(const std::string& text) {
  OrderedJson parsed = OrderedJson::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw CkError(ErrorCode::BadInput, "input is not valid JSON");
  }
  return parsed;
}

std::vector<int> parse_prefix(const std::string& text) {
  std::vector<int> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CkError(ErrorCode::BadInput,
                    "prefix must be comma-separated symbols");
    }
  }
  if (out.empty()) {
    throw CkError(ErrorCode::BadInput, "prefix must be nonempty");
  }
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConditionIHolds:
    case ErrorCode::ConditionIFails:
    case ErrorCode::UnsupportedShape:
    case ErrorCode::NotPureDegree:
    case ErrorCode::NoConvergence:
      return 2;
    default:
      return 1;
  }
}

// ---- command handlers ----

CommandOutcome run_validate(const ZeroOneMatrix& A) {
  CommandOutcome outcome;
  outcome.payload["valid"] = true;
  outcome.payload["n"] = A.size();
  return outcome;
}

CommandOutcome run_condition_i(const ZeroOneMatrix& A,
                               std::optional<int> oracle_depth) {
  CommandOutcome outcome;
  const ConditionIVerdict verdict = check_condition_I(A);
  outcome.payload["verdict"] = verdict_to_json(verdict);
  if (oracle_depth) {
    const ConditionIVerdict oracle =
        brute_force_condition_I(A, *oracle_depth);
    const bool certified = *oracle_depth >= 2 * A.size() + 1;
    const bool agrees = oracle.holds == verdict.holds;
    outcome.payload["oracle"] = verdict_to_json(oracle);
    outcome.payload["oracle_depth"] = *oracle_depth;
    outcome.payload["oracle_certified"] = certified;
    outcome.payload["oracle_agrees"] = agrees;
    if (certified && !agrees) outcome.exit_code = 2;
  }
  return outcome;
}

CommandOutcome run_bratteli(const ZeroOneMatrix& A, int levels) {
  CommandOutcome outcome;
  outcome.payload["levels"] = bratteli_to_json(bratteli_dims(A, levels));
  return outcome;
}

CommandOutcome run_states(const ZeroOneMatrix& A,
                          const std::vector<int>& prefix, int level) {
  CommandOutcome outcome;
  const Word x = Word::admissible(A, prefix);
  if (x.length() < level + 2) {
    throw CkError(ErrorCode::PrefixTooShort,
                  "prefix must have length >= level + 2");
  }
  const BrattelDims dims = bratteli_dims(A, level);
  if (dims.total_dimension(level) > 20000) {
    throw CkError(ErrorCode::BadInput, "level algebra too large for states");
  }
  const LevelElement identity = LevelElement::identity(A, level);
  const Complex identity_value = product_state_eval(A, x, identity);

  double worst = 0.0;
  for (const Word& mu : admissible_words(A, level)) {
    for (const Word& nu : admissible_words(A, level)) {
      if (mu.last() != nu.last()) continue;
      worst = std::max(worst, state_pullback_check(
                                  A, x, LevelElement::generator(A, mu, nu)));
    }
  }

  OrderedJson prefix_json = OrderedJson::array();
  for (int s : prefix) prefix_json.push_back(s);
  outcome.payload["prefix"] = std::move(prefix_json);
  outcome.payload["level"] = level;
  outcome.payload["identity_value"] = complex_json(identity_value);
  OrderedJson diagonal = OrderedJson::array();
  for (int t = 1; t <= level; ++t) diagonal.push_back(x.at(t));
  outcome.payload["selected_diagonal"] = std::move(diagonal);
  outcome.payload["max_pullback_residual"] = worst;
  const bool ok =
      worst <= 1e-12 && std::abs(identity_value - Complex{1.0, 0.0}) <= 1e-12;
  outcome.payload["contracts_ok"] = ok;
  if (!ok) outcome.exit_code = 2;
  return outcome;
}

CommandOutcome run_relations(const ZeroOneMatrix& A, int trunc) {
  CommandOutcome outcome;
  const TruncatedRep rep = build_truncated_rep(A, trunc);
  const ResidualReport report = relation_residuals(rep);
  bool ok = true;
  for (const auto& entry : report.relations) {
    if (entry.interior_residual > 1e-12) ok = false;
    if (entry.boundary_residual > 1.0 + 1e-12) ok = false;
  }
  outcome.payload["trunc"] = trunc;
  outcome.payload["dimension"] = rep.dim();
  outcome.payload["relations"] = residuals_to_json(report.relations);
  outcome.payload["divergence_flags"] =
      OrderedJson::array({"unit_relation_adopted"});
  outcome.payload["contracts_ok"] = ok;
  if (!ok) outcome.exit_code = 2;
  return outcome;
}

CommandOutcome run_crossed(const ZeroOneMatrix& A, int trunc) {
  CommandOutcome outcome;
  const TruncatedRep rep = build_truncated_rep(A, trunc);
  const SparseOperator S = build_isometry_S(rep);
  bool ok = true;

  // S*S = 1 away from the top level
  const SparseOperator isometry_residual =
      (S.adjoint() * S - SparseOperator::identity(rep.dim()))
          .restrict_columns(rep.length_mask(1, trunc - 1));
  const double isometry_defect =
      isometry_residual.is_zero() ? 0.0 : norm_estimate(isometry_residual);
  outcome.payload["isometry_residual"] = isometry_defect;
  ok = ok && isometry_defect <= 1e-10;

  // full residual schema for one covariance check, then aggregates
  const CovarianceReport unit_report =
      covariance_check(rep, LevelElement::identity(A, 1));
  OrderedJson unit_json = OrderedJson::object();
  unit_json["element"] = "identity_level_1";
  unit_json["relations"] = residuals_to_json(unit_report.relations);
  OrderedJson unit_flags = OrderedJson::array();
  for (const auto& flag : unit_report.divergence_flags) {
    unit_flags.push_back(flag);
  }
  unit_json["divergence_flags"] = std::move(unit_flags);
  outcome.payload["covariance_sample"] = std::move(unit_json);
  for (const auto& entry : unit_report.relations) {
    ok = ok && entry.interior_residual <= 1e-10;
  }

  // covariance on every generator of the small levels
  const int max_level = std::min(3, trunc - 2);
  OrderedJson covariance = OrderedJson::array();
  for (int level = 1; level <= max_level; ++level) {
    double worst_interior = 0.0;
    double worst_boundary = 0.0;
    for (const Word& mu : admissible_words(A, level)) {
      for (const Word& nu : admissible_words(A, level)) {
        if (mu.last() != nu.last()) continue;
        const CovarianceReport report =
            covariance_check(rep, LevelElement::generator(A, mu, nu));
        for (const auto& entry : report.relations) {
          if (entry.relation != "SaSdag_eq_alpha") continue;
          worst_interior = std::max(worst_interior, entry.interior_residual);
          worst_boundary = std::max(worst_boundary, entry.boundary_residual);
        }
      }
    }
    OrderedJson row;
    row["level"] = level;
    row["max_interior_residual"] = worst_interior;
    row["max_boundary_residual"] = worst_boundary;
    covariance.push_back(std::move(row));
    ok = ok && worst_interior <= 1e-10;
  }
  outcome.payload["covariance"] = std::move(covariance);

  // compression S* a S stays inside the level algebras
  double worst_compression = 0.0;
  if (trunc >= 3) {
    for (const Word& mu : admissible_words(A, 2)) {
      for (const Word& nu : admissible_words(A, 2)) {
        if (mu.last() != nu.last()) continue;
        worst_compression = std::max(
            worst_compression,
            star_compression_check(rep, LevelElement::generator(A, mu, nu)));
      }
    }
  }
  outcome.payload["star_compression_distance"] = worst_compression;
  ok = ok && worst_compression <= 1e-8;

  // generator recovery round-trip
  const auto recovered = recover_generators(rep, S);
  const auto interior = rep.length_mask(1, trunc - 1);
  OrderedJson recovery = OrderedJson::array();
  double worst_recovery = 0.0;
  for (int i = 1; i <= A.size(); ++i) {
    const SparseOperator diff =
        (recovered[i - 1] - rep.generator(i)).restrict_columns(interior);
    const double residual = diff.is_zero() ? 0.0 : norm_estimate(diff);
    worst_recovery = std::max(worst_recovery, residual);
    recovery.push_back(residual);
  }
  outcome.payload["recovery_residuals"] = std::move(recovery);
  ok = ok && worst_recovery <= 1e-10;

  // SS* is a projection and compresses onto the image of alpha
  const SparseOperator range_proj = S * S.adjoint();
  const SparseOperator idem = range_proj * range_proj - range_proj;
  const SparseOperator herm = range_proj - range_proj.adjoint();
  const double projection_residual =
      (idem.is_zero() ? 0.0 : norm_estimate(idem)) +
      (herm.is_zero() ? 0.0 : norm_estimate(herm));
  outcome.payload["range_projection_residual"] = projection_residual;
  ok = ok && projection_residual <= 1e-12;

  SparseOperator probe(rep.dim());
  int counter = 0;
  for (const Word& mu : admissible_words(A, 2)) {
    for (const Word& nu : admissible_words(A, 2)) {
      if (mu.last() != nu.last()) continue;
      probe = probe + level_element_to_operator(
                          LevelElement::generator(A, mu, nu), rep)
                          .scaled(1.0 / (1.0 + counter++));
    }
  }
  const double hered = hereditarity_distance(rep, S, probe, 1);
  outcome.payload["hereditarity_distance"] = hered;
  ok = ok && hered <= 1e-8;

  // S has pure gauge degree one
  const SparseOperator degree_residual = spectral_projection(S, 1, rep) - S;
  const double degree_defect = degree_residual.max_abs_entry();
  outcome.payload["isometry_degree_residual"] = degree_defect;
  ok = ok && degree_defect <= 1e-12;

  GradedGeneratorSet crossed_gens;
  crossed_gens.push_back({"A", 0});
  crossed_gens.push_back({"S", 1});
  outcome.payload["semi_saturation_crossed"] =
      semi_saturation_to_json(semi_saturation_check(crossed_gens));
  GradedGeneratorSet ck_gens;
  for (int i = 1; i <= A.size(); ++i) {
    ck_gens.push_back({"S_" + std::to_string(i), 1});
  }
  outcome.payload["semi_saturation_ck"] =
      semi_saturation_to_json(semi_saturation_check(ck_gens));

  outcome.payload["divergence_flags"] =
      OrderedJson::array({"unit_relation_adopted"});
  outcome.payload["contracts_ok"] = ok;
  if (!ok) outcome.exit_code = 2;
  return outcome;
}

CommandOutcome run_bimodule(const OrderedJson& input, int trials) {
  CommandOutcome outcome;
  auto [base, injection] = parse_bimodule(input);
  const FDHilbertBimodule module = build_bimodule(base, injection);
  const double residual = imprimitivity_check(module, trials);
  const IdealSupports supports = ideal_supports(module);
  const PartialMapOnSpectrum dual = dual_partial_map(module);
  const FreenessVerdict freeness =
      topological_freeness_finite(dual, base.block_count());

  outcome.payload["bimodule"] = bimodule_to_json(base, injection);
  outcome.payload["trials"] = trials;
  outcome.payload["imprimitivity_residual"] = residual;
  outcome.payload["ideal_supports"] = supports_to_json(supports);
  outcome.payload["dual_map"] = partial_map_to_json(dual);
  outcome.payload["topological_freeness"] = freeness_to_json(freeness);
  const bool ok = residual <= 1e-12;
  outcome.payload["contracts_ok"] = ok;
  if (!ok) outcome.exit_code = 2;
  return outcome;
}

CommandOutcome run_uniqueness(const ZeroOneMatrix& A, int trunc, int samples,
                              std::uint64_t seed) {
  CommandOutcome outcome;
  std::vector<int> L_values;
  for (int L = 4; L < trunc; L += 2) L_values.push_back(L);
  if (L_values.empty() || L_values.back() != trunc) L_values.push_back(trunc);
  const UniquenessReport report =
      agreement_experiment(A, L_values, samples, seed);
  const double violation = expectation_contractivity(A, trunc, samples, seed);
  outcome.payload = uniqueness_to_json(report);
  outcome.payload["contractivity_violation"] = violation;
  outcome.payload["divergence_flags"] =
      OrderedJson::array({"unit_relation_adopted"});
  const bool ok = report.conclusion == "agreement" && violation <= 1e-6;
  outcome.payload["contracts_ok"] = ok;
  if (!ok) outcome.exit_code = 2;
  return outcome;
}

CommandOutcome run_gap_witness(const ZeroOneMatrix& A) {
  CommandOutcome outcome;
  const UniquenessReport report = norm_gap_witness(A);
  outcome.payload = uniqueness_to_json(report);
  outcome.payload["divergence_flags"] =
      OrderedJson::array({"unit_relation_adopted"});
  bool ok = true;
  for (const auto& record : report.gap_records) {
    if (record.relation_residual_rep1 > 1e-12) ok = false;
    if (record.relation_residual_rep2 > 1e-12) ok = false;
  }
  outcome.payload["contracts_ok"] = ok;
  if (!ok) outcome.exit_code = 2;
  return outcome;
}

// ---- plumbing ----

std::string resolve_out_path(const std::string& out_option,
                             const std::string& command) {
  const char* report_dir = std::getenv("CKLAB_REPORT_DIR");
  if (!out_option.empty()) {
    std::filesystem::path path(out_option);
    if (report_dir && path.is_relative()) {
      return (std::filesystem::path(report_dir) / path).string();
    }
    return out_option;
  }
  if (report_dir) {
    return (std::filesystem::path(report_dir) / (command + "-report.json"))
        .string();
  }
  return {};
}

void emit_report(const OrderedJson& report, const std::string& out_path,
                 std::ostream& out) {
  const std::string text = serialize_json(report);
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw CkError(ErrorCode::BadInput,
                  "cannot write report to " + out_path);
  }
  file << text;
}

std::vector<std::string> anchors_for(const std::string& command) {
  if (command == "condition-i") {
    return {"condition-I", "shift-space-isolated-points",
            "topological-freeness"};
  }
  if (command == "bratteli") return {"af-core", "bratteli-dimensions"};
  if (command == "states") return {"product-states", "dual-shift-on-states"};
  if (command == "relations") {
    return {"cuntz-krieger-relations", "gauge-action", "spectral-projections"};
  }
  if (command == "crossed") {
    return {"covariance-relations", "endomorphism-on-the-core", "isometry-S",
            "semi-saturation", "hereditary-range"};
  }
  if (command == "bimodule") {
    return {"hilbert-bimodule", "imprimitivity-condition", "dual-partial-map",
            "topological-freeness"};
  }
  if (command == "uniqueness") {
    return {"uniqueness-property", "conditional-expectation",
            "gauge-invariant-subalgebra"};
  }
  if (command == "gap-witness") {
    return {"uniqueness-property", "condition-I", "cycle-representations"};
  }
  return {};  // validate is plumbing
}

}  // namespace

OrderedJson RunManifest::to_json() const {
  OrderedJson out;
  out["command"] = command;
  out["input_digest"] = input_digest;
  out["parameters"] = parameters;
  if (seed) {
    out["seed"] = *seed;
  } else {
    out["seed"] = nullptr;
  }
  out["tool_version"] = kToolVersion;
  OrderedJson anchors = OrderedJson::array();
  for (const auto& anchor : paper_anchors) anchors.push_back(anchor);
  out["paper_anchors"] = std::move(anchors);
  return out;
}

std::string digest_bytes(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"desk-scale checks for Cuntz-Krieger relations, the gauge "
               "circle action and its crossed-product picture"};
  app.name("cklab");
  app.require_subcommand(1);

  std::string input_path;
  std::string out_option;
  bool quiet = false;

  struct SubcommandSpec {
    CLI::App* sub = nullptr;
  };

  auto add_common = [&](CLI::App* sub, bool with_input = true) {
    if (with_input) {
      sub->add_option("input", input_path, "input JSON file")->required();
    }
    sub->add_option("--out", out_option, "report destination path");
    sub->add_flag("--quiet", quiet, "suppress the human-readable summary");
  };

  CLI::App* validate = app.add_subcommand("validate", "validate a matrix");
  add_common(validate);

  int oracle_depth = -1;
  CLI::App* condition_i =
      app.add_subcommand("condition-i", "decide condition (I)");
  add_common(condition_i);
  condition_i->add_option("--oracle-depth", oracle_depth,
                          "also run the enumeration oracle to this depth");

  int levels = 5;
  CLI::App* bratteli = app.add_subcommand("bratteli", "block dimensions");
  add_common(bratteli);
  bratteli->add_option("--levels", levels, "number of levels")->required();

  std::string prefix_text;
  int state_level = 1;
  CLI::App* states = app.add_subcommand("states", "product-state checks");
  add_common(states);
  states->add_option("--prefix", prefix_text, "path prefix, e.g. 1,2,1,1")
      ->required();
  states->add_option("--level", state_level, "level to evaluate at")
      ->required();

  int trunc = 5;
  CLI::App* relations =
      app.add_subcommand("relations", "relation residual report");
  add_common(relations);
  relations->add_option("--trunc", trunc, "truncation length")->required();

  int crossed_trunc = 5;
  CLI::App* crossed =
      app.add_subcommand("crossed", "crossed-product picture checks");
  add_common(crossed);
  crossed->add_option("--trunc", crossed_trunc, "truncation length")
      ->required();

  int trials = 100;
  CLI::App* bimodule =
      app.add_subcommand("bimodule", "finite-dimensional bimodule checks");
  add_common(bimodule);
  bimodule->add_option("--trials", trials, "imprimitivity trials");

  int uniq_trunc = 6;
  int samples = 20;
  std::uint64_t seed = 0;
  CLI::App* uniqueness =
      app.add_subcommand("uniqueness", "norm agreement experiment");
  add_common(uniqueness);
  uniqueness->add_option("--trunc", uniq_trunc, "largest truncation length")
      ->required();
  uniqueness->add_option("--samples", samples, "number of sampled elements")
      ->required();
  uniqueness->add_option("--seed", seed, "sampling seed")->required();

  CLI::App* gap = app.add_subcommand("gap-witness", "norm gap witness");
  add_common(gap);

  std::vector<const char*> argv;
  argv.push_back("cklab");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "cklab: " << e.what() << "\n";
    return 1;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();

  RunManifest manifest;
  manifest.command = command;
  manifest.paper_anchors = anchors_for(command);

  const auto started = std::chrono::steady_clock::now();
  OrderedJson report;
  int exit_code = 0;
  try {
    const std::string raw = read_file(input_path);
    manifest.input_digest = digest_bytes(raw);
    const OrderedJson input = parse_json_text(raw);

    CommandOutcome outcome;
    if (command == "validate") {
      outcome = run_validate(parse_matrix(input));
    } else if (command == "condition-i") {
      std::optional<int> depth;
      if (condition_i->count("--oracle-depth")) depth = oracle_depth;
      if (depth) manifest.parameters["oracle_depth"] = *depth;
      outcome = run_condition_i(parse_matrix(input), depth);
    } else if (command == "bratteli") {
      manifest.parameters["levels"] = levels;
      outcome = run_bratteli(parse_matrix(input), levels);
    } else if (command == "states") {
      const std::vector<int> prefix = parse_prefix(prefix_text);
      manifest.parameters["prefix"] = prefix_text;
      manifest.parameters["level"] = state_level;
      outcome = run_states(parse_matrix(input), prefix, state_level);
    } else if (command == "relations") {
      manifest.parameters["trunc"] = trunc;
      outcome = run_relations(parse_matrix(input), trunc);
    } else if (command == "crossed") {
      manifest.parameters["trunc"] = crossed_trunc;
      outcome = run_crossed(parse_matrix(input), crossed_trunc);
    } else if (command == "bimodule") {
      manifest.parameters["trials"] = trials;
      outcome = run_bimodule(input, trials);
    } else if (command == "uniqueness") {
      manifest.parameters["trunc"] = uniq_trunc;
      manifest.parameters["samples"] = samples;
      manifest.seed = seed;
      outcome = run_uniqueness(parse_matrix(input), uniq_trunc, samples, seed);
    } else if (command == "gap-witness") {
      outcome = run_gap_witness(parse_matrix(input));
    } else {
      throw CkError(ErrorCode::UnknownCommand, "unknown command " + command);
    }

    report["manifest"] = manifest.to_json();
    report["report"] = std::move(outcome.payload);
    exit_code = outcome.exit_code;
  } catch (const CkError& e) {
    report["manifest"] = manifest.to_json();
    OrderedJson error;
    error["code"] = error_code_name(e.code());
    error["message"] = e.what();
    if (e.index() >= 0) {
      error["index"] = e.index();
    } else {
      error["index"] = nullptr;
    }
    report["error"] = std::move(error);
    exit_code = exit_code_for(e.code());
  }

  const std::string out_path = resolve_out_path(out_option, command);
  try {
    emit_report(report, out_path, out);
  } catch (const CkError& e) {
    err << "cklab: " << e.what() << "\n";
    return 1;
  }

  if (!quiet) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - started);
    err << "cklab " << command << ": exit " << exit_code << " ("
        << elapsed.count() / 1000.0 << " ms)";
    if (!out_path.empty()) err << ", report -> " << out_path;
    err << "\n";
  }
  return exit_code;
}

}  // namespace cklab
