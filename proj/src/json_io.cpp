#include "cklab/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace cklab {

namespace {

void write_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
          out += buffer;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_value(std::string& out, const OrderedJson& value) {
  switch (value.type()) {
    case nlohmann::detail::value_t::null:
      out += "null";
      break;
    case nlohmann::detail::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      break;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(value.get<std::int64_t>());
      break;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(value.get<std::uint64_t>());
      break;
    case nlohmann::detail::value_t::number_float: {
      const double d = value.get<double>();
      char buffer[64];
      std::snprintf(buffer, sizeof(buffer), "%.17g", d);
      std::string token(buffer);
      // keep the token a valid JSON number
      if (token.find_first_of(".eE") == std::string::npos) token += ".0";
      out += token;
      break;
    }
    case nlohmann::detail::value_t::string:
      write_string(out, value.get<std::string>());
      break;
    case nlohmann::detail::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ',';
        first = false;
        write_value(out, item);
      }
      out += ']';
      break;
    }
    case nlohmann::detail::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ',';
        first = false;
        write_string(out, it.key());
        out += ':';
        write_value(out, it.value());
      }
      out += '}';
      break;
    }
    default:
      out += "null";
  }
}

OrderedJson word_json(const Word& w) {
  OrderedJson arr = OrderedJson::array();
  for (int s : w.symbols()) arr.push_back(s);
  return arr;
}

OrderedJson int_array(const std::vector<int>& values) {
  OrderedJson arr = OrderedJson::array();
  for (int v : values) arr.push_back(v);
  return arr;
}

}  // namespace

std::string serialize_json(const OrderedJson& value) {
  std::string out;
  write_value(out, value);
  out += '\n';
  return out;
}

ZeroOneMatrix parse_matrix(const OrderedJson& value) {
  if (!value.is_object() || !value.contains("n") || !value.contains("rows")) {
    throw CkError(ErrorCode::BadInput,
                  "matrix JSON needs fields \"n\" and \"rows\"");
  }
  if (!value["n"].is_number_integer() && !value["n"].is_number_unsigned()) {
    throw CkError(ErrorCode::BadInput, "field \"n\" must be an integer");
  }
  const int n = value["n"].get<int>();
  if (!value["rows"].is_array()) {
    throw CkError(ErrorCode::BadInput, "field \"rows\" must be an array");
  }
  std::vector<std::vector<int>> rows;
  for (const auto& row : value["rows"]) {
    if (!row.is_array()) {
      throw CkError(ErrorCode::BadInput, "rows must be arrays");
    }
    std::vector<int> r;
    for (const auto& entry : row) {
      if (!entry.is_number_integer() && !entry.is_number_unsigned()) {
        throw CkError(ErrorCode::BadInput, "entries must be integers");
      }
      r.push_back(entry.get<int>());
    }
    rows.push_back(std::move(r));
  }
  if (static_cast<int>(rows.size()) != n) {
    throw CkError(ErrorCode::BadInput,
                  "field \"n\" does not match the number of rows");
  }
  return ZeroOneMatrix::validate(rows);
}

OrderedJson matrix_to_json(const ZeroOneMatrix& A) {
  OrderedJson out;
  out["n"] = A.size();
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : A.rows()) rows.push_back(int_array(row));
  out["rows"] = std::move(rows);
  return out;
}

std::pair<FDAlgebra, BlockInjection> parse_bimodule(const OrderedJson& value) {
  if (!value.is_object() || !value.contains("blocks") ||
      !value.contains("map")) {
    throw CkError(ErrorCode::BadInput,
                  "bimodule JSON needs fields \"blocks\" and \"map\"");
  }
  FDAlgebra base;
  for (const auto& d : value["blocks"]) {
    if (!d.is_number_integer() && !d.is_number_unsigned()) {
      throw CkError(ErrorCode::BadInput, "block sizes must be integers");
    }
    base.block_sizes.push_back(d.get<int>());
  }
  BlockInjection h;
  if (!value["map"].is_object()) {
    throw CkError(ErrorCode::BadInput, "field \"map\" must be an object");
  }
  for (auto it = value["map"].begin(); it != value["map"].end(); ++it) {
    int from = 0;
    try {
      from = std::stoi(it.key());
    } catch (const std::exception&) {
      throw CkError(ErrorCode::BadInput,
                    "map keys must be block indices, got \"" + it.key() +
                        "\"");
    }
    if (!it.value().is_number_integer() && !it.value().is_number_unsigned()) {
      throw CkError(ErrorCode::BadInput, "map values must be integers");
    }
    h.map[from] = it.value().get<int>();
  }
  return {std::move(base), std::move(h)};
}

OrderedJson bimodule_to_json(const FDAlgebra& base, const BlockInjection& h) {
  OrderedJson out;
  out["blocks"] = int_array(base.block_sizes);
  OrderedJson map = OrderedJson::object();
  for (const auto& [from, to] : h.map) map[std::to_string(from)] = to;
  out["map"] = std::move(map);
  return out;
}

LevelElement parse_level_element(const OrderedJson& value,
                                 const ZeroOneMatrix& A) {
  if (!value.is_object() || !value.contains("level") ||
      !value.contains("terms")) {
    throw CkError(ErrorCode::BadInput,
                  "level element JSON needs \"level\" and \"terms\"");
  }
  const int level = value["level"].get<int>();
  LevelElement out = LevelElement::zero(level);
  for (const auto& term : value["terms"]) {
    std::vector<int> mu = term["mu"].get<std::vector<int>>();
    std::vector<int> nu = term["nu"].get<std::vector<int>>();
    const Complex coeff{term["re"].get<double>(), term["im"].get<double>()};
    out += LevelElement::generator(A, Word::admissible(A, std::move(mu)),
                                   Word::admissible(A, std::move(nu)), coeff);
  }
  return out;
}

OrderedJson level_element_to_json(const LevelElement& a) {
  OrderedJson out;
  out["level"] = a.level();
  OrderedJson terms = OrderedJson::array();
  for (const auto& [key, coeff] : a.terms()) {
    OrderedJson term;
    term["mu"] = word_json(key.first);
    term["nu"] = word_json(key.second);
    term["re"] = coeff.real();
    term["im"] = coeff.imag();
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

OrderedJson verdict_to_json(const ConditionIVerdict& verdict) {
  OrderedJson out;
  out["holds"] = verdict.holds;
  if (verdict.witness) {
    OrderedJson witness;
    witness["prefix"] = word_json(verdict.witness->prefix);
    witness["cycle"] = int_array(verdict.witness->cycle);
    out["witness"] = std::move(witness);
  } else {
    out["witness"] = nullptr;
  }
  out["method"] = verdict.method;
  return out;
}

OrderedJson residuals_to_json(const std::vector<RelationResidual>& entries) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& entry : entries) {
    OrderedJson item;
    item["relation"] = entry.relation;
    item["interior_residual"] = entry.interior_residual;
    item["boundary_residual"] = entry.boundary_residual;
    item["interior_range"] = OrderedJson::array({entry.interior_lo,
                                                 entry.interior_hi});
    arr.push_back(std::move(item));
  }
  return arr;
}

OrderedJson bratteli_to_json(const BrattelDims& dims) {
  OrderedJson arr = OrderedJson::array();
  for (std::size_t k = 1; k <= dims.levels.size(); ++k) {
    OrderedJson item;
    item["k"] = k;
    OrderedJson m = OrderedJson::array();
    for (long long v : dims.at_level(static_cast<int>(k))) m.push_back(v);
    item["m"] = std::move(m);
    item["total_dimension"] = dims.total_dimension(static_cast<int>(k));
    arr.push_back(std::move(item));
  }
  return arr;
}

OrderedJson supports_to_json(const IdealSupports& supports) {
  OrderedJson out;
  out["right_blocks"] =
      int_array({supports.right_blocks.begin(), supports.right_blocks.end()});
  out["left_blocks"] =
      int_array({supports.left_blocks.begin(), supports.left_blocks.end()});
  out["full_on_both"] = supports.full_on_both;
  return out;
}

OrderedJson partial_map_to_json(const PartialMapOnSpectrum& map) {
  OrderedJson out;
  OrderedJson entries = OrderedJson::object();
  for (const auto& [from, to] : map.map) entries[std::to_string(from)] = to;
  out["map"] = std::move(entries);
  out["domain"] = int_array({map.domain_blocks.begin(),
                             map.domain_blocks.end()});
  out["range"] = int_array({map.range_blocks.begin(),
                            map.range_blocks.end()});
  return out;
}

OrderedJson freeness_to_json(const FreenessVerdict& verdict) {
  OrderedJson out;
  out["free"] = verdict.free;
  OrderedJson witnesses = OrderedJson::array();
  for (const auto& w : verdict.witnesses) {
    OrderedJson item;
    item["block"] = w.block;
    item["period"] = w.period;
    witnesses.push_back(std::move(item));
  }
  out["periodic_witnesses"] = std::move(witnesses);
  return out;
}

OrderedJson semi_saturation_to_json(const SemiSaturationVerdict& verdict) {
  OrderedJson out;
  out["semi_saturated"] = verdict.semi_saturated;
  OrderedJson offenders = OrderedJson::array();
  for (const auto& label : verdict.offenders) offenders.push_back(label);
  out["offenders"] = std::move(offenders);
  return out;
}

OrderedJson uniqueness_to_json(const UniquenessReport& report) {
  OrderedJson out;
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : report.matrix_rows) rows.push_back(int_array(row));
  out["matrix"] = std::move(rows);
  out["condition_I"] = verdict_to_json(report.condition_I);
  out["conclusion"] = report.conclusion;
  out["gap_tolerance"] = report.gap_tolerance;
  if (!report.gap_records.empty()) {
    OrderedJson records = OrderedJson::array();
    for (const auto& record : report.gap_records) {
      OrderedJson item;
      item["element"] = record.element;
      item["cycle"] = int_array(record.cycle);
      item["norm_rep1"] = record.norm_rep1;
      item["norm_rep2"] = record.norm_rep2;
      item["gap"] = record.gap;
      item["relation_residual_rep1"] = record.relation_residual_rep1;
      item["relation_residual_rep2"] = record.relation_residual_rep2;
      records.push_back(std::move(item));
    }
    out["gap_records"] = std::move(records);
  }
  if (!report.L_values.empty()) {
    out["L_values"] = int_array(report.L_values);
    out["samples"] = report.samples;
    out["seed"] = report.seed;
    OrderedJson records = OrderedJson::array();
    for (const auto& sample : report.agreement_records) {
      OrderedJson item;
      item["sample_index"] = sample.sample_index;
      item["element"] = sample.element;
      OrderedJson table = OrderedJson::array();
      for (const auto& pair : sample.by_length) {
        OrderedJson row;
        row["L"] = pair.L;
        row["norm_prepend"] = pair.norm_prepend;
        row["norm_sliding"] = pair.norm_sliding;
        row["gap"] = pair.gap;
        row["relative_gap"] = pair.relative_gap;
        table.push_back(std::move(row));
      }
      item["norms"] = std::move(table);
      records.push_back(std::move(item));
    }
    out["agreement_records"] = std::move(records);
  }
  return out;
}

}  // namespace cklab
