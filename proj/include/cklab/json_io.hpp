#pragma once

#include <string>

#include <json.hpp>

#include "cklab/af_core.hpp"
#include "cklab/crossed_product.hpp"
#include "cklab/fd_bimodule.hpp"
#include "cklab/matrix_subshift.hpp"
#include "cklab/uniqueness_lab.hpp"

namespace cklab {

using OrderedJson = nlohmann::ordered_json;

/// Serializes with stable key order and every float printed with 17
/// significant digits, so equal reports are equal byte-for-byte.
std::string serialize_json(const OrderedJson& value);

// ---- input schemas ----

/// {"n": 2, "rows": [[1,1],[1,0]]}
ZeroOneMatrix parse_matrix(const OrderedJson& value);
OrderedJson matrix_to_json(const ZeroOneMatrix& A);

/// {"blocks": [2,2], "map": {"1": 2}}
std::pair<FDAlgebra, BlockInjection> parse_bimodule(const OrderedJson& value);
OrderedJson bimodule_to_json(const FDAlgebra& base, const BlockInjection& h);

/// {"level": k, "terms": [{"mu": [..], "nu": [..], "re": .., "im": ..}]}
LevelElement parse_level_element(const OrderedJson& value,
                                 const ZeroOneMatrix& A);
OrderedJson level_element_to_json(const LevelElement& a);

// ---- report fragments ----

OrderedJson verdict_to_json(const ConditionIVerdict& verdict);
OrderedJson residuals_to_json(const std::vector<RelationResidual>& entries);
OrderedJson bratteli_to_json(const BrattelDims& dims);
OrderedJson supports_to_json(const IdealSupports& supports);
OrderedJson partial_map_to_json(const PartialMapOnSpectrum& map);
OrderedJson freeness_to_json(const FreenessVerdict& verdict);
OrderedJson semi_saturation_to_json(const SemiSaturationVerdict& verdict);
OrderedJson uniqueness_to_json(const UniquenessReport& report);

}  // namespace cklab
