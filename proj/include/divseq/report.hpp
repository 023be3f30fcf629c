#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divseq/ellff.hpp"
#include "divseq/mulgrp.hpp"
#include "divseq/places.hpp"
#include "divseq/seqlab.hpp"

namespace divseq {

using Json = nlohmann::ordered_json;

/// { "places": [{"poly": ..., "mult": k}, ...], "infinity": m, "generation": g }
Json divisor_json(const Divisor& d, const PlaceRegistry& registry);
Json reduction_tag_json(const ReductionTag& tag, const PlaceRegistry& registry);
Json sequence_report_json(const SequenceReport& report, const PlaceRegistry& registry);
Json bound_check_json(const BoundCheck& check, const PlaceRegistry& registry);
Json certificate_json(const TorsionCertificate& cert);
Json independence_json(const IndependenceResult& result, IndependenceMode mode);
Json int_gcd_json(const IntGcdSummary& summary);

/// Header `n,degree,support_size,equals_D1`, one row per entry.
std::string series_csv(const std::vector<Divisor>& seq, const PlaceRegistry& registry);
/// Header `n,gcd,log_gcd_over_n`.
std::string int_gcd_csv(const IntGcdSummary& summary);

}  // namespace divseq
