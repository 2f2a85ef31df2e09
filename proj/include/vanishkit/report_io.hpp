#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vanishkit/analysis.hpp"
#include "vanishkit/constructions.hpp"
#include "vanishkit/convolution.hpp"
#include "vanishkit/fourier.hpp"

namespace vanishkit {

using Json = nlohmann::ordered_json;

/// 17 significant digits, locale independent.
std::string fmt17(double v);

void write_sampled_csv(std::ostream& os, const SampledFunction& s);    // x,re,im
void write_profile_csv(std::ostream& os, const DecayProfile& p);       // R,sup
void write_mean_csv(std::ostream& os, const MeanTrace& t);             // n,average
void write_spectral_csv(std::ostream& os, const std::vector<std::pair<double, double>>& rows);  // k,value

Json to_json(const DecayProfile& p);
Json to_json(const FamilyVerdict& v);
Json to_json(const MeanTrace& t);
Json to_json(const CoefficientReport& r);
Json to_json(const PropCReport& r);
Json to_json(const RLReport& r);
Json to_json(const HypothesisReport& r);
Json to_json(const SampledFunction& s);

}  // namespace vanishkit
