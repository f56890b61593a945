#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "parabolic/cones.hpp"
#include "parabolic/conformal.hpp"
#include "parabolic/models.hpp"
#include "parabolic/rational.hpp"
#include "parabolic/weights.hpp"

namespace parabolic::cli {

using Json = nlohmann::ordered_json;

// Output. Rationals are "p/q" strings and every index is 1-based.
Json to_json(const Rational& q);
Json to_json(const RationalVector& v);
Json to_json(const Integer& z);
Json integers_to_json(const std::vector<Integer>& v);
Json indices_to_json(const std::vector<int>& zero_based);
Json subset_to_json(SubsetMask mask);
Json to_json(const Wall& wall);
Json to_json(const DivisorClass& d);
Json to_json(const DoubleSequence& ds);
Json to_json(const CrossingEvent& ev);

const char* name(Stability s);
const char* name(LinearizationClass c);
const char* name(Membership m);
const char* name(CrossingKind k);
const char* name(ModelKind k);

// Input. Malformed text raises a usage error.
std::vector<int> parse_int_list(std::string_view text);
/// 1-based comma list to sorted 0-based indices.
std::vector<int> parse_indices(std::string_view text, std::size_t n);
/// "1,2|3|4,5" with 1-based indices.
PointConfig parse_partition(std::string_view text, std::size_t n);

}  // namespace parabolic::cli
