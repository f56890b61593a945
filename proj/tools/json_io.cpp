#include "json_io.hpp"

#include <algorithm>
#include <charconv>

#include "parabolic/error.hpp"

namespace parabolic::cli {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json integers_to_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

Json indices_to_json(const std::vector<int>& zero_based) {
  Json out = Json::array();
  for (int i : zero_based) out.push_back(i + 1);
  return out;
}

Json subset_to_json(SubsetMask mask) { return indices_to_json(mask_to_indices(mask)); }

Json to_json(const Wall& wall) { return Json{{"I", subset_to_json(wall.subset)}, {"m", wall.m}}; }

Json to_json(const DivisorClass& d) { return Json{{"b", to_json(d.b)}, {"t", to_json(d.t)}}; }

Json to_json(const DoubleSequence& ds) {
  return Json{{"top", ds.top}, {"bottom", ds.bottom}, {"level", ds.level}, {"height", height(ds)}};
}

Json to_json(const CrossingEvent& ev) {
  return Json{{"c", to_json(ev.c)},
              {"wall", to_json(ev.wall)},
              {"dim_minus", ev.dim_minus},
              {"dim_plus", ev.dim_plus},
              {"kind", name(ev.kind)}};
}

const char* name(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::StrictlySemistable: return "StrictlySemistable";
    case Stability::Unstable: return "Unstable";
  }
  return "?";
}

const char* name(LinearizationClass c) {
  switch (c) {
    case LinearizationClass::NotEffective: return "NotEffective";
    case LinearizationClass::EffectiveNotGeneral: return "EffectiveNotGeneral";
    case LinearizationClass::General: return "General";
  }
  return "?";
}

const char* name(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

const char* name(CrossingKind k) {
  switch (k) {
    case CrossingKind::BlowUp: return "BlowUp";
    case CrossingKind::Flip: return "Flip";
    case CrossingKind::BlowDown: return "BlowDown";
  }
  return "?";
}

const char* name(ModelKind k) {
  switch (k) {
    case ModelKind::ParabolicModuli: return "ParabolicModuli";
    case ModelKind::GitQuotient: return "GITQuotient";
    case ModelKind::BoundaryReduction: return "BoundaryReduction";
  }
  return "?";
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty())
      throw Error(Module::Cli, ErrorKind::InvalidArgument, "not an integer: '" + std::string(piece) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_indices(std::string_view text, std::size_t n) {
  std::vector<int> out = parse_int_list(text);
  for (int& i : out) {
    if (i < 1 || static_cast<std::size_t>(i) > n)
      throw Error(Module::Cli, ErrorKind::InvalidArgument, "index " + std::to_string(i) + " out of range");
    --i;
  }
  std::sort(out.begin(), out.end());
  return out;
}

PointConfig parse_partition(std::string_view text, std::size_t n) {
  PointConfig config;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    const std::string_view piece = text.substr(start, bar == std::string_view::npos ? text.npos : bar - start);
    config.blocks.push_back(parse_indices(piece, n));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return config;
}

}  // namespace parabolic::cli
