#include "hdrc/types.hpp"

#include <array>
#include <utility>

#include "hdrc/errors.hpp"

namespace hdrc {

AntennaConfig::AntennaConfig(int m, int k, int n) : m_(m), k_(k), n_(n) {
  if (m < 1 || k < 1 || n < 1) {
    throw ConfigError("antenna counts must be positive, got (" + std::to_string(m) + "," +
                      std::to_string(k) + "," + std::to_string(n) + ")");
  }
}

std::string to_string(const AntennaConfig& config) {
  return "(" + std::to_string(config.m()) + "," + std::to_string(config.k()) + "," +
         std::to_string(config.n()) + ")";
}

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 9> kVariantNames{{
    {Variant::hd_dynamic, "hd-dynamic"},
    {Variant::fd, "fd"},
    {Variant::hd_static_n1n, "hd-static-n1n"},
    {Variant::closed_1k1, "closed-1k1"},
    {Variant::closed_n1n, "closed-n1n"},
    {Variant::symmetric_upper, "symmetric-upper"},
    {Variant::ddf_1k1, "ddf-1k1"},
    {Variant::static_1k1, "static-1k1"},
    {Variant::ptp, "ptp"},
}};

}  // namespace

std::string_view to_string(Variant v) noexcept {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  for (const auto& [variant, text] : kVariantNames) {
    if (text == name) return variant;
  }
  return std::nullopt;
}

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> variants = [] {
    std::vector<Variant> out;
    for (const auto& entry : kVariantNames) out.push_back(entry.first);
    return out;
  }();
  return variants;
}

}  // namespace hdrc
