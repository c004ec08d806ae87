#include "hdrc/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "hdrc/errors.hpp"
#include "json.hpp"

namespace hdrc::io {

using json = nlohmann::ordered_json;

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

std::string curves_to_json(std::span<const DmtCurve> curves) {
  json out = json::array();
  for (const auto& c : curves) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({{"r", p.r}, {"d", p.d}});
    out.push_back({{"config", {{"m", c.config.m()}, {"k", c.config.k()}, {"n", c.config.n()}}},
                   {"variant", std::string(to_string(c.variant))},
                   {"points", std::move(pts)}});
  }
  return out.dump(2) + "\n";
}

std::string curves_to_csv(std::span<const DmtCurve> curves) {
  std::string out = "r,d,variant,m,k,n\n";
  char buf[64];
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", p.r, p.d);
      out += buf;
      out += to_string(c.variant);
      out += "," + std::to_string(c.config.m()) + "," + std::to_string(c.config.k()) + "," +
             std::to_string(c.config.n()) + "\n";
    }
  }
  return out;
}

std::string render(std::span<const DmtCurve> curves, Format format) {
  return format == Format::json ? curves_to_json(curves) : curves_to_csv(curves);
}

std::vector<DmtCurve> curves_from_json(std::string_view text) {
  std::vector<DmtCurve> out;
  try {
    const json doc = json::parse(text);
    if (!doc.is_array()) throw InputError("curve JSON: top level must be an array");
    for (const auto& rec : doc) {
      const auto& cfg = rec.at("config");
      const auto variant = parse_variant(rec.at("variant").get<std::string>());
      if (!variant) throw InputError("curve JSON: unknown variant");
      DmtCurve c{AntennaConfig(cfg.at("m").get<int>(), cfg.at("k").get<int>(), cfg.at("n").get<int>()),
                 *variant, {}};
      for (const auto& p : rec.at("points")) c.points.push_back({p.at("r").get<double>(), p.at("d").get<double>()});
      out.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("curve JSON: ") + e.what());
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at " + path.string());
  }
}

}  // namespace hdrc::io
