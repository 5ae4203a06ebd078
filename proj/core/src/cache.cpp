#include "resokit/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "resokit/errors.hpp"
#include "resokit/version.hpp"

namespace resokit::cache {
namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "resokit-resonances-v1";

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const unsigned char byte : data) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

bool parse_bc(const std::string& text, radial::BoundaryCondition& bc) {
  if (text == "neumann") {
    bc = radial::BoundaryCondition::Neumann;
    return true;
  }
  if (text == "dirichlet") {
    bc = radial::BoundaryCondition::Dirichlet;
    return true;
  }
  return false;
}

ordered_json entries_json(const radial::ResonanceSet& set) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : set.entries) {
    entries.push_back({{"re", e.value.real()},
                       {"im", e.value.imag()},
                       {"multiplicity", e.multiplicity},
                       {"mode", e.mode}});
  }
  return entries;
}

}  // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("RESOKIT_CACHE_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "resokit";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "resokit";
  }
  return std::filesystem::path(".resokit-cache");
}

std::string cache_filename(const CacheKey& key) {
  std::ostringstream name;
  name << "resonances-d" << key.d << "-rho" << format_full(key.rho) << "-"
       << radial::to_string(key.bc) << "-l" << key.l_max << "-v" << kVersion << ".json";
  return name.str();
}

std::string serialize_resonances(const CacheKey& key, const radial::ResonanceSet& set) {
  ordered_json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["d"] = key.d;
  j["rho"] = key.rho;
  j["bc"] = radial::to_string(key.bc);
  j["l_max"] = key.l_max;
  ordered_json entries = entries_json(set);
  j["entries"] = entries;
  j["checksum"] = hex64(fnv1a(entries.dump()));
  return j.dump(2) + "\n";
}

std::optional<radial::ResonanceSet> deserialize_resonances(const std::string& text,
                                                           CacheKey* key_out) {
  try {
    const ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != kSchema) return std::nullopt;
    if (j.at("version").get<std::string>() != kVersion) return std::nullopt;

    CacheKey key;
    key.d = j.at("d").get<int>();
    key.rho = j.at("rho").get<double>();
    if (!parse_bc(j.at("bc").get<std::string>(), key.bc)) return std::nullopt;
    key.l_max = j.at("l_max").get<int>();

    const ordered_json entries = j.at("entries");
    if (hex64(fnv1a(entries.dump())) != j.at("checksum").get<std::string>()) {
      return std::nullopt;
    }

    radial::ResonanceSet set;
    set.dimension = key.d;
    set.radius = key.rho;
    set.bc = key.bc;
    set.l_max = key.l_max;
    for (const auto& item : entries) {
      radial::Resonance res;
      res.value = {item.at("re").get<double>(), item.at("im").get<double>()};
      res.multiplicity = item.at("multiplicity").get<std::int64_t>();
      res.mode = item.at("mode").get<int>();
      set.entries.push_back(res);
    }
    if (key_out != nullptr) *key_out = key;
    return set;
  } catch (...) {
    return std::nullopt;  // corrupt or foreign content reads as a miss
  }
}

std::optional<radial::ResonanceSet> load_resonances(const std::filesystem::path& dir,
                                                    const CacheKey& key) {
  const std::filesystem::path path = dir / cache_filename(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();

  CacheKey stored;
  auto set = deserialize_resonances(buffer.str(), &stored);
  if (!set) return std::nullopt;
  if (stored.d != key.d || stored.rho != key.rho || stored.bc != key.bc ||
      stored.l_max != key.l_max) {
    return std::nullopt;
  }
  return set;
}

void store_resonances(const std::filesystem::path& dir, const CacheKey& key,
                      const radial::ResonanceSet& resonances) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path = dir / cache_filename(key);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cache: cannot write " + tmp.string());
    out << serialize_resonances(key, resonances);
    out.flush();
    if (!out) throw Error("cache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);  // atomic publish on POSIX
  if (ec) throw Error("cache: rename failed: " + ec.message());
}

radial::ResonanceSet cached_ball_resonances(const std::filesystem::path& dir,
                                            const CacheKey& key) {
  if (auto hit = load_resonances(dir, key)) return *hit;
  const radial::ResonanceSet set =
      radial::ball_resonances(key.d, key.rho, key.l_max, key.bc);
  store_resonances(dir, key, set);
  return set;
}

}  // namespace resokit::cache
