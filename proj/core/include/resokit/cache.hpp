#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "resokit/radial_model.hpp"

namespace resokit::cache {

// On-disk JSON cache of computed resonance sets.
//
// Schema "resokit-resonances-v1": a single JSON object with fields
//   schema, version (library version), d, rho, bc, l_max,
//   entries: [{re, im, multiplicity, mode}, ...] sorted by (mode, re, im),
//   checksum: FNV-1a 64-bit over the serialized entries array.
// Files are written atomically (temp file + rename) and re-serialized
// byte-identically (ordered keys, 17 significant digits), so a cache hit is
// exact, not approximate. Any parse failure, schema/version mismatch, or
// checksum mismatch reads as a miss: corrupt caches are recomputed, never
// trusted.

struct CacheKey {
  int d = 3;
  double rho = 1.0;
  radial::BoundaryCondition bc = radial::BoundaryCondition::Neumann;
  int l_max = 60;
};

// Resolution order: RESOKIT_CACHE_DIR, $XDG_CACHE_HOME/resokit,
// $HOME/.cache/resokit, ./.resokit-cache.
std::filesystem::path default_cache_dir();

// Deterministic filename for a key (parameters embedded with %.17g).
std::string cache_filename(const CacheKey& key);

std::optional<radial::ResonanceSet> load_resonances(const std::filesystem::path& dir,
                                                    const CacheKey& key);

void store_resonances(const std::filesystem::path& dir, const CacheKey& key,
                      const radial::ResonanceSet& resonances);

// Load on hit; otherwise compute via ball_resonances and store.
radial::ResonanceSet cached_ball_resonances(const std::filesystem::path& dir,
                                            const CacheKey& key);

// Serialized JSON text for a resonance set (the exact bytes store would
// write), exposed for tests and for streaming over stdout.
std::string serialize_resonances(const CacheKey& key,
                                 const radial::ResonanceSet& resonances);

std::optional<radial::ResonanceSet> deserialize_resonances(const std::string& text,
                                                           CacheKey* key_out = nullptr);

}  // namespace resokit::cache
