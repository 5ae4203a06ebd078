#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "resokit/cache.hpp"
#include "resokit/version.hpp"

using namespace resokit::cache;
using resokit::radial::BoundaryCondition;
namespace fs = std::filesystem;

namespace {

struct ScopedTempDir {
  fs::path path;
  ScopedTempDir() {
    std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream name;
    name << "resokit-cache-test-" << std::hex << rng();
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~ScopedTempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool sets_equal(const resokit::radial::ResonanceSet& a,
                const resokit::radial::ResonanceSet& b) {
  if (a.dimension != b.dimension || a.radius != b.radius || a.bc != b.bc ||
      a.l_max != b.l_max || a.entries.size() != b.entries.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].value != b.entries[i].value ||
        a.entries[i].multiplicity != b.entries[i].multiplicity ||
        a.entries[i].mode != b.entries[i].mode) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("store/load round trip is exact") {
  ScopedTempDir tmp;
  const CacheKey key{3, 1.0, BoundaryCondition::Neumann, 6};
  const auto& set = testfx::unit_ball_set(6);
  store_resonances(tmp.path, key, set);
  const auto loaded = load_resonances(tmp.path, key);
  REQUIRE(loaded.has_value());
  CHECK(sets_equal(*loaded, set));

  // Re-serialization is byte-identical: a hit re-stores to the same bytes.
  const fs::path file = tmp.path / cache_filename(key);
  const std::string first = slurp(file);
  CHECK(first == serialize_resonances(key, *loaded));
}

TEST_CASE("deserialize inverts serialize and reports the key") {
  const CacheKey key{3, 2.0, BoundaryCondition::Dirichlet, 4};
  const auto set = resokit::radial::ball_resonances(3, 2.0, 4,
                                                    BoundaryCondition::Dirichlet);
  const std::string text = serialize_resonances(key, set);
  CacheKey parsed;
  const auto round = deserialize_resonances(text, &parsed);
  REQUIRE(round.has_value());
  CHECK(sets_equal(*round, set));
  CHECK(parsed.d == key.d);
  CHECK(parsed.rho == key.rho);
  CHECK(parsed.bc == key.bc);
  CHECK(parsed.l_max == key.l_max);
}

TEST_CASE("key mismatches read as misses") {
  ScopedTempDir tmp;
  const CacheKey key{3, 1.0, BoundaryCondition::Neumann, 6};
  store_resonances(tmp.path, key, testfx::unit_ball_set(6));

  CHECK_FALSE(load_resonances(tmp.path, {3, 1.0, BoundaryCondition::Neumann, 8}));
  CHECK_FALSE(load_resonances(tmp.path, {3, 1.5, BoundaryCondition::Neumann, 6}));
  CHECK_FALSE(load_resonances(tmp.path, {3, 1.0, BoundaryCondition::Dirichlet, 6}));
  CHECK(load_resonances(tmp.path, key).has_value());
}

TEST_CASE("filenames are deterministic and key-distinct") {
  const CacheKey a{3, 1.0, BoundaryCondition::Neumann, 6};
  const CacheKey b{3, 1.0, BoundaryCondition::Neumann, 7};
  const CacheKey c{3, 1.0, BoundaryCondition::Dirichlet, 6};
  CHECK(cache_filename(a) == cache_filename(a));
  CHECK(cache_filename(a) != cache_filename(b));
  CHECK(cache_filename(a) != cache_filename(c));
  // The library version participates, so stale formats never collide.
  CHECK(cache_filename(a).find(resokit::kVersion) != std::string::npos);
}

TEST_CASE("corrupted payloads are detected and recomputed") {
  ScopedTempDir tmp;
  const CacheKey key{3, 1.0, BoundaryCondition::Neumann, 3};
  const auto first = cached_ball_resonances(tmp.path, key);
  const fs::path file = tmp.path / cache_filename(key);
  REQUIRE(fs::exists(file));
  const std::string good = slurp(file);

  // Flip one digit inside the payload; the checksum must catch it.
  std::string bad = good;
  const auto pos = bad.find("\"im\": -");
  REQUIRE(pos != std::string::npos);
  bad[pos + 7] = (bad[pos + 7] == '1') ? '2' : '1';
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << bad;
  }
  CHECK_FALSE(load_resonances(tmp.path, key).has_value());

  // cached_ball_resonances recomputes and heals the file.
  const auto second = cached_ball_resonances(tmp.path, key);
  CHECK(sets_equal(first, second));
  CHECK(slurp(file) == good);
}

TEST_CASE("truncated and non-JSON files read as misses") {
  ScopedTempDir tmp;
  const CacheKey key{3, 1.0, BoundaryCondition::Neumann, 2};
  store_resonances(tmp.path, key, testfx::unit_ball_set(2));
  const fs::path file = tmp.path / cache_filename(key);
  const std::string good = slurp(file);
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << good.substr(0, good.size() / 2);
  }
  CHECK_FALSE(load_resonances(tmp.path, key).has_value());
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << "not json at all";
  }
  CHECK_FALSE(load_resonances(tmp.path, key).has_value());
}

TEST_CASE("atomic writes leave no temporaries behind") {
  ScopedTempDir tmp;
  const CacheKey key{3, 1.0, BoundaryCondition::Neumann, 5};
  store_resonances(tmp.path, key, testfx::unit_ball_set(5));
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path)) {
    ++files;
    CHECK(entry.path().filename() == cache_filename(key));
  }
  CHECK(files == 1);
}

TEST_CASE("cache directory resolution honors the environment override") {
  ScopedTempDir tmp;
  const std::string value = tmp.path.string();
  REQUIRE(setenv("RESOKIT_CACHE_DIR", value.c_str(), 1) == 0);
  CHECK(default_cache_dir() == fs::path(value));
  unsetenv("RESOKIT_CACHE_DIR");
  CHECK(default_cache_dir() != fs::path(value));
}
