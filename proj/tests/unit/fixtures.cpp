#include "fixtures.hpp"

#include <map>

namespace testfx {

const resokit::radial::ResonanceSet& unit_ball_set(int l_max) {
  static std::map<int, resokit::radial::ResonanceSet> cache;
  auto it = cache.find(l_max);
  if (it == cache.end()) {
    it = cache.emplace(l_max, resokit::radial::ball_resonances(3, 1.0, l_max))
             .first;
  }
  return it->second;
}

}  // namespace testfx
