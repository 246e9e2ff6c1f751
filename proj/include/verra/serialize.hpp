/*
 * Copyright 2026 The verra authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <json.hpp>

#include "verra/ideal.hpp"
#include "verra/multipoly.hpp"

namespace verra::algebra {

inline nlohmann::json ring_to_json(const PolyRing& r) {
  nlohmann::json j;
  j["vars"] = r.vars();
  j["characteristic"] = r.characteristic();
  j["order"] = r.order().tag();
  return j;
}

inline RingPtr ring_from_json(const nlohmann::json& j) {
  return make_ring(j.at("vars").get<std::vector<std::string>>(),
                   j.at("characteristic").get<std::uint64_t>(),
                   TermOrder::from_tag(j.at("order").get<std::string>()));
}

template <class K>
nlohmann::json ideal_to_json(const PolyIdeal<K>& I) {
  nlohmann::json j;
  j["ring"] = ring_to_json(*I.ring());
  std::vector<std::string> gens;
  gens.reserve(I.generators().size());
  for (const auto& g : I.generators()) gens.push_back(g.str());
  j["generators"] = gens;
  return j;
}

template <class K>
PolyIdeal<K> ideal_from_json(const nlohmann::json& j) {
  RingPtr ring = ring_from_json(j.at("ring"));
  return PolyIdeal<K>::parse(ring,
                             j.at("generators").get<std::vector<std::string>>());
}

}  // namespace verra::algebra
